"""Logical-error-per-round and suppression-factor fits from campaign data.

Both fits are weighted linearized least squares: the rounds curve
p_log = 1 - (1 - eps)^t becomes ln(1 - p_log) = t * ln(1 - eps), a line
through the origin; the suppression law eps = C / Lambda^((d+1)/2)
becomes ln(eps) = ln(C) - ln(Lambda) * (d+1)/2.  Weights come from
first-order propagation of the binomial standard errors.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError


@dataclass(frozen=True)
class RoundsCurvePoint:
    tau: int
    p_log: float
    stderr: float
    trials: int


@dataclass(frozen=True)
class EpsFit:
    eps_L: float
    stderr: float
    n_points: int
    n_excluded_zero: int
    n_excluded_one: int


@dataclass(frozen=True)
class SuppressionFit:
    Lambda: float
    C: float
    Lambda_stderr: float
    C_stderr: float
    n_points: int


def fit_error_per_round(points: list[RoundsCurvePoint], t_min: int = 300) -> EpsFit:
    """Error per round from p_log(tau) samples with tau >= t_min.

    Points with p_log = 0 (no failures) or p_log = 1 are excluded and
    counted; fewer than two usable points raises InsufficientDataError.
    """
    n_zero = sum(1 for p in points if p.tau >= t_min and p.p_log == 0.0)
    n_one = sum(1 for p in points if p.tau >= t_min and p.p_log == 1.0)
    if n_one:
        warnings.warn(f"excluded {n_one} saturated point(s) with p_log = 1")
    usable = [p for p in points if p.tau >= t_min and 0.0 < p.p_log < 1.0]
    if len(usable) < 2:
        raise InsufficientDataError(
            f"need >= 2 points with tau >= {t_min} and 0 < p_log < 1, have {len(usable)}"
        )
    t = np.array([p.tau for p in usable], dtype=float)
    y = np.log1p(-np.array([p.p_log for p in usable]))
    var = np.array([(p.stderr / (1.0 - p.p_log)) ** 2 for p in usable])
    if np.any(var <= 0):
        warnings.warn("nonpositive stderr; falling back to unweighted fit")
        var = np.ones_like(var)
    w = 1.0 / var
    denom = float((w * t * t).sum())
    slope = float((w * t * y).sum()) / denom
    slope_stderr = 1.0 / np.sqrt(denom)
    eps = 1.0 - np.exp(slope)
    return EpsFit(
        eps_L=float(eps),
        stderr=float((1.0 - eps) * slope_stderr),
        n_points=len(usable),
        n_excluded_zero=n_zero,
        n_excluded_one=n_one,
    )


def fit_lambda(family: list[tuple[int, float, float]]) -> SuppressionFit:
    """Suppression factor from (distance, eps_L, stderr) triples.

    Regresses ln(eps_L) on (d+1)/2; the slope is -ln(Lambda) and the
    intercept ln(C).  Standard errors come from the weighted-regression
    covariance with the given stderrs taken as absolute.
    """
    usable = [(d, e, s) for d, e, s in family if e > 0.0]
    if len({d for d, _, _ in usable}) < 2:
        raise InsufficientDataError("need >= 2 codes with distinct distances and eps_L > 0")
    d = np.array([f[0] for f in usable], dtype=float)
    eps = np.array([f[1] for f in usable])
    stderr = np.array([f[2] for f in usable])
    x = (d + 1.0) / 2.0
    y = np.log(eps)
    var = (stderr / eps) ** 2
    if np.any(var <= 0):
        warnings.warn("nonpositive stderr; falling back to unweighted fit")
        var = np.ones_like(var)
    w = 1.0 / var
    X = np.column_stack([np.ones_like(x), x])
    xtwx = X.T @ (w[:, None] * X)
    cov = np.linalg.inv(xtwx)
    beta = cov @ (X.T @ (w * y))
    intercept, slope = float(beta[0]), float(beta[1])
    lam = float(np.exp(-slope))
    c = float(np.exp(intercept))
    return SuppressionFit(
        Lambda=lam,
        C=c,
        Lambda_stderr=lam * float(np.sqrt(cov[1, 1])),
        C_stderr=c * float(np.sqrt(cov[0, 0])),
        n_points=len(usable),
    )


def fit_campaign_rows(rows: list[dict], t_min: int) -> list[dict]:
    """Fits-CSV rows (eps per curve, then lambda per family) from campaign rows.

    A curve is one (code_id, p_phys, p_mask, mask_model, schedule) group
    over tau; a family is one (p_phys, p_mask, mask_model, schedule) group
    over codes with known distinct distances.  Groups with too little data
    are skipped with a warning.
    """
    curves: dict[tuple, list[dict]] = {}
    for row in rows:
        key = (row["code_id"], row["p_phys"], row["p_mask"], row["mask_model"], row["schedule"])
        curves.setdefault(key, []).append(row)

    out: list[dict] = []
    eps_by_family: dict[tuple, list[tuple[int, float, float]]] = {}
    for key in sorted(curves):
        code_id, p_phys, p_mask, mask_model, schedule = key
        group = curves[key]
        points = [
            RoundsCurvePoint(tau=r["tau"], p_log=r["p_log"], stderr=r["stderr"], trials=r["trials"])
            for r in group
        ]
        try:
            fit = fit_error_per_round(points, t_min=t_min)
        except InsufficientDataError as exc:
            warnings.warn(f"skipping curve {key}: {exc}")
            continue
        d = group[0]["d"]
        out.append(
            {
                "row_type": "eps",
                "code_id": code_id,
                "d": d,
                "p_phys": p_phys,
                "p_mask": p_mask,
                "mask_model": mask_model,
                "schedule": schedule,
                "eps_L": fit.eps_L,
                "eps_stderr": fit.stderr,
                "n_points": fit.n_points,
                "n_excluded_zero": fit.n_excluded_zero,
                "n_excluded_one": fit.n_excluded_one,
            }
        )
        if d is not None:
            fam_key = (p_phys, p_mask, mask_model, schedule)
            eps_by_family.setdefault(fam_key, []).append((d, fit.eps_L, fit.stderr))

    for fam_key in sorted(eps_by_family):
        p_phys, p_mask, mask_model, schedule = fam_key
        try:
            fit = fit_lambda(eps_by_family[fam_key])
        except InsufficientDataError as exc:
            warnings.warn(f"skipping lambda fit {fam_key}: {exc}")
            continue
        out.append(
            {
                "row_type": "lambda",
                "p_phys": p_phys,
                "p_mask": p_mask,
                "mask_model": mask_model,
                "schedule": schedule,
                "lambda": fit.Lambda,
                "C": fit.C,
                "lambda_stderr": fit.Lambda_stderr,
                "C_stderr": fit.C_stderr,
                "n_points": fit.n_points,
            }
        )
    return out
