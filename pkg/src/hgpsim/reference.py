"""Straight-line reference implementations used as oracles in tests.

These recompute everything from scratch on every step: no incremental
syndrome updates, no cached candidate scores, no adjacency-driven rescans.
They share nothing with the optimized decode path except the code object
and the schedule definition, and are deliberately slow; use them only on
small codes.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

from .codes import HgpCode
from .gf2 import BitVector, row_space_member
from .masking import Schedule, effective_mask


def reference_decode(
    code: HgpCode,
    visible_syndrome: np.ndarray,
    mask: frozenset[int] | set[int] = frozenset(),
    weight_trace: list[int] | None = None,
) -> tuple[np.ndarray, int, int]:
    """Full-rescan small-set flip; returns (correction bits, iterations, final weight).

    Semantics match ssf_decode: maximize (visible decrease)/|F|, ties broken
    by smaller |F|, then lower X-check index, then subset enumeration order
    (size ascending, lexicographic on sorted qubit indices).  When
    weight_trace is a list, the visible syndrome weight before the first
    flip and after every flip is appended to it.
    """
    hz = code.Hz.to_dense()
    visible0 = np.asarray(visible_syndrome, dtype=np.uint8).copy()
    masked = sorted(mask)
    visible0[masked] = 0
    unmasked = np.ones(code.n_zchecks, dtype=bool)
    unmasked[masked] = False

    corr = np.zeros(code.n_qubits, dtype=np.uint8)
    supports = [sorted(int(q) for q in code.xcheck_qubits[c]) for c in range(code.n_xchecks)]

    iterations = 0
    while True:
        vis = (visible0 ^ (hz @ corr % 2).astype(np.uint8)) & unmasked
        if weight_trace is not None:
            weight_trace.append(int(vis.sum()))
        best = None  # (ratio, size, check, enum_idx, subset)
        for c in range(code.n_xchecks):
            enum_idx = 0
            for k in range(1, len(supports[c]) + 1):
                for combo in combinations(supports[c], k):
                    sig = np.zeros(code.n_zchecks, dtype=np.uint8)
                    for q in combo:
                        sig[code.qubit_zchecks[q]] ^= 1
                    zs = np.nonzero(sig & unmasked)[0]
                    dec = int((2 * vis[zs].astype(int) - 1).sum())
                    if dec > 0:
                        cand = (Fraction(dec, k), k, c, enum_idx)
                        if best is None or (
                            cand[0] > best[0]
                            or (cand[0] == best[0] and (cand[1], cand[2], cand[3]) < (best[1], best[2], best[3]))
                        ):
                            best = cand + (combo,)
                    enum_idx += 1
        if best is None:
            break
        for q in best[4]:
            corr[q] ^= 1
        iterations += 1

    vis = (visible0 ^ (hz @ corr % 2).astype(np.uint8)) & unmasked
    return corr, iterations, int(vis.sum())


def reference_run_trial(
    code: HgpCode, schedule: Schedule, p_phys: float, seed: int
) -> tuple[bool, np.ndarray, tuple[int, ...]]:
    """Multi-round protocol with the reference decoder.

    Returns (failed, residual, per-round residual weights).  Draws the same
    random numbers in the same order as the optimized run_trial, so
    outcomes are comparable trial for trial.
    """
    rng = np.random.default_rng(seed)
    hz = code.Hz.to_dense()
    error = np.zeros(code.n_qubits, dtype=np.uint8)
    trace = []
    for t in range(1, schedule.tau + 2):
        error ^= (rng.random(code.n_qubits) < p_phys).astype(np.uint8)
        sigma = (hz @ error % 2).astype(np.uint8)
        corr, _, _ = reference_decode(code, sigma, effective_mask(schedule, t))
        error ^= corr
        trace.append(int(error.sum()))
    sigma = (hz @ error % 2).astype(np.uint8)
    failed = bool(sigma.any()) or not row_space_member(code.Hx, BitVector.from_bits(error))
    return failed, error, tuple(trace)
