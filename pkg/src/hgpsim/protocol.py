"""Multi-round fault-tolerance protocol and Monte Carlo campaigns.

A trial runs tau masked error-correction rounds followed by one fully
unmasked round, then classifies the residual: success means zero syndrome
and a residual inside the X-stabilizer row space.  Trials are independent
and embarrassingly parallel; every trial's randomness is derived from
(base_seed, cell_index, trial_index), so results do not depend on the
worker count or execution order.
"""

from __future__ import annotations

import math
import multiprocessing as mp
from dataclasses import dataclass

import numpy as np

from ._kernel import xor_incident_checks
from .codes import HgpCode
from .gf2 import BitVector, syndrome
from .masking import FIXED_FRACTION, Mask, Schedule, effective_mask, sample_mask, unmask_level
from .seeds import trial_seeds
from .ssf import MaskContext, SmallSetTable, decode_with_context, precompute_small_sets

SUCCESS = "success"
LOGICAL_FAILURE = "logical_failure"


@dataclass(frozen=True)
class TrialOutcome:
    failed: bool
    failure_round: int | None
    seed: int
    residual_weight_trace: tuple[int, ...] | None = None


@dataclass(frozen=True)
class CampaignRecord:
    code_id: str
    n_qubits: int
    k: int
    d: int | None
    p_phys: float
    p_mask: float
    mask_model: str
    schedule: str
    tau: int
    trials: int
    failures: int
    base_seed: int

    @property
    def p_log(self) -> float:
        return self.failures / self.trials

    @property
    def stderr(self) -> float:
        p = self.p_log
        return math.sqrt(p * (1.0 - p) / self.trials)


@dataclass(frozen=True)
class ScheduleSpec:
    """Campaign-level schedule description; the mask itself is drawn per trial."""

    kind: str
    p_mask: float
    mask_model: str = FIXED_FRACTION


class ScheduleRuntime:
    """Per-round decoder mask contexts for a schedule, cached by unmasking level."""

    def __init__(self, schedule: Schedule, table: SmallSetTable):
        self.schedule = schedule
        self.table = table
        self._by_level: dict[int, MaskContext] = {}
        self._final: MaskContext | None = None

    def context(self, t: int) -> MaskContext:
        sched = self.schedule
        if t == sched.tau + 1:
            if self._final is None:
                self._final = MaskContext(self.table, np.zeros(0, dtype=np.int64))
            return self._final
        level = 1 if sched.kind == "simple" else unmask_level(t)
        ctx = self._by_level.get(level)
        if ctx is None:
            idx = np.array(sorted(effective_mask(sched, t)), dtype=np.int64)
            ctx = MaskContext(self.table, idx)
            self._by_level[level] = ctx
        return ctx


def classify_outcome(code: HgpCode, residual: BitVector) -> str:
    """success iff the residual has zero Z-syndrome and lies in rowspace(Hx)."""
    if not syndrome(code.Hz, residual).is_zero():
        return LOGICAL_FAILURE
    return SUCCESS if code.hx_rowspace.contains(residual) else LOGICAL_FAILURE


def run_trial(
    code: HgpCode,
    table: SmallSetTable,
    schedule: Schedule,
    p_phys: float,
    seed: int,
    record_trace: bool = False,
) -> TrialOutcome:
    """One protocol run: tau masked rounds plus a final unmasked round."""
    if not 0.0 <= p_phys <= 1.0:
        raise ValueError(f"p_phys must be in [0, 1], got {p_phys}")
    rng = np.random.default_rng(seed)
    runtime = ScheduleRuntime(schedule, table)
    nq = code.n_qubits
    error = np.zeros(nq, dtype=np.uint8)
    sigma = np.zeros(code.n_zchecks, dtype=np.uint8)
    trace: list[int] | None = [] if record_trace else None

    for t in range(1, schedule.tau + 2):
        flips = np.nonzero(rng.random(nq) < p_phys)[0]
        error[flips] ^= 1
        xor_incident_checks(sigma, flips, table.qz_off, table.qz_z)
        visible = sigma.copy()
        corr, _, _ = decode_with_context(table, visible, runtime.context(t))
        applied = np.nonzero(corr)[0]
        error[applied] ^= 1
        xor_incident_checks(sigma, applied, table.qz_off, table.qz_z)
        if trace is not None:
            trace.append(int(error.sum()))

    failed = bool(sigma.any()) or not code.hx_rowspace.contains(BitVector.from_bits(error))
    return TrialOutcome(
        failed=failed,
        failure_round=schedule.tau + 1 if failed else None,
        seed=seed,
        residual_weight_trace=tuple(trace) if trace is not None else None,
    )


def _run_one(
    code: HgpCode,
    table: SmallSetTable,
    spec: ScheduleSpec,
    p_phys: float,
    tau: int,
    base_seed: int,
    cell_index: int,
    trial_index: int,
) -> bool:
    mask_seed, error_seed = trial_seeds(base_seed, cell_index, trial_index)
    mask = sample_mask(code, spec.p_mask, spec.mask_model, seed=mask_seed)
    schedule = Schedule(kind=spec.kind, base_mask=mask, tau=tau)
    return run_trial(code, table, schedule, p_phys, error_seed).failed


_WORKER: dict = {}


def _pool_init(code, table, spec, p_phys, tau, base_seed, cell_index):
    _WORKER.update(
        code=code, table=table, spec=spec, p_phys=p_phys, tau=tau,
        base_seed=base_seed, cell_index=cell_index,
    )


def _pool_chunk(bounds: tuple[int, int]) -> int:
    lo, hi = bounds
    w = _WORKER
    return sum(
        _run_one(w["code"], w["table"], w["spec"], w["p_phys"], w["tau"],
                 w["base_seed"], w["cell_index"], i)
        for i in range(lo, hi)
    )


def run_campaign(
    code: HgpCode,
    spec: ScheduleSpec,
    p_phys: float,
    tau: int,
    trials: int,
    base_seed: int,
    parallelism: int = 1,
    cell_index: int = 0,
    table: SmallSetTable | None = None,
) -> CampaignRecord:
    """Aggregate `trials` independent trials of one parameter cell.

    A fresh mask is sampled per trial from the trial seed.  The result is
    identical for any parallelism degree.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if table is None:
        table = precompute_small_sets(code)

    if parallelism <= 1:
        failures = sum(
            _run_one(code, table, spec, p_phys, tau, base_seed, cell_index, i)
            for i in range(trials)
        )
    else:
        chunk = max(1, math.ceil(trials / (parallelism * 8)))
        bounds = [(lo, min(lo + chunk, trials)) for lo in range(0, trials, chunk)]
        ctx = mp.get_context("fork")
        with ctx.Pool(
            parallelism,
            initializer=_pool_init,
            initargs=(code, table, spec, p_phys, tau, base_seed, cell_index),
        ) as pool:
            failures = sum(pool.map(_pool_chunk, bounds))

    return CampaignRecord(
        code_id=code.code_id(),
        n_qubits=code.n_qubits,
        k=code.k,
        d=code.d,
        p_phys=p_phys,
        p_mask=spec.p_mask,
        mask_model=spec.mask_model,
        schedule=spec.kind,
        tau=tau,
        trials=trials,
        failures=failures,
        base_seed=base_seed,
    )
