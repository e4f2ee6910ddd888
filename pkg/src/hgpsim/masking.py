"""Masks over Z-checks, unmasking schedules, and masked-code diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO, Union

import numpy as np

from .codes import HgpCode, min_weight_invisible_error

FIXED_FRACTION = "fixed-fraction"
IID_BERNOULLI = "iid-bernoulli"
MASK_MODELS = (FIXED_FRACTION, IID_BERNOULLI)

SIMPLE = "simple"
ITERATIVE = "iterative"
SCHEDULE_KINDS = (SIMPLE, ITERATIVE)


@dataclass(frozen=True)
class Mask:
    """A set of Z-checks hidden from the decoder, with a fixed unmasking order."""

    n_zchecks: int
    masked: frozenset[int]
    order: tuple[int, ...]
    model: str
    p_mask: float
    seed: int | None = None

    def __post_init__(self):
        if set(self.order) != set(self.masked) or len(self.order) != len(self.masked):
            raise ValueError("order must be a permutation of the masked set")
        if self.masked and (min(self.masked) < 0 or max(self.masked) >= self.n_zchecks):
            raise ValueError("masked indices out of range")

    def sorted_indices(self) -> np.ndarray:
        return np.array(sorted(self.masked), dtype=np.int32)


def sample_mask(code: HgpCode, p_mask: float, model: str = FIXED_FRACTION, seed: int | None = 0) -> Mask:
    """Sample a random mask over the code's Z-checks; deterministic given seed.

    fixed-fraction picks a uniform subset of exactly round(p_mask * n_zchecks)
    checks; iid-bernoulli includes each check independently with probability
    p_mask.  The unmasking order is a uniform permutation of the result.
    """
    if not 0.0 <= p_mask <= 1.0:
        raise ValueError(f"p_mask must be in [0, 1], got {p_mask}")
    if model not in MASK_MODELS:
        raise ValueError(f"unknown mask model {model!r}; expected one of {MASK_MODELS}")
    rng = np.random.default_rng(seed)
    nz = code.n_zchecks
    if model == FIXED_FRACTION:
        count = round(p_mask * nz)
        chosen = rng.choice(nz, size=count, replace=False)
    else:
        chosen = np.nonzero(rng.random(nz) < p_mask)[0]
    order = rng.permutation(chosen)
    return Mask(
        n_zchecks=nz,
        masked=frozenset(int(i) for i in chosen),
        order=tuple(int(i) for i in order),
        model=model,
        p_mask=float(p_mask),
        seed=seed,
    )


@dataclass(frozen=True)
class Schedule:
    """Assigns each round 1..tau+1 its effective mask; round tau+1 is unmasked."""

    kind: str
    base_mask: Mask
    tau: int

    def __post_init__(self):
        if self.kind not in SCHEDULE_KINDS:
            raise ValueError(f"unknown schedule kind {self.kind!r}; expected one of {SCHEDULE_KINDS}")
        if self.tau < 0:
            raise ValueError("tau must be nonnegative")


def unmask_level(t: int) -> int:
    """Largest j >= 1 such that 10^(j-1) divides t."""
    level = 1
    p = 10
    while t % p == 0:
        level += 1
        p *= 10
    return level


def unmasked_prefix_len(level: int, mask_size: int) -> int:
    """Number of checks temporarily unmasked at an iterative round of this level."""
    return math.ceil((1.0 - 10.0 ** (-(level - 1))) * mask_size)


def effective_mask(schedule: Schedule, t: int) -> frozenset[int]:
    """Masked Z-checks in effect at round t; stateless in t (re-masking is implicit)."""
    if not 1 <= t <= schedule.tau + 1:
        raise ValueError(f"round {t} outside 1..{schedule.tau + 1}")
    if t == schedule.tau + 1:
        return frozenset()
    base = schedule.base_mask
    if schedule.kind == SIMPLE:
        return base.masked
    n_unmask = unmasked_prefix_len(unmask_level(t), len(base.order))
    return frozenset(base.order[n_unmask:])


def residual_degree_distribution(code: HgpCode, mask: Mask) -> dict[int, np.ndarray]:
    """Histogram of unmasked Z-check degrees per original qubit degree.

    Maps each original degree D to an array of length D+1 whose entry i
    counts qubits of original degree D with i unmasked incident Z-checks.
    """
    masked = np.zeros(code.n_zchecks, dtype=bool)
    if mask.masked:
        masked[mask.sorted_indices()] = True
    hist: dict[int, np.ndarray] = {}
    for q in range(code.n_qubits):
        zs = code.qubit_zchecks[q]
        deg = len(zs)
        residual = deg - int(masked[zs].sum())
        if deg not in hist:
            hist[deg] = np.zeros(deg + 1, dtype=np.int64)
        hist[deg][residual] += 1
    return hist


def masked_distance(code: HgpCode, mask: Mask, w_max: int) -> int | None:
    """Minimum weight <= w_max of a non-stabilizer error invisible to the
    unmasked Z-checks; None when the cutoff is reached."""
    unmasked = np.setdiff1d(np.arange(code.n_zchecks), mask.sorted_indices())
    return min_weight_invisible_error(code, unmasked, w_max)


def exists_isolated_qubit(code: HgpCode, mask: Mask) -> bool:
    """True iff some qubit with nonzero Z-degree has all incident Z-checks masked."""
    masked = np.zeros(code.n_zchecks, dtype=bool)
    if mask.masked:
        masked[mask.sorted_indices()] = True
    for q in range(code.n_qubits):
        zs = code.qubit_zchecks[q]
        if len(zs) and masked[zs].all():
            return True
    return False


PathLike = Union[str, Path]


def save_mask(mask: Mask, dest: PathLike | TextIO) -> None:
    """Write the "n_zchecks p_mask model seed" header then sorted indices."""
    if isinstance(dest, (str, Path)):
        with open(dest, "w") as f:
            save_mask(mask, f)
        return
    seed = "-" if mask.seed is None else str(mask.seed)
    dest.write(f"{mask.n_zchecks} {mask.p_mask!r} {mask.model} {seed}\n")
    for i in sorted(mask.masked):
        dest.write(f"{i}\n")


def load_mask(src: PathLike | TextIO) -> Mask:
    """Read a serialized mask; the unmasking order is the stored sorted order."""
    if isinstance(src, (str, Path)):
        with open(src) as f:
            return load_mask(f)
    parts = src.readline().split()
    if len(parts) != 4:
        raise ValueError(f"bad mask header: expected 'n_zchecks p_mask model seed', got {parts!r}")
    nz, p_mask, model = int(parts[0]), float(parts[1]), parts[2]
    seed = None if parts[3] == "-" else int(parts[3])
    indices = [int(line) for line in src if line.strip()]
    return Mask(
        n_zchecks=nz,
        masked=frozenset(indices),
        order=tuple(indices),
        model=model,
        p_mask=p_mask,
        seed=seed,
    )
