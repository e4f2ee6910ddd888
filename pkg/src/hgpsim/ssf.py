"""Small-set-flip decoding on full, masked, or flipped syndromes.

The decoder greedily flips subsets of single X-check supports, always
picking the candidate that maximizes (visible syndrome weight decrease)
divided by the subset size.  Candidate flip sets for every X-check are
precomputed once per code into a SmallSetTable and shared by all decode
calls; each call owns its working state, so concurrent decoding is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from ._kernel import decode_core, mask_context
from .codes import HgpCode
from .errors import CapacityError
from .gf2 import BitVector, syndrome

MAX_CHECK_WEIGHT = 20
MAX_LOCAL_ZCHECKS = 64
NEVER_POSITIVE = 1 << 30  # eligibility sentinel: no flip set can help

_combo_cache: dict[tuple[int, int], np.ndarray] = {}


def _combos(w: int, k: int) -> np.ndarray:
    key = (w, k)
    if key not in _combo_cache:
        _combo_cache[key] = np.array(list(combinations(range(w), k)), dtype=np.int64)
    return _combo_cache[key]


@dataclass
class SmallSetTable:
    """Per-X-check candidate flip sets with cached restricted Z-syndromes.

    Subsets are stored in a deterministic order: check index ascending,
    then subset size ascending, then lexicographic on sorted qubit indices.
    `sub_qmask` encodes a subset over the positions of its check's sorted
    qubit support; `sub_smask` encodes its Z-syndrome over the positions of
    the check's sorted local Z-check list (`lz_z`).
    """

    n_xchecks: int
    n_zchecks: int
    n_qubits: int
    supp_off: np.ndarray
    supp_q: np.ndarray
    lz_off: np.ndarray
    lz_z: np.ndarray
    sub_off: np.ndarray
    sub_qmask: np.ndarray
    sub_smask: np.ndarray
    sub_swt: np.ndarray
    sub_size: np.ndarray
    min_swt: np.ndarray
    z2x_off: np.ndarray
    z2x_c: np.ndarray
    z2x_p: np.ndarray
    full_u: np.ndarray
    qz_off: np.ndarray
    qz_z: np.ndarray

    @property
    def n_candidates(self) -> int:
        return int(self.sub_off[-1])

    def candidates_of_check(self, c: int) -> int:
        return int(self.sub_off[c + 1] - self.sub_off[c])

    def subset_qubits(self, k: int) -> np.ndarray:
        """Qubit indices of candidate k (global candidate index)."""
        c = int(np.searchsorted(self.sub_off, k, side="right") - 1)
        supp = self.supp_q[self.supp_off[c] : self.supp_off[c + 1]]
        qm = int(self.sub_qmask[k])
        return supp[[p for p in range(len(supp)) if (qm >> p) & 1]]


def precompute_small_sets(code: HgpCode) -> SmallSetTable:
    """Enumerate all 2^w - 1 qubit subsets of every X-check of weight w."""
    n_x = code.n_xchecks
    supports = [np.sort(code.xcheck_qubits[c]).astype(np.int32) for c in range(n_x)]
    weights = [len(s) for s in supports]
    if weights and max(weights) > MAX_CHECK_WEIGHT:
        raise CapacityError(
            f"X-check weight {max(weights)} exceeds the 2^{MAX_CHECK_WEIGHT} subset budget"
        )

    supp_off = np.zeros(n_x + 1, dtype=np.int64)
    np.cumsum(weights, out=supp_off[1:])
    supp_q = np.concatenate(supports) if n_x else np.zeros(0, dtype=np.int32)

    local_lists = []
    for c in range(n_x):
        if weights[c] == 0:
            local_lists.append(np.zeros(0, dtype=np.int32))
            continue
        lz = np.unique(np.concatenate([code.qubit_zchecks[q] for q in supports[c]]))
        if lz.size > MAX_LOCAL_ZCHECKS:
            raise CapacityError(
                f"X-check {c} touches {lz.size} Z-checks; packing supports at most {MAX_LOCAL_ZCHECKS}"
            )
        local_lists.append(lz.astype(np.int32))
    lz_off = np.zeros(n_x + 1, dtype=np.int64)
    np.cumsum([len(l) for l in local_lists], out=lz_off[1:])
    lz_z = np.concatenate(local_lists) if n_x else np.zeros(0, dtype=np.int32)

    qmask_parts, smask_parts, size_parts = [], [], []
    sub_counts = np.zeros(n_x, dtype=np.int64)
    for c in range(n_x):
        w = weights[c]
        if w == 0:
            continue
        lz = local_lists[c]
        qubit_words = np.zeros(w, dtype=np.uint64)
        for p, q in enumerate(supports[c]):
            pos = np.searchsorted(lz, code.qubit_zchecks[q])
            qubit_words[p] = np.bitwise_or.reduce(np.uint64(1) << pos.astype(np.uint64))
        for k in range(1, w + 1):
            combos = _combos(w, k)
            smask_parts.append(np.bitwise_xor.reduce(qubit_words[combos], axis=1))
            qmask_parts.append((1 << combos).sum(axis=1).astype(np.uint32))
            size_parts.append(np.full(combos.shape[0], k, dtype=np.uint8))
            sub_counts[c] += combos.shape[0]

    sub_off = np.zeros(n_x + 1, dtype=np.int64)
    np.cumsum(sub_counts, out=sub_off[1:])
    sub_qmask = np.concatenate(qmask_parts) if qmask_parts else np.zeros(0, dtype=np.uint32)
    sub_smask = np.concatenate(smask_parts) if smask_parts else np.zeros(0, dtype=np.uint64)
    sub_size = np.concatenate(size_parts) if size_parts else np.zeros(0, dtype=np.uint8)
    sub_swt = np.bitwise_count(sub_smask).astype(np.uint8)

    # minimum positive syndrome weight over a check's flip sets; zero-weight
    # sets (e.g. the full support, a stabilizer) can never decrease anything
    min_swt = np.full(n_x, NEVER_POSITIVE, dtype=np.int64)
    for c in range(n_x):
        lo, hi = sub_off[c], sub_off[c + 1]
        pos = sub_swt[lo:hi][sub_swt[lo:hi] > 0]
        if pos.size:
            min_swt[c] = int(pos.min())

    z_pairs: list[list[tuple[int, int]]] = [[] for _ in range(code.n_zchecks)]
    for c in range(n_x):
        for p, z in enumerate(local_lists[c]):
            z_pairs[z].append((c, p))
    z2x_off = np.zeros(code.n_zchecks + 1, dtype=np.int64)
    np.cumsum([len(p) for p in z_pairs], out=z2x_off[1:])
    z2x_c = np.array([c for pairs in z_pairs for c, _ in pairs], dtype=np.int32)
    z2x_p = np.array([p for pairs in z_pairs for _, p in pairs], dtype=np.uint8)

    full_u = np.array(
        [np.uint64((1 << len(l)) - 1) for l in local_lists] if n_x else [], dtype=np.uint64
    )

    qz_off = np.zeros(code.n_qubits + 1, dtype=np.int64)
    np.cumsum([len(code.qubit_zchecks[q]) for q in range(code.n_qubits)], out=qz_off[1:])
    qz_z = (
        np.concatenate(code.qubit_zchecks).astype(np.int32)
        if code.n_qubits
        else np.zeros(0, dtype=np.int32)
    )

    return SmallSetTable(
        n_xchecks=n_x,
        n_zchecks=code.n_zchecks,
        n_qubits=code.n_qubits,
        supp_off=supp_off,
        supp_q=supp_q,
        lz_off=lz_off,
        lz_z=lz_z,
        sub_off=sub_off,
        sub_qmask=sub_qmask,
        sub_smask=sub_smask,
        sub_swt=sub_swt,
        sub_size=sub_size,
        min_swt=min_swt,
        z2x_off=z2x_off,
        z2x_c=z2x_c,
        z2x_p=z2x_p,
        full_u=full_u,
        qz_off=qz_off,
        qz_z=qz_z,
    )


@dataclass(frozen=True)
class DecodeResult:
    correction: BitVector
    iterations: int
    final_visible_syndrome_weight: int

    @property
    def stalled(self) -> bool:
        return self.final_visible_syndrome_weight > 0


def _mask_array(mask: Iterable[int]) -> np.ndarray:
    return np.array(sorted(int(z) for z in mask), dtype=np.int64)


class MaskContext:
    """Decoder state derived from one mask: visibility words per check and
    the exact minimum visible weight of any flip set, used as a scan bound.

    Building a context costs one pass over the candidate table; protocol
    loops reuse one context per schedule level across rounds.
    """

    def __init__(self, table: SmallSetTable, masked_idx: np.ndarray):
        self.masked_idx = masked_idx
        self.u, self.min_vis = mask_context(
            masked_idx,
            table.z2x_off,
            table.z2x_c,
            table.z2x_p,
            table.sub_off,
            table.sub_smask,
            table.min_swt,
            table.full_u,
        )


def decode_with_context(
    table: SmallSetTable, visible: np.ndarray, ctx: MaskContext
) -> tuple[np.ndarray, int, int]:
    """Array-level decode: modifies `visible` in place, returns (correction, iters, final weight)."""
    visible[ctx.masked_idx] = 0
    corr = np.zeros(table.n_qubits, dtype=np.uint8)
    iters, final_w = decode_core(
        visible,
        ctx.u,
        ctx.min_vis,
        table.lz_off,
        table.lz_z,
        table.sub_off,
        table.sub_qmask,
        table.sub_smask,
        table.sub_swt,
        table.sub_size,
        table.z2x_off,
        table.z2x_c,
        table.z2x_p,
        table.supp_off,
        table.supp_q,
        table.full_u,
        corr,
    )
    return corr, int(iters), int(final_w)


def decode_arrays(
    table: SmallSetTable, visible: np.ndarray, masked_idx: np.ndarray
) -> tuple[np.ndarray, int, int]:
    return decode_with_context(table, visible, MaskContext(table, masked_idx))


def ssf_decode(
    code: HgpCode,
    table: SmallSetTable,
    visible_syndrome: BitVector,
    mask: Iterable[int] = (),
) -> DecodeResult:
    """Decode a visible syndrome, ignoring the masked Z-checks.

    The syndrome is indexed over all Z-checks; masked positions are pinned
    to zero.  Flip-set effects are scored and applied only on unmasked
    checks.  Stalling (no candidate with a positive visible decrease while
    syndrome weight remains) is a result state, not an error.
    """
    if visible_syndrome.n != code.n_zchecks:
        raise ValueError(
            f"syndrome length {visible_syndrome.n} does not match {code.n_zchecks} Z-checks"
        )
    visible = visible_syndrome.to_bits()
    corr, iters, final_w = decode_arrays(table, visible, _mask_array(mask))
    return DecodeResult(
        correction=BitVector.from_bits(corr),
        iterations=iters,
        final_visible_syndrome_weight=final_w,
    )


def ssf_decode_flipped(
    code: HgpCode,
    table: SmallSetTable,
    true_error: BitVector,
    flips: Iterable[int] = (),
) -> DecodeResult:
    """Decode syndrome(Hz, E) with the given Z-check outcomes flipped, unmasked."""
    syn = syndrome(code.Hz, true_error)
    for z in flips:
        syn.flip(int(z))
    return ssf_decode(code, table, syn, mask=())
