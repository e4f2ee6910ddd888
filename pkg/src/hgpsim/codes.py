"""Classical biregular LDPC base codes and their hypergraph product CSS codes."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import TextIO, Union

import numpy as np

from .errors import CapacityError, GenerationError
from .gf2 import (
    BinaryMatrix,
    BitVector,
    RowSpace,
    load_matrix,
    nullspace_basis,
    rank,
    save_matrix,
    syndrome,
)

SAMPLING_RETRY_BUDGET = 1000
DISTANCE_K_BUDGET = 20


@dataclass
class ClassicalCode:
    """Binary linear code given by a parity-check matrix H (m x n)."""

    H: BinaryMatrix
    n: int
    k: int
    dv: int  # max column weight
    dc: int  # max row weight
    d: int | None = None
    seed: int | None = None

    @classmethod
    def from_matrix(cls, H: BinaryMatrix, d: int | None = None, seed: int | None = None) -> "ClassicalCode":
        return cls(
            H=H,
            n=H.cols,
            k=H.cols - rank(H),
            dv=int(H.col_weights().max(initial=0)),
            dc=int(H.row_weights().max(initial=0)),
            d=d,
            seed=seed,
        )

    @property
    def m(self) -> int:
        return self.H.rows


def sample_biregular_code(n: int, dv: int, dc: int, seed: int) -> ClassicalCode:
    """Sample a (dv, dc)-biregular LDPC code via the configuration model.

    Parallel edges in the stub matching are repaired by random edge swaps
    (a plain rejection of non-simple matchings almost never succeeds at
    these degrees), the 4-cycle count of the Tanner graph is then driven
    down by seeded greedy swaps to improve expansion, and rank-deficient
    matrices are rejected and resampled.  Deterministic given the seed.
    """
    if n * dv % dc != 0:
        raise ValueError(f"n*dv = {n * dv} is not divisible by dc = {dc}")
    m = n * dv // dc
    if m >= n:
        raise ValueError(f"check count m = {m} must be smaller than n = {n}")
    rng = np.random.default_rng(seed)
    n_edges = n * dv
    var_of = np.repeat(np.arange(n), dv)
    for _ in range(SAMPLING_RETRY_BUDGET):
        chk_of = np.repeat(np.arange(m), dc)[rng.permutation(n_edges)]
        if not _make_simple(var_of, chk_of, m, rng, swap_budget=100 * n_edges):
            continue
        dense = np.zeros((m, n), dtype=np.uint8)
        dense[chk_of, var_of] = 1
        _reduce_four_cycles(dense, rng, proposals=60 * n_edges)
        H = BinaryMatrix.from_dense(dense)
        if rank(H) != m:
            continue
        return ClassicalCode(H=H, n=n, k=n - m, dv=dv, dc=dc, seed=seed)
    raise GenerationError(
        f"no simple full-rank ({dv},{dc})-biregular code with n={n} found "
        f"in {SAMPLING_RETRY_BUDGET} attempts (seed {seed})"
    )


def _make_simple(var_of: np.ndarray, chk_of: np.ndarray, m: int, rng, swap_budget: int) -> bool:
    """Remove parallel edges from a stub matching by random check-endpoint swaps."""
    n_edges = len(var_of)
    for _ in range(swap_budget):
        pairs = var_of * m + chk_of
        order = np.argsort(pairs, kind="stable")
        dup = order[1:][pairs[order[1:]] == pairs[order[:-1]]]
        if dup.size == 0:
            return True
        for i in dup:
            j = int(rng.integers(n_edges))
            chk_of[i], chk_of[j] = chk_of[j], chk_of[i]
    return False


def four_cycle_count(dense: np.ndarray) -> int:
    """Number of 4-cycles in the Tanner graph of a dense parity-check matrix."""
    P = dense.astype(np.int64) @ dense.astype(np.int64).T
    iu = np.triu_indices_from(P, k=1)
    s = P[iu]
    return int((s * (s - 1) // 2).sum())


def _reduce_four_cycles(dense: np.ndarray, rng, proposals: int) -> None:
    """Greedy in-place 4-cycle reduction by degree-preserving edge swaps.

    A proposal exchanges the check endpoints of two edges; it is accepted
    when it does not create a parallel edge and does not increase the
    4-cycle count.  Small biregular graphs cannot reach girth 6 (pigeonhole
    on check pairs), so this only drives the count toward its floor.
    """
    m, n = dense.shape
    count = four_cycle_count(dense)
    chk_of, var_of = np.nonzero(dense)
    n_edges = len(var_of)
    for _ in range(proposals):
        if count == 0:
            return
        i, j = rng.integers(n_edges, size=2)
        c1, v1 = int(chk_of[i]), int(var_of[i])
        c2, v2 = int(chk_of[j]), int(var_of[j])
        if c1 == c2 or v1 == v2 or dense[c1, v2] or dense[c2, v1]:
            continue
        dense[c1, v1] = dense[c2, v2] = 0
        dense[c1, v2] = dense[c2, v1] = 1
        new_count = four_cycle_count(dense)
        if new_count <= count:
            count = new_count
            chk_of[i], chk_of[j] = c1, c2
            var_of[i], var_of[j] = v2, v1
        else:
            dense[c1, v2] = dense[c2, v1] = 0
            dense[c1, v1] = dense[c2, v2] = 1


def classical_distance(code: ClassicalCode) -> int | None:
    """Minimum weight over all nonzero codewords, by exhaustive enumeration.

    Returns None for a code with k = 0 (no nonzero codewords).  Enumeration
    walks the 2^k codewords along a Gray code over the generator basis.
    """
    if code.k > DISTANCE_K_BUDGET:
        raise CapacityError(f"k = {code.k} exceeds the 2^{DISTANCE_K_BUDGET} enumeration budget")
    basis = nullspace_basis(code.H)
    k = basis.rows
    if k == 0:
        return None
    rows = [int.from_bytes(basis.words[i].tobytes(), "little") for i in range(k)]
    word = 0
    best = code.n + 1
    for i in range(1, 1 << k):
        word ^= rows[(i & -i).bit_length() - 1]
        w = word.bit_count()
        if w < best:
            best = w
    return best


@dataclass
class HgpCode:
    """CSS code from the hypergraph product of a base code with itself.

    Qubit layout: the n^2 "left" qubits (i, j) come first in row-major
    order, then the m^2 "right" qubits (c, d).  X-checks are indexed
    (c, j) -> c*n + j and Z-checks (i, d) -> i*m + d, giving
    Hx = [H (x) I_n | I_m (x) H^T] and Hz = [I_n (x) H | H^T (x) I_m].
    """

    Hx: BinaryMatrix
    Hz: BinaryMatrix
    n_qubits: int
    n_xchecks: int
    n_zchecks: int
    k: int
    d: int | None
    base: ClassicalCode
    qubit_xchecks: list[np.ndarray]
    qubit_zchecks: list[np.ndarray]
    xcheck_qubits: list[np.ndarray]
    zcheck_qubits: list[np.ndarray]
    _hx_rowspace: RowSpace | None = field(default=None, repr=False, compare=False)

    @property
    def hx_rowspace(self) -> RowSpace:
        if self._hx_rowspace is None:
            self._hx_rowspace = RowSpace(self.Hx)
        return self._hx_rowspace

    def code_id(self) -> str:
        d = self.d if self.d is not None else "?"
        base = self.base
        seed = base.seed if base.seed is not None else "?"
        return f"hgp_n{base.n}_dv{base.dv}_dc{base.dc}_s{seed}_d{d}"


def hgp_product(base: ClassicalCode) -> HgpCode:
    """Hypergraph product of a full-rank base code with itself."""
    H = base.H.to_dense()
    m, n = H.shape
    if rank(base.H) != m:
        raise ValueError("base parity-check matrix must be full rank")

    hx = np.hstack([np.kron(H, np.eye(n, dtype=np.uint8)), np.kron(np.eye(m, dtype=np.uint8), H.T)])
    hz = np.hstack([np.kron(np.eye(n, dtype=np.uint8), H), np.kron(H.T, np.eye(m, dtype=np.uint8))])

    Hx = BinaryMatrix.from_dense(hx)
    Hz = BinaryMatrix.from_dense(hz)
    n_qubits = n * n + m * m
    k = n_qubits - rank(Hx) - rank(Hz)

    qubit_xchecks = [np.nonzero(hx[:, q])[0].astype(np.int32) for q in range(n_qubits)]
    qubit_zchecks = [np.nonzero(hz[:, q])[0].astype(np.int32) for q in range(n_qubits)]
    xcheck_qubits = [np.nonzero(hx[r])[0].astype(np.int32) for r in range(hx.shape[0])]
    zcheck_qubits = [np.nonzero(hz[r])[0].astype(np.int32) for r in range(hz.shape[0])]

    return HgpCode(
        Hx=Hx,
        Hz=Hz,
        n_qubits=n_qubits,
        n_xchecks=hx.shape[0],
        n_zchecks=hz.shape[0],
        k=k,
        d=base.d,
        base=base,
        qubit_xchecks=qubit_xchecks,
        qubit_zchecks=qubit_zchecks,
        xcheck_qubits=xcheck_qubits,
        zcheck_qubits=zcheck_qubits,
    )


def min_weight_invisible_error(
    code: HgpCode, visible_zchecks: np.ndarray, w_max: int
) -> int | None:
    """Smallest weight <= w_max of an X error with zero syndrome on the given
    Z-checks that is not a stabilizer (not in the row space of Hx).

    Exhaustive over qubit subsets; None when the cutoff is reached.
    """
    rowspace = code.hx_rowspace
    visible = np.zeros(code.n_zchecks, dtype=bool)
    visible[np.asarray(visible_zchecks, dtype=np.int64)] = True
    col_syn = []
    for q in range(code.n_qubits):
        zs = code.qubit_zchecks[q]
        mask = 0
        for z in zs[visible[zs]]:
            mask |= 1 << int(z)
        col_syn.append(mask)
    for w in range(1, w_max + 1):
        for combo in combinations(range(code.n_qubits), w):
            acc = 0
            for q in combo:
                acc ^= col_syn[q]
            if acc:
                continue
            e = BitVector.from_indices(code.n_qubits, combo)
            if not rowspace.contains(e):
                return w
    return None


def quantum_distance_bruteforce(code: HgpCode, w_max: int) -> int | None:
    """Distance restricted to X-type operators, by exhaustive search up to w_max."""
    return min_weight_invisible_error(code, np.arange(code.n_zchecks), w_max)


PathLike = Union[str, Path]


def save_code(code: ClassicalCode, dest: PathLike | TextIO) -> None:
    """Write the "n k d dv dc seed" header and the parity-check matrix."""
    if isinstance(dest, (str, Path)):
        with open(dest, "w") as f:
            save_code(code, f)
        return
    d = "-" if code.d is None else str(code.d)
    seed = "-" if code.seed is None else str(code.seed)
    dest.write(f"{code.n} {code.k} {d} {code.dv} {code.dc} {seed}\n")
    save_matrix(code.H, dest)


def load_code(src: PathLike | TextIO) -> ClassicalCode:
    if isinstance(src, (str, Path)):
        with open(src) as f:
            return load_code(f)
    parts = src.readline().split()
    if len(parts) != 6:
        raise ValueError(f"bad code header: expected 'n k d dv dc seed', got {parts!r}")
    n, k = int(parts[0]), int(parts[1])
    d = None if parts[2] == "-" else int(parts[2])
    dv, dc = int(parts[3]), int(parts[4])
    seed = None if parts[5] == "-" else int(parts[5])
    H = load_matrix(src)
    code = ClassicalCode(H=H, n=n, k=k, dv=dv, dc=dc, d=d, seed=seed)
    if H.cols != n or H.cols - rank(H) != k:
        raise ValueError("code header is inconsistent with the stored matrix")
    return code
