"""Bit-packed dense linear algebra over GF(2).

Vectors and matrices store bits LSB-first in little-endian uint64 words,
row-major for matrices.  All operations treat their inputs as immutable:
rank, membership and nullspace work on private copies, so shared matrices
are safe to use from many threads.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import Iterable, TextIO, Union

import numpy as np

WORD_BITS = 64


def _n_words(n_bits: int) -> int:
    return (n_bits + WORD_BITS - 1) // WORD_BITS


def _pack_bits(bits: np.ndarray, n_bits: int) -> np.ndarray:
    """Pack a 0/1 array of length n_bits into uint64 words."""
    nw = _n_words(n_bits)
    buf = np.zeros(nw * 8, dtype=np.uint8)
    if n_bits:
        packed = np.packbits(np.asarray(bits, dtype=np.uint8)[:n_bits], bitorder="little")
        buf[: packed.size] = packed
    return buf.view(np.uint64)


def _unpack_bits(words: np.ndarray, n_bits: int) -> np.ndarray:
    if n_bits == 0:
        return np.zeros(0, dtype=np.uint8)
    return np.unpackbits(words.view(np.uint8), bitorder="little")[:n_bits].copy()


def _tail_mask(n_bits: int) -> np.uint64:
    """Mask of valid bits in the last word (all-ones if n_bits % 64 == 0)."""
    rem = n_bits % WORD_BITS
    if rem == 0:
        return np.uint64(0xFFFFFFFFFFFFFFFF)
    return np.uint64((1 << rem) - 1)


class BitVector:
    """Packed bit vector of fixed length over GF(2)."""

    __slots__ = ("n", "words")

    def __init__(self, n: int, words: np.ndarray | None = None):
        self.n = int(n)
        if words is None:
            words = np.zeros(_n_words(self.n), dtype=np.uint64)
        self.words = words

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits, dtype=np.uint8)
        return cls(arr.size, _pack_bits(arr, arr.size))

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "BitVector":
        v = cls(n)
        for i in indices:
            v.flip(int(i))
        return v

    def copy(self) -> "BitVector":
        return BitVector(self.n, self.words.copy())

    def get(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"bit index {i} out of range for length {self.n}")
        w, b = divmod(i, WORD_BITS)
        return int(self.words[w] >> np.uint64(b)) & 1

    def flip(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"bit index {i} out of range for length {self.n}")
        w, b = divmod(i, WORD_BITS)
        self.words[w] ^= np.uint64(1) << np.uint64(b)

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")
        return BitVector(self.n, self.words ^ other.words)

    def __ixor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")
        self.words ^= other.words
        return self

    def weight(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def is_zero(self) -> bool:
        return not self.words.any()

    def to_bits(self) -> np.ndarray:
        return _unpack_bits(self.words, self.n)

    def indices(self) -> np.ndarray:
        return np.nonzero(self.to_bits())[0]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.words, other.words))

    def __repr__(self) -> str:
        return f"BitVector(n={self.n}, weight={self.weight()})"


class BinaryMatrix:
    """Packed row-major matrix over GF(2).

    Bits beyond `cols` in the last word of each row are kept zero.
    """

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        self.rows = int(rows)
        self.cols = int(cols)
        if words is None:
            words = np.zeros((self.rows, _n_words(self.cols)), dtype=np.uint64)
        self.words = words

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BinaryMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        m = cls(n, n)
        for i in range(n):
            w, b = divmod(i, WORD_BITS)
            m.words[i, w] = np.uint64(1) << np.uint64(b)
        return m

    @classmethod
    def from_dense(cls, arr: np.ndarray) -> "BinaryMatrix":
        arr = np.asarray(arr, dtype=np.uint8) & 1
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        rows, cols = arr.shape
        nw = _n_words(cols)
        buf = np.zeros((rows, nw * 8), dtype=np.uint8)
        if cols:
            packed = np.packbits(arr, axis=1, bitorder="little")
            buf[:, : packed.shape[1]] = packed
        return cls(rows, cols, buf.view(np.uint64))

    @classmethod
    def from_rows(cls, rows: list[BitVector], cols: int | None = None) -> "BinaryMatrix":
        if cols is None:
            if not rows:
                raise ValueError("cols is required for an empty row list")
            cols = rows[0].n
        m = cls(len(rows), cols)
        for i, r in enumerate(rows):
            if r.n != cols:
                raise ValueError(f"row {i} has length {r.n}, expected {cols}")
            m.words[i] = r.words
        return m

    def to_dense(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros((0, self.cols), dtype=np.uint8)
        flat = np.unpackbits(self.words.view(np.uint8), axis=1, bitorder="little")
        return flat[:, : self.cols].copy()

    def copy(self) -> "BinaryMatrix":
        return BinaryMatrix(self.rows, self.cols, self.words.copy())

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.words[i].copy())

    def column(self, j: int) -> BitVector:
        if not 0 <= j < self.cols:
            raise IndexError(f"column {j} out of range")
        w, b = divmod(j, WORD_BITS)
        bits = (self.words[:, w] >> np.uint64(b)) & np.uint64(1)
        return BitVector.from_bits(bits.astype(np.uint8))

    def row_weights(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros(0, dtype=np.int64)
        return np.bitwise_count(self.words).sum(axis=1).astype(np.int64)

    def col_weights(self) -> np.ndarray:
        return self.to_dense().sum(axis=0, dtype=np.int64)

    def append_row(self, v: BitVector) -> "BinaryMatrix":
        if v.n != self.cols:
            raise ValueError(f"length mismatch: {v.n} vs {self.cols} columns")
        words = np.vstack([self.words, v.words[None, :]])
        return BinaryMatrix(self.rows + 1, self.cols, words)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and bool(np.array_equal(self.words, other.words))
        )

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.rows}x{self.cols})"


def syndrome(H: BinaryMatrix, e: BitVector) -> BitVector:
    """H @ e over GF(2); the length of the result equals H.rows."""
    if e.n != H.cols:
        raise ValueError(f"vector length {e.n} does not match {H.cols} columns")
    if H.rows == 0:
        return BitVector.zeros(0)
    parities = np.bitwise_count(H.words & e.words[None, :]).sum(axis=1) & 1
    return BitVector.from_bits(parities.astype(np.uint8))


def _eliminate(words: np.ndarray, cols: int, reduce_above: bool) -> tuple[np.ndarray, list[int]]:
    """In-place Gaussian elimination; returns (words, pivot column list)."""
    rows = words.shape[0]
    pivots: list[int] = []
    r = 0
    for j in range(cols):
        if r == rows:
            break
        w, b = divmod(j, WORD_BITS)
        shift = np.uint64(b)
        col = (words[r:, w] >> shift) & np.uint64(1)
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
        if reduce_above:
            hits = (words[:, w] >> shift) & np.uint64(1)
            hits[r] = 0
            sel = np.nonzero(hits)[0]
        else:
            sel = r + 1 + np.nonzero((words[r + 1 :, w] >> shift) & np.uint64(1))[0]
        if sel.size:
            words[sel] ^= words[r]
        pivots.append(j)
        r += 1
    return words, pivots


def rank(M: BinaryMatrix) -> int:
    """GF(2) row rank; the input is unmodified."""
    if M.rows == 0 or M.cols == 0:
        return 0
    _, pivots = _eliminate(M.words.copy(), M.cols, reduce_above=False)
    return len(pivots)


class RowSpace:
    """Reduced row echelon form of a matrix, for repeated membership tests."""

    def __init__(self, M: BinaryMatrix):
        self.cols = M.cols
        words, pivots = _eliminate(M.words.copy(), M.cols, reduce_above=True)
        self.pivots = pivots
        self.words = words[: len(pivots)].copy()

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def contains(self, v: BitVector) -> bool:
        if v.n != self.cols:
            raise ValueError(f"vector length {v.n} does not match {self.cols} columns")
        w = v.words.copy()
        for i, j in enumerate(self.pivots):
            wi, b = divmod(j, WORD_BITS)
            if (w[wi] >> np.uint64(b)) & np.uint64(1):
                w ^= self.words[i]
        return not w.any()

    def reduce(self, v: BitVector) -> BitVector:
        """Canonical coset representative of v modulo the row space."""
        out = v.copy()
        for i, j in enumerate(self.pivots):
            wi, b = divmod(j, WORD_BITS)
            if (out.words[wi] >> np.uint64(b)) & np.uint64(1):
                out.words ^= self.words[i]
        return out


def row_space_member(M: BinaryMatrix, v: BitVector) -> bool:
    """True iff v is a GF(2) linear combination of the rows of M."""
    if v.n != M.cols:
        raise ValueError(f"vector length {v.n} does not match {M.cols} columns")
    return RowSpace(M).contains(v)


def nullspace_basis(M: BinaryMatrix) -> BinaryMatrix:
    """Rows form a basis of ker(M); row count is cols - rank(M)."""
    cols = M.cols
    words, pivots = _eliminate(M.words.copy(), cols, reduce_above=True)
    pivot_set = set(pivots)
    free = [j for j in range(cols) if j not in pivot_set]
    basis = BinaryMatrix.zeros(len(free), cols)
    for bi, f in enumerate(free):
        fw, fb = divmod(f, WORD_BITS)
        basis.words[bi, fw] |= np.uint64(1) << np.uint64(fb)
        for i, p in enumerate(pivots):
            if (words[i, fw] >> np.uint64(fb)) & np.uint64(1):
                pw, pb = divmod(p, WORD_BITS)
                basis.words[bi, pw] |= np.uint64(1) << np.uint64(pb)
    return basis


PathLike = Union[str, Path]


def save_matrix(M: BinaryMatrix, dest: PathLike | TextIO) -> None:
    """Write the plain-text format: a "rows cols" header then one 0/1 row per line."""
    if isinstance(dest, (str, Path)):
        with open(dest, "w") as f:
            save_matrix(M, f)
        return
    dest.write(f"{M.rows} {M.cols}\n")
    dense = M.to_dense()
    for i in range(M.rows):
        dest.write("".join("1" if b else "0" for b in dense[i]))
        dest.write("\n")


def load_matrix(src: PathLike | TextIO) -> BinaryMatrix:
    if isinstance(src, (str, Path)):
        with open(src) as f:
            return load_matrix(f)
    header = src.readline().split()
    if len(header) != 2:
        raise ValueError(f"bad matrix header: expected 'rows cols', got {header!r}")
    rows, cols = int(header[0]), int(header[1])
    dense = np.zeros((rows, cols), dtype=np.uint8)
    for i in range(rows):
        line = src.readline().strip()
        if len(line) != cols or set(line) - {"0", "1"}:
            raise ValueError(f"bad matrix row {i}: expected {cols} characters of 0/1")
        dense[i] = np.frombuffer(line.encode(), dtype=np.uint8) - ord("0")
    return BinaryMatrix.from_dense(dense)


def matrix_to_text(M: BinaryMatrix) -> str:
    buf = io.StringIO()
    save_matrix(M, buf)
    return buf.getvalue()
