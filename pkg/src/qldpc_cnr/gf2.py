"""Sparse GF(2) linear algebra: syndromes, rank, nullspace, row-space membership.

Bit vectors are plain numpy ``uint8`` arrays with values in {0, 1}; helpers
:func:`from_support` / :func:`support` convert to and from sorted index sets.
The matrix type keeps both row and column adjacency so the same object can
back message passing, Tanner-graph analysis and alist round-trips.

Elimination-based routines (rank, membership, nullspace) densify into
64-bit-packed words internally; everything in scope is at most a couple of
thousand columns, so cubic elimination is cheap.
"""

from __future__ import annotations

import numpy as np


def from_support(length: int, support) -> np.ndarray:
    """Build a bit vector of ``length`` with ones at ``support``.

    Indices must be strictly increasing and less than ``length``.
    """
    idx = np.asarray(sorted(set(int(i) for i in support)), dtype=np.int64)
    if len(idx) != len(list(support)):
        raise ValueError("duplicate indices in support")
    if len(idx) and (idx[0] < 0 or idx[-1] >= length):
        raise ValueError(f"support index out of range for length {length}")
    v = np.zeros(length, dtype=np.uint8)
    v[idx] = 1
    return v


def support(v: np.ndarray) -> list[int]:
    """Sorted indices of the nonzero entries of a bit vector."""
    return [int(i) for i in np.flatnonzero(np.asarray(v) & 1)]


class SparseBinaryMatrix:
    """Binary matrix stored as per-row and per-column sorted index lists.

    Both adjacencies describe the same entry set; ``check_consistent``
    verifies the round trip. Instances are immutable after construction and
    safe to share across concurrent decodes.
    """

    __slots__ = ("rows", "cols", "row_support", "col_support", "_echelon")

    def __init__(self, rows: int, cols: int, row_support: list[np.ndarray]):
        self._echelon = None
        if len(row_support) != rows:
            raise ValueError("row_support length does not match row count")
        self.rows = rows
        self.cols = cols
        self.row_support = []
        col_lists: list[list[int]] = [[] for _ in range(cols)]
        for r, sup in enumerate(row_support):
            arr = np.unique(np.asarray(sup, dtype=np.int64))
            if len(arr) and (arr[0] < 0 or arr[-1] >= cols):
                raise ValueError(f"row {r}: column index out of range")
            self.row_support.append(arr)
            for c in arr:
                col_lists[c].append(r)
        self.col_support = [np.asarray(c, dtype=np.int64) for c in col_lists]

    @classmethod
    def from_dense(cls, arr) -> "SparseBinaryMatrix":
        a = np.asarray(arr, dtype=np.uint8) & 1
        if a.ndim != 2:
            raise ValueError("expected a 2-D array")
        return cls(a.shape[0], a.shape[1], [np.flatnonzero(a[r]) for r in range(a.shape[0])])

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for r, sup in enumerate(self.row_support):
            out[r, sup] = 1
        return out

    def check_consistent(self) -> bool:
        """True iff row and column adjacencies describe the same entries."""
        seen = set()
        for r, sup in enumerate(self.row_support):
            if len(np.unique(sup)) != len(sup):
                return False
            seen.update((r, int(c)) for c in sup)
        dual = set()
        for c, sup in enumerate(self.col_support):
            if len(np.unique(sup)) != len(sup):
                return False
            dual.update((int(r), c) for r in sup)
        return seen == dual

    @property
    def entry_count(self) -> int:
        return sum(len(s) for s in self.row_support)

    def row_weights(self) -> np.ndarray:
        return np.array([len(s) for s in self.row_support], dtype=np.int64)

    def col_weights(self) -> np.ndarray:
        return np.array([len(s) for s in self.col_support], dtype=np.int64)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseBinaryMatrix):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and all(np.array_equal(a, b)
                        for a, b in zip(self.row_support, other.row_support)))

    def __repr__(self) -> str:
        return f"SparseBinaryMatrix({self.rows}x{self.cols}, {self.entry_count} entries)"


def hstack(left: SparseBinaryMatrix, right: SparseBinaryMatrix) -> SparseBinaryMatrix:
    """Concatenate two matrices side by side (same row count)."""
    if left.rows != right.rows:
        raise ValueError("row count mismatch in hstack")
    sup = [np.concatenate([left.row_support[r], right.row_support[r] + left.cols])
           for r in range(left.rows)]
    return SparseBinaryMatrix(left.rows, left.cols + right.cols, sup)


def syndrome(H: SparseBinaryMatrix, e: np.ndarray) -> np.ndarray:
    """Parity of each row's overlap with ``e``: s = H e^T over GF(2)."""
    e = np.asarray(e, dtype=np.uint8)
    if e.shape != (H.cols,):
        raise ValueError(f"error vector length {e.shape} does not match {H.cols} columns")
    s = np.zeros(H.rows, dtype=np.uint8)
    for q in np.flatnonzero(e):
        s[H.col_support[q]] ^= 1
    return s


def delete_rows(H: SparseBinaryMatrix, rows) -> tuple[SparseBinaryMatrix, np.ndarray]:
    """Remove the given rows, returning the new matrix and an old-to-new map.

    The map has one entry per original row: the new row index, or -1 for a
    deleted row. Syndromes restrict through it as ``s[row_map >= 0]``.
    The original matrix is left untouched; sub-decoding needs both.
    """
    drop = set(int(r) for r in rows)
    for r in drop:
        if r < 0 or r >= H.rows:
            raise IndexError(f"row index {r} out of range")
    row_map = np.full(H.rows, -1, dtype=np.int64)
    kept = [r for r in range(H.rows) if r not in drop]
    row_map[kept] = np.arange(len(kept))
    sub = SparseBinaryMatrix(len(kept), H.cols, [H.row_support[r] for r in kept])
    return sub, row_map


# -- packed elimination ----------------------------------------------------

def _pack_rows(dense: np.ndarray) -> np.ndarray:
    """Pack uint8 rows into uint64 words, 64 columns per word."""
    m, n = dense.shape
    words = (n + 63) // 64
    padded = np.zeros((m, words * 64), dtype=np.uint8)
    padded[:, :n] = dense
    bits = padded.reshape(m, words, 8, 8)
    # little-endian within each byte and word
    byte = np.packbits(bits, axis=-1, bitorder="little").reshape(m, words, 8)
    return byte.view(np.uint64).reshape(m, words)


def _packed_from(H: SparseBinaryMatrix) -> np.ndarray:
    m = H.rows
    words = (H.cols + 63) // 64
    out = np.zeros((m, words), dtype=np.uint64)
    for r, sup in enumerate(H.row_support):
        for c in sup:
            out[r, c >> 6] |= np.uint64(1) << np.uint64(c & 63)
    return out


def _pack_vec(v: np.ndarray) -> np.ndarray:
    return _pack_rows(np.asarray(v, dtype=np.uint8).reshape(1, -1))[0]


def _packed_echelon(packed: np.ndarray, ncols: int) -> tuple[np.ndarray, list[int]]:
    """Row-reduce packed rows in place (copy); return (reduced rows, pivot cols)."""
    A = packed.copy()
    m = A.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        w, b = c >> 6, np.uint64(1) << np.uint64(c & 63)
        piv = -1
        for i in range(r, m):
            if A[i, w] & b:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        hit = np.flatnonzero(A[:, w] & b)
        hit = hit[hit != r]
        A[hit] ^= A[r]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A[:r], pivots


def _cached_echelon(H: SparseBinaryMatrix) -> tuple[np.ndarray, list[int]]:
    # matrices are immutable, so the reduced form can live on the instance
    if H._echelon is None:
        H._echelon = _packed_echelon(_packed_from(H), H.cols)
    return H._echelon


def rank(H: SparseBinaryMatrix) -> int:
    """GF(2) rank via packed Gaussian elimination."""
    if H.rows == 0 or H.cols == 0:
        return 0
    _, pivots = _cached_echelon(H)
    return len(pivots)


def in_rowspace(H: SparseBinaryMatrix, v: np.ndarray) -> bool:
    """True iff some GF(2) combination of rows of H equals ``v``."""
    v = np.asarray(v, dtype=np.uint8)
    if v.shape != (H.cols,):
        raise ValueError("vector length does not match column count")
    if not v.any():
        return True
    if H.rows == 0:
        return False
    ref, pivots = _cached_echelon(H)
    x = _pack_vec(v)
    for i, c in enumerate(pivots):
        if x[c >> 6] & (np.uint64(1) << np.uint64(c & 63)):
            x ^= ref[i]
    return not x.any()


def reduce_mod_rowspace(H: SparseBinaryMatrix, vectors: list[np.ndarray]) -> list[np.ndarray]:
    """Reduce each vector by the row space of H; zero results are dropped."""
    if not vectors:
        return []
    ref, pivots = _cached_echelon(H)
    X = _pack_rows(np.asarray(vectors, dtype=np.uint8))
    for i, c in enumerate(pivots):
        w, b = c >> 6, np.uint64(1) << np.uint64(c & 63)
        hit = (X[:, w] & b).astype(bool)
        X[hit] ^= ref[i]
    return [_unpack_vec(x, H.cols) for x in X if x.any()]


def _unpack_vec(packed: np.ndarray, ncols: int) -> np.ndarray:
    by = packed.view(np.uint8)
    bits = np.unpackbits(by, bitorder="little")
    return bits[:ncols].astype(np.uint8)


def independent_rows(vectors: list[np.ndarray], ncols: int) -> list[np.ndarray]:
    """Row-reduce the stacked vectors and return an independent spanning set."""
    if not vectors:
        return []
    packed = _pack_rows(np.asarray(vectors, dtype=np.uint8))
    ref, _ = _packed_echelon(packed, ncols)
    return [_unpack_vec(row, ncols) for row in ref]


def nullspace_basis(H: SparseBinaryMatrix) -> list[np.ndarray]:
    """Basis of the right kernel {x : H x^T = 0}; size = cols - rank."""
    n = H.cols
    if n == 0:
        return []
    if H.rows == 0:
        return [from_support(n, [i]) for i in range(n)]
    ref, pivots = _cached_echelon(H)
    dense = np.stack([_unpack_vec(row, n) for row in ref]) if len(ref) else \
        np.zeros((0, n), dtype=np.uint8)
    free = np.setdiff1d(np.arange(n), np.asarray(pivots, dtype=np.int64))
    basis = np.zeros((len(free), n), dtype=np.uint8)
    basis[np.arange(len(free)), free] = 1
    if len(pivots):
        basis[:, np.asarray(pivots, dtype=np.int64)] = dense[:, free].T
    return [basis[i] for i in range(len(free))]
