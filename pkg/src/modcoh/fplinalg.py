"""Exact dense linear algebra over the prime field F_p.

Everything downstream (modules, resolutions, cohomology maps) reduces to
rank / kernel / solve over F_p, so the contracts here are deliberately
rigid: reduced row echelon form is the *unique* RREF with pivots chosen
left-to-right, which makes every derived basis canonical and reproducible.

A bit-packed GF(2) elimination path kicks in for wide matrices; it is an
optimization only, the computed RREF is identical by uniqueness.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, NotContained

# Use the packed GF(2) path once rows are at least this wide.
_GF2_PACK_THRESHOLD = 192


class FpMatrix:
    """Dense matrix with entries reduced mod a prime p."""

    __slots__ = ("p", "data")

    def __init__(self, p: int, data) -> None:
        self.p = int(p)
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected 2-d data, got shape {arr.shape}")
        self.data = np.mod(arr, self.p)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.data.shape == other.data.shape \
            and bool(np.array_equal(self.data, other.data))

    def __hash__(self):  # mutable payload; not hashable
        raise TypeError("FpMatrix is not hashable")

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, shape={self.data.shape})"


class FpSubspace:
    """Subspace of F_p^n held as a canonical RREF row basis."""

    __slots__ = ("p", "ambient_dim", "basis")

    def __init__(self, p: int, ambient_dim: int, basis_rows) -> None:
        self.p = int(p)
        self.ambient_dim = int(ambient_dim)
        rows = np.asarray(basis_rows, dtype=np.int64).reshape(-1, ambient_dim)
        reduced, pivots = _rref(rows % p, p)
        self.basis = reduced[: len(pivots)]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains_vector(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p
        if v.shape != (self.ambient_dim,):
            raise DimensionMismatch("vector has wrong length")
        return not residual_rows(v.reshape(1, -1), self.basis, self.p).any()

    def contains(self, other: "FpSubspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        if other.dim == 0:
            return True
        return not residual_rows(other.basis, self.basis, self.p).any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpSubspace):
            return NotImplemented
        return self.p == other.p and self.ambient_dim == other.ambient_dim \
            and bool(np.array_equal(self.basis, other.basis))

    def __hash__(self):
        raise TypeError("FpSubspace is not hashable")

    def __repr__(self) -> str:
        return f"FpSubspace(p={self.p}, ambient={self.ambient_dim}, dim={self.dim})"


# -- array-level kernels ----------------------------------------------------

def _rref_mod(a: np.ndarray, p: int):
    """Generic modular Gauss-Jordan; returns (rref, pivot column list)."""
    a = np.mod(a.astype(np.int64, copy=True), p)
    m, n = a.shape
    r = 0
    pivots: list[int] = []
    for col in range(n):
        if r == m:
            break
        sub = a[r:, col]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        entry = int(a[r, col])
        if entry != 1:
            a[r] = (a[r] * pow(entry, p - 2, p)) % p
        others = np.nonzero(a[:, col])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, col], a[r])) % p
        pivots.append(col)
        r += 1
    return a, pivots


def _pack_gf2(a: np.ndarray) -> np.ndarray:
    return np.packbits(a.astype(np.uint8), axis=1, bitorder="little")


def _unpack_gf2(packed: np.ndarray, ncols: int) -> np.ndarray:
    out = np.unpackbits(packed, axis=1, bitorder="little", count=ncols)
    return out.astype(np.int64)


def _rref_gf2(a: np.ndarray, p: int):
    """Bit-packed Gauss-Jordan over GF(2); same result as _rref_mod."""
    m, n = a.shape
    packed = _pack_gf2(np.mod(a, 2))
    r = 0
    pivots: list[int] = []
    for col in range(n):
        if r == m:
            break
        word, bit = col >> 3, np.uint8(1 << (col & 7))
        hits = np.nonzero(packed[r:, word] & bit)[0]
        if hits.size == 0:
            continue
        piv = r + int(hits[0])
        if piv != r:
            packed[[r, piv]] = packed[[piv, r]]
        mask = (packed[:, word] & bit).astype(bool)
        mask[r] = False
        if mask.any():
            packed[mask] ^= packed[r]
        pivots.append(col)
        r += 1
    return _unpack_gf2(packed, n), pivots


def _rref(a: np.ndarray, p: int):
    if p == 2 and a.shape[1] >= _GF2_PACK_THRESHOLD and a.shape[0] > 0:
        return _rref_gf2(a, p)
    return _rref_mod(a, p)


def rref_array(a, p: int):
    """RREF of a raw array; returns (rref array, rank)."""
    a = np.asarray(a, dtype=np.int64)
    reduced, pivots = _rref(a % p, p)
    return reduced, len(pivots)


def rref_pivots(a, p: int):
    a = np.asarray(a, dtype=np.int64)
    return _rref(a % p, p)


def kernel_array(a, p: int) -> np.ndarray:
    """Canonical RREF basis (rows) of the right kernel {v : a @ v = 0}."""
    a = np.asarray(a, dtype=np.int64)
    m, n = a.shape
    reduced, pivots = _rref(a % p, p)
    pivot_set = set(pivots)
    free_cols = [c for c in range(n) if c not in pivot_set]
    if not free_cols:
        return np.zeros((0, n), dtype=np.int64)
    basis = np.zeros((len(free_cols), n), dtype=np.int64)
    for k, fc in enumerate(free_cols):
        basis[k, fc] = 1
        for row_idx, pc in enumerate(pivots):
            basis[k, pc] = (-int(reduced[row_idx, fc])) % p
    reduced_basis, _ = _rref(basis, p)
    return reduced_basis[: len(free_cols)]


def solve_array(a, b, p: int):
    """One solution of a @ x = b (free variables zero), or None."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    if b.ndim != 1 or b.shape[0] != a.shape[0]:
        raise DimensionMismatch(
            f"rhs length {b.shape} does not match {a.shape[0]} rows")
    aug = np.hstack([a, b.reshape(-1, 1)])
    reduced, pivots = _rref(aug, p)
    n = a.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row_idx, pc in enumerate(pivots):
        x[pc] = reduced[row_idx, n]
    return x


def solve_batch(a, rhs_cols, p: int):
    """Solve a @ X = rhs for many right-hand sides at once.

    rhs_cols has one rhs per column.  Returns X, or None if any column is
    inconsistent.  Same free-variables-zero rule as solve_array.
    """
    a = np.asarray(a, dtype=np.int64) % p
    rhs = np.asarray(rhs_cols, dtype=np.int64) % p
    if rhs.shape[0] != a.shape[0]:
        raise DimensionMismatch("rhs row count does not match matrix")
    n = a.shape[1]
    aug = np.hstack([a, rhs])
    reduced, pivots = _rref(aug, p)
    rank_a = sum(1 for c in pivots if c < n)
    if rank_a != len(pivots):
        return None
    x = np.zeros((n, rhs.shape[1]), dtype=np.int64)
    for row_idx, pc in enumerate(pivots):
        x[pc] = reduced[row_idx, n:]
    return x


def residual_rows(rows, rref_basis, p: int) -> np.ndarray:
    """Reduce rows against an RREF basis.

    Valid only when rref_basis is in reduced echelon form: the coordinates
    of any member of the row span are exactly its entries at the pivot
    columns, so one matrix product does the reduction.
    """
    rows = np.asarray(rows, dtype=np.int64) % p
    if rref_basis.shape[0] == 0:
        return rows
    pivot_cols = [int(np.nonzero(r)[0][0]) for r in rref_basis]
    coeffs = rows[:, pivot_cols]
    return (rows - coeffs @ rref_basis) % p


class RowSpan:
    """Incrementally grown row space with membership tests.

    Used for greedy generator pruning: scan candidate vectors, keep the
    ones outside the current span, fold in batches of new rows.
    """

    def __init__(self, p: int, ambient_dim: int) -> None:
        self.p = p
        self.ambient_dim = ambient_dim
        self._basis = np.zeros((0, ambient_dim), dtype=np.int64)

    @property
    def rank(self) -> int:
        return self._basis.shape[0]

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(1, -1)
        return not residual_rows(v, self._basis, self.p).any()

    def add_rows(self, rows) -> None:
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.ambient_dim)
        stacked = np.vstack([self._basis, rows % self.p])
        reduced, pivots = _rref(stacked, self.p)
        self._basis = reduced[: len(pivots)].copy()

    def basis(self) -> np.ndarray:
        return self._basis.copy()


# -- public FpMatrix operations ---------------------------------------------

def rref_rank(M: FpMatrix):
    """Unique reduced row echelon form and rank."""
    reduced, pivots = _rref(M.data, M.p)
    return FpMatrix(M.p, reduced), len(pivots)


def rank(M: FpMatrix) -> int:
    return rref_rank(M)[1]


def kernel_basis(M: FpMatrix) -> FpSubspace:
    """Canonical basis of {v : M v = 0}; dim = cols - rank."""
    basis = kernel_array(M.data, M.p)
    return FpSubspace(M.p, M.cols, basis)


def solve(A: FpMatrix, b):
    """Deterministic solution of A x = b, or None when inconsistent."""
    return solve_array(A.data, b, A.p)


def quotient_dim(U: FpSubspace, W: FpSubspace) -> int:
    """dim U - dim W for a checked inclusion W <= U."""
    if U.p != W.p or U.ambient_dim != W.ambient_dim:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    if not U.contains(W):
        raise NotContained("W is not contained in U")
    return U.dim - W.dim


def matmul(A: FpMatrix, B: FpMatrix) -> FpMatrix:
    if A.p != B.p:
        raise DimensionMismatch("different moduli")
    if A.cols != B.rows:
        raise DimensionMismatch(f"{A.data.shape} @ {B.data.shape}")
    return FpMatrix(A.p, (A.data @ B.data) % A.p)


def identity(p: int, n: int) -> FpMatrix:
    return FpMatrix(p, np.eye(n, dtype=np.int64))
