"""Exact dense linear algebra over Z/pZ.

Matrices are numpy int64 arrays of canonical residues.  Everything
downstream (ideal interpolation, Koszul strand homology) reduces to
three primitives implemented here: matrix product, rank, and kernel
basis, all exact and bit-reproducible.

Speed notes.  The product is computed through float64 BLAS: for small
primes a single dgemm is exact because every partial sum stays below
2**53, and for primes up to 2**31 the factors are split into 16-bit
halves so that three dgemms reconstruct the exact product.  Rank uses
blocked Gaussian elimination whose trailing updates are such products,
which is what makes ~2500**2 eliminations run in seconds.  Pivoting is
always "first nonzero in column order", so echelon forms, kernels and
ranks are deterministic across runs and platforms.
"""

from __future__ import annotations

import numpy as np

from .gfp import Fp

# Max inner dimension for which the 16-bit split product is exact
# (sums bounded by k * 2**32 < 2**53).
_SPLIT_K_LIMIT = 1 << 21


def _as_residues(a, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {a.shape}")
    if a.size and (a.min() < 0 or a.max() >= p):
        a = a % p
    return a


def gf_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) mod p for int64 residue arrays."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    m, k = a.shape
    k2, n = b.shape
    if k != k2:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    if m == 0 or n == 0 or k == 0:
        return np.zeros((m, n), dtype=np.int64)
    if k * (p - 1) * (p - 1) < (1 << 53):
        c = a.astype(np.float64) @ b.astype(np.float64)
        return c.astype(np.int64) % p
    if k > _SPLIT_K_LIMIT:
        raise ValueError(f"inner dimension {k} too large for exact split product")
    a1 = (a >> 16).astype(np.float64)
    a0 = (a & 0xFFFF).astype(np.float64)
    b1 = (b >> 16).astype(np.float64)
    b0 = (b & 0xFFFF).astype(np.float64)
    hi = (a1 @ b1).astype(np.int64) % p
    mid = ((a1 @ b0) + (a0 @ b1)).astype(np.int64) % p
    lo = (a0 @ b0).astype(np.int64) % p
    return (hi * ((1 << 32) % p) + mid * ((1 << 16) % p) + lo) % p


def _unit_lower_apply(lmul: np.ndarray, t: np.ndarray, p: int) -> None:
    """In place, replace t by the result of sequentially applying
    ``row_i -= lmul[i, j] * row_j`` for j < i (i.e. solve the unit
    lower-triangular system (I + L) x = t)."""
    k = lmul.shape[0]
    if k <= 32:
        for j in range(k - 1):
            col = lmul[j + 1 :, j]
            if col.any():
                t[j + 1 :] = (t[j + 1 :] - col[:, None] * t[j]) % p
        return
    h = k // 2
    _unit_lower_apply(lmul[:h, :h], t[:h], p)
    t[h:] = (t[h:] - gf_matmul(lmul[h:, :h], t[:h], p)) % p
    _unit_lower_apply(lmul[h:, h:], t[h:], p)


def gf_rank(a: np.ndarray, p: int, window: int = 96) -> int:
    """Rank over Z/pZ via blocked forward elimination.

    Pivots are chosen first-nonzero in column order; multipliers are
    stored in place below each pivot and pushed to the trailing columns
    one window at a time through gf_matmul, so the bulk of the work is
    exact BLAS.
    """
    a = _as_residues(a, p).copy()
    m, n = a.shape
    if m == 0 or n == 0:
        return 0
    r = 0
    c0 = 0
    while c0 < n and r < m:
        c1 = min(c0 + window, n)
        r0 = r
        piv_cols = []
        for c in range(c0, c1):
            nz = np.flatnonzero(a[r:m, c])
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                a[[r, i], :] = a[[i, r], :]
            inv = pow(int(a[r, c]), -1, p)
            if r + 1 < m:
                f = a[r + 1 : m, c] * inv % p
                a[r + 1 : m, c + 1 : c1] = (
                    a[r + 1 : m, c + 1 : c1] - f[:, None] * a[r, c + 1 : c1]
                ) % p
                a[r + 1 : m, c] = f  # keep multipliers for the block update
            piv_cols.append(c)
            r += 1
            if r == m:
                break
        k = r - r0
        if k and c1 < n:
            lower = a[r0:m, piv_cols]
            trail = a[r0:r, c1:n]
            _unit_lower_apply(np.tril(lower[:k], -1), trail, p)
            if r < m:
                a[r:m, c1:n] = (a[r:m, c1:n] - gf_matmul(lower[k:], trail, p)) % p
        c0 = c1
    return r


def gf_rref(a: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form and pivot columns.

    Unblocked but row-vectorized; meant for the small interpolation and
    basis-change matrices, not for the big strand differentials.
    """
    r_mat = _as_residues(a, p).copy()
    m, n = r_mat.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(r_mat[r:m, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            r_mat[[r, i], :] = r_mat[[i, r], :]
        inv = pow(int(r_mat[r, c]), -1, p)
        r_mat[r] = r_mat[r] * inv % p
        col = r_mat[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            r_mat[rows] = (r_mat[rows] - col[rows, None] * r_mat[r]) % p
        pivots.append(c)
        r += 1
    return r_mat, tuple(pivots)


def _kernel_from_rref(r_mat: np.ndarray, pivots: tuple[int, ...], p: int) -> np.ndarray:
    n = r_mat.shape[1]
    piv_set = set(pivots)
    free = [c for c in range(n) if c not in piv_set]
    ker = np.zeros((len(free), n), dtype=np.int64)
    for idx, c in enumerate(free):
        ker[idx, c] = 1
        for j, pc in enumerate(pivots):
            ker[idx, pc] = -int(r_mat[j, c]) % p
    return ker


def gf_kernel(a: np.ndarray, p: int) -> np.ndarray:
    """Rows form a deterministic basis of the right null space."""
    a = _as_residues(a, p)
    r_mat, pivots = gf_rref(a, p)
    ker = _kernel_from_rref(r_mat, pivots, p)
    # rank-nullity, and every basis row must actually be annihilated
    assert ker.shape[0] == a.shape[1] - len(pivots)
    if ker.size and a.size:
        assert not gf_matmul(a, ker.T, p).any(), "kernel rows not annihilated"
    return ker


def gf_inverse(a: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix, via rref of [a | I]."""
    a = _as_residues(a, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"matrix not square: {a.shape}")
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    r_mat, pivots = gf_rref(aug, p)
    if pivots != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r_mat[:, n:]


class Matrix:
    """Dense matrix over a fixed prime-field context.

    Entries are canonical residues; instances are treated as immutable
    (the backing array is marked read-only).
    """

    __slots__ = ("field", "a")

    def __init__(self, field: Fp, entries):
        self.field = field
        a = _as_residues(entries, field.p)
        a.flags.writeable = False
        self.a = a

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_rows(cls, field: Fp, rows) -> "Matrix":
        return cls(field, np.array(rows, dtype=np.int64).reshape(len(rows), -1))

    @classmethod
    def zeros(cls, field: Fp, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: Fp, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def random(cls, field: Fp, rows: int, cols: int, rng) -> "Matrix":
        return cls(field, rng.integers(0, field.p, size=(rows, cols), dtype=np.int64))

    # -- basics ----------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.a.T.copy())

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.a.shape == self.a.shape
            and bool(np.array_equal(other.a, self.a))
        )

    def __repr__(self):
        return f"Matrix({self.field!r}, shape={self.a.shape})"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field:
        raise ValueError("matrices over different fields")
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.a.shape} @ {b.a.shape}")
    return Matrix(a.field, gf_matmul(a.a, b.a, a.field.p))


def rank(m: Matrix) -> int:
    return gf_rank(m.a, m.field.p)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    r_mat, pivots = gf_rref(m.a, m.field.p)
    return Matrix(m.field, r_mat), pivots


def kernel_basis(m: Matrix) -> Matrix:
    return Matrix(m.field, gf_kernel(m.a, m.field.p))
