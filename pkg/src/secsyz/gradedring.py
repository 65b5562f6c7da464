"""Graded pieces of the vanishing ideal and coordinate ring, by interpolation.

For an embedded point set this module computes, per degree k <= 3, the
space I_k of degree-k forms vanishing on all samples (= the degree-k
piece of the saturated homogeneous ideal, for generic samples of an
irreducible variety) and a basis of the quotient piece R_k represented
by evaluation vectors of length N.  The dimension of every R_k is
checked against the hardcoded Hilbert function of the source tag; a
mismatch raises :class:`HilbertCheckError` and is the designated
detector for a center of secant rank <= 2 or degenerate sampling.

Degree 3 is always enough: all six source tags are 3-regular, so the
Betti strands j = i+1, i+2 only involve R_0..R_3.
"""

from __future__ import annotations

import csv

import numpy as np

from .geometry import K_MAX, EmbeddedPointSet, monomials
from .linalg import Matrix, gf_inverse, gf_matmul, gf_rref, _kernel_from_rref


class HilbertCheckError(RuntimeError):
    """Computed dim R_k disagrees with the expected Hilbert function."""

    def __init__(self, source: str, degree: int, expected: int, got: int):
        super().__init__(
            f"Hilbert check failed for {source} in degree {degree}: "
            f"expected {expected}, got {got}"
        )
        self.source = source
        self.degree = degree
        self.expected = expected
        self.got = got


def _evaluation_matrix(coords: np.ndarray, monoms, p: int) -> np.ndarray:
    """N x (number of monomials) matrix of monomial values at the samples."""
    n_pts, nvars = coords.shape
    if not monoms:
        return np.zeros((n_pts, 0), dtype=np.int64)
    max_e = max(max(e) for e in monoms)
    powers = np.empty((nvars, max_e + 1, n_pts), dtype=np.int64)
    powers[:, 0, :] = 1
    for e in range(1, max_e + 1):
        powers[:, e, :] = powers[:, e - 1, :] * coords.T % p
    cols = np.empty((len(monoms), n_pts), dtype=np.int64)
    for idx, exps in enumerate(monoms):
        v = np.ones(n_pts, dtype=np.int64)
        for var, e in enumerate(exps):
            if e:
                v = v * powers[var, e] % p
        cols[idx] = v
    return cols.T.copy()


class GradedData:
    """Per-degree ideal and quotient bases for one point set.

    For each degree k in 0..k_max holds the monomial list of S_k, a
    kernel-row basis of I_k over that monomial order, the pivot
    monomial indices representing R_k, and the N x dim R_k evaluation
    basis.  Multiplication matrices and strand ranks computed later are
    memoized here; the underlying data never changes after interpolate.
    """

    __slots__ = (
        "pts", "field", "k_max", "monoms", "ideal", "r_reps", "r_basis",
        "hilbert", "_solvers", "_mult_cache", "_diff_cache", "_rank_cache",
    )

    def __init__(self, pts, k_max, monoms, ideal, r_reps, r_basis, hilbert):
        self.pts = pts
        self.field = pts.field
        self.k_max = k_max
        self.monoms = monoms
        self.ideal = ideal
        self.r_reps = r_reps
        self.r_basis = r_basis
        self.hilbert = hilbert
        self._solvers = {}
        self._mult_cache = {}
        self._diff_cache = {}
        self._rank_cache = {}

    @property
    def nvars(self) -> int:
        return self.pts.nvars

    def hf(self, k: int) -> int:
        return self.hilbert[k]

    def hilbert_record(self) -> list[tuple[int, int]]:
        return [(k, self.hilbert[k]) for k in range(1, self.k_max + 1)]

    def _solver(self, k: int):
        """Row subset and inverse that express evaluation vectors in the
        R_k basis: coefficients = inv @ vector[rows]."""
        if k not in self._solvers:
            basis = self.r_basis[k]
            _, piv_rows = gf_rref(basis.T, self.field.p)
            rows = np.array(piv_rows)
            inv = gf_inverse(basis[rows], self.field.p)
            self._solvers[k] = (rows, inv)
        return self._solvers[k]

    def coords_in_r_basis(self, k: int, vectors: np.ndarray) -> np.ndarray:
        """Express evaluation vectors (columns) in the stored R_k basis.

        Raises if a vector is outside the span, which cannot happen once
        the Hilbert checks passed.
        """
        p = self.field.p
        rows, inv = self._solver(k)
        coeffs = gf_matmul(inv, vectors[rows], p)
        if not np.array_equal(gf_matmul(self.r_basis[k], coeffs, p), vectors % p):
            raise RuntimeError(
                f"evaluation vector outside the degree-{k} quotient span"
            )
        return coeffs


def interpolate(pts: EmbeddedPointSet, k_max: int = K_MAX, margin: int = 2) -> GradedData:
    """Interpolate I_k and R_k for k = 0..k_max with hard Hilbert checks.

    Requires N >= margin * HF(k_max) with margin >= 2, so that a full
    evaluation rank genuinely certifies the Hilbert value instead of
    being forced by a small sample.
    """
    if margin < 2:
        raise ValueError("interpolation margin must be at least 2")
    if pts.n_points < margin * pts.expected_hf(k_max):
        raise ValueError(
            f"{pts.n_points} samples below margin {margin} x HF({k_max}) = "
            f"{margin * pts.expected_hf(k_max)}"
        )
    p = pts.field.p
    monoms, ideal, r_reps, r_basis, hilbert = {}, {}, {}, {}, {0: 1}
    monoms[0] = monomials(pts.nvars, 0)
    ideal[0] = Matrix.zeros(pts.field, 0, 1)
    r_reps[0] = (0,)
    r_basis[0] = np.ones((pts.n_points, 1), dtype=np.int64)
    for k in range(1, k_max + 1):
        monoms[k] = monomials(pts.nvars, k)
        ev = _evaluation_matrix(pts.coords, monoms[k], p)
        red, piv = gf_rref(ev, p)
        expected = pts.expected_hf(k)
        if len(piv) != expected:
            raise HilbertCheckError(pts.source, k, expected, len(piv))
        ker = _kernel_from_rref(red, piv, p)
        assert ker.shape[0] + len(piv) == len(monoms[k])
        assert not gf_matmul(ev, ker.T, p).any(), "ideal rows must vanish on samples"
        ideal[k] = Matrix(pts.field, ker)
        r_reps[k] = piv
        r_basis[k] = ev[:, list(piv)].copy()
        hilbert[k] = len(piv)
    return GradedData(pts, k_max, monoms, ideal, r_reps, r_basis, hilbert)


def mult_by_coordinate(g: GradedData, var: int, k: int) -> Matrix:
    """Matrix of multiplication by the coordinate x_var, R_k -> R_(k+1).

    On evaluation vectors this is entrywise multiplication by the var-th
    coordinate of the samples, followed by the change of basis into the
    stored R_(k+1) basis.  Shape: dim R_(k+1) x dim R_k.
    """
    if k + 1 > g.k_max:
        raise ValueError(f"degree {k + 1} exceeds interpolated range {g.k_max}")
    if not 0 <= var < g.nvars:
        raise ValueError(f"coordinate index {var} out of range")
    key = (var, k)
    if key not in g._mult_cache:
        p = g.field.p
        products = g.pts.coords[:, [var]] * g.r_basis[k] % p
        g._mult_cache[key] = Matrix(g.field, g.coords_in_r_basis(k + 1, products))
    return g._mult_cache[key]


def dump_ideal_csv(g: GradedData, k: int, fileobj) -> None:
    """Write the I_k basis rows as CSV; columns follow the monomial order
    of :func:`secsyz.geometry.monomials` (header spells the monomials)."""
    names = ["*".join(f"x{v}^{e}" if e > 1 else f"x{v}"
                      for v, e in enumerate(mono) if e) or "1"
             for mono in g.monoms[k]]
    writer = csv.writer(fileobj)
    writer.writerow(names)
    for row in g.ideal[k].a:
        writer.writerow(int(c) for c in row)
