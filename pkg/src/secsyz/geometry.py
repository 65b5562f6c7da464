"""Projective point sets, secant-rank witnesses, and linear projection.

An :class:`EmbeddedPointSet` is the computational stand-in for an
embedded variety: N sample points stored as homogeneous coordinate
rows, plus a source tag that fixes the expected Hilbert function, the
variety dimension and the order (the first secant variety filling the
ambient space).  Three sources are supported, each in a plain and a
projected flavor:

  elliptic   degree-d curve in P^(d-1), embedded by the pole-order basis
  rational   degree-d rational normal curve in P^d
  veronese   the cubic Veronese surface in P^9

A :class:`ProjectionCenter` is a point q together with (optionally) a
witness expressing q as a combination of s fresh points of the variety,
which certifies secant rank <= s.  ``project`` maps a point set to its
image in P^(r-1) under the linear projection away from q.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from .curves import EllipticCurve, rr_basis
from .gfp import Fp
from .linalg import gf_rank

K_MAX = 3  # interpolation always covers degrees 1..3 (3-regular inputs)

_BASE_SOURCES = ("elliptic", "rational", "veronese")


class DegenerateSampleError(RuntimeError):
    """Sampling or projection hit a non-generic configuration."""


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent tuples of the degree-d monomials in nvars variables.

    Deterministic graded order: combinations-with-replacement of the
    variable indices in lexicographic order, i.e. x0**d first, then
    x0**(d-1)*x1, ..., ending at x(n-1)**d.
    """
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


def expected_hilbert(source: str, d: int | None, k: int) -> int:
    """Hardcoded Hilbert function of the coordinate ring, per source tag.

    These are exact consequences of linear normality plus 3-regularity
    of the single projections; a persistent two-prime computation
    contradicting them means the table, not the run, must be re-derived.
    """
    if k == 0:
        return 1
    if source == "elliptic":
        return k * d
    if source == "elliptic-proj":
        return d - 1 if k == 1 else k * d
    if source == "rational":
        return k * d + 1
    if source == "rational-proj":
        return d if k == 1 else k * d + 1
    if source == "veronese":
        return (3 * k + 1) * (3 * k + 2) // 2
    if source == "veronese-proj":
        return 9 if k == 1 else (3 * k + 1) * (3 * k + 2) // 2
    raise ValueError(f"unknown source tag {source!r}")


def source_dim(source: str) -> int:
    return 2 if source.startswith("veronese") else 1


def source_order(source: str, d: int | None) -> int:
    """Least s with the s-th secant variety filling the ambient space."""
    if source == "elliptic":
        return -(-d // 2)  # ceil(d/2)
    if source == "rational":
        return -(-(d + 1) // 2)
    if source == "veronese":
        return 4
    raise ValueError(f"order defined only for unprojected sources, got {source!r}")


def _canonical_rows(coords: np.ndarray, p: int) -> list[bytes]:
    """Scale each row so its first nonzero entry is 1; bytes keys."""
    keys = []
    for row in coords:
        nz = np.flatnonzero(row)
        if nz.size == 0:
            raise ValueError("zero row is not a projective point")
        inv = pow(int(row[nz[0]]), -1, p)
        keys.append((row * inv % p).tobytes())
    return keys


class EmbeddedPointSet:
    """N sample points of an embedded variety, as coordinate rows."""

    __slots__ = ("field", "source", "d", "coords", "curve", "seed_note")

    def __init__(self, field: Fp, source: str, d: int | None, coords,
                 curve: EllipticCurve | None = None, seed_note=None):
        base = source.removesuffix("-proj")
        if base not in _BASE_SOURCES:
            raise ValueError(f"unknown source tag {source!r}")
        coords = np.asarray(coords, dtype=np.int64) % field.p
        if coords.ndim != 2:
            raise ValueError("coordinate rows must form a 2-d array")
        keys = _canonical_rows(coords, field.p)
        if len(set(keys)) != len(keys):
            raise DegenerateSampleError("sample contains projectively equal points")
        floor = expected_hilbert(source, d, K_MAX)
        if coords.shape[0] < floor:
            raise ValueError(
                f"{coords.shape[0]} samples below the interpolation floor {floor}"
            )
        coords.flags.writeable = False  # shared freely across threads
        self.field = field
        self.source = source
        self.d = d
        self.coords = coords
        self.curve = curve
        self.seed_note = seed_note

    # -- descriptors ------------------------------------------------------

    @property
    def n_points(self) -> int:
        return self.coords.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.coords.shape[1] - 1

    @property
    def nvars(self) -> int:
        return self.coords.shape[1]

    @property
    def is_projected(self) -> bool:
        return self.source.endswith("-proj")

    @property
    def variety_dim(self) -> int:
        return source_dim(self.source)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.variety_dim

    @property
    def order(self) -> int:
        return source_order(self.source, self.d)

    def expected_hf(self, k: int) -> int:
        return expected_hilbert(self.source, self.d, k)

    def __repr__(self):
        return (
            f"EmbeddedPointSet({self.source}, d={self.d}, N={self.n_points}, "
            f"P^{self.ambient_dim}, p={self.field.p})"
        )

    # -- fresh variety points (for witnesses and collision repair) --------

    def fresh_rows(self, n: int, rng: np.random.Generator) -> np.ndarray:
        if self.is_projected:
            raise ValueError("cannot sample fresh points of a projected set")
        if self.source == "elliptic":
            return _elliptic_rows(self.curve, self.d, n, rng)
        if self.source == "rational":
            return _rational_rows(self.field, self.d, n, rng)
        return _veronese_rows(self.field, n, rng)


# -- row generators -------------------------------------------------------

def _elliptic_rows(curve: EllipticCurve, d: int, n: int, rng) -> np.ndarray:
    p = curve.field.p
    basis = rr_basis(d)
    pts = curve.random_affine_points(n, rng)
    rows = np.empty((n, d), dtype=np.int64)
    for t, (x, y) in enumerate(pts):
        for c, (i, j) in enumerate(basis):
            rows[t, c] = pow(x, i, p) * pow(y, j, p) % p
    return rows


def _rational_rows(field: Fp, d: int, n: int, rng) -> np.ndarray:
    p = field.p
    ts: set[int] = set()
    budget = 64 * (n + 8)
    while len(ts) < n and budget > 0:
        budget -= 1
        ts.add(field.rand(rng))
    if len(ts) < n:
        raise DegenerateSampleError(f"could not find {n} distinct parameters")
    rows = np.empty((n, d + 1), dtype=np.int64)
    for r, t in enumerate(sorted(ts)):
        v = 1
        for c in range(d + 1):
            rows[r, c] = v
            v = v * t % p
    return rows


_VERONESE_MONOMIALS = monomials(3, 3)  # fixed ordering of the 10 cubics


def veronese_image(field: Fp, plane_points) -> np.ndarray:
    """Evaluate the 10 fixed cubic monomials at the given points of P^2."""
    p = field.p
    rows = []
    for pt in plane_points:
        if not any(v % p for v in pt):
            raise ValueError("zero triple is not a point of the plane")
        rows.append(
            [
                pow(pt[0], e[0], p) * pow(pt[1], e[1], p) * pow(pt[2], e[2], p) % p
                for e in _VERONESE_MONOMIALS
            ]
        )
    return np.array(rows, dtype=np.int64)


def _veronese_rows(field: Fp, n: int, rng) -> np.ndarray:
    p = field.p
    rows = []
    seen: set[bytes] = set()
    budget = 64 * (n + 8)
    while len(rows) < n and budget > 0:
        budget -= 1
        pt = [field.rand(rng) for _ in range(3)]
        if not any(pt):
            continue
        row = np.array(
            [
                pow(pt[0], e[0], p) * pow(pt[1], e[1], p) * pow(pt[2], e[2], p) % p
                for e in _VERONESE_MONOMIALS
            ],
            dtype=np.int64,
        )
        key = _canonical_rows(row[None, :], p)[0]
        if key in seen:
            continue
        seen.add(key)
        rows.append(row)
    if len(rows) < n:
        raise DegenerateSampleError(f"could not find {n} distinct surface points")
    return np.array(rows, dtype=np.int64)


# -- public constructors ----------------------------------------------------

def default_sample_size(source: str, d: int | None, multiplier: int = 2) -> int:
    """Default N: multiplier times the top-degree Hilbert value."""
    if multiplier < 2:
        raise ValueError("sample multiplier must be at least 2")
    return multiplier * expected_hilbert(source, d, K_MAX)


def embed_elliptic(curve: EllipticCurve, d: int, n_points: int,
                   rng: np.random.Generator) -> EmbeddedPointSet:
    """Degree-d embedding of an elliptic curve into P^(d-1).

    Rows evaluate the pole-order monomial basis at distinct affine
    points; the row matrix must span the full ambient space (one
    resample allowed before giving up on the curve/seed pair).
    """
    if d < 5:
        raise ValueError(f"embedding degree must be at least 5, got {d}")
    floor = expected_hilbert("elliptic", d, K_MAX)
    if n_points < floor:
        raise ValueError(f"{n_points} samples below the interpolation floor {floor}")
    for attempt in range(2):
        rows = _elliptic_rows(curve, d, n_points, rng)
        if gf_rank(rows, curve.field.p) == d:
            return EmbeddedPointSet(curve.field, "elliptic", d, rows, curve=curve)
    raise DegenerateSampleError(f"elliptic samples span a proper subspace (d={d})")


def rnc_points(field: Fp, d: int, n_points: int,
               rng: np.random.Generator) -> EmbeddedPointSet:
    """Rational normal curve of degree d in P^d: rows (1 : t : ... : t^d)."""
    if d < 3:
        raise ValueError(f"degree must be at least 3, got {d}")
    rows = _rational_rows(field, d, n_points, rng)
    return EmbeddedPointSet(field, "rational", d, rows)


def veronese_points(field: Fp, n_points: int,
                    rng: np.random.Generator) -> EmbeddedPointSet:
    """Cubic Veronese surface in P^9: all degree-3 monomials in 3 variables."""
    rows = _veronese_rows(field, n_points, rng)
    return EmbeddedPointSet(field, "veronese", None, rows)


# -- spans and centers -------------------------------------------------------

def span_dim(field: Fp, rows) -> int:
    """Projective dimension of the span of the given coordinate rows."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.ndim == 1:
        rows = rows[None, :]
    if rows.shape[0] == 0:
        raise ValueError("span of an empty point set")
    return gf_rank(rows, field.p) - 1


@dataclass(frozen=True)
class ProjectionCenter:
    """A projection center with an optional secant-rank witness.

    With a witness, q = sum of witness_coeffs[i] * witness_rows[i] holds
    exactly and the witness rows span a P^(s-1), so the secant rank of q
    is at most s = rank_bound.  General centers carry no witness and use
    the order of the source as their rank bound.
    """

    field: Fp
    q: np.ndarray
    rank_bound: int
    witness_rows: np.ndarray | None = None
    witness_coeffs: tuple[int, ...] | None = None

    @property
    def is_general(self) -> bool:
        return self.witness_rows is None


def make_center(pts: EmbeddedPointSet, s: int, rng: np.random.Generator,
                max_tries: int = 8) -> ProjectionCenter:
    """Generic point of the s-th secant variety, with witness.

    Combines s fresh variety points with nonzero coefficients; the
    witness must span a P^(s-1), which certifies rank <= s.  Requires
    3 <= s <= order of the source (rank <= 2 centers are refused: the
    projection of the variety away from them is singular).
    """
    order = pts.order
    if not 3 <= s <= order:
        raise ValueError(
            f"witness size s={s} violates 3 <= s <= order({pts.source}, d={pts.d}) = {order}"
        )
    field = pts.field
    for _ in range(max_tries):
        rows = pts.fresh_rows(s, rng)
        if gf_rank(rows, field.p) != s:
            continue
        coeffs = tuple(field.rand_nonzero(rng) for _ in range(s))
        q = np.zeros(pts.nvars, dtype=np.int64)
        for lam, row in zip(coeffs, rows):
            q = (q + lam * row) % field.p
        assert q.any(), "independent witness rows cannot combine to zero"
        return ProjectionCenter(field, q, s, rows, coeffs)
    raise DegenerateSampleError(f"witness points kept spanning less than P^{s - 1}")


def make_general_center(pts: EmbeddedPointSet, rng: np.random.Generator) -> ProjectionCenter:
    """Uniformly random center; rank bound is the order of the source."""
    field = pts.field
    while True:
        q = rng.integers(0, field.p, size=pts.nvars, dtype=np.int64)
        if q.any():
            return ProjectionCenter(field, q, pts.order)


def _project_rows(coords: np.ndarray, q: np.ndarray, p: int) -> np.ndarray:
    """Image coordinates (x_j * q_m - x_m * q_j), j != m, m = first nonzero of q."""
    m = int(np.flatnonzero(q)[0])
    keep = [j for j in range(len(q)) if j != m]
    img = (coords[:, keep] * q[m] - coords[:, [m]] * q[keep]) % p
    return img


def project(pts: EmbeddedPointSet, center: ProjectionCenter,
            rng: np.random.Generator | None = None,
            max_repair_rounds: int = 16) -> EmbeddedPointSet:
    """Linear projection of the sample away from the center.

    Two samples collide exactly when their secant line passes through
    the center; colliding rows are replaced by fresh variety points (a
    persistent failure means the center sits on the secant variety of
    the samples, or the sampling is degenerate).
    """
    if pts.is_projected:
        raise ValueError("point set was already projected once")
    if center.field != pts.field:
        raise ValueError("center and point set live over different fields")
    p = pts.field.p
    q = center.q
    if not q.any():
        raise ValueError("projection center must be a nonzero point")
    coords = pts.coords.copy()
    q_key = _canonical_rows(q[None, :], p)[0]
    for _ in range(max_repair_rounds):
        keys = _canonical_rows(coords, p)
        if q_key in keys:
            raise DegenerateSampleError("a sample point equals the projection center")
        img = _project_rows(coords, q, p)
        img_keys = _canonical_rows(img, p)
        seen: dict[bytes, int] = {}
        dup_rows = []
        for idx, key in enumerate(img_keys):
            if key in seen:
                dup_rows.append(idx)
            else:
                seen[key] = idx
        if not dup_rows:
            return EmbeddedPointSet(pts.field, pts.source + "-proj", pts.d, img)
        if rng is None:
            raise DegenerateSampleError(
                "projected samples collide and no generator was supplied for repair"
            )
        coords[dup_rows] = pts.fresh_rows(len(dup_rows), rng)
    raise DegenerateSampleError(
        "center appears to lie on the secant variety of the samples "
        "(persistent image collisions)"
    )
