"""Short Weierstrass elliptic curves over Z/pZ and their section bases.

Provides the three ingredients the embeddings need: the curve with its
group law (used for point generation and sanity checks), deterministic
sampling of distinct affine points, and the monomial basis of the
degree-d complete linear system attached to the point at infinity.

Points are plain ``(x, y)`` int tuples; the point at infinity is
``None`` (exported as ``INFINITY``).
"""

from __future__ import annotations

import numpy as np

from .gfp import Fp

INFINITY = None

CurvePoint = tuple  # (x, y) residues; None means the point at infinity


class SingularCurveError(ValueError):
    pass


class PointSamplingError(RuntimeError):
    pass


class EllipticCurve:
    """y**2 = x**3 + a*x + b with 4a**3 + 27b**2 != 0."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: Fp, a: int, b: int):
        p = field.p
        a %= p
        b %= p
        if (4 * a * a * a + 27 * b * b) % p == 0:
            raise SingularCurveError(f"singular curve a={a}, b={b} over Fp({p})")
        self.field = field
        self.a = a
        self.b = b

    def __repr__(self):
        return f"EllipticCurve(Fp({self.field.p}), a={self.a}, b={self.b})"

    def __eq__(self, other):
        return (
            isinstance(other, EllipticCurve)
            and other.field == self.field
            and (other.a, other.b) == (self.a, self.b)
        )

    @classmethod
    def random(cls, field: Fp, rng: np.random.Generator) -> "EllipticCurve":
        """Fresh smooth curve; singular draws are simply retried."""
        while True:
            a = field.rand(rng)
            b = field.rand(rng)
            try:
                return cls(field, a, b)
            except SingularCurveError:
                continue

    # -- membership ------------------------------------------------------

    def contains(self, pt: CurvePoint | None) -> bool:
        if pt is None:
            return True
        x, y = pt
        p = self.field.p
        return (y * y - (x * x * x + self.a * x + self.b)) % p == 0

    def _check(self, pt):
        if not self.contains(pt):
            raise ValueError(f"point {pt} not on {self!r}")

    # -- group law ---------------------------------------------------------

    def neg(self, pt: CurvePoint | None) -> CurvePoint | None:
        self._check(pt)
        if pt is None:
            return None
        x, y = pt
        return (x, -y % self.field.p)

    def add(self, pt1: CurvePoint | None, pt2: CurvePoint | None) -> CurvePoint | None:
        self._check(pt1)
        self._check(pt2)
        if pt1 is None:
            return pt2
        if pt2 is None:
            return pt1
        p = self.field.p
        x1, y1 = pt1
        x2, y2 = pt2
        if x1 == x2:
            if (y1 + y2) % p == 0:
                return None
            return self._double(pt1)
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
        x3 = (lam * lam - x1 - x2) % p
        y3 = (lam * (x1 - x3) - y1) % p
        return (x3, y3)

    def double(self, pt: CurvePoint | None) -> CurvePoint | None:
        self._check(pt)
        return self._double(pt)

    def _double(self, pt):
        if pt is None:
            return None
        p = self.field.p
        x, y = pt
        if y == 0:
            return None
        lam = (3 * x * x + self.a) * pow(2 * y, -1, p) % p
        x3 = (lam * lam - 2 * x) % p
        y3 = (lam * (x - x3) - y) % p
        return (x3, y3)

    # -- sampling ---------------------------------------------------------

    def random_affine_points(self, n: int, rng: np.random.Generator) -> list[CurvePoint]:
        """n pairwise-distinct affine points, deterministic per seed.

        Draws random x until the cubic is a square; distinct x values
        guarantee distinct points.  The y sign is a coin flip so both
        sheets get sampled.
        """
        field = self.field
        pts: list[CurvePoint] = []
        seen: set[int] = set()
        budget = 64 * (n + 8)
        while len(pts) < n and budget > 0:
            budget -= 1
            x = field.rand(rng)
            if x in seen:
                continue
            rhs = (x * x * x + self.a * x + self.b) % field.p
            if rhs == 0:
                y = 0
            else:
                y = field.sqrt(rhs)
                if y is None:
                    continue
                if int(rng.integers(0, 2)):
                    y = field.p - y
            seen.add(x)
            pts.append((x, y))
        if len(pts) < n:
            raise PointSamplingError(
                f"could not sample {n} distinct affine points (got {len(pts)})"
            )
        return pts


def rr_basis(d: int) -> list[tuple[int, int]]:
    """Monomial basis x**i * y**j of the functions with pole order <= d at
    the base point at infinity, ordered by pole order 2i + 3j.

    Exponents satisfy j <= 1 and 2i + 3j <= d; there are exactly d of
    them, with pole orders {0, 2, 3, ..., d} (every value but 1).
    Evaluating this basis at affine points realizes the degree-d
    embedding into P^(d-1).
    """
    if d < 3:
        raise ValueError(f"degree must be at least 3, got {d}")
    monos = [(i, j) for j in (0, 1) for i in range((d - 3 * j) // 2 + 1)]
    monos.sort(key=lambda m: 2 * m[0] + 3 * m[1])
    assert len(monos) == d
    return monos
