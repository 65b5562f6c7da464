"""Arithmetic in the prime field Z/pZ.

Field elements are plain Python ints kept as canonical residues in
``[0, p)``; the modulus lives in an :class:`Fp` context object so that
runs over two different primes can coexist in one process.  Every
operation returns a canonical residue, so no non-canonical value ever
escapes this module.

The moduli are restricted to odd primes with ``3 < p < 2**31``: the
curve formulas need char > 3, and the exact linear algebra kernels pack
residues into int64/float64 words.
"""

from __future__ import annotations

import numpy as np

# Classical CAS default working prime, and a ~2**30 prime for the
# independent cross-check run.  A third prime (2**31 - 1) breaks ties
# when the first two disagree.
DEFAULT_PRIME = 32003
CROSSCHECK_PRIME = 1073741789
TIEBREAK_PRIME = 2147483647

DEFAULT_PRIMES = (DEFAULT_PRIME, CROSSCHECK_PRIME)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for every n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Fp:
    """Context for the field Z/pZ with p an odd prime > 3."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int):
            raise TypeError(f"modulus must be an int, got {type(p).__name__}")
        if p <= 3:
            raise ValueError(f"modulus must exceed 3, got {p}")
        if p >= 1 << 31:
            raise ValueError(f"modulus must fit in 31 bits, got {p}")
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    def __repr__(self):
        return f"Fp({self.p})"

    def __eq__(self, other):
        return isinstance(other, Fp) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    # -- element constructors ------------------------------------------

    def element(self, a: int) -> int:
        """Canonical residue of an arbitrary integer."""
        return a % self.p

    def rand(self, rng: np.random.Generator) -> int:
        """Uniform residue in [0, p), reproducible from the generator state."""
        return int(rng.integers(0, self.p))

    def rand_nonzero(self, rng: np.random.Generator) -> int:
        return int(rng.integers(1, self.p))

    # -- field operations ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in Fp")
        return pow(a, -1, self.p)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    # -- square roots (needed to sample curve points) -------------------

    def legendre(self, a: int) -> int:
        """1 for nonzero squares, -1 for non-squares, 0 for zero."""
        a %= self.p
        if a == 0:
            return 0
        t = pow(a, (self.p - 1) // 2, self.p)
        return 1 if t == 1 else -1

    def sqrt(self, a: int) -> int | None:
        """A square root of ``a``, or None when ``a`` is a non-residue.

        Deterministic: Tonelli-Shanks with the smallest non-residue as
        auxiliary generator, shortcut for p = 3 mod 4.
        """
        p = self.p
        a %= p
        if a == 0:
            return 0
        if self.legendre(a) != 1:
            return None
        if p % 4 == 3:
            return pow(a, (p + 1) // 4, p)
        # Tonelli-Shanks: write p - 1 = q * 2**s with q odd.
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while self.legendre(z) != -1:
            z += 1
        m, c = s, pow(z, q, p)
        t, r = pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            t2, i = t * t % p, 1
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return r


def random_element(field: Fp, rng: np.random.Generator) -> int:
    """Uniform field element; alias for ``field.rand``."""
    return field.rand(rng)
