"""Square classes and Hilbert symbols over Q.

Places are the primes (ints) and ``REAL`` for the archimedean one.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from sympy.ntheory import factorint

REAL = math.inf


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


def squarefree_part(x) -> int:
    """Signed square-free integer in the same square class as the nonzero rational x."""
    x = Fraction(x)
    if not x:
        raise ValueError("0 has no square class")
    n = x.numerator * x.denominator
    s = 1
    for p, e in _factor(abs(n)):
        if e % 2:
            s *= p
    return s if n > 0 else -s


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Write a nonzero integer as s * f**2 with s square-free; returns (s, f)."""
    s, f = 1, 1
    for p, e in _factor(abs(n)):
        s *= p ** (e % 2)
        f *= p ** (e // 2)
    return (s if n > 0 else -s), f


def odd_primes_of(x) -> set[int]:
    """Primes dividing the square-free part of x."""
    return {p for p, _ in _factor(abs(squarefree_part(x)))}


def is_rational_square(x) -> bool:
    x = Fraction(x)
    if x < 0:
        return False
    a, b = x.numerator, x.denominator
    return math.isqrt(a) ** 2 == a and math.isqrt(b) ** 2 == b


def legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def is_local_square(x, p) -> bool:
    """Whether the nonzero rational x is a square in Q_p (p prime or REAL)."""
    s = squarefree_part(x)
    if p == REAL:
        return s > 0
    if s % p == 0:
        return False
    if p == 2:
        return s % 8 == 1
    return legendre(s, p) == 1


def hilbert_symbol(a, b, p) -> int:
    """The Hilbert symbol (a, b)_p for nonzero rationals a, b.

    +1 iff z^2 = a x^2 + b y^2 has a nonzero solution over Q_p (or R when
    ``p is REAL``).  Computed from valuations and residues after reducing a
    and b to square-free integers.
    """
    a, b = squarefree_part(a), squarefree_part(b)
    if p == REAL:
        return -1 if a < 0 and b < 0 else 1
    alpha, u = (1, a // p) if a % p == 0 else (0, a)
    beta, v = (1, b // p) if b % p == 0 else (0, b)
    if p == 2:
        eps_u, eps_v = ((u - 1) // 2) % 2, ((v - 1) // 2) % 2
        om_u, om_v = ((u * u - 1) // 8) % 2, ((v * v - 1) // 8) % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * (legendre(u, p) ** beta) * (legendre(v, p) ** alpha)
