from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from orbitkit.numtheory import REAL, hilbert_symbol, is_local_square, is_rational_square, squarefree_part

SQUAREFREE = [d for d in range(-15, 16) if d and squarefree_part(d) == d]


def brute_hilbert(a: int, b: int, p: int) -> int:
    """Oracle: a primitive solution of z^2 = a x^2 + b y^2 modulo p^k.

    For squarefree a, b a primitive solution mod p^3 (p odd) or p^5 (p = 2)
    satisfies Hensel's condition, and one always exists if the symbol is 1.
    """
    m = p ** (5 if p == 2 else 3)
    r = np.arange(m)
    squares = np.zeros(m, dtype=bool)
    unit_squares = np.zeros(m, dtype=bool)
    squares[(r * r) % m] = True
    unit_squares[(r[r % p != 0] ** 2) % m] = True
    x, y = np.meshgrid(r, r, indexing="ij")
    v = (a * x * x + b * y * y) % m
    unit_xy = (x % p != 0) | (y % p != 0)
    # primitive: either x or y is a unit, or z must be
    hit = (unit_xy & squares[v]) | (~unit_xy & unit_squares[v])
    return 1 if np.any(hit) else -1


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_hilbert_matches_brute_force(p):
    bad = []
    for a, b in itertools.combinations_with_replacement(SQUAREFREE, 2):
        if hilbert_symbol(a, b, p) != brute_hilbert(a, b, p):
            bad.append((a, b))
    assert not bad


def test_hilbert_examples():
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(2, 3, REAL) == 1
    assert hilbert_symbol(-2, -3, REAL) == -1
    for a in (1, 2, -3, Fraction(5, 7)):
        for p in (2, 3, 5, 7, REAL):
            assert hilbert_symbol(a, -a, p) == 1


@given(st.integers(-40, 40).filter(bool), st.integers(-40, 40).filter(bool), st.integers(-40, 40).filter(bool))
def test_hilbert_is_bimultiplicative_and_satisfies_product_formula(a, b, c):
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, REAL):
        assert hilbert_symbol(a, b * c, p) == hilbert_symbol(a, b, p) * hilbert_symbol(a, c, p)
        assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
    primes = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, REAL)
    prod = 1
    for p in primes:
        prod *= hilbert_symbol(a, b, p)
    assert prod == 1


def test_squarefree_part():
    assert squarefree_part(12) == 3
    assert squarefree_part(-50) == -2
    assert squarefree_part(Fraction(3, 8)) == 6
    assert squarefree_part(1) == 1


def test_rational_squares():
    assert is_rational_square(Fraction(49, 4))
    assert is_rational_square(0)
    assert not is_rational_square(Fraction(-4, 9))
    assert not is_rational_square(Fraction(2, 9))


def test_local_squares():
    assert is_local_square(17, 2) and not is_local_square(5, 2)
    assert is_local_square(2, 7) and not is_local_square(3, 7)
    assert not is_local_square(3, 3)
    assert is_local_square(1, REAL) and not is_local_square(-1, REAL)
