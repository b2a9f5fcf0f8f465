from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from orbitkit import catalog
from orbitkit.catalog import (
    NormalizationInput,
    cubic_algebra,
    f2_quadratic,
    f3,
    f3_iso_element,
    f3_iso_matrix,
    f3_trace_check,
    forbidden_pairs,
    normalize_cubic,
    split_cubic,
    split_cubic_basis_det,
    split_cubic_generator,
    square_class_check,
    standard_contractions,
    two_dim,
)
from orbitkit.contraction import orbit_vanishing_test, verify_certificate
from orbitkit.errors import BadNormalization, DegenerateParameter, RestrictedParameter, UnknownName, ZeroParameter
from orbitkit.exactalg import Mat, det
from orbitkit.quadforms import witt_invariants
from orbitkit.structvec import act, algebra_rank, check_axioms, invariant_dims, product, trace_form

W = sympy.Symbol("w")


def cube_minus_square(coords, modulus) -> sympy.Poly:
    """Oracle: u^3 - u^2 for u = sum coords[i] w^i, reduced in Q[w]/(modulus)."""
    u = sum(sympy.Rational(c.numerator, c.denominator) * W**i for i, c in enumerate(coords))
    return sympy.Poly(sympy.rem(sympy.expand(u**3 - u**2), modulus, W), W)


def test_f2_examples():
    lam = f2_quadratic(5)
    assert lam.nonzero() == {(1, 1, 1): 1, (1, 2, 2): 1, (2, 1, 2): 1, (2, 2, 1): 5}
    half = Fraction(1, 2)
    split = act(f2_quadratic(1), Mat([[half, half], [half, -half]]))
    assert split.nonzero() == {(1, 1, 1): 1, (2, 2, 2): 1}
    assert check_axioms(f2_quadratic(0)) == (True, True)
    assert algebra_rank(f2_quadratic(0)) == 1


def test_two_dim():
    assert two_dim("a0").is_zero()
    assert two_dim("a4").nonzero() == {(1, 1, 1): 1, (1, 2, 2): 1, (2, 1, 2): 1}
    assert two_dim("a5").nonzero() == {(1, 1, 1): 1}
    with pytest.raises(UnknownName):
        two_dim("a7")


def test_f3_examples():
    for c in (0, 1, Fraction(-4, 27), Fraction(7, 3)):
        assert check_axioms(f3(c)) == (True, True)
        assert f3_trace_check(c)
    assert det(trace_form(f3(0)).gram) == 0
    assert trace_form(f3(1)).gram == Mat([[3, 1, 1], [1, 1, 4], [1, 4, 5]])
    assert det(trace_form(f3(1)).gram) == -31
    assert trace_form(f3(Fraction(-4, 27))).rank == 2


def test_f3_products_match_polynomial_arithmetic():
    c = Fraction(3, 5)
    mod = W**3 - W**2 - sympy.Rational(3, 5)
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            got = product(f3(c), u, v)
            want = sympy.Poly(sympy.rem(W ** (i + j), mod, W), W).all_coeffs()[::-1]
            want = [Fraction(str(x)) for x in want] + [Fraction(0)] * (3 - len(want))
            assert list(got) == want


def test_iso_element_example():
    x0, x1, x2, d = f3_iso_element(1, 1)
    assert (x0, x1, x2) == (Fraction(14, 23), Fraction(-18, 23), Fraction(-1, 23))
    assert d == Fraction(-7921, 12167)
    assert cube_minus_square((x0, x1, x2), W**3 - W**2 - 1) == sympy.Poly(sympy.Rational(-7921, 12167), W)


def test_iso_element_errors():
    with pytest.raises(DegenerateParameter):
        f3_iso_element(0, 1)
    # Delta = m^2 - 3 gamma c vanishes at c = -1/6 (gamma = -1/2), m = 1/2
    c = Fraction(-1, 6)
    assert 3 * (27 * c + 4) * c == Fraction(1, 4)
    with pytest.raises(DegenerateParameter, match="Delta"):
        f3_iso_element(c, Fraction(1, 2))


def test_iso_matrix_example():
    g, d = f3_iso_matrix(1, 1)
    assert g.col(0) == (1, 0, 0)
    assert g.col(1) == (Fraction(14, 23), Fraction(-18, 23), Fraction(-1, 23))
    assert act(f3(1), g) == f3(d) == f3(Fraction(-7921, 12167))


def test_iso_matrix_at_m_zero():
    g, d = f3_iso_matrix(1, 0)
    assert g.col(1)[2] == 0
    assert act(f3(1), g) == f3(d)


def test_iso_family_random_with_sympy_oracle():
    rng = random.Random(4)
    done = 0
    while done < 25:
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        m = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        try:
            g, d = f3_iso_matrix(c, m)
        except DegenerateParameter:
            continue
        done += 1
        x0, x1, x2, _ = f3_iso_element(c, m)
        mod = W**3 - W**2 - sympy.Rational(c.numerator, c.denominator)
        assert cube_minus_square((x0, x1, x2), mod) == sympy.Poly(sympy.Rational(d.numerator, d.denominator), W)
        assert act(f3(c), g) == f3(d)
        assert square_class_check(c, m)
        if 27 * d * d + 4 * d:
            assert witt_invariants(trace_form(f3(c))).class_key() == witt_invariants(trace_form(f3(d))).class_key()


def test_iso_composition_lands_on_f3():
    g, d = f3_iso_matrix(2, 1)
    h, d2 = f3_iso_matrix(d, 3)
    assert act(act(f3(2), g), h) == f3(d2)


def test_square_class():
    assert square_class_check(1, 1)
    with pytest.raises(DegenerateParameter):
        square_class_check(Fraction(-4, 27), 1)


def test_split_cubic_basics():
    for s in (1, 2, Fraction(-3, 7)):
        lam = split_cubic(s)
        assert check_axioms(lam) == (True, True)
        for i in range(3):
            e_i = tuple(int(j == i) for j in range(3))
            assert product(lam, (1, 1, 0), e_i) == e_i
    with pytest.raises(ZeroParameter):
        split_cubic(0)
    half = Fraction(1, 2)
    p, q = (0, half, half), (0, half, -half)
    lam = split_cubic(1)
    assert product(lam, p, p) == p and product(lam, q, q) == q and product(lam, p, q) == (0, 0, 0)


def test_split_generator_example():
    x1, x2, x3, d, g = split_cubic_generator(1, 2)
    assert (x1, x2, x3, d) == (Fraction(35, 39), Fraction(2, 39), Fraction(4, 13), Fraction(-4900, 59319))
    lam = split_cubic(1)
    w = (x1, x2, x3)
    w2 = product(lam, w, w)
    w3 = product(lam, w2, w)
    assert tuple(a - b for a, b in zip(w3, w2)) == (d, d, 0)
    assert act(lam, g) == f3(d)


def test_split_generator_restrictions():
    for s, m in ((1, 1), (1, Fraction(1, 3)), (1, 0), (-3, Fraction(1, 3))):
        with pytest.raises(RestrictedParameter, match="excluded"):
            split_cubic_generator(s, m)


def test_split_basis_det_formula():
    # det(e, w, w^2) = 2m(m^2 s - 1)(9m^2 s - 1)/(3m^2 s + 1)^3, checked against sympy
    m_, s_ = sympy.symbols("m s")
    k = m_**2 * s_
    formula = 2 * m_ * (k - 1) * (9 * k - 1) / (3 * k + 1) ** 3
    for s, m in ((1, 2), (2, Fraction(1, 5)), (-1, 3), (5, Fraction(-2, 3))):
        want = formula.subs({m_: sympy.Rational(str(m)), s_: sympy.Rational(str(s))})
        assert split_cubic_basis_det(s, m) == Fraction(str(want))


def test_normalization_examples():
    c, u = normalize_cubic(NormalizationInput(1, 1))
    assert c == Fraction(23, 27) and u == (Fraction(-1, 3), 0, 1)
    c, u = normalize_cubic(NormalizationInput(0, 1, 1))
    assert c == Fraction(676, 729)
    with pytest.raises(BadNormalization):
        normalize_cubic(NormalizationInput(0, 1, Fraction(1, 3)))
    with pytest.raises(BadNormalization):
        normalize_cubic(NormalizationInput(0, 1))
    with pytest.raises(BadNormalization):
        normalize_cubic(NormalizationInput(1, 0))


def test_normalization_round_trip():
    rng = random.Random(6)
    for _ in range(20):
        p = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        q = Fraction(rng.choice([-5, -3, -1, 1, 2, 7]), rng.randint(1, 4))
        b = Fraction(rng.choice([-2, -1, 1, 3]), rng.randint(1, 3))
        c, u = normalize_cubic(NormalizationInput(p, q, b if not p else None))
        lam = cubic_algebra(p, q)
        g = Mat.from_columns([(1, 0, 0), u, product(lam, u, u)])
        assert act(lam, g) == f3(c)
        mod = W**3 - sympy.Rational(str(p)) * W - sympy.Rational(str(q))
        assert cube_minus_square(u, mod) == sympy.Poly(sympy.Rational(str(c)), W)


def test_standard_contractions():
    certs = standard_contractions()
    assert [c.name for c in certs] == ["f_s -> a4", "f_1 -> a5", "f_s -> a0", "a4 -> a0", "a5 -> a0"]
    for lam_from, family, lam_to, matcher in certs:
        assert verify_certificate(lam_from, family, lam_to, matcher)
    assert all(verify_certificate(c.lam_from, c.family, c.lam_to) for c in standard_contractions(Fraction(-7, 3)))


def test_forbidden_pairs():
    for src, dst, P in forbidden_pairs():
        assert P(src) == 0 and P(dst) == 1
        assert orbit_vanishing_test(P, src, samples=100, seed=2).all_zero


def test_table_via_catalog():
    assert {k: tuple(getattr(invariant_dims(two_dim(k)), f) for f in ("annihilator_dim", "square_dim", "derivation_dim")) for k in ("a0", "a4", "a5")} == catalog.TWO_DIM_TABLE


def test_by_name():
    assert catalog.by_name("f2:3") == f2_quadratic(3)
    assert catalog.by_name("f3:-1/2") == f3(Fraction(-1, 2))
    assert catalog.by_name("split3:2") == split_cubic(2)
    assert catalog.by_name("a4") == two_dim("a4")
    for bad in ("f9:1", "f2", "a4:1"):
        with pytest.raises(UnknownName):
            catalog.by_name(bad)
