from __future__ import annotations

import random
from fractions import Fraction

import pytest

from orbitkit.catalog import P1, P2, f2_quadratic, f3, two_dim
from orbitkit.contraction import (
    ContractionFamily,
    OrbitPolynomial,
    contract,
    necessary_report,
    orbit_vanishing_test,
    random_invertible,
    trace_functor_check,
    verify_certificate,
)
from orbitkit.errors import DimensionMismatch, NotAmenable, Singular
from orbitkit.exactalg import Mat, t
from orbitkit.structvec import StructureVector, act
from orbitkit.verify import rand_family, rand_structure

S = Fraction(5)


def test_contract_examples():
    lam = f2_quadratic(S)
    res = contract(lam, ContractionFamily(Mat.diag([t, t])))
    assert res.amenable and res.limit.is_zero() and res.min_order == 1
    res = contract(lam, ContractionFamily(Mat.diag([1, t])))
    assert res.limit == two_dim("a4")
    res = contract(lam, ContractionFamily(Mat.diag([1, 1 / t])))
    assert not res.amenable and res.limit is None
    assert res.lambda_t.get(2, 2, 1) == S / t**2 and res.min_order == -2


def test_contract_rejects_bad_families():
    with pytest.raises(Singular):
        ContractionFamily(Mat([[1, t], [1, t]]))
    with pytest.raises(DimensionMismatch):
        contract(f2_quadratic(S), ContractionFamily(Mat.identity(3)))


def test_constant_family_gives_the_orbit():
    rng = random.Random(1)
    for _ in range(10):
        n = rng.randint(1, 3)
        lam = rand_structure(rng, n)
        g = random_invertible(rng, n, 3)
        res = contract(lam, ContractionFamily(g))
        assert res.amenable and res.limit == act(lam, g)


def test_family_then_constant_composes():
    rng = random.Random(2)
    for _ in range(10):
        n = rng.randint(1, 3)
        lam = rand_structure(rng, n)
        C = rand_family(rng, n)
        h = random_invertible(rng, n, 3)
        assert act(contract(lam, C).lambda_t, h.lift()) == contract(lam, C @ ContractionFamily(h)).lambda_t


def test_trace_functor_examples():
    assert trace_functor_check(f2_quadratic(S), ContractionFamily(Mat.diag([1, t])))
    assert trace_functor_check(f3(2), ContractionFamily(Mat.diag([t, t, t])))
    assert trace_functor_check(f3(2), ContractionFamily(Mat.diag([1, t, t**2])))
    # w.w = w^2 makes diag(1, 1, t) blow up: lambda'_223 = 1/t
    with pytest.raises(NotAmenable) as exc:
        trace_functor_check(f3(2), ContractionFamily(Mat.diag([1, 1, t])))
    assert exc.value.position == (2, 2, 3)
    with pytest.raises(NotAmenable) as exc:
        trace_functor_check(f2_quadratic(S), ContractionFamily(Mat.diag([1, 1 / t])))
    assert exc.value.position == (2, 2, 1)


def test_trace_functor_random():
    rng = random.Random(3)
    done = 0
    while done < 40:
        n = rng.randint(1, 3)
        lam, C = rand_structure(rng, n), rand_family(rng, n)
        if contract(lam, C).amenable:
            assert trace_functor_check(lam, C)
            done += 1


def test_necessary_report():
    r = necessary_report(two_dim("a5"), f2_quadratic(S))
    assert r.verdict == "BLOCKED" and (r.rank_from, r.rank_to) == (1, 2)
    assert necessary_report(f2_quadratic(S), two_dim("a4")).verdict == "INCONCLUSIVE"
    assert necessary_report(two_dim("a4"), two_dim("a4")).verdict == "INCONCLUSIVE"
    with pytest.raises(DimensionMismatch):
        necessary_report(two_dim("a4"), f3(1))


def test_vanishing_examples():
    a4, a5 = two_dim("a4"), two_dim("a5")
    assert orbit_vanishing_test(P1, a4, samples=100, seed=1).all_zero
    assert P1(a5) == 1 and P1(a4) == 0
    assert orbit_vanishing_test(P2, a5, samples=100, seed=1).all_zero
    assert P2(a4) == 1 and P2(a5) == 0
    rep = orbit_vanishing_test(P1, a5, samples=100, seed=1)
    assert rep.status == "NONZERO" and P1(act(a5, rep.counterexample)) == rep.value != 0


def test_vanishing_is_seeded():
    a = orbit_vanishing_test(P1, two_dim("a5"), samples=10, seed=4)
    b = orbit_vanishing_test(P1, two_dim("a5"), samples=10, seed=4)
    assert a == b


def test_limits_stay_in_the_vanishing_set():
    # P1 vanishes on the a4 orbit, hence on every limit of it
    rng = random.Random(5)
    a4 = two_dim("a4")
    done = 0
    while done < 30:
        C = rand_family(rng, 2)
        res = contract(act(a4, random_invertible(rng, 2, 3)), C)
        if res.amenable:
            assert P1(res.limit) == 0
            done += 1


def test_verify_certificate_examples():
    lam = f2_quadratic(S)
    assert verify_certificate(lam, ContractionFamily(Mat.diag([t, t])), StructureVector.zero(2))
    assert verify_certificate(lam, ContractionFamily(Mat.diag([1, t])), two_dim("a4"))
    assert not verify_certificate(two_dim("a4"), ContractionFamily(Mat.diag([1, t])), two_dim("a5"))
    assert not verify_certificate(lam, ContractionFamily(Mat.diag([1, 1 / t])), two_dim("a4"))
    # a matcher accepts the same limit written in another basis
    swap = Mat([[0, 1], [1, 0]])
    assert verify_certificate(lam, ContractionFamily(Mat.diag([1, t]) @ swap), two_dim("a4"), swap)


def test_polynomial_text():
    assert str(P2) == "l111*l212 - l112*l211"
    P = OrbitPolynomial([(3, [(1, 1, 1)]), (Fraction(-1, 2), [])])
    assert P(two_dim("a5")) == Fraction(5, 2)
