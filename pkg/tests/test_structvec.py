from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from orbitkit.catalog import f2_quadratic, f3, two_dim
from orbitkit.contraction import random_invertible
from orbitkit.errors import DimensionMismatch, Singular
from orbitkit.exactalg import Mat, inverse, t
from orbitkit.quadforms import congruence_act
from orbitkit.structvec import (
    StructureVector,
    act,
    adjoint_matrix,
    algebra_rank,
    check_axioms,
    invariant_dims,
    product,
    trace_form,
)
from orbitkit.verify import rand_structure


def act_naive(lam: StructureVector, g: Mat) -> StructureVector:
    """Oracle: the change-of-basis formula summed directly, O(n^6)."""
    n = lam.n
    h = inverse(g)
    out = []
    for i, j, k in itertools.product(range(n), repeat=3):
        acc = 0
        for a, b, c in itertools.product(range(n), repeat=3):
            acc += g[a, i] * g[b, j] * h[k, c] * lam._at(a, b, c)
        out.append(acc)
    return StructureVector(n, out)


def act_by_products(lam: StructureVector, g: Mat) -> StructureVector:
    """Oracle: multiply the new basis vectors and read off coordinates."""
    n = lam.n
    cols = g.columns()
    h = inverse(g)
    out = []
    for i, j in itertools.product(range(n), repeat=2):
        p = product(lam, cols[i], cols[j])
        out.extend(sum(h[k, c] * p[c] for c in range(n)) for k in range(n))
    return StructureVector(n, out)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_act_matches_direct_formula(n):
    rng = random.Random(n)
    for _ in range(10):
        lam = rand_structure(rng, n)
        g = random_invertible(rng, n, bound=3)
        assert act(lam, g) == act_naive(lam, g) == act_by_products(lam, g)


def test_right_action_law():
    rng = random.Random(7)
    for _ in range(15):
        n = rng.randint(1, 4)
        lam = rand_structure(rng, n, density=0.3)
        g, h = random_invertible(rng, n, 3), random_invertible(rng, n, 3)
        assert act(act(lam, g), h) == act(lam, g @ h)


def test_act_examples():
    lam = f2_quadratic(5)
    assert act(lam.lift(), Mat.diag([t, t])) == lam.lift().scale(t)
    assert act(lam, Mat.identity(2)) == lam
    half = Fraction(1, 2)
    got = act(f2_quadratic(1), Mat([[half, half], [half, -half]]))
    assert got == StructureVector.from_nonzero(2, {(1, 1, 1): 1, (2, 2, 2): 1})
    with pytest.raises(Singular):
        act(lam, Mat([[1, 2], [2, 4]]))
    with pytest.raises(DimensionMismatch):
        act(lam, Mat.identity(3))


def test_product_examples():
    assert product(f2_quadratic(7), (0, 1), (0, 1)) == (7, 0)
    assert product(f2_quadratic(7), (0, 0), (3, 4)) == (0, 0)
    assert product(two_dim("a5"), (0, 1), (0, 1)) == (0, 0)
    with pytest.raises(DimensionMismatch):
        product(two_dim("a5"), (1,), (1, 0))


def test_adjoint_examples():
    s = Fraction(3)
    assert adjoint_matrix(f2_quadratic(s), (1, 0)) == Mat.identity(2)
    assert adjoint_matrix(f2_quadratic(s), (0, 1)) == Mat([[0, s], [1, 0]])
    assert adjoint_matrix(two_dim("a0"), (4, 5)).is_zero()


def test_trace_form_is_trace_of_adjoints():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(1, 3)
        lam = rand_structure(rng, n)
        T = trace_form(lam).gram
        ads = [adjoint_matrix(lam, tuple(int(a == i) for a in range(n))) for i in range(n)]
        for i, j in itertools.product(range(n), repeat=2):
            m = ads[i] @ ads[j]
            assert T[i, j] == sum(m[k, k] for k in range(n))
        assert T.is_symmetric()


def test_trace_form_examples():
    assert trace_form(f2_quadratic(Fraction(2, 3))).gram == Mat.diag([2, Fraction(4, 3)])
    assert trace_form(f3(2)).gram == Mat([[3, 1, 1], [1, 1, 7], [1, 7, 9]])
    assert trace_form(two_dim("a4")).gram == Mat.diag([2, 0])
    assert trace_form(two_dim("a0")).gram.is_zero()


def test_trace_form_equivariance():
    rng = random.Random(11)
    for _ in range(15):
        n = rng.randint(1, 3)
        lam = rand_structure(rng, n)
        g = random_invertible(rng, n, 3)
        assert trace_form(act(lam, g)) == congruence_act(trace_form(lam), g)


def test_rank_examples():
    assert algebra_rank(f2_quadratic(5)) == 2
    assert algebra_rank(f2_quadratic(0)) == 1
    assert algebra_rank(two_dim("a0")) == 0
    assert algebra_rank(f3(Fraction(-4, 27))) == 2


def test_table_and_axioms():
    expect = {"a0": (2, 0, 4), "a4": (0, 2, 1), "a5": (1, 1, 1)}
    for name, row in expect.items():
        inv = invariant_dims(two_dim(name))
        assert (inv.annihilator_dim, inv.square_dim, inv.derivation_dim) == row
        assert inv.commutative and inv.associative
    assert check_axioms(f2_quadratic(3)) == (True, True)
    assert check_axioms(StructureVector.from_nonzero(2, {(1, 2, 1): 1})) == (False, False)


def test_invariants_are_isomorphism_invariant():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(1, 3)
        lam = rand_structure(rng, n)
        assert invariant_dims(act(lam, random_invertible(rng, n, 3))) == invariant_dims(lam)


def test_derivations_of_known_algebras():
    # F + F has no nonzero derivations; the zero algebra has all of gl(n)
    assert invariant_dims(f2_quadratic(1)).derivation_dim == 0
    assert invariant_dims(StructureVector.zero(3)).derivation_dim == 9


def test_structure_vector_access():
    lam = StructureVector.from_nonzero(2, {(2, 2, 1): 5})
    assert lam.get(2, 2, 1) == 5 and lam.get(1, 1, 1) == 0
    assert lam.nonzero() == {(2, 2, 1): 5}
    with pytest.raises(DimensionMismatch):
        StructureVector(2, [0] * 7)
    with pytest.raises(DimensionMismatch):
        StructureVector.from_nonzero(2, {(3, 1, 1): 1})
