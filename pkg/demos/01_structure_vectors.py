"""
Structure vectors, change of basis, and the simplest contraction
================================================================

An n-dimensional algebra is a tensor lam[i, j, k] with
[v_i, v_j] = sum_k lam[i, j, k] v_k.  Changing basis by g acts on the
right, and letting g depend on t gives a path in the orbit whose limit,
when it exists, is a degeneration.
"""

from fractions import Fraction

from orbitkit.catalog import f2_quadratic
from orbitkit.contraction import ContractionFamily, contract
from orbitkit.exactalg import Mat, t
from orbitkit.structvec import act, product, trace_form

# The quadratic algebra F(w) with w^2 = 5, on the basis (1, w).
lam = f2_quadratic(5)
print("f_5:", lam)
print("w * w =", product(lam, (0, 1), (0, 1)))

# F + F is f_1 written in the idempotent basis (1 + w)/2, (1 - w)/2.
half = Fraction(1, 2)
print("f_1 in idempotent basis:", act(f2_quadratic(1), Mat([[half, half], [half, -half]])))

# The trace form t_ij = tr(ad e_i ad e_j).
print("trace form of f_5:", trace_form(lam))

# Scaling every basis vector by t multiplies every structure constant by t,
# so the limit at t = 0 is the zero algebra: everything degenerates to it.
res = contract(lam, ContractionFamily(Mat.diag([t, t])))
print("lam . tI =", res.lambda_t)
print("limit:", res.limit, "(zero algebra:", res.limit.is_zero(), ")")

# Scaling only w by t kills w^2 = 5 in the limit, leaving the algebra a4.
res = contract(lam, ContractionFamily(Mat.diag([1, t])))
print("lam . diag(1, t) -> ", res.limit)

# Scaling by 1/t instead blows up: the order valuation says the limit does not exist.
res = contract(lam, ContractionFamily(Mat.diag([1, 1 / t])))
print("amenable:", res.amenable, " least order:", res.min_order)
