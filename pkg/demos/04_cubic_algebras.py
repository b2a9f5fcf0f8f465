"""
Cubic algebras: one normal form, infinitely many isomorphisms
=============================================================

Any cubic algebra F[w] can be brought to w^3 = w^2 + c.  A conic
parameterization produces generators u of f_c with u^3 = u^2 + d, so
f_c is isomorphic to f_d for infinitely many d, and the split algebra
F + F(sqrt s) is reached the same way.
"""

from fractions import Fraction

from orbitkit.catalog import (
    NormalizationInput,
    f3,
    f3_iso_matrix,
    normalize_cubic,
    split_cubic,
    split_cubic_generator,
    square_class_check,
)
from orbitkit.errors import RestrictedParameter
from orbitkit.structvec import act, trace_form

print("trace form of f_1:", trace_form(f3(1)).gram)

c, u = normalize_cubic(NormalizationInput(1, 1))
print(f"\nw^3 = w + 1 becomes u^3 = u^2 + {c} with u = {[str(x) for x in u]}")
c, u = normalize_cubic(NormalizationInput(0, 1, 1))
print(f"w^3 = 1 (with b = 1) becomes u^3 = u^2 + {c}")

print("\nisomorphisms f_1 = f_d:")
for m in (1, 2, Fraction(1, 2), -3):
    g, d = f3_iso_matrix(1, m)
    print(f"  m = {str(m):4} d = {str(d):20} exact: {act(f3(1), g) == f3(d)}  square class ok: {square_class_check(1, m)}")

print("\nF + F(sqrt 2) as some f_d:")
for m in (1, Fraction(1, 2), 3):
    try:
        *_, d, g = split_cubic_generator(2, m)
        print(f"  m = {m}: d = {d}, exact: {act(split_cubic(2), g) == f3(d)}")
    except RestrictedParameter as exc:
        print(f"  m = {m}: {exc}")
