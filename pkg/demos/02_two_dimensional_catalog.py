"""
The two-dimensional catalog: degenerations and obstructions
===========================================================

Besides the quadratic algebras f_s there are three commutative
associative types a0, a4, a5.  Explicit families certify the
degenerations; trace rank and separating polynomials rule others out.
"""

from orbitkit.catalog import f2_quadratic, forbidden_pairs, standard_contractions, two_dim
from orbitkit.contraction import necessary_report, orbit_vanishing_test, verify_certificate
from orbitkit.structvec import invariant_dims

print("name  ann  sq  der")
for name in ("a0", "a4", "a5"):
    inv = invariant_dims(two_dim(name))
    print(f"{name:4}  {inv.annihilator_dim:3}  {inv.square_dim:2}  {inv.derivation_dim:3}")

print("\ncertified contractions:")
for cert in standard_contractions():
    ok = verify_certificate(cert.lam_from, cert.family, cert.lam_to, cert.matcher)
    print(f"  {cert.name:10} via {cert.family.mat}  ->  {'verified' if ok else 'FAILED'}  {cert.note}")

# a5 has trace rank 1, f_s has rank 2; rank cannot go up along a degeneration.
rep = necessary_report(two_dim("a5"), f2_quadratic(3))
print(f"\na5 -> f_3: ranks {rep.rank_from} -> {rep.rank_to}, {rep.verdict}")

# Neither a4 -> a5 nor a5 -> a4: each polynomial vanishes on one orbit, so on
# its closure, but not at the other algebra.
for src, dst, P in forbidden_pairs():
    r = orbit_vanishing_test(P, src, samples=100, seed=1)
    print(f"P = {P}\n   on the orbit of the source: {r.status} ({r.samples} samples), at the target: {P(dst)}")
