"""
Quadratic forms: contractions are representations
=================================================

A contraction of a form Q along g(t) has limit Q0 exactly when
g(t)^T B g(t) has no poles at t = 0, and the limits that arise are the
forms Q represents.  Over Q the decision uses Witt invariants (Hilbert
symbols); a witness basis turns a representation into an explicit family.
"""

from orbitkit.exactalg import Mat, t
from orbitkit.quadforms import (
    QuadForm,
    contraction_limit_qf,
    family_for_representation,
    ordered_diagonalize_qt,
    represents,
    witt_invariants,
)
from orbitkit.family import ContractionFamily

D = QuadForm.diagonal

for form in (D([1, -1]), D([1, 1]), D([1, 1, 1, 1]), D([1, 1, 1, -7])):
    w = witt_invariants(form)
    print(f"{form}: disc {w.disc}, signature {w.signature}, Witt index {w.witt_index}")

# 2 = 1 + 1 is a sum of two squares, 3 is not.
Q = D([1, 1])
for target in (D([2, 0]), D([3, 0])):
    ok, witness = represents(Q, target)
    print(f"\n{Q} represents {target}: {ok}")
    if witness is not None:
        C = family_for_representation(Q, target, witness)
        print("  family g(t) =", C.mat)
        print("  limit       =", contraction_limit_qf(Q, C))

# Going the other way: any amenable contraction lands on a represented form.
C = ContractionFamily(Mat([[1, t], [1, -t]]) @ Mat.diag([1, t]))
Q0 = contraction_limit_qf(D([3, 5]), C)
print(f"\n<3,5> contracts to {Q0}; represented: {represents(D([3, 5]), Q0, search=False)[0]}")

# Over Q(t) the form is split into blocks t^e * (units) without ever scaling.
Bt = QuadForm(Mat([[t, t], [t, t**3]]))
dec = ordered_diagonalize_qt(Bt)
print("\nblocks of [[t, t], [t, t^3]]:", dec.blocks)
print("congruence identity holds:", dec.transform.T @ Bt.gram @ dec.transform == dec.block_matrix())
