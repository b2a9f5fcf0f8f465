"""The reproduction suite: one exact, seeded check per acceptance item.

Every check draws from its own ``random.Random`` seeded by ``f"{seed}:{n}"``
so adding or reordering checks does not perturb the others.  Catalog objects
are looked up through the module at call time, so a test can monkeypatch a
catalog entry and watch the matching verdict turn FAIL.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import catalog
from .contraction import ContractionFamily, contract, orbit_vanishing_test, trace_functor_check, verify_certificate
from .errors import DegenerateParameter, NotAmenable, OrbitKitError, RestrictedParameter
from .exactalg import QT, Mat, det, mat_order, mat_rank, t
from .quadforms import (
    QuadForm,
    congruence_act,
    contraction_limit_qf,
    diagonalize,
    family_for_representation,
    find_witness,
    ordered_diagonalize_qt,
    perp,
    represents,
    witt_invariants,
    witt_invariants_of,
)
from .structvec import StructureVector, act, invariant_dims, product, trace_form

PASS, FAIL = "PASS", "FAIL"


@dataclass(frozen=True)
class Verdict:
    check: str
    status: str
    detail: str

    def to_json(self) -> dict:
        return {"check": self.check, "status": self.status, "detail": self.detail}


# ---------------------------------------------------------------------------
# samplers (shared with the test suite)


def rand_rat(rng: random.Random, num: int = 20, den: int = 9, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-num, num), rng.randint(1, den))
        if x or not nonzero:
            return x


def rand_structure(rng: random.Random, n: int, density: float = 0.4, bound: int = 3) -> StructureVector:
    return StructureVector(n, [rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(n**3)])


def rand_nonsingular_form(rng: random.Random, n: int, bound: int = 3) -> QuadForm:
    while True:
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                rows[i][j] = rows[j][i] = rng.randint(-bound, bound)
        Qf = QuadForm(Mat(rows))
        if Qf.is_nonsingular():
            return Qf


def rand_family(rng: random.Random, n: int, max_factors: int = 6, powers=(-1, 0, 1, 1, 2)) -> ContractionFamily:
    """Product of at most ``max_factors`` elementary, permutation and t-power scaling matrices."""
    g = Mat.identity(n, QT)
    for _ in range(rng.randint(1, max_factors)):
        kind = rng.choice(("elem", "perm", "scale")) if n > 1 else "scale"
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        if kind == "elem":
            i, j = rng.sample(range(n), 2)
            rows[i][j] = rng.choice((-2, -1, 1, 2, 3)) * t ** rng.choice(powers)
        elif kind == "perm":
            i, j = rng.sample(range(n), 2)
            rows[i][i] = rows[j][j] = 0
            rows[i][j] = rows[j][i] = 1
        else:
            i = rng.randrange(n)
            rows[i][i] = t ** rng.choice([p for p in powers if p] or [1])
        g = g @ Mat(rows, QT)
    return ContractionFamily(g)


def rand_poly_form(rng: random.Random, n: int, degree: int = 3) -> QuadForm:
    """Symmetric matrix of polynomials in t with small integer coefficients (order >= 0)."""
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            low = rng.randint(0, degree)
            x = sum((rng.randint(-3, 3) * t**e for e in range(low, degree + 1)), start=t * 0)
            rows[i][j] = rows[j][i] = x
    return QuadForm(Mat(rows, QT))


# ---------------------------------------------------------------------------
# checks


def check_quadratic_trace(rng: random.Random) -> tuple[bool, str]:
    bad = 0
    for _ in range(20):
        s = rand_rat(rng)
        if trace_form(catalog.f2_quadratic(s)).gram != Mat.diag([2, 2 * s]):
            bad += 1
    return bad == 0, f"20 random s, {bad} mismatches"


def check_cubic_trace(rng: random.Random) -> tuple[bool, str]:
    bad = sum(not catalog.f3_trace_check(rand_rat(rng)) for _ in range(50))
    ranks = {str(c): trace_form(catalog.f3(c)).rank for c in (Fraction(-4, 27), Fraction(0))}
    ok = bad == 0 and set(ranks.values()) == {2}
    return ok, f"50 random c, {bad} mismatches; rank at -4/27 and 0: {ranks['-4/27']}, {ranks['0']}"


def check_table(rng: random.Random) -> tuple[bool, str]:
    got = {}
    for name in ("a0", "a4", "a5"):
        inv = invariant_dims(catalog.two_dim(name))
        got[name] = (inv.annihilator_dim, inv.square_dim, inv.derivation_dim)
    ok = got == catalog.TWO_DIM_TABLE
    return ok, "; ".join(f"{k}: {'/'.join(map(str, v))}" for k, v in got.items())


def check_separating(rng: random.Random, seed: int) -> tuple[bool, str]:
    parts, ok = [], True
    for idx, (src, dst, P) in enumerate(catalog.forbidden_pairs(), start=1):
        rep = orbit_vanishing_test(P, src, samples=100, seed=seed * 1000 + idx)
        at = P(dst)
        ok &= rep.all_zero and at != 0
        parts.append(f"P{idx}: {rep.status} on {rep.samples} samples, value at target {at}")
    return ok, "; ".join(parts)


def check_favorite(rng: random.Random) -> tuple[bool, str]:
    bad = 0
    tI = {n: ContractionFamily(Mat.diag([t] * n)) for n in (1, 2, 3)}
    for _ in range(20):
        n = rng.randint(1, 3)
        lam = rand_structure(rng, n)
        res = contract(lam, tI[n])
        if res.lambda_t != lam.lift().scale(t) or not res.amenable or not res.limit.is_zero():
            bad += 1
    return bad == 0, f"20 random structure vectors, {bad} failures"


def check_certificates(rng: random.Random) -> tuple[bool, str]:
    res = [(c.name, verify_certificate(c.lam_from, c.family, c.lam_to, c.matcher)) for c in catalog.standard_contractions()]
    return all(ok for _, ok in res), "; ".join(f"{n}: {PASS if ok else FAIL}" for n, ok in res)


def check_cubic_iso(rng: random.Random) -> tuple[bool, str]:
    done = bad = skipped = 0
    while done < 50:
        c, m = rand_rat(rng, nonzero=True), rand_rat(rng)
        try:
            g, d = catalog.f3_iso_matrix(c, m)
            sq = catalog.square_class_check(c, m)
        except DegenerateParameter:
            skipped += 1
            continue
        done += 1
        x0, x1, x2, _ = catalog.f3_iso_element(c, m)
        if act(catalog.f3(c), g) != catalog.f3(d) or not sq or g.col(1) != (x0, x1, x2):
            bad += 1
    return bad == 0, f"50 valid (c, m), {bad} failures, {skipped} degenerate draws skipped"


def check_split_cubic(rng: random.Random) -> tuple[bool, str]:
    done = bad = 0
    while done < 50:
        s, m = rand_rat(rng, nonzero=True), rand_rat(rng, nonzero=True)
        try:
            x1, x2, x3, d, g = catalog.split_cubic_generator(s, m)
        except RestrictedParameter:
            continue
        done += 1
        lam = catalog.split_cubic(s)
        w = (x1, x2, x3)
        w2 = product(lam, w, w)
        w3 = product(lam, w2, w)
        e = (1, 1, 0)
        if tuple(a - b for a, b in zip(w3, w2)) != tuple(d * x for x in e) or not det(g):
            bad += 1
        elif act(lam, g) != catalog.f3(d):
            bad += 1
    # boundary: each excluded value of m^2 s, and a nearby allowed value
    boundary = []
    for s, m in ((1, 0), (1, Fraction(1, 3)), (1, 1), (-3, Fraction(1, 3))):
        bdet = catalog.split_cubic_basis_det(s, m)
        try:
            catalog.split_cubic_generator(s, m)
            rejected = False
        except RestrictedParameter:
            rejected = True
        near = catalog.split_cubic_basis_det(s, Fraction(m) + Fraction(1, 101))
        boundary.append(rejected and not bdet and bool(near))
    ok = bad == 0 and all(boundary)
    return ok, f"50 valid (s, m), {bad} failures; exclusion boundary {sum(boundary)}/4 behave"


def check_normalization(rng: random.Random) -> tuple[bool, str]:
    bad = 0
    for _ in range(30):
        p, q = rand_rat(rng, nonzero=True), rand_rat(rng, nonzero=True)
        c, _ = catalog.normalize_cubic(catalog.NormalizationInput(p, q))
        bad += c != -(4 * p**3 - 27 * q * q) / (27 * p**3)
    done = 0
    while done < 30:
        q, b = rand_rat(rng, nonzero=True), rand_rat(rng, nonzero=True)
        if 729 * b**6 * q * q == 1:
            continue
        done += 1
        c, _ = catalog.normalize_cubic(catalog.NormalizationInput(0, q, b))
        bad += c != (27 * b**3 * q - 1) ** 2 / (729 * b**3 * q)
    try:
        catalog.normalize_cubic(catalog.NormalizationInput(0, 1, Fraction(1, 3)))
        errs = False
    except OrbitKitError:
        errs = True
    return bad == 0 and errs, f"60 normalizations, {bad} failures; b = 1/3, q = 1 errors: {errs}"


def check_forward(rng: random.Random) -> tuple[bool, str]:
    bad = 0
    for _ in range(50):
        n = rng.randint(1, 4)
        Qf = rand_nonsingular_form(rng, n)
        g, d = diagonalize(Qf)
        keep = sorted(rng.sample(range(n), rng.randint(0, n)))
        rest = [i for i in range(n) if i not in keep]
        Qp = QuadForm.diagonal([d[i] for i in keep] + [0] * len(rest))
        witness = g.submatrix(range(n), keep + rest)
        C = family_for_representation(Qf, Qp, witness)
        bad += contraction_limit_qf(Qf, C) != Qp
    return bad == 0, f"50 random (Q, Q'), {bad} failures"


def check_converse(rng: random.Random) -> tuple[bool, str]:
    tried = amenable = bad = 0
    while tried < 200:
        n = rng.randint(1, 4)
        Qf = rand_nonsingular_form(rng, n)
        C = rand_family(rng, n)
        tried += 1
        try:
            Q0 = contraction_limit_qf(Qf, C)
        except NotAmenable:
            continue
        amenable += 1
        bad += not represents(Qf, Q0, search=False)[0]
    return bad == 0, f"200 random families, {amenable} amenable, {bad} failures"


def _witt_class_equal(a, b) -> bool:
    return witt_invariants_of([x for x in a if x] + [-x for x in b if x]).anisotropic_dim == 0


def check_ordered_diag(rng: random.Random) -> tuple[bool, str]:
    done = bad = 0
    while done < 200:
        n = rng.randint(1, 4)
        if rng.random() < 0.5:
            Bt = rand_poly_form(rng, n)
        else:
            Qf = rand_nonsingular_form(rng, n)
            g = rand_family(rng, n).mat
            Bt = QuadForm(g.T @ Qf.gram.lift() @ g)
            if mat_order(Bt.gram) < 0:
                continue
        done += 1
        first = ordered_diagonalize_qt(Bt, "first")
        last = ordered_diagonalize_qt(Bt, "last")
        ok = True
        for dec in (first, last):
            T = dec.transform
            ok &= T.T @ Bt.gram.lift() @ T == dec.block_matrix()
            ok &= all(u.order() == 0 for _, us in dec.blocks for u in us)
            ok &= dec.corank == n - mat_rank(Bt.gram)
        ok &= _witt_class_equal(first.residue_parts()[0], last.residue_parts()[0])
        bad += not ok
    return bad == 0, f"200 random amenable forms, {bad} failures"


_BRUTE_CACHE: dict = {}


def brute_force_agreement(values=range(-3, 4), max_n: int = 3, height: int = 20) -> tuple[int, int, int, int]:
    """Decision vs bounded witness search over all diagonal forms with entries in ``values``.

    Returns (pairs, disagreements, decided_true, witnessed).  A disagreement
    is a witness found while the decision says false.  Pairs are deduplicated
    by the sorted entry multisets, which determine both sides.
    """
    key = (tuple(values), max_n, height)
    if key in _BRUTE_CACHE:
        return _BRUTE_CACHE[key]
    pairs = bad = yes = witnessed = 0
    for n in range(1, max_n + 1):
        forms = list(itertools.combinations_with_replacement(sorted(values), n))
        for a in forms:
            Qa = QuadForm.diagonal(a)
            for b in forms:
                Qb = QuadForm.diagonal(b)
                pairs += 1
                flag, _ = represents(Qa, Qb, search=False)
                w = find_witness(Qa, Qb, height)
                yes += flag
                witnessed += w is not None
                bad += w is not None and not flag
    _BRUTE_CACHE[key] = (pairs, bad, yes, witnessed)
    return _BRUTE_CACHE[key]


def check_brute_force(rng: random.Random) -> tuple[bool, str]:
    pairs, bad, yes, witnessed = brute_force_agreement()
    one = QuadForm.diagonal([1, 1])
    r2 = represents(one, QuadForm.diagonal([2, 0]))
    r3 = represents(one, QuadForm.diagonal([3, 0]))
    classic = r2[0] and r2[1] is not None and not r3[0]
    return bad == 0 and classic, (
        f"{pairs} diagonal pairs, {bad} disagreements, {yes} decided true, {witnessed} witnessed; "
        f"<1,1> represents <2,0>: {r2[0]}, <3,0>: {r3[0]}"
    )


def check_functor(rng: random.Random) -> tuple[bool, str]:
    done = bad = tried = 0
    while done < 200 and tried < 20000:
        tried += 1
        n = rng.randint(1, 3)
        lam = rand_structure(rng, n)
        C = rand_family(rng, n, powers=(0, 1, 1, 2, -1))
        if not contract(lam, C).amenable:
            continue
        done += 1
        bad += not trace_functor_check(lam, C)
    return done == 200 and bad == 0, f"{done} amenable contractions ({tried} drawn), {bad} failures"


_POOL = (-6, -5, -3, -2, -1, 1, 2, 3, 5, 6)


def check_cancellation(rng: random.Random) -> tuple[bool, str]:
    done = bad = nontrivial = 0
    while done < 200:
        Qf = QuadForm.diagonal(rng.choices(_POOL, k=rng.randint(1, 3)))
        k = rng.randint(1, 3)
        Q1 = QuadForm.diagonal(rng.choices(_POOL, k=k))
        if rng.random() < 0.5:
            g = Mat([[rng.randint(-2, 2) for _ in range(k)] for _ in range(k)])
            if not det(g):
                continue
            Q2 = congruence_act(Q1, g)
        else:
            Q2 = QuadForm.diagonal(rng.choices(_POOL, k=k))
        if witt_invariants(perp(Qf, Q1)).class_key() != witt_invariants(perp(Qf, Q2)).class_key():
            continue
        done += 1
        nontrivial += Q1 != Q2
        bad += witt_invariants(Q1).class_key() != witt_invariants(Q2).class_key()
    return bad == 0, f"200 triples ({nontrivial} with Q1 != Q2), {bad} violations"


def check_determinism(rng: random.Random, seed: int) -> tuple[bool, str]:
    from .jsonio import dumps

    def run():
        return dumps([check_separating(random.Random(f"{seed}:4"), seed), check_favorite(random.Random(f"{seed}:5"))])

    a, b = run(), run()
    return a == b, "seeded sub-report re-rendered identically" if a == b else "sub-report differs between runs"


CHECKS: list[tuple[str, Callable]] = [
    ("quadratic trace form", check_quadratic_trace),
    ("cubic trace form", check_cubic_trace),
    ("two-dimensional table", check_table),
    ("separating polynomials", check_separating),
    ("favorite example", check_favorite),
    ("standard contractions", check_certificates),
    ("cubic isomorphism family", check_cubic_iso),
    ("split cubic generator", check_split_cubic),
    ("cubic normalization", check_normalization),
    ("representation gives contraction", check_forward),
    ("contraction gives representation", check_converse),
    ("ordered diagonalization", check_ordered_diag),
    ("represents vs brute force", check_brute_force),
    ("trace functoriality", check_functor),
    ("Witt cancellation", check_cancellation),
    ("deterministic report", check_determinism),
]

_NEEDS_SEED = {check_separating, check_determinism}


def run_check(index: int, seed: int = 1) -> Verdict:
    """Run acceptance check ``index`` (1-based)."""
    name, fn = CHECKS[index - 1]
    rng = random.Random(f"{seed}:{index}")
    try:
        ok, detail = fn(rng, seed) if fn in _NEEDS_SEED else fn(rng)
    except OrbitKitError as exc:
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    return Verdict(f"{index:02d} {name}", PASS if ok else FAIL, detail)


def verify_paper(seed: int = 1) -> dict:
    verdicts = [run_check(i, seed) for i in range(1, len(CHECKS) + 1)]
    return {
        "command": "verify-paper",
        "inputs": {"seed": seed},
        "results": {
            "passed": sum(v.status == PASS for v in verdicts),
            "total": len(verdicts),
        },
        "verdicts": [v.to_json() for v in verdicts],
    }
