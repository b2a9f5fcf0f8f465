"""Contractions of algebras: limits of lam * g(t) as t -> 0, and obstructions."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, NotAmenable
from .exactalg import INFINITY, Q, Mat, as_rat, det, eval_at_zero, mat_eval_at_zero, order
from .family import ContractionFamily
from .structvec import StructureVector, act, algebra_rank, invariant_dims, trace_form

__all__ = [
    "ContractionFamily",
    "ContractionResult",
    "OrbitPolynomial",
    "NecessaryReport",
    "VanishingReport",
    "contract",
    "trace_functor_check",
    "necessary_report",
    "orbit_vanishing_test",
    "random_invertible",
    "verify_certificate",
]


@dataclass(frozen=True)
class ContractionResult:
    lambda_t: StructureVector
    amenable: bool
    limit: StructureVector | None
    min_order: object


def contract(lam: StructureVector, C: ContractionFamily) -> ContractionResult:
    if not isinstance(C, ContractionFamily):
        C = ContractionFamily(C)
    if C.n != lam.n:
        raise DimensionMismatch(f"family of size {C.n} for an algebra of dimension {lam.n}")
    lam_t = act(lam.lift(), C.mat)
    least = min((order(x) for x in lam_t.entries), default=INFINITY)
    if least < 0:
        return ContractionResult(lam_t, False, None, least)
    limit = StructureVector(lam.n, [eval_at_zero(x) for x in lam_t.entries], Q)
    return ContractionResult(lam_t, True, limit, least)


def _require_limit(res: ContractionResult) -> StructureVector:
    if not res.amenable:
        n = res.lambda_t.n
        for idx, x in enumerate(res.lambda_t.entries):
            if order(x) == res.min_order:
                i, rest = divmod(idx, n * n)
                j, k = divmod(rest, n)
                raise NotAmenable(
                    f"not amenable: lambda^t_{i + 1}{j + 1}{k + 1} = {x} has order {res.min_order}",
                    position=(i + 1, j + 1, k + 1),
                    order=res.min_order,
                )
    return res.limit


def trace_functor_check(lam: StructureVector, C: ContractionFamily) -> bool:
    """Trace form of lam^t at t = 0 equals the trace form of the limit algebra.

    Always expected to hold; a False return means an arithmetic fault.
    """
    res = contract(lam, C)
    limit = _require_limit(res)
    return mat_eval_at_zero(trace_form(res.lambda_t).gram) == trace_form(limit).gram


def verify_certificate(
    lam_from: StructureVector,
    C: ContractionFamily,
    lam_to: StructureVector,
    matcher: Mat | None = None,
) -> bool:
    """True iff C contracts lam_from exactly onto lam_to (or onto act(lam_to, matcher))."""
    if not isinstance(C, ContractionFamily):
        C = ContractionFamily(C)
    if lam_from.n != lam_to.n or C.n != lam_from.n:
        raise DimensionMismatch("certificate dimensions disagree")
    res = contract(lam_from, C)
    if not res.amenable:
        return False
    target = lam_to if matcher is None else act(lam_to, matcher)
    return res.limit == target


# ---------------------------------------------------------------------------
# obstructions


@dataclass(frozen=True)
class NecessaryReport:
    rank_from: int
    rank_to: int
    invariants_from: object
    invariants_to: object
    verdict: str  # "BLOCKED" or "INCONCLUSIVE"

    @property
    def rank_condition(self) -> bool:
        return self.rank_to <= self.rank_from


def necessary_report(lam_from: StructureVector, lam_to: StructureVector) -> NecessaryReport:
    """Necessary conditions for lam_from -> lam_to.

    Algebras of trace rank <= r form a closed invariant set, so a
    degeneration cannot raise the rank.  The other dimensions are reported
    but not adjudicated.
    """
    if lam_from.n != lam_to.n:
        raise DimensionMismatch(f"algebras of dimension {lam_from.n} and {lam_to.n}")
    r_from, r_to = algebra_rank(lam_from), algebra_rank(lam_to)
    return NecessaryReport(
        rank_from=r_from,
        rank_to=r_to,
        invariants_from=invariant_dims(lam_from),
        invariants_to=invariant_dims(lam_to),
        verdict="BLOCKED" if r_to > r_from else "INCONCLUSIVE",
    )


@dataclass(frozen=True)
class OrbitPolynomial:
    """Sparse polynomial in the coordinates lam_ijk (1-based triples)."""

    terms: tuple[tuple[Fraction, tuple[tuple[int, int, int], ...]], ...]

    def __init__(self, terms: Sequence):
        norm = []
        for coeff, mono in terms:
            norm.append((as_rat(coeff), tuple(sorted(tuple(int(x) for x in m) for m in mono))))
        object.__setattr__(self, "terms", tuple(norm))

    def __call__(self, lam: StructureVector):
        acc = Fraction(0)
        for coeff, mono in self.terms:
            term = coeff
            for i, j, k in mono:
                term = term * lam.get(i, j, k)
                if not term:
                    break
            acc = acc + term
        return acc

    def __str__(self) -> str:
        parts = []
        for c, mono in self.terms:
            m = "*".join(f"l{i}{j}{k}" for i, j, k in mono) or "1"
            if c == 1:
                parts.append(m)
            elif c == -1:
                parts.append("-" + m)
            else:
                parts.append(f"{c}*{m}")
        return " + ".join(parts).replace("+ -", "- ")


def random_invertible(rng: random.Random, n: int, bound: int = 9) -> Mat:
    """Integer matrix with entries uniform in [-bound, bound], resampled until det != 0."""
    while True:
        g = Mat([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)], Q)
        if det(g):
            return g


@dataclass(frozen=True)
class VanishingReport:
    status: str  # "ALL_ZERO" (evidence, not proof) or "NONZERO" (proof)
    samples: int
    seed: int
    counterexample: Mat | None = None
    value: Fraction | None = field(default=None)

    @property
    def all_zero(self) -> bool:
        return self.status == "ALL_ZERO"


def orbit_vanishing_test(P: OrbitPolynomial, lam: StructureVector, samples: int = 100, seed: int = 1):
    """Evaluate P on act(lam, g) for ``samples`` seeded random invertible integer g.

    ALL_ZERO is evidence that P vanishes on the orbit, not a proof; a
    nonzero value (returned with its g) proves it does not.
    """
    rng = random.Random(seed)
    n = lam.n
    for s in range(samples):
        g = random_invertible(rng, n)
        value = P(act(lam, g))
        if value:
            return VanishingReport("NONZERO", s + 1, seed, g, as_rat(value))
    return VanishingReport("ALL_ZERO", samples, seed)
