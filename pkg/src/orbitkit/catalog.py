"""Named algebras of dimension 2 and 3 and their explicit isomorphisms and contractions.

Dimension 2: the quadratic algebras f_s (v1 = 1, v2 = w, w^2 = s) and the
three further commutative associative types a0, a4, a5.

Dimension 3: f_c with basis (1, w, w^2) and w^3 = w^2 + c, the split algebra
c(s) = F + F(sqrt s), and the cubic normalization w^3 = pw + q -> u^3 = u^2 + c.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .contraction import ContractionFamily, OrbitPolynomial
from .errors import BadNormalization, DegenerateParameter, RestrictedParameter, UnknownName, ZeroParameter
from .exactalg import Mat, as_rat, det, parse_rat, t
from .numtheory import is_rational_square
from .structvec import StructureVector, product

# ---------------------------------------------------------------------------
# dimension 2


def f2_quadratic(s) -> StructureVector:
    """f_s: lam111 = lam122 = lam212 = 1, lam221 = s."""
    s = as_rat(s)
    return StructureVector.from_nonzero(2, {(1, 1, 1): 1, (1, 2, 2): 1, (2, 1, 2): 1, (2, 2, 1): s})


_TWO_DIM = {
    "a0": {},
    "a4": {(1, 1, 1): 1, (1, 2, 2): 1, (2, 1, 2): 1},
    "a5": {(1, 1, 1): 1},
}

#: (ann, sq, der) columns of the two-dimensional table
TWO_DIM_TABLE = {"a0": (2, 0, 4), "a4": (0, 2, 1), "a5": (1, 1, 1)}


def two_dim(name: str) -> StructureVector:
    try:
        return StructureVector.from_nonzero(2, _TWO_DIM[name])
    except KeyError:
        raise UnknownName(f"unknown two-dimensional algebra {name!r}; expected a0, a4 or a5") from None


# ---------------------------------------------------------------------------
# dimension 3: f_c


def f3(c) -> StructureVector:
    """f_c on (w^0, w, w^2) with w^3 = w^2 + c."""
    c = as_rat(c)
    table = {}
    # w^0 is the identity
    for j in (1, 2, 3):
        table[(1, j, j)] = 1
        table[(j, 1, j)] = 1
    table[(2, 2, 3)] = 1  # w.w = w^2
    for i, j in ((2, 3), (3, 2)):  # w.w^2 = w^2 + c
        table[(i, j, 3)] = 1
        table[(i, j, 1)] = c
    table[(3, 3, 1)] = c  # w^2.w^2 = w^2 + cw + c
    table[(3, 3, 2)] = c
    table[(3, 3, 3)] = 1
    return StructureVector.from_nonzero(3, {k: v for k, v in table.items() if v})


def f3_trace_matrix(c) -> Mat:
    """The displayed trace matrix [[3,1,1],[1,1,3c+1],[1,3c+1,4c+1]]."""
    c = as_rat(c)
    return Mat([[3, 1, 1], [1, 1, 3 * c + 1], [1, 3 * c + 1, 4 * c + 1]])


def f3_trace_check(c) -> bool:
    from .structvec import trace_form

    c = as_rat(c)
    T = trace_form(f3(c)).gram
    return T == f3_trace_matrix(c) and det(T) == -c * (27 * c + 4)


@dataclass(frozen=True)
class CubicParams:
    c: Fraction

    @property
    def gamma(self) -> Fraction:
        return 27 * self.c + 4

    def delta(self, m) -> Fraction:
        return as_rat(m) ** 2 - 3 * self.gamma * self.c


def f3_iso_element(c, m) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Coordinates (x0, x1, x2) of u = x2 w^2 + x1 w + x0 in f_c with u^3 = u^2 + d, and d.

    The conic parameterization by the slope m, with gamma = 27c + 4 and
    Delta = m^2 - 3 gamma c.
    """
    c, m = as_rat(c), as_rat(m)
    if not c:
        raise DegenerateParameter("c = 0")
    p = CubicParams(c)
    g, D = p.gamma, p.delta(m)
    if not D:
        raise DegenerateParameter(f"Delta = m^2 - 3*gamma*c vanishes at m = {m}")
    x0 = 2 * c * (3 * m - g) / D
    x1 = (m * m - (g - 9 * c) * m + 3 * g * c) / D
    x2 = 4 * m / D
    d = c * (m**3 - g * m * m + 9 * g * c * m - g * g * c) ** 2 / D**3
    return x0, x1, x2, d


def _power_basis(lam: StructureVector, e, u) -> Mat:
    return Mat.from_columns([e, u, product(lam, u, u)])


def f3_iso_matrix(c, m) -> tuple[Mat, Fraction]:
    """g with columns w^0, u, u^2 so that act(f3(c), g) == f3(d)."""
    x0, x1, x2, d = f3_iso_element(c, m)
    lam = f3(c)
    g = _power_basis(lam, (1, 0, 0), (x0, x1, x2))
    if not det(g):
        raise DegenerateParameter(f"w^0, u, u^2 are dependent at c = {c}, m = {m}")
    return g, d


def square_class_check(c, m) -> bool:
    """(27d^2 + 4d) / (27c^2 + 4c) is the square of a rational."""
    c = as_rat(c)
    denom = 27 * c * c + 4 * c
    if not denom:
        raise DegenerateParameter("27c^2 + 4c = 0")
    d = f3_iso_element(c, m)[3]
    return is_rational_square((27 * d * d + 4 * d) / denom)


# ---------------------------------------------------------------------------
# dimension 3: the split algebra F + F(sqrt s)


def split_cubic(s) -> StructureVector:
    """v1^2 = v1, v2^2 = v2, v3^2 = s v2, v2 v3 = v3, other products 0; identity v1 + v2."""
    s = as_rat(s)
    if not s:
        raise ZeroParameter("split cubic algebra needs s != 0")
    return StructureVector.from_nonzero(
        3, {(1, 1, 1): 1, (2, 2, 2): 1, (3, 3, 2): s, (2, 3, 3): 1, (3, 2, 3): 1}
    )


_EXCLUDED = (Fraction(-1, 3), Fraction(0), Fraction(1, 9), Fraction(1))


def _split_generator_coords(s: Fraction, m: Fraction):
    k = m * m * s
    if 9 * k + 3 == 0:
        return None
    x1 = (9 * k - 1) / (9 * k + 3)
    x2 = 2 / (9 * k + 3)
    x3 = 2 * m / (3 * k + 1)
    d = -4 * (9 * k - 1) ** 2 / (27 * (3 * k + 1) ** 3)
    return x1, x2, x3, d


def split_cubic_basis_det(s, m) -> Fraction | None:
    """det(e, w, w^2) for the slope-m generator, or None where the formulas have a pole."""
    s, m = as_rat(s), as_rat(m)
    coords = _split_generator_coords(s, m)
    if coords is None:
        return None
    return det(_power_basis(split_cubic(s), (1, 1, 0), coords[:3]))


def split_cubic_generator(s, m):
    """w = x1 v1 + x2 v2 + x3 v3 with w^3 = w^2 + d e; returns (x1, x2, x3, d, g).

    g has columns e, w, w^2, so act(split_cubic(s), g) == f3(d).
    """
    s, m = as_rat(s), as_rat(m)
    lam = split_cubic(s)
    k = m * m * s
    if k in _EXCLUDED:
        raise RestrictedParameter(f"m^2 s = {k} is excluded (must avoid -1/3, 0, 1/9, 1)")
    x1, x2, x3, d = _split_generator_coords(s, m)
    g = _power_basis(lam, (1, 1, 0), (x1, x2, x3))
    return x1, x2, x3, d, g


# ---------------------------------------------------------------------------
# cubic normalization


@dataclass(frozen=True)
class NormalizationInput:
    p: Fraction
    q: Fraction
    b: Fraction | None = None


def cubic_algebra(p, q) -> StructureVector:
    """F[w]/(w^3 - p w - q) on (e, w, w^2)."""
    p, q = as_rat(p), as_rat(q)
    table = {}
    for j in (1, 2, 3):
        table[(1, j, j)] = 1
        table[(j, 1, j)] = 1
    table[(2, 2, 3)] = 1
    for i, j in ((2, 3), (3, 2)):  # w^3 = q + p w
        table[(i, j, 1)] = q
        table[(i, j, 2)] = p
    table[(3, 3, 2)] = q  # w^4 = q w + p w^2
    table[(3, 3, 3)] = p
    return StructureVector.from_nonzero(3, {k: v for k, v in table.items() if v})


def normalize_cubic(inp: NormalizationInput) -> tuple[Fraction, tuple[Fraction, Fraction, Fraction]]:
    """Generator u of F[w]/(w^3 - pw - q) with u^3 = u^2 + c; returns (c, coords of u).

    p != 0: u = w^2/p - 1/3.  p = 0: u = w^2/(9bq) + b w + 1/3, which needs
    b != 0 and 729 b^6 q^2 != 1.  The result is checked by exact expansion.
    """
    p, q = as_rat(inp.p), as_rat(inp.q)
    if not q:
        raise BadNormalization("q must be nonzero")
    if p:
        u = (Fraction(-1, 3), Fraction(0), 1 / p)
        c = -(4 * p**3 - 27 * q * q) / (27 * p**3)
    else:
        if inp.b is None:
            raise BadNormalization("p = 0 needs the auxiliary parameter b")
        b = as_rat(inp.b)
        if not b:
            raise BadNormalization("b must be nonzero")
        if 729 * b**6 * q * q == 1:
            raise BadNormalization("729 b^6 q^2 = 1: e, u, u^2 are dependent")
        u = (Fraction(1, 3), b, 1 / (9 * b * q))
        c = (27 * b**3 * q - 1) ** 2 / (729 * b**3 * q)
    lam = cubic_algebra(p, q)
    u2 = product(lam, u, u)
    u3 = product(lam, u2, u)
    if tuple(x - y for x, y in zip(u3, u2)) != (c, 0, 0):
        raise BadNormalization("u^3 - u^2 is not the expected constant")
    if not det(Mat.from_columns([(1, 0, 0), u, u2])):
        raise BadNormalization("e, u, u^2 are dependent")
    return c, u


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Certificate:
    name: str
    lam_from: StructureVector
    family: ContractionFamily
    lam_to: StructureVector
    matcher: Mat | None = None
    note: str = ""

    def __iter__(self):
        return iter((self.lam_from, self.family, self.lam_to, self.matcher))


def standard_contractions(s=2) -> list[Certificate]:
    """Explicit contraction families for the two-dimensional degenerations.

    f_s -> a5 goes through f_1 = F + F; the stored certificate is the
    contraction f_1 -> a5 along the idempotent basis ((v1+v2)/2, t(v1-v2)/2).
    """
    s = as_rat(s)
    fs, f1 = f2_quadratic(s), f2_quadratic(1)
    a0, a4, a5 = two_dim("a0"), two_dim("a4"), two_dim("a5")
    tI = ContractionFamily(Mat.diag([t, t]))
    half = Fraction(1, 2)
    return [
        Certificate("f_s -> a4", fs, ContractionFamily(Mat.diag([1, t])), a4),
        Certificate(
            "f_1 -> a5",
            f1,
            ContractionFamily(Mat([[half, half * t], [half, -half * t]])),
            a5,
            note="second leg of f_s -> f_1 -> a5",
        ),
        Certificate("f_s -> a0", fs, tI, a0),
        Certificate("a4 -> a0", a4, tI, a0),
        Certificate("a5 -> a0", a5, tI, a0),
    ]


P1 = OrbitPolynomial(
    [
        (1, [(1, 1, 1), (1, 1, 1)]),
        (-1, [(2, 1, 2), (2, 1, 2)]),
        (2, [(1, 1, 2), (2, 1, 1)]),
        (2, [(1, 1, 2), (2, 2, 2)]),
    ]
)
P2 = OrbitPolynomial([(1, [(1, 1, 1), (2, 1, 2)]), (-1, [(1, 1, 2), (2, 1, 1)])])


def forbidden_pairs() -> list[tuple[StructureVector, StructureVector, OrbitPolynomial]]:
    """(source, target, P): P vanishes on the source orbit but not at the target."""
    a4, a5 = two_dim("a4"), two_dim("a5")
    return [(a4, a5, P1), (a5, a4, P2)]


# ---------------------------------------------------------------------------
# lookup by name


def by_name(spec: str) -> StructureVector:
    """Parse ``f2:s``, ``a0``, ``a4``, ``a5``, ``f3:c`` or ``split3:s``."""
    name, _, param = spec.partition(":")
    if name in _TWO_DIM:
        if param:
            raise UnknownName(f"{name} takes no parameter")
        return two_dim(name)
    builders = {"f2": f2_quadratic, "f3": f3, "split3": split_cubic}
    if name not in builders:
        raise UnknownName(f"unknown algebra {spec!r}; expected f2:s, a0, a4, a5, f3:c or split3:s")
    if not param:
        raise UnknownName(f"{name} needs a parameter, e.g. {name}:2")
    return builders[name](parse_rat(param))
