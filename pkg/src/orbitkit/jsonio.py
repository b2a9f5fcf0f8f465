"""JSON encodings of exact values.

Rat is a string "p/q" (or "p"); Poly an array of Rat strings in ascending
degree; RatFunc {"num": [...], "den": [...]}; Mat {"rows", "cols", "entries"}.
Decoders also accept bare ints and Rat strings wherever a RatFunc may
appear, since constants are the common case.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .contraction import ContractionFamily, OrbitPolynomial
from .errors import BadInput
from .exactalg import Mat, Poly, RatFunc, parse_rat
from .quadforms import QuadForm
from .structvec import StructureVector


def enc_rat(x: Fraction) -> str:
    return str(Fraction(x))


def enc_poly(p: Poly) -> list[str]:
    return [enc_rat(c) for c in p.coeffs]


def enc_scalar(x):
    """Rat as a string; a non-constant RatFunc as {"num", "den"}."""
    if isinstance(x, RatFunc):
        if x.is_constant():
            return enc_rat(x.num.coeffs[0] if x.num.coeffs else 0)
        return {"num": enc_poly(x.num), "den": enc_poly(x.den)}
    return enc_rat(x)


def enc_mat(M: Mat) -> dict:
    return {"rows": M.rows, "cols": M.cols, "entries": [[enc_scalar(x) for x in r] for r in M.entries]}


def enc_vec(v) -> list:
    return [enc_scalar(x) for x in v]


def enc_structure(lam: StructureVector) -> dict:
    return {
        "n": lam.n,
        "entries": [
            {"i": i, "j": j, "k": k, "value": enc_scalar(v)} for (i, j, k), v in sorted(lam.nonzero().items())
        ],
    }


def enc_form(Q: QuadForm) -> dict:
    return {"n": Q.n, "gram": [[enc_scalar(x) for x in r] for r in Q.gram.entries]}


def enc_family(C: ContractionFamily) -> dict:
    return {"n": C.n, "mat": [[enc_scalar(x) for x in r] for r in C.mat.entries]}


def enc_polynomial(P: OrbitPolynomial) -> list[dict]:
    return [{"coeff": enc_rat(c), "monomial": [list(m) for m in mono]} for c, mono in P.terms]


# ---------------------------------------------------------------------------
# decoding


def _rat(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise BadInput(f"expected a rational string, got {x!r}")
    try:
        return parse_rat(x)
    except ValueError as exc:
        raise BadInput(str(exc)) from None


def dec_poly(data) -> Poly:
    if not isinstance(data, list):
        raise BadInput(f"expected a coefficient array, got {data!r}")
    return Poly([_rat(c) for c in data])


def dec_scalar(x):
    if isinstance(x, dict):
        if set(x) != {"num", "den"}:
            raise BadInput(f"rational function needs exactly 'num' and 'den', got {sorted(x)}")
        den = dec_poly(x["den"])
        if den.is_zero():
            raise BadInput("rational function with zero denominator")
        return RatFunc(dec_poly(x["num"]), den)
    return _rat(x)


def _square(rows, n: int, what: str) -> list[list]:
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise BadInput(f"{what} must be a {n}x{n} array")
    return [[dec_scalar(x) for x in r] for r in rows]


def _need(data, key, kind=None):
    if not isinstance(data, dict) or key not in data:
        raise BadInput(f"missing field {key!r}")
    v = data[key]
    if kind is int and (isinstance(v, bool) or not isinstance(v, int) or v < 0):
        raise BadInput(f"field {key!r} must be a nonnegative integer")
    return v


def dec_mat(data) -> Mat:
    rows, cols = _need(data, "rows", int), _need(data, "cols", int)
    entries = _need(data, "entries")
    if not isinstance(entries, list) or len(entries) != rows or any(
        not isinstance(r, list) or len(r) != cols for r in entries
    ):
        raise BadInput(f"entries must be a {rows}x{cols} array")
    return Mat([[dec_scalar(x) for x in r] for r in entries])


def dec_structure(data) -> StructureVector:
    n = _need(data, "n", int)
    items = _need(data, "entries")
    if not isinstance(items, list):
        raise BadInput("'entries' must be an array")
    values = {}
    for item in items:
        key = tuple(_need(item, c, int) for c in "ijk")
        if key in values:
            raise BadInput(f"duplicate triple {key}")
        if not all(1 <= x <= n for x in key):
            raise BadInput(f"triple {key} out of range for n={n}")
        values[key] = dec_scalar(_need(item, "value"))
    return StructureVector.from_nonzero(n, values)


def dec_form(data) -> QuadForm:
    n = _need(data, "n", int)
    gram = Mat(_square(_need(data, "gram"), n, "gram"))
    if not gram.is_symmetric():
        raise BadInput("gram matrix is not symmetric")
    return QuadForm(gram)


def dec_family(data) -> ContractionFamily:
    n = _need(data, "n", int)
    return ContractionFamily(Mat(_square(_need(data, "mat"), n, "mat")).lift())


def dec_polynomial(data) -> OrbitPolynomial:
    if not isinstance(data, list):
        raise BadInput("polynomial must be an array of terms")
    terms = []
    for term in data:
        mono = _need(term, "monomial")
        if not isinstance(mono, list) or any(
            not isinstance(m, list) or len(m) != 3 or any(isinstance(x, bool) or not isinstance(x, int) for x in m)
            for m in mono
        ):
            raise BadInput("monomial must be a list of [i, j, k] triples")
        terms.append((_rat(_need(term, "coeff")), mono))
    return OrbitPolynomial(terms)


def load(path: str | Path):
    """Read UTF-8 JSON, mapping syntax errors to BadInput."""
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise BadInput(f"cannot read {path}: {exc.strerror}") from None
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise BadInput(f"malformed JSON in {path}: {exc}") from None


def dumps(obj, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


__all__ = [
    "dec_family",
    "dec_form",
    "dec_mat",
    "dec_poly",
    "dec_polynomial",
    "dec_scalar",
    "dec_structure",
    "dumps",
    "enc_family",
    "enc_form",
    "enc_mat",
    "enc_poly",
    "enc_polynomial",
    "enc_rat",
    "enc_scalar",
    "enc_structure",
    "enc_vec",
    "load",
]
