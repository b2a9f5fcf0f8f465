"""Exact scalars and matrices over Q and Q(t).

Rationals are :class:`fractions.Fraction`.  Polynomials in ``t`` and rational
functions are implemented here, since everything downstream needs the order
valuation at ``t = 0`` and an exact canonical form.

A :class:`RatFunc` is kept reduced with a monic denominator, so two equal
rational functions have identical representations and ``==`` is structural.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatch, NegativeOrder, Singular

#: The order of zero.
INFINITY = math.inf

Q = "Q"
QT = "Q(t)"

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_rat(x) -> Fraction:
    """Coerce ints, Fractions, ``"p/q"`` strings and constant rational functions."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, RatFunc):
        if x.den.coeffs != (_ONE,) or len(x.num.coeffs) > 1:
            raise TypeError(f"{x} is not a constant")
        return x.num.coeffs[0] if x.num.coeffs else _ZERO
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    return Fraction(x)


class Poly:
    """Polynomial in t with rational coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: list) -> Poly:
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        p = cls.__new__(cls)
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def constant(cls, c) -> Poly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> Poly:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def valuation(self):
        """Exponent of the largest power of t dividing self (INFINITY for 0)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return INFINITY

    def __call__(self, x):
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(out)

    def __neg__(self) -> Poly:
        p = Poly.__new__(Poly)
        p.coeffs = tuple(-c for c in self.coeffs)
        return p

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _PZERO
        if len(b) == 1:
            return self.scale(b[0])
        if len(a) == 1:
            return other.scale(a[0])
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly._raw(out)

    def scale(self, c) -> Poly:
        if not c:
            return _PZERO
        p = Poly.__new__(Poly)
        p.coeffs = tuple(x * c for x in self.coeffs)
        return p

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        lb = other.coeffs[-1]
        if len(r) - 1 < db:
            return _PZERO, self
        q = [_ZERO] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] / lb
            q[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    r[k + j] -= c * y
        return Poly._raw(q), Poly._raw(r[:db])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(1 / self.coeffs[-1])

    def shift_down(self, k: int) -> Poly:
        """Divide by t**k; the caller guarantees divisibility."""
        p = Poly.__new__(Poly)
        p.coeffs = self.coeffs[k:]
        return p

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else ""
            else:
                coef = f"({c})" if c.denominator != 1 and mono else str(c)
                if mono:
                    coef += "*"
            terms.append(coef + mono)
        return " + ".join(terms).replace("+ -", "- ")


_PZERO = Poly._raw([])
_PONE = Poly._raw([_ONE])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


class RatFunc:
    """Element of Q(t) as a reduced fraction with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num = num if isinstance(num, Poly) else Poly.constant(num)
        den = den if isinstance(den, Poly) else Poly.constant(den)
        if not den.coeffs:
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> RatFunc:
        f = cls.__new__(cls)
        f.num = num
        f.den = den
        return f

    @classmethod
    def coerce(cls, x) -> RatFunc:
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return cls._raw(x, _PONE)
        return cls._raw(Poly.constant(as_rat(x)), _PONE)

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def __bool__(self) -> bool:
        return bool(self.num.coeffs)

    def is_constant(self) -> bool:
        return self.den.coeffs == (_ONE,) and len(self.num.coeffs) <= 1

    def order(self):
        if not self.num.coeffs:
            return INFINITY
        return self.num.valuation() - self.den.valuation()

    def at_zero(self) -> Fraction:
        o = self.order()
        if o < 0:
            raise NegativeOrder(f"{self} has order {o} < 0; its value at t=0 does not exist", order=o)
        if not self.num.coeffs:
            return _ZERO
        return self.num.coeffs[0] / self.den.coeffs[0]

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError(f"{self} has a pole at t={x}")
        return self.num(x) / d

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                if self.den.coeffs == (_ONE,):
                    return RatFunc._raw(self.num + Poly.constant(other), _PONE)
                return RatFunc._raw(self.num + self.den.scale(Fraction(other)), self.den)
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            if b.coeffs == (_ONE,):
                return RatFunc._raw(a + c, _PONE)
            return RatFunc(a + c, b)
        return RatFunc(a * d + c * b, b * d)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (RatFunc, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                if not other:
                    return RatFunc._raw(_PZERO, _PONE)
                return RatFunc._raw(self.num.scale(Fraction(other)), self.den)
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if not a.coeffs or not c.coeffs:
            return RatFunc._raw(_PZERO, _PONE)
        if b.coeffs == (_ONE,) and d.coeffs == (_ONE,):
            return RatFunc._raw(a * c, _PONE)
        g1 = poly_gcd(a, d) if d.coeffs != (_ONE,) else _PONE
        g2 = poly_gcd(c, b) if b.coeffs != (_ONE,) else _PONE
        if g1.coeffs != (_ONE,):
            a, d = a // g1, d // g1
        if g2.coeffs != (_ONE,):
            c, b = c // g2, b // g2
        num, den = a * c, b * d
        lc = den.coeffs[-1]
        if lc != 1:
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        return RatFunc._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if not self.num.coeffs:
            raise ZeroDivisionError("inverse of zero rational function")
        lc = self.num.coeffs[-1]
        return RatFunc._raw(self.den.scale(1 / lc), self.num.scale(1 / lc))

    def __truediv__(self, other):
        if isinstance(other, RatFunc):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc._raw(_PONE, _PONE)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            if self.den.coeffs != (_ONE,):
                return False
            cs = self.num.coeffs
            return (not cs and other == 0) or (len(cs) == 1 and cs[0] == other)
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.num.coeffs[0] if self.num.coeffs else _ZERO)
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        if self.den.coeffs == (_ONE,):
            return str(self.num)
        n = str(self.num)
        if len([c for c in self.num.coeffs if c]) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if not num.coeffs:
        return _PZERO, _PONE
    if len(den.coeffs) == 1:
        c = den.coeffs[0]
        return (num if c == 1 else num.scale(1 / c)), _PONE
    g = poly_gcd(num, den)
    if g.coeffs != (_ONE,):
        num, den = num // g, den // g
    lc = den.coeffs[-1]
    if lc != 1:
        num, den = num.scale(1 / lc), den.scale(1 / lc)
    return num, den


#: The indeterminate.
t = RatFunc._raw(Poly((0, 1)), _PONE)

Scalar = Union[Fraction, RatFunc]


def parse_rat(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (also accepts a bare int)."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def order(f):
    """Order at t = 0: INFINITY for 0, else m with f = t**m * a/b, a(0) b(0) != 0."""
    if isinstance(f, RatFunc):
        return f.order()
    return INFINITY if f == 0 else 0


def eval_at_zero(f) -> Fraction:
    if isinstance(f, RatFunc):
        return f.at_zero()
    return as_rat(f)


def field_of(x) -> str:
    return QT if isinstance(x, RatFunc) else Q


def coerce(x, field: str):
    return RatFunc.coerce(x) if field == QT else as_rat(x)


def zero(field: str):
    return RatFunc._raw(_PZERO, _PONE) if field == QT else _ZERO


def one(field: str):
    return RatFunc._raw(_PONE, _PONE) if field == QT else _ONE


def join_fields(*fields: str) -> str:
    return QT if QT in fields else Q


# ---------------------------------------------------------------------------
# matrices


class Mat:
    """Immutable dense matrix over Q or Q(t).  Indexing is 0-based."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, data: Sequence[Sequence], field: str | None = None):
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise DimensionMismatch("ragged matrix rows")
        if field is None:
            field = QT if any(isinstance(x, RatFunc) for r in data for x in r) else Q
        self.rows = rows
        self.cols = cols
        self.field = field
        self.entries = tuple(tuple(coerce(x, field) for x in r) for r in data)

    @classmethod
    def _raw(cls, entries: tuple, field: str, cols: int | None = None) -> Mat:
        m = cls.__new__(cls)
        m.entries = entries
        m.rows = len(entries)
        m.cols = len(entries[0]) if entries else (cols or 0)
        m.field = field
        return m

    @classmethod
    def identity(cls, n: int, field: str = Q) -> Mat:
        z, o = zero(field), one(field)
        return cls._raw(tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), field, n)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: str = Q) -> Mat:
        z = zero(field)
        return cls._raw(tuple((z,) * cols for _ in range(rows)), field, cols)

    @classmethod
    def diag(cls, values: Sequence, field: str | None = None) -> Mat:
        n = len(values)
        if field is None:
            field = QT if any(isinstance(v, RatFunc) for v in values) else Q
        vals = [coerce(v, field) for v in values]
        z = zero(field)
        return cls._raw(tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)), field, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field: str | None = None) -> Mat:
        if not columns:
            return cls([], field or Q)
        return cls([list(r) for r in zip(*columns)], field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self) -> Mat:
        return Mat._raw(tuple(zip(*self.entries)) if self.rows else (), self.field, self.rows)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]

    def lift(self) -> Mat:
        """The same matrix viewed over Q(t)."""
        if self.field == QT:
            return self
        return Mat._raw(tuple(tuple(RatFunc.coerce(x) for x in r) for r in self.entries), QT, self.cols)

    def to_field(self, field: str) -> Mat:
        if field == self.field:
            return self
        if field == QT:
            return self.lift()
        return Mat._raw(tuple(tuple(as_rat(x) for x in r) for r in self.entries), Q, self.cols)

    def map(self, fn, field: str | None = None) -> Mat:
        return Mat([[fn(x) for x in r] for r in self.entries], field)

    def is_zero(self) -> bool:
        return all(not x for r in self.entries for x in r)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i)
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Mat:
        return Mat._raw(tuple(tuple(self.entries[i][j] for j in cols) for i in rows), self.field, len(cols))

    def __matmul__(self, other: Mat) -> Mat:
        if not isinstance(other, Mat):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        field = join_fields(self.field, other.field)
        a = self.to_field(field).entries
        bt = list(zip(*other.to_field(field).entries)) if other.rows else [()] * other.cols
        z = zero(field)
        out = []
        for r in a:
            row = []
            for c in bt:
                acc = z
                for x, y in zip(r, c):
                    if x and y:
                        acc = acc + x * y
                row.append(acc)
            out.append(tuple(row))
        return Mat._raw(tuple(out), field, other.cols)

    def __add__(self, other: Mat) -> Mat:
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        field = join_fields(self.field, other.field)
        a, b = self.to_field(field), other.to_field(field)
        return Mat._raw(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a.entries, b.entries)), field, self.cols
        )

    def __neg__(self) -> Mat:
        return Mat._raw(tuple(tuple(-x for x in r) for r in self.entries), self.field, self.cols)

    def __sub__(self, other: Mat) -> Mat:
        return self + (-other)

    def __mul__(self, c) -> Mat:
        if isinstance(c, Mat):
            return NotImplemented
        field = join_fields(self.field, field_of(c))
        c = coerce(c, field)
        return Mat._raw(
            tuple(tuple(coerce(x, field) * c for x in r) for r in self.entries), field, self.cols
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and all(
            x == y for r, s in zip(self.entries, other.entries) for x, y in zip(r, s)
        )

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)
        return f"Mat([{body}], {self.field})"


def block_diag(*blocks: Mat) -> Mat:
    field = join_fields(*(b.field for b in blocks)) if blocks else Q
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    z = zero(field)
    out = [[z] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        b = b.to_field(field)
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b.entries[i][j]
        r0 += b.rows
        c0 += b.cols
    return Mat._raw(tuple(tuple(r) for r in out), field, m)


def mat_order(M: Mat):
    """Minimum order over the entries (INFINITY for the zero matrix)."""
    return min((order(x) for r in M.entries for x in r), default=INFINITY)


def mat_eval_at_zero(M: Mat) -> Mat:
    out = []
    for i, r in enumerate(M.entries):
        row = []
        for j, x in enumerate(r):
            o = order(x)
            if o < 0:
                raise NegativeOrder(
                    f"entry ({i + 1},{j + 1}) = {x} has order {o} < 0", position=(i + 1, j + 1), order=o
                )
            row.append(eval_at_zero(x))
        out.append(tuple(row))
    return Mat._raw(tuple(out), Q, M.cols)


def rref(M: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and pivot columns.

    The pivot in each column is the first nonzero entry at or below the
    current row, so the output is deterministic.
    """
    a = [list(r) for r in M.entries]
    rows, cols = M.rows, M.cols
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv if x else x for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Mat._raw(tuple(tuple(row) for row in a), M.field, cols), pivots


def mat_rank(M: Mat) -> int:
    return len(rref(M)[1])


def nullspace(M: Mat) -> list[tuple]:
    """Basis of {x : M x = 0}, one vector per free column, in column order."""
    R, pivots = rref(M)
    field = M.field
    z, o = zero(field), one(field)
    free = [j for j in range(M.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [z] * M.cols
        v[f] = o
        for i, p in enumerate(pivots):
            v[p] = -R.entries[i][f]
        basis.append(tuple(v))
    return basis


def det(M: Mat):
    if not M.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    n = M.rows
    a = [list(r) for r in M.entries]
    d = one(M.field)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return zero(M.field)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        piv = a[c][c]
        d = d * piv
        inv = 1 / piv
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[c])]
    return d


def inverse(M: Mat) -> Mat:
    if not M.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    n = M.rows
    o, z = one(M.field), zero(M.field)
    aug = Mat._raw(
        tuple(tuple(r) + tuple(o if i == j else z for j in range(n)) for i, r in enumerate(M.entries)),
        M.field,
        2 * n,
    )
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise Singular("matrix is singular")
    return Mat._raw(tuple(r[n:] for r in R.entries), M.field, n)


def _cofactor_adjugate(M: Mat) -> Mat:
    n = M.rows
    if n == 1:
        return Mat.identity(1, M.field)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            # adj[i][j] = (-1)^(i+j) * det(M without row j, col i)
            minor = M.submatrix([r for r in range(n) if r != j], [c for c in range(n) if c != i])
            d = det(minor)
            row.append(d if (i + j) % 2 == 0 else -d)
        out.append(tuple(row))
    return Mat._raw(tuple(out), M.field, n)


def mat_adjugate_inverse(M: Mat, want_inverse: bool = True):
    """Return ``(det, adjugate, inverse)``; ``inverse`` is None if not requested.

    Raises :class:`Singular` if the inverse is requested and det = 0.
    """
    d = det(M)
    if d:
        inv = inverse(M)
        adj = inv * d
        return d, adj, (inv if want_inverse else None)
    if want_inverse:
        raise Singular("matrix is singular (det = 0)")
    return d, _cofactor_adjugate(M), None


def lift(M: Mat) -> Mat:
    return M.lift()


def vec_is_zero(v: Sequence) -> bool:
    return all(not x for x in v)
