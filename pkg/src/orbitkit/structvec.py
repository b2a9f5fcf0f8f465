"""Structure vectors of n-dimensional algebras and the change-of-basis action.

The product on the working basis is ``[v_i, v_j] = sum_k lam[i,j,k] v_k``.
Index triples in the public API (``get``, ``from_nonzero``) are 1-based to
match the usual tables; vectors are plain coordinate tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DimensionMismatch, Singular
from .exactalg import Q, QT, Mat, RatFunc, coerce, field_of, join_fields, mat_adjugate_inverse, mat_rank, zero
from .quadforms import QuadForm


class StructureVector:
    """The n^3 structure constants of a bilinear product, flat in (i, j, k) order."""

    __slots__ = ("n", "field", "entries")

    def __init__(self, n: int, entries: Sequence, field: str | None = None):
        if len(entries) != n**3:
            raise DimensionMismatch(f"expected {n**3} structure constants, got {len(entries)}")
        if field is None:
            field = QT if any(isinstance(x, RatFunc) for x in entries) else Q
        self.n = n
        self.field = field
        self.entries = tuple(coerce(x, field) for x in entries)

    @classmethod
    def zero(cls, n: int, field: str = Q) -> StructureVector:
        return cls(n, [zero(field)] * n**3, field)

    @classmethod
    def from_nonzero(cls, n: int, values: Mapping[tuple[int, int, int], object], field: str | None = None):
        """Build from {(i, j, k): value} with 1-based indices; omitted triples are 0."""
        if field is None:
            field = QT if any(isinstance(v, RatFunc) for v in values.values()) else Q
        flat = [zero(field)] * n**3
        for (i, j, k), v in values.items():
            if not (1 <= i <= n and 1 <= j <= n and 1 <= k <= n):
                raise DimensionMismatch(f"index ({i},{j},{k}) out of range for n={n}")
            flat[((i - 1) * n + (j - 1)) * n + (k - 1)] = v
        return cls(n, flat, field)

    def get(self, i: int, j: int, k: int):
        """lam_ijk with 1-based indices."""
        n = self.n
        return self.entries[((i - 1) * n + (j - 1)) * n + (k - 1)]

    def _at(self, i: int, j: int, k: int):
        n = self.n
        return self.entries[(i * n + j) * n + k]

    def nonzero(self) -> dict[tuple[int, int, int], object]:
        n = self.n
        out = {}
        for idx, v in enumerate(self.entries):
            if v:
                i, rest = divmod(idx, n * n)
                j, k = divmod(rest, n)
                out[(i + 1, j + 1, k + 1)] = v
        return out

    def lift(self) -> StructureVector:
        if self.field == QT:
            return self
        return StructureVector(self.n, self.entries, QT)

    def map(self, fn, field: str | None = None) -> StructureVector:
        return StructureVector(self.n, [fn(x) for x in self.entries], field)

    def scale(self, c) -> StructureVector:
        field = join_fields(self.field, field_of(c))
        return StructureVector(self.n, [coerce(x, field) * c for x in self.entries], field)

    def is_zero(self) -> bool:
        return all(not x for x in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructureVector):
            return NotImplemented
        return self.n == other.n and all(x == y for x, y in zip(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.n, self.entries))

    def __repr__(self) -> str:
        nz = ", ".join(f"l{i}{j}{k}={v}" for (i, j, k), v in self.nonzero().items())
        return f"StructureVector(n={self.n}, {{{nz}}})"


def _check_vec(lam: StructureVector, u: Sequence) -> None:
    if len(u) != lam.n:
        raise DimensionMismatch(f"vector of length {len(u)} for an algebra of dimension {lam.n}")


def product(lam: StructureVector, u: Sequence, v: Sequence) -> tuple:
    """[u, v] = sum_{i,j} u_i v_j lam_{ij.}."""
    _check_vec(lam, u)
    _check_vec(lam, v)
    n = lam.n
    F = join_fields(lam.field, *(field_of(x) for x in u), *(field_of(x) for x in v))
    out = [zero(F)] * n
    for i in range(n):
        if not u[i]:
            continue
        for j in range(n):
            if not v[j]:
                continue
            c = u[i] * v[j]
            base = (i * n + j) * n
            for k in range(n):
                x = lam.entries[base + k]
                if x:
                    out[k] = out[k] + c * x
    return tuple(out)


def basis_vector(n: int, i: int, field: str = Q) -> tuple:
    """0-based standard basis vector e_i."""
    return tuple(coerce(1 if j == i else 0, field) for j in range(n))


def act(lam: StructureVector, g: Mat) -> StructureVector:
    """Change of basis: lam'_ijk = sum g_ai g_bj ginv_kc lam_abc.

    lam' is the structure vector of the same product relative to the basis
    g v_1, ..., g v_n (the columns of g).  This is a right action:
    act(act(lam, g), h) == act(lam, g @ h).
    """
    n = lam.n
    if g.shape != (n, n):
        raise DimensionMismatch(f"need a {n}x{n} matrix, got {g.shape}")
    d, _, ginv = mat_adjugate_inverse(g)
    if not d:
        raise Singular("change of basis is singular")
    F = join_fields(lam.field, g.field)
    G = g.to_field(F).entries
    H = ginv.to_field(F).entries
    z = zero(F)
    src = [coerce(x, F) for x in lam.entries]

    def idx(a, b, c):
        return (a * n + b) * n + c

    # contract the three slots one at a time: O(n^4) instead of O(n^6)
    s1 = [z] * n**3
    for a in range(n):
        for b in range(n):
            for c in range(n):
                x = src[idx(a, b, c)]
                if not x:
                    continue
                for k in range(n):
                    h = H[k][c]
                    if h:
                        s1[idx(a, b, k)] = s1[idx(a, b, k)] + h * x
    s2 = [z] * n**3
    for a in range(n):
        for b in range(n):
            for k in range(n):
                x = s1[idx(a, b, k)]
                if not x:
                    continue
                for j in range(n):
                    gbj = G[b][j]
                    if gbj:
                        s2[idx(a, j, k)] = s2[idx(a, j, k)] + gbj * x
    s3 = [z] * n**3
    for a in range(n):
        for j in range(n):
            for k in range(n):
                x = s2[idx(a, j, k)]
                if not x:
                    continue
                for i in range(n):
                    gai = G[a][i]
                    if gai:
                        s3[idx(i, j, k)] = s3[idx(i, j, k)] + gai * x
    return StructureVector(n, s3, F)


def adjoint_matrix(lam: StructureVector, u: Sequence) -> Mat:
    """Matrix of v -> [u, v]; column j is [u, e_j]."""
    _check_vec(lam, u)
    F = join_fields(lam.field, *(field_of(x) for x in u))
    cols = [product(lam, u, basis_vector(lam.n, j, F)) for j in range(lam.n)]
    return Mat.from_columns(cols, F)


def trace_form(lam: StructureVector) -> QuadForm:
    """Gram matrix t_ij = sum_{k,l} lam_ikl lam_jlk = tr(ad e_i ad e_j)."""
    n, F = lam.n, lam.field
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero(F)
            for k in range(n):
                for l in range(n):
                    x = lam._at(i, k, l)
                    if x:
                        y = lam._at(j, l, k)
                        if y:
                            acc = acc + x * y
            row.append(acc)
        rows.append(row)
    return QuadForm(Mat(rows, F))


def algebra_rank(lam: StructureVector) -> int:
    return trace_form(lam).rank


@dataclass(frozen=True)
class AlgebraInvariants:
    trace_rank: int
    annihilator_dim: int
    square_dim: int
    derivation_dim: int
    commutative: bool
    associative: bool


def check_axioms(lam: StructureVector) -> tuple[bool, bool]:
    """(commutative, associative), by exhaustive checks on basis elements."""
    n = lam.n
    comm = all(lam._at(i, j, k) == lam._at(j, i, k) for i in range(n) for j in range(n) for k in range(n))
    e = [basis_vector(n, i, lam.field) for i in range(n)]
    prods = [[product(lam, e[i], e[j]) for j in range(n)] for i in range(n)]
    assoc = all(
        product(lam, prods[i][j], e[k]) == product(lam, e[i], prods[j][k])
        for i in range(n)
        for j in range(n)
        for k in range(n)
    )
    return comm, assoc


def annihilator_dim(lam: StructureVector) -> int:
    """Dimension of {u : [u, v] = [v, u] = 0 for all v}."""
    n = lam.n
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([lam._at(i, j, k) for i in range(n)])  # [u, e_j]_k
            rows.append([lam._at(j, i, k) for i in range(n)])  # [e_j, u]_k
    return n - mat_rank(Mat(rows, lam.field))


def square_dim(lam: StructureVector) -> int:
    """Dimension of the span of all [e_i, e_j]."""
    n = lam.n
    rows = [[lam._at(i, j, k) for k in range(n)] for i in range(n) for j in range(n)]
    return mat_rank(Mat(rows, lam.field))


def derivation_dim(lam: StructureVector) -> int:
    """Dimension of {D : D[u,v] = [Du,v] + [u,Dv]}, via the n^3 x n^2 linear system.

    Unknown D_bc (column c holds D e_c) sits at position b*n + c.
    """
    n, F = lam.n, lam.field
    z = zero(F)
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [z] * (n * n)
                # D[e_i, e_j]_k = sum_c lam_ijc D_kc
                for c in range(n):
                    x = lam._at(i, j, c)
                    if x:
                        row[k * n + c] = row[k * n + c] + x
                # [D e_i, e_j]_k = sum_b D_bi lam_bjk ; [e_i, D e_j]_k = sum_b D_bj lam_ibk
                for b in range(n):
                    x = lam._at(b, j, k)
                    if x:
                        row[b * n + i] = row[b * n + i] - x
                    y = lam._at(i, b, k)
                    if y:
                        row[b * n + j] = row[b * n + j] - y
                rows.append(row)
    return n * n - mat_rank(Mat(rows, F))


def invariant_dims(lam: StructureVector) -> AlgebraInvariants:
    comm, assoc = check_axioms(lam)
    return AlgebraInvariants(
        trace_rank=algebra_rank(lam),
        annihilator_dim=annihilator_dim(lam),
        square_dim=square_dim(lam),
        derivation_dim=derivation_dim(lam),
        commutative=comm,
        associative=assoc,
    )
