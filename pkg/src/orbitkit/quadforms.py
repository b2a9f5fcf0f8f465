"""Quadratic forms over Q and Q(t).

A form is stored through the Gram matrix of its bilinear form, so
``Q(u) = u^T [B] u``.  Equivalence is the right action ``[B] -> g^T [B] g``.

Over Q the module decides representation (is Q' a contraction of Q?) from
local invariants, and can search for an explicit witness basis.  Over Q(t)
only the constructive, order-aware diagonalization is provided.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BadWitness, DimensionMismatch, NegativeOrder, NotAmenable, Singular
from .exactalg import (
    INFINITY,
    Q,
    QT,
    Mat,
    RatFunc,
    as_rat,
    block_diag,
    det,
    inverse,
    mat_eval_at_zero,
    mat_order,
    mat_rank,
    nullspace,
    one,
    order,
    t,
    zero,
)
from .family import ContractionFamily, family_matrix
from .numtheory import (
    REAL,
    hilbert_symbol,
    is_local_square,
    is_rational_square,
    odd_primes_of,
    squarefree_decomposition,
    squarefree_part,
)

__all__ = [
    "QuadForm",
    "BlockDecomposition",
    "WittInvariants",
    "congruence_act",
    "diagonalize",
    "radical_split",
    "degenerates_to",
    "ordered_diagonalize_qt",
    "contraction_limit_qf",
    "family_for_representation",
    "hilbert_symbol",
    "witt_invariants",
    "witt_equivalent",
    "represents",
    "find_witness",
    "perp",
]


class QuadForm:
    """A quadratic form given by its symmetric Gram matrix."""

    def __init__(self, gram, field: str | None = None):
        if not isinstance(gram, Mat):
            gram = Mat(gram, field)
        elif field is not None:
            gram = gram.to_field(field)
        if not gram.is_square():
            raise DimensionMismatch(f"Gram matrix must be square, got {gram.shape}")
        if not gram.is_symmetric():
            raise ValueError("Gram matrix is not symmetric")
        self.gram = gram
        self.n = gram.rows

    @classmethod
    def diagonal(cls, values: Sequence, field: str | None = None) -> QuadForm:
        """The form <x_1, ..., x_m>."""
        return cls(Mat.diag(list(values), field))

    @classmethod
    def zero(cls, n: int, field: str = Q) -> QuadForm:
        return cls(Mat.zeros(n, n, field))

    @property
    def field(self) -> str:
        return self.gram.field

    @property
    def rank(self) -> int:
        return mat_rank(self.gram)

    def is_nonsingular(self) -> bool:
        return self.rank == self.n

    def is_diagonal(self) -> bool:
        return all(not self.gram[i, j] for i in range(self.n) for j in range(self.n) if i != j)

    def diagonal_entries(self) -> list:
        return [self.gram[i, i] for i in range(self.n)]

    def scaled(self, x) -> QuadForm:
        """x<x_1, ..., x_m>: every value multiplied by x."""
        return QuadForm(self.gram * x)

    def __neg__(self) -> QuadForm:
        return self.scaled(-1)

    def value(self, u: Sequence):
        g = self.gram
        return sum((u[i] * g[i, j] * u[j] for i in range(self.n) for j in range(self.n) if g[i, j]), zero(self.field))

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadForm) and self.gram == other.gram

    def __hash__(self) -> int:
        return hash(self.gram)

    def __repr__(self) -> str:
        if self.is_diagonal():
            return "<" + ", ".join(str(x) for x in self.diagonal_entries()) + ">"
        return f"QuadForm({self.gram!r})"


def perp(*forms: QuadForm) -> QuadForm:
    """Orthogonal sum."""
    return QuadForm(block_diag(*(f.gram for f in forms)))


def congruence_act(Q_: QuadForm, g: Mat) -> QuadForm:
    """The equivalent form with Gram matrix g^T [B] g."""
    if not g.is_square() or g.rows != Q_.n:
        raise DimensionMismatch(f"need a {Q_.n}x{Q_.n} matrix, got {g.shape}")
    if not det(g):
        raise Singular("change of basis is singular")
    return QuadForm(g.T @ Q_.gram @ g)


# ---------------------------------------------------------------------------
# diagonalization


def _add_multiple(M: list[list], T: list[list], src: int, dst: int, c) -> None:
    """Congruence by E = I + c*e_{src,dst}: col dst += c*col src, then the same on rows."""
    n = len(M)
    for i in range(n):
        if M[i][src]:
            M[i][dst] = M[i][dst] + c * M[i][src]
    for j in range(n):
        if M[src][j]:
            M[dst][j] = M[dst][j] + c * M[src][j]
    for i in range(n):
        if T[i][src]:
            T[i][dst] = T[i][dst] + c * T[i][src]


def _swap(M: list[list], T: list[list], a: int, b: int) -> None:
    if a == b:
        return
    for row in M:
        row[a], row[b] = row[b], row[a]
    M[a], M[b] = M[b], M[a]
    for row in T:
        row[a], row[b] = row[b], row[a]


def diagonalize(Q_: QuadForm) -> tuple[Mat, list]:
    """Return (g, d) with g^T [B] g = diag(d), over the form's own field.

    No permutations are used, so a diagonal input comes back with g = I and
    zeros stay in place.  When every remaining diagonal entry is zero but an
    off-diagonal one is not, the (i, i) entry is repaired by adding column j
    to column i, which turns it into 2*b_ij.
    """
    F = Q_.field
    n = Q_.n
    M = [list(r) for r in Q_.gram.entries]
    T = [list(r) for r in Mat.identity(n, F).entries]
    remaining = list(range(n))
    while remaining:
        p = next((i for i in remaining if M[i][i]), None)
        if p is None:
            pair = next(((i, j) for i in remaining for j in remaining if i < j and M[i][j]), None)
            if pair is None:
                break
            p, q = pair
            _add_multiple(M, T, q, p, one(F))
        inv = 1 / M[p][p]
        for j in remaining:
            if j != p and M[p][j]:
                _add_multiple(M, T, p, j, -(M[p][j] * inv))
        remaining.remove(p)
    g = Mat._raw(tuple(tuple(r) for r in T), F, n)
    return g, [M[i][i] for i in range(n)]


def radical_split(Q_: QuadForm) -> tuple[QuadForm, int, Mat]:
    """Split Q = Q_N (nonsingular) + zero form.

    Returns ``(Q_N, corank, g)`` where g = [complement | radical basis] and
    g^T [B] g = [B_{Q_N}] (+) 0.  The complement is spanned by the standard
    basis vectors not already in the span, chosen in index order, so a
    nonsingular form comes back with g = I.
    """
    n, F = Q_.n, Q_.field
    rad = nullspace(Q_.gram)
    chosen: list[tuple] = []
    o, z = one(F), zero(F)
    r = len(rad)
    for i in range(n):
        if len(chosen) == n - r:
            break
        e = tuple(o if j == i else z for j in range(n))
        cand = chosen + [e] + rad
        if mat_rank(Mat.from_columns(cand, F)) == len(cand):
            chosen.append(e)
    g = Mat.from_columns(chosen + rad, F) if n else Mat([], F)
    if chosen:
        C = Mat.from_columns(chosen, F)
        QN = QuadForm(C.T @ Q_.gram @ C)
    else:
        QN = QuadForm(Mat([], F))
    return QN, r, g


def degenerates_to(Q_: QuadForm, Qp: QuadForm) -> bool:
    """Q' lies in the orbit closure of Q iff rank Q' <= rank Q."""
    if Q_.n != Qp.n:
        raise DimensionMismatch(f"forms on spaces of dimension {Q_.n} and {Qp.n}")
    return Qp.rank <= Q_.rank


# ---------------------------------------------------------------------------
# order-aware diagonalization over Q(t)


@dataclass(frozen=True)
class BlockDecomposition:
    """transform^T [B] transform = (+)_e t^e diag(units_e) (+) 0_corank."""

    transform: Mat
    blocks: tuple[tuple[int, tuple[RatFunc, ...]], ...]
    corank: int
    factors: tuple[Mat, ...] = field(default=(), repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.transform.rows

    def diagonal(self) -> list[RatFunc]:
        out = [t**e * u for e, units in self.blocks for u in units]
        return out + [zero(QT)] * self.corank

    def block_matrix(self) -> Mat:
        return Mat.diag(self.diagonal(), QT)

    def residue_parts(self) -> tuple[list[Fraction], list[Fraction]]:
        """Units of even and odd exponent, evaluated at t = 0."""
        even = [u.at_zero() for e, units in self.blocks if e % 2 == 0 for u in units]
        odd = [u.at_zero() for e, units in self.blocks if e % 2 == 1 for u in units]
        return even, odd

    def limit(self) -> Mat:
        """The block matrix at t = 0: only the exponent-0 units survive."""
        return mat_eval_at_zero(self.block_matrix())


def _elementary(n: int, src: int, dst: int, c) -> Mat:
    rows = [[one(QT) if i == j else zero(QT) for j in range(n)] for i in range(n)]
    rows[src][dst] = RatFunc.coerce(c)
    return Mat(rows, QT)


def _permutation(n: int, a: int, b: int) -> Mat:
    perm = list(range(n))
    perm[a], perm[b] = perm[b], perm[a]
    return Mat([[one(QT) if perm[j] == i else zero(QT) for j in range(n)] for i in range(n)], QT)


def ordered_diagonalize_qt(Bt: QuadForm, tie_break: str = "first") -> BlockDecomposition:
    """Diagonalize a form over Q(t) of nonnegative order without scaling.

    Each step pivots on an entry of least order in the trailing block.  A
    diagonal entry is preferred; otherwise an off-diagonal entry m with all
    diagonal orders strictly larger is moved to (k, k) by adding a column, so
    the new pivot 2m + a + b has order ord(m).  Row and column k are then
    cleared with factors -c/m of order >= 0.  Only permutations and
    unipotent elementary matrices with entries of order >= 0 are used.

    ``tie_break`` picks among equally good pivots: ``"first"`` takes the
    lexicographically smallest index, ``"last"`` the largest.
    """
    if tie_break not in ("first", "last"):
        raise ValueError(f"unknown tie_break {tie_break!r}")
    gram = Bt.gram.lift()
    o = mat_order(gram)
    if o < 0:
        for i in range(gram.rows):
            for j in range(gram.cols):
                if order(gram[i, j]) == o:
                    raise NegativeOrder(
                        f"entry ({i + 1},{j + 1}) has order {o} < 0", position=(i + 1, j + 1), order=o
                    )
    n = Bt.n
    M = [list(r) for r in gram.entries]
    T = [list(r) for r in Mat.identity(n, QT).entries]
    factors: list[Mat] = []
    pick = (lambda xs: xs[0]) if tie_break == "first" else (lambda xs: xs[-1])
    k = 0
    while k < n:
        orders = {(i, j): order(M[i][j]) for i in range(k, n) for j in range(i, n)}
        least = min(orders.values())
        if least == INFINITY:
            break
        diag = [i for i in range(k, n) if orders[i, i] == least]
        if diag:
            p = pick(diag)
            if p != k:
                _swap(M, T, k, p)
                factors.append(_permutation(n, k, p))
        else:
            i, j = pick([ij for ij in sorted(orders) if ij[0] < ij[1] and orders[ij] == least])
            if i != k:
                _swap(M, T, k, i)
                factors.append(_permutation(n, k, i))
            _add_multiple(M, T, j, k, one(QT))
            factors.append(_elementary(n, j, k, 1))
        m = M[k][k]
        for j in range(k + 1, n):
            if M[k][j]:
                c = -(M[k][j] / m)
                _add_multiple(M, T, k, j, c)
                factors.append(_elementary(n, k, j, c))
        k += 1
    blocks: list[tuple[int, list[RatFunc]]] = []
    for i in range(k):
        d = M[i][i]
        e = d.order()
        unit = d * t ** (-e)
        if blocks and blocks[-1][0] == e:
            blocks[-1][1].append(unit)
        else:
            if blocks and blocks[-1][0] > e:
                raise AssertionError("pivot orders must be nondecreasing")
            blocks.append((e, [unit]))
    return BlockDecomposition(
        transform=Mat._raw(tuple(tuple(r) for r in T), QT, n),
        blocks=tuple((e, tuple(us)) for e, us in blocks),
        corank=n - k,
        factors=tuple(factors),
    )


# ---------------------------------------------------------------------------
# contractions of forms


def contraction_limit_qf(Q_: QuadForm, C) -> QuadForm:
    """The limit B^0 of B^t = g(t)^T [B] g(t); raises NotAmenable if it does not exist."""
    g = family_matrix(C)
    if g.rows != Q_.n or not g.is_square():
        raise DimensionMismatch(f"need a {Q_.n}x{Q_.n} family, got {g.shape}")
    if not det(g):
        raise Singular("contraction family has zero determinant")
    Bt = g.T @ Q_.gram.lift() @ g
    o = mat_order(Bt)
    if o < 0:
        i, j = next((i, j) for i in range(Bt.rows) for j in range(Bt.cols) if order(Bt[i, j]) == o)
        raise NotAmenable(
            f"not amenable: entry ({i + 1},{j + 1}) of B^t is {Bt[i, j]} of order {o}",
            position=(i + 1, j + 1),
            order=o,
        )
    return QuadForm(mat_eval_at_zero(Bt))


def _witness_ok(Q_: QuadForm, QN: QuadForm, g: Mat) -> bool:
    if g.shape != (Q_.n, Q_.n) or not det(g):
        return False
    G = g.T @ Q_.gram @ g
    k = QN.n
    if G.submatrix(range(k), range(k)) != QN.gram:
        return False
    return all(not G[i, j] for i in range(k) for j in range(k, Q_.n))


def family_for_representation(Q_: QuadForm, Qp: QuadForm, witness: Mat) -> ContractionFamily:
    """Contraction family whose limit on Q is exactly [B_{Q'}].

    ``witness`` must satisfy witness^T [B] witness = [B_{Q'_N}] (+) B'' with
    Q'_N the nonsingular part returned by :func:`radical_split`.  The family
    is witness * diag(I, tI) * h^-1, where h is the radical split of Q'.
    """
    if Q_.n != Qp.n:
        raise DimensionMismatch(f"forms on spaces of dimension {Q_.n} and {Qp.n}")
    QN, _, h = radical_split(Qp)
    witness = witness.to_field(Q)
    if not _witness_ok(Q_, QN, witness):
        raise BadWitness("witness does not split off the nonsingular part of Q' as an orthogonal block")
    k = QN.n
    scale = Mat.diag([1] * k + [t] * (Q_.n - k), QT)
    return ContractionFamily(witness.lift() @ scale @ inverse(h).lift())


# ---------------------------------------------------------------------------
# Witt invariants over Q


@dataclass(frozen=True)
class WittInvariants:
    dim: int
    rank: int
    disc: int
    signature: int
    hasse: dict
    witt_index: int
    anisotropic_dim: int

    def class_key(self) -> tuple:
        """Complete isometry invariant of the nonsingular part (with dim)."""
        bad = frozenset(p for p, e in self.hasse.items() if e == -1)
        return (self.dim, self.rank, self.disc, self.signature, bad)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "rank": self.rank,
            "disc": self.disc,
            "signature": self.signature,
            "hasse": {("inf" if p == REAL else str(p)): e for p, e in sorted(self.hasse.items())},
            "witt_index": self.witt_index,
            "anisotropic_dim": self.anisotropic_dim,
        }


def _hasse(values: Sequence[Fraction], p) -> int:
    e = 1
    for a, b in itertools.combinations(values, 2):
        e *= hilbert_symbol(a, b, p)
    return e


def _isotropic(r: int, d: int, eps: dict, sig: int, primes) -> bool:
    """Isotropy of a nonsingular form over Q from (dim, disc, Hasse, signature)."""
    if r <= 1:
        return False
    if r == 2:
        return is_rational_square(-d)
    pos, neg = (r + sig) // 2, (r - sig) // 2
    if pos == 0 or neg == 0:
        return False
    if r >= 5:
        return True
    if r == 3:
        return all(hilbert_symbol(-1, -d, p) == eps[p] for p in primes)
    return all(not is_local_square(d, p) or eps[p] == hilbert_symbol(-1, -1, p) for p in primes)


def witt_invariants_of(values: Sequence, dim: int | None = None) -> WittInvariants:
    """Invariants of the diagonal form <values> over Q (zeros count toward dim only)."""
    vals = [as_rat(v) for v in values]
    nz = [v for v in vals if v]
    dim = len(vals) if dim is None else dim
    r = len(nz)
    d = squarefree_part(math.prod(nz, start=Fraction(1)))
    sig = sum(1 if v > 0 else -1 for v in nz)
    primes = {2}
    for v in nz:
        primes |= odd_primes_of(v)
    primes = sorted(primes)
    hasse = {p: _hasse(nz, p) for p in primes}
    hasse[REAL] = _hasse(nz, REAL)
    eps = dict(hasse)
    index = 0
    while _isotropic(r, d, eps, sig, primes):
        # Q = H + Q' with d(Q') = -d and eps(Q') = eps(Q) (-1, -d)
        eps = {p: e * hilbert_symbol(-1, -d, p) for p, e in eps.items()}
        d = -d
        r -= 2
        index += 1
    return WittInvariants(
        dim=dim,
        rank=len(nz),
        disc=squarefree_part(math.prod(nz, start=Fraction(1))),
        signature=sig,
        hasse=hasse,
        witt_index=index,
        anisotropic_dim=r,
    )


def _rational_diagonal(Q_: QuadForm) -> tuple[Mat, list[Fraction]]:
    if Q_.field != Q:
        raise ValueError("this operation needs a form over Q")
    return diagonalize(Q_)


def witt_invariants(Q_: QuadForm) -> WittInvariants:
    _, d = _rational_diagonal(Q_)
    return witt_invariants_of(d, Q_.n)


def witt_equivalent(Q1: QuadForm, Q2: QuadForm) -> bool:
    """Same Witt class: Q1 (+) -Q2 is hyperbolic on its nonsingular part."""
    _, d1 = _rational_diagonal(Q1)
    _, d2 = _rational_diagonal(Q2)
    inv = witt_invariants_of([x for x in d1 if x] + [-x for x in d2 if x])
    return inv.anisotropic_dim == 0


def _subform(big: Sequence[Fraction], small: Sequence[Fraction]) -> bool:
    """<small> embeds as an orthogonal summand of <big> (both nonsingular)."""
    if len(small) > len(big):
        return False
    if not small:
        return True
    inv = witt_invariants_of(list(big) + [-x for x in small])
    return inv.witt_index >= len(small)


# ---------------------------------------------------------------------------
# witness search

# grid cap for the vectorized search; larger dimensions lower the height
_SEARCH_BUDGET = 3_000_000


def _search_value(coeffs: Sequence[Fraction], value: Fraction, height: int):
    """Least-height rational x with sum coeffs[i] x_i^2 = value, or None.

    x is written y / z with z the common denominator and height
    max(|y_i|, z).  Ties go to smaller z, then coordinatewise smaller |y_i|,
    preferring nonnegative entries.  The last coordinate is solved for, so
    the grid covers the other r - 1 coordinates.
    """
    r = len(coeffs)
    if r == 0:
        return None
    L = math.lcm(*(c.denominator for c in coeffs), value.denominator)
    D = [int(c * L) for c in coeffs]
    A = int(value * L)
    H = height
    while H > 1 and (2 * H + 1) ** (r - 1) > _SEARCH_BUDGET:
        H -= 1
    big = (sum(abs(x) for x in D) + abs(A)) * H * H >= 2**62
    dtype = object if big else np.int64
    axis = np.arange(-H, H + 1, dtype=dtype)
    grids = np.meshgrid(*([axis] * (r - 1)), indexing="ij") if r > 1 else []
    flat = [g.ravel() for g in grids]
    partial = np.zeros(flat[0].shape if flat else (1,), dtype=dtype)
    for d_i, y in zip(D, flat):
        partial = partial + d_i * y * y
    free_h = np.max(np.abs(np.stack(flat)), axis=0) if flat else np.zeros((1,), dtype=dtype)
    Dl = D[-1]
    best_key, best = None, None
    for z in range(1, H + 1):
        if best_key is not None and z > best_key[0]:
            break
        rem = A * z * z - partial
        ok = rem % Dl == 0
        sq = np.where(ok, rem // Dl, -1)
        ok &= (sq >= 0) & (sq <= H * H)
        if not big and ok.any():
            root = np.floor(np.sqrt(np.where(ok, sq, 0).astype(np.float64))).astype(np.int64)
            root += (root + 1) ** 2 <= sq
            root -= root**2 > sq
            ok &= root * root == sq
        if not ok.any():
            continue
        for i in np.nonzero(ok)[0]:
            q = int(sq[i])
            s = math.isqrt(q)
            if s * s != q:
                continue
            h = max(int(free_h[i]), s, z)
            if best_key is not None and h > best_key[0]:
                continue
            ys = [int(f[i]) for f in flat]
            for last in ((s, -s) if s else (0,)):
                y = ys + [last]
                key = (h, z, tuple((abs(v), v < 0) for v in y))
                if best_key is None or key < best_key:
                    best_key, best = key, (y, z)
    if best is None:
        return None
    y, z = best
    return tuple(Fraction(v, z) for v in y)


def _greedy_orthogonal(coeffs: list[Fraction], targets: list[Fraction], height: int):
    """Pairwise orthogonal vectors with the target values, in <coeffs> coordinates.

    After each vector is found the search restarts in a rediagonalized,
    square-free-scaled basis of its orthogonal complement.
    """
    r = len(coeffs)
    basis = Mat.identity(r, Q)
    cur = list(coeffs)
    found = []
    for a in targets:
        x = _search_value(cur, a, height)
        if x is None:
            return None
        found.append((basis @ Mat([[v] for v in x])).col(0))
        if len(cur) == 1:
            cur = []
            continue
        W = Mat.from_columns(nullspace(Mat([[c * v for c, v in zip(cur, x)]])), Q)
        h, dd = diagonalize(QuadForm(W.T @ Mat.diag(cur) @ W))
        scales, new = [], []
        for v in dd:
            s, f = squarefree_decomposition(v.numerator * v.denominator)
            scales.append(Fraction(v.denominator, f))
            new.append(Fraction(s))
        basis = basis @ W @ h @ Mat.diag(scales)
        cur = new
    return found


def find_witness(Q_: QuadForm, Qp: QuadForm, height: int = 20) -> Mat | None:
    """Search for g with g^T [B] g = [B_{Q'_N}] (+) B''.

    Tries the identity first, then a greedy bounded-height search for
    orthogonal vectors realizing a diagonalization of Q'_N, completed by the
    orthogonal complement.  Returns None when the search fails; that alone
    says nothing about representability.
    """
    n = Q_.n
    QN, _, _ = radical_split(Qp)
    k = QN.n
    ident = Mat.identity(n, Q)
    if _witness_ok(Q_, QN, ident):
        return ident
    h, targets = diagonalize(QN)
    gd, dq = diagonalize(Q_)
    nz = [i for i, v in enumerate(dq) if v]
    if k > len(nz):
        return None
    vecs = _greedy_orthogonal([dq[i] for i in nz], list(targets), height)
    if vecs is None:
        return None
    G = gd.submatrix(range(n), nz)
    V = G @ Mat.from_columns(vecs, Q)
    U = V @ inverse(h)
    W = nullspace(U.T @ Q_.gram)
    g = Mat.from_columns(U.columns() + W, Q)
    if not _witness_ok(Q_, QN, g):
        raise AssertionError("witness construction failed its own check")
    return g


def represents(Q_: QuadForm, Qp: QuadForm, height: int = 20, search: bool = True):
    """Decide whether Q represents Q' over Q; returns ``(flag, witness | None)``.

    The decision uses invariants only: Q'_N must be a subform of Q_N, i.e.
    Q_N (+) -Q'_N has Witt index >= rank Q'.  When it holds and ``search``
    is set, a bounded-height witness search is attempted.
    """
    if Q_.n != Qp.n:
        raise DimensionMismatch(f"forms on spaces of dimension {Q_.n} and {Qp.n}")
    _, a = _rational_diagonal(Q_)
    _, b = _rational_diagonal(Qp)
    flag = _subform([x for x in a if x], [x for x in b if x])
    if not flag or not search:
        return flag, None
    return True, find_witness(Q_, Qp, height)
