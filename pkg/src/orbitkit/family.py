from __future__ import annotations

from functools import cached_property

from .errors import DimensionMismatch, Singular
from .exactalg import Mat, det, inverse, mat_eval_at_zero, mat_order


class ContractionFamily:
    """A one-parameter family g(t) of invertible matrices over Q(t).

    The determinant must be a nonzero rational function, so g(t) is
    invertible for all but finitely many t.
    """

    def __init__(self, mat: Mat):
        if not isinstance(mat, Mat):
            mat = Mat(mat)
        if not mat.is_square():
            raise DimensionMismatch(f"contraction family must be square, got {mat.shape}")
        self.mat = mat.lift()
        self.n = mat.rows
        if not self.det:
            raise Singular("contraction family has identically zero determinant")

    @cached_property
    def det(self):
        return det(self.mat)

    @cached_property
    def inverse(self) -> Mat:
        return inverse(self.mat)

    @classmethod
    def constant(cls, g: Mat) -> ContractionFamily:
        return cls(g.lift())

    def is_constant(self) -> bool:
        return all(x.is_constant() for r in self.mat.entries for x in r)

    def __matmul__(self, other) -> ContractionFamily:
        other_mat = other.mat if isinstance(other, ContractionFamily) else other
        return ContractionFamily(self.mat @ other_mat)

    def order(self):
        return mat_order(self.mat)

    def at_zero(self) -> Mat:
        return mat_eval_at_zero(self.mat)

    def __eq__(self, other) -> bool:
        return isinstance(other, ContractionFamily) and self.mat == other.mat

    def __hash__(self) -> int:
        return hash(self.mat)

    def __repr__(self) -> str:
        return f"ContractionFamily({self.mat!r})"


def family_matrix(C) -> Mat:
    return (C.mat if isinstance(C, ContractionFamily) else C).lift()
