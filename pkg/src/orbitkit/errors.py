"""Exception hierarchy.

Every error raised deliberately by orbitkit derives from :class:`OrbitKitError`,
which is a ``ValueError`` so callers that only care about bad input can catch
that.
"""

from __future__ import annotations


class OrbitKitError(ValueError):
    """Base class for all orbitkit errors."""

    code = "error"

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self)}


class DimensionMismatch(OrbitKitError):
    code = "dimension_mismatch"


class Singular(OrbitKitError):
    code = "singular"


class NegativeOrder(OrbitKitError):
    """Raised when evaluating at t = 0 something whose order is negative.

    ``position`` is a 1-based (row, col) pair for matrices, ``None`` for scalars.
    """

    code = "negative_order"

    def __init__(self, message: str, position: tuple[int, ...] | None = None, order: int | None = None):
        super().__init__(message)
        self.position = position
        self.order = order

    def to_json(self) -> dict:
        out = super().to_json()
        if self.position is not None:
            out["position"] = list(self.position)
        if self.order is not None:
            out["order"] = self.order
        return out


class NotAmenable(NegativeOrder):
    code = "not_amenable"


class BadWitness(OrbitKitError):
    code = "bad_witness"


class UnknownName(OrbitKitError):
    code = "unknown_name"


class DegenerateParameter(OrbitKitError):
    code = "degenerate_parameter"


class RestrictedParameter(OrbitKitError):
    code = "restricted_parameter"


class ZeroParameter(OrbitKitError):
    code = "zero_parameter"


class BadNormalization(OrbitKitError):
    code = "bad_normalization"


class BadInput(OrbitKitError):
    """Malformed JSON or a value that does not decode to the expected type."""

    code = "bad_input"
