"""Exact degenerations and contractions of algebras and quadratic forms over Q and Q(t)."""

from __future__ import annotations

from .errors import OrbitKitError
from .exactalg import Mat, Poly, RatFunc, t
from .family import ContractionFamily
from .quadforms import QuadForm
from .structvec import StructureVector, act, trace_form

__version__ = "0.1.0"

__all__ = [
    "ContractionFamily",
    "Mat",
    "OrbitKitError",
    "Poly",
    "QuadForm",
    "RatFunc",
    "StructureVector",
    "act",
    "t",
    "trace_form",
]
