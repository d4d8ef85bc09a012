"""Exact homological computations for idempotent contractions of
preprojective algebras: dimensions, dualizing modules, Cohen-Macaulay
certification."""

from .linalg import Field, PrimeField, RationalField, Subspace, get_field
from .algebra import (
    Arrow,
    BasisElem,
    CutoffExceeded,
    FDAlgebra,
    PresentationError,
    Quiver,
    Relation,
    build_quotient,
    parse_algebra_text,
    serialize_algebra_text,
)

__all__ = [
    "Field", "PrimeField", "RationalField", "Subspace", "get_field",
    "Arrow", "BasisElem", "CutoffExceeded", "FDAlgebra", "PresentationError",
    "Quiver", "Relation", "build_quotient", "parse_algebra_text",
    "serialize_algebra_text",
]

__version__ = "0.1.0"
