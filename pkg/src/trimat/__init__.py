"""Exact algebra of layered (3D) matrices over a field."""

from .errors import (
    DepthMismatch,
    DivisionByZero,
    DomainError,
    FieldMismatch,
    NotAbsolutelyNonzero,
    NotSquare,
    ParseError,
    ShapeMismatch,
    Singular,
    TrimatError,
)
from .field import FieldElement, FieldSpec, float_field, gf, rational_field
from .linalg2d import Matrix2
from .tensor3d import (
    Matrix3,
    MultiScalar,
    det3,
    m3_add,
    m3_adjugate,
    m3_identity,
    m3_inverse,
    m3_neg,
    m3_odot,
    m3_zero,
    ms_componentwise_mul,
    ms_hat,
    ms_is_absolutely_nonzero,
    ms_mul,
)
from .textio import Document, parse_document, serialize

__version__ = "0.1.0"
