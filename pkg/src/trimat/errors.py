"""Exception hierarchy shared by every trimat module.

Domain errors (bad shapes, singular layers, mixed fields) derive from
:class:`DomainError`; malformed input text derives from :class:`ParseError`.
The CLI maps the first family to exit code 1 and the second to exit code 2.
"""


class TrimatError(Exception):
    """Base class for all trimat errors."""


class DomainError(TrimatError):
    pass


class FieldMismatch(DomainError):
    pass


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class ShapeMismatch(DomainError):
    pass


class NotSquare(ShapeMismatch):
    pass


class DepthMismatch(ShapeMismatch):
    pass


class IndexOutOfRange(DomainError, IndexError):
    pass


class Singular(DomainError):
    """A matrix (or some layers of a 3D matrix) has zero determinant.

    ``layers`` holds the 1-based indices of every singular layer; it is
    empty when the error concerns a single 2D matrix.
    """

    def __init__(self, message, layers=()):
        super().__init__(message)
        self.layers = tuple(layers)


class NotAbsolutelyNonzero(DomainError):
    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class SamplingExhausted(DomainError):
    pass


class EnumerationTooLarge(DomainError):
    pass


class ParseError(TrimatError):
    """Malformed document text. Always carries a 1-based line and column."""

    def __init__(self, message, line, column, expected=None):
        self.line = line
        self.column = column
        self.expected = expected
        self.reason = message
        text = f"line {line}, column {column}: {message}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


class DocumentSyntaxError(ParseError):
    pass


class DuplicateLayer(ParseError):
    pass


class MissingLayer(ParseError):
    pass


class ShapeError(ParseError):
    pass


class FieldLiteralError(ParseError):
    pass
