"""Pluggable ground fields.

Three fields are provided: exact rationals, prime fields GF(q) and doubles
compared with a tolerance. A :class:`FieldSpec` knows how to do arithmetic on
*raw* values (``Fraction``, ``int`` residue, ``float``); matrices store raw
values and go through the spec, while :class:`FieldElement` wraps a raw value
for the public, operator-overloaded API.

Any other field can be plugged in by implementing the same raw-value methods.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch

RATIONAL = "rational"
PRIME = "gf"
FLOAT = "float"

MODULUS_CAP = 2**31
DEFAULT_TOLERANCE = 1e-9

_INT_RE = re.compile(r"[+-]?\d+\Z")
_RATIONAL_RE = re.compile(r"([+-]?\d+)(?:/(\d+))?\Z")
_FLOAT_RE = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?\Z")


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b)``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        quot, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - quot * x1
        y0, y1 = y1, y0 - quot * y1
    return a, x0, y0


def mod_inverse(a: int, q: int) -> int:
    g, x, _ = egcd(a % q, q)
    if g != 1:
        raise DivisionByZero(f"{a} has no inverse modulo {q}")
    return x % q


@dataclass(frozen=True)
class FieldSpec:
    """Description of a ground field.

    ``kind`` is one of ``"rational"``, ``"gf"`` or ``"float"``; ``modulus`` is
    only meaningful for ``gf`` and ``tolerance`` only for ``float``.
    """

    kind: str
    modulus: int = 0
    tolerance: float = 0.0

    def __post_init__(self):
        if self.kind == PRIME:
            q = self.modulus
            if not isinstance(q, int) or isinstance(q, bool):
                raise ValueError(f"GF modulus must be an integer, got {q!r}")
            if not 2 <= q < MODULUS_CAP:
                raise ValueError(f"GF modulus must lie in [2, 2^31), got {q}")
            if not is_prime(q):
                raise ValueError(f"GF modulus {q} is not prime")
        elif self.kind == FLOAT:
            tol = self.tolerance
            if not (isinstance(tol, (int, float)) and math.isfinite(tol) and tol >= 0):
                raise ValueError(f"float tolerance must be finite and >= 0, got {tol!r}")
        elif self.kind != RATIONAL:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_exact(self) -> bool:
        return self.kind != FLOAT

    @property
    def is_finite(self) -> bool:
        return self.kind == PRIME

    def __str__(self):
        if self.kind == PRIME:
            return f"gf {self.modulus}"
        if self.kind == FLOAT:
            if self.tolerance == DEFAULT_TOLERANCE:
                return "float"
            return f"float {self.tolerance!r}"
        return "rational"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``rational``, ``gf 7`` (also ``gf7``/``gf:7``) or ``float [tol]``."""
        m = re.fullmatch(r"\s*(rational|gf|float)\s*[: ]?\s*(\S*)\s*", text.lower())
        if not m:
            raise ValueError(f"unrecognised field spec {text!r}")
        kind, arg = m.groups()
        if kind == RATIONAL:
            if arg:
                raise ValueError("rational field takes no argument")
            return rational_field()
        if kind == PRIME:
            if not _INT_RE.match(arg or ""):
                raise ValueError(f"gf needs an integer modulus, got {arg!r}")
            return gf(int(arg))
        if not arg:
            return float_field()
        if not _FLOAT_RE.match(arg):
            raise ValueError(f"bad float tolerance {arg!r}")
        return float_field(float(arg))

    # -- element construction -------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.coerce(value))

    def coerce(self, value):
        """Convert ``value`` (int, Fraction, float, str or FieldElement) to a raw value."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatch(f"element of {value.spec} used in {self}")
            return value.value
        if isinstance(value, str):
            return self.parse_literal(value)
        if isinstance(value, bool):
            value = int(value)
        kind = self.kind
        if kind == RATIONAL:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise TypeError(f"cannot build an exact rational from {value!r}")
        if kind == PRIME:
            if isinstance(value, int):
                return value % self.modulus
            if isinstance(value, Fraction):
                return value.numerator * mod_inverse(value.denominator, self.modulus) % self.modulus
            raise TypeError(f"cannot build a GF({self.modulus}) residue from {value!r}")
        if isinstance(value, (int, float, Fraction)):
            return float(value)
        raise TypeError(f"cannot build a float from {value!r}")

    def parse_literal(self, text: str):
        """Parse one element literal; raise ``ValueError`` if it is not valid here."""
        kind = self.kind
        if kind == RATIONAL:
            m = _RATIONAL_RE.match(text)
            if not m:
                raise ValueError(f"{text!r} is not a rational literal (write n or n/d)")
            num, den = m.groups()
            if den is not None and int(den) == 0:
                raise ValueError(f"zero denominator in {text!r}")
            return Fraction(int(num), int(den) if den else 1)
        if kind == PRIME:
            if not _INT_RE.match(text):
                raise ValueError(f"{text!r} is not a residue literal for {self} (write an integer)")
            return int(text) % self.modulus
        if not _FLOAT_RE.match(text):
            raise ValueError(f"{text!r} is not a decimal literal")
        value = float(text)
        if not math.isfinite(value):
            raise ValueError(f"{text!r} overflows a double")
        return value

    def format(self, raw) -> str:
        if self.kind == RATIONAL:
            return str(raw)
        if self.kind == PRIME:
            return str(raw)
        return repr(raw)

    # -- raw arithmetic -------------------------------------------------------

    def zero(self):
        return FieldElement(self, self.raw_zero())

    def one(self):
        return FieldElement(self, self.raw_one())

    def raw_zero(self):
        if self.kind == RATIONAL:
            return Fraction(0)
        return 0 if self.kind == PRIME else 0.0

    def raw_one(self):
        if self.kind == RATIONAL:
            return Fraction(1)
        return 1 if self.kind == PRIME else 1.0

    def add(self, a, b):
        if self.kind == PRIME:
            return (a + b) % self.modulus
        return a + b

    def sub(self, a, b):
        if self.kind == PRIME:
            return (a - b) % self.modulus
        return a - b

    def neg(self, a):
        if self.kind == PRIME:
            return -a % self.modulus
        return -a

    def mul(self, a, b):
        if self.kind == PRIME:
            return a * b % self.modulus
        return a * b

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero(f"inverse of zero in {self}")
        if self.kind == PRIME:
            return mod_inverse(a, self.modulus)
        if self.kind == RATIONAL:
            return 1 / a
        return 1.0 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        if self.kind == FLOAT:
            return abs(a) <= self.tolerance
        return a == 0

    def eq(self, a, b) -> bool:
        if self.kind == FLOAT:
            return abs(a - b) <= self.tolerance * max(1.0, abs(a), abs(b))
        return a == b


def rational_field() -> FieldSpec:
    return FieldSpec(RATIONAL)


def gf(q: int) -> FieldSpec:
    return FieldSpec(PRIME, modulus=q)


def float_field(tolerance: float = DEFAULT_TOLERANCE) -> FieldSpec:
    return FieldSpec(FLOAT, tolerance=tolerance)


class FieldElement:
    """An immutable element of the field described by ``spec``."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatch(f"cannot combine {self.spec} with {other.spec}")
            return other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.spec.coerce(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.div(b, self.value))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def inverse(self):
        return FieldElement(self.spec, self.spec.inv(self.value))

    def is_zero(self) -> bool:
        return self.spec.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.spec.eq(self.value, other.value)
        b = self._other(other) if isinstance(other, (int, Fraction)) else NotImplemented
        if b is NotImplemented:
            return NotImplemented
        return self.spec.eq(self.value, b)

    def __hash__(self):
        # tolerance equality is not transitive, so floats share one bucket
        if self.spec.kind == FLOAT:
            return hash(self.spec)
        return hash((self.spec, self.value))

    def __str__(self):
        return self.spec.format(self.value)

    def __repr__(self):
        return f"FieldElement({self.spec}, {self.spec.format(self.value)})"


def _same(a: FieldElement, b: FieldElement) -> FieldSpec:
    if a.spec != b.spec:
        raise FieldMismatch(f"cannot combine {a.spec} with {b.spec}")
    return a.spec


def f_add(a: FieldElement, b: FieldElement) -> FieldElement:
    spec = _same(a, b)
    return FieldElement(spec, spec.add(a.value, b.value))


def f_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    spec = _same(a, b)
    return FieldElement(spec, spec.mul(a.value, b.value))


def f_neg(a: FieldElement) -> FieldElement:
    return -a


def f_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def f_zero(spec: FieldSpec) -> FieldElement:
    return spec.zero()


def f_one(spec: FieldSpec) -> FieldElement:
    return spec.one()


def f_is_zero(a: FieldElement) -> bool:
    return a.is_zero()
