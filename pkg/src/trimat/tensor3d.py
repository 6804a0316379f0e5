"""Layered 3D matrices and multi-scalars.

A :class:`Matrix3` of shape m x n x p is an ordered stack of p layers, each an
m x n :class:`~trimat.linalg2d.Matrix2`. Layer ``k = 1`` is the bottom layer
(printed last when the stack is drawn as a column) and ``k = p`` the top.
A :class:`MultiScalar` is a length-p vector of field elements; it plays the
role of a 1 x 1 x p matrix and is what ``det3`` returns.

Every product here works layer by layer, so layer ``k`` of a result depends
only on layer ``k`` of the operands.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import linalg2d as l2
from .errors import (
    DepthMismatch,
    FieldMismatch,
    IndexOutOfRange,
    NotAbsolutelyNonzero,
    NotSquare,
    ShapeMismatch,
    Singular,
)
from .field import FieldElement, FieldSpec
from .linalg2d import Matrix2


class Matrix3:
    """Immutable m x n x p matrix stored as a tuple of p layers (k ascending)."""

    __slots__ = ("spec", "m", "n", "p", "layers")

    def __init__(self, layers: Sequence[Matrix2]):
        layers = tuple(layers)
        if not layers:
            raise ShapeMismatch("a 3D matrix needs at least one layer")
        first = layers[0]
        for k, L in enumerate(layers, 1):
            if not isinstance(L, Matrix2):
                raise TypeError(f"layer {k} is not a Matrix2")
            if L.spec != first.spec:
                raise FieldMismatch(f"layer {k} is over {L.spec}, layer 1 over {first.spec}")
            if L.shape != first.shape:
                raise ShapeMismatch(
                    f"layer {k} is {L.rows}x{L.cols}, layer 1 is {first.rows}x{first.cols}"
                )
        self.spec = first.spec
        self.m, self.n = first.shape
        self.p = len(layers)
        self.layers = layers

    @classmethod
    def from_lists(cls, spec: FieldSpec, layers: Sequence[Sequence[Sequence]]) -> "Matrix3":
        """Build from nested lists ``layers[k-1][i-1][j-1]``."""
        return cls([Matrix2(spec, L) for L in layers])

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.m, self.n, self.p

    @property
    def is_square(self) -> bool:
        return self.m == self.n

    def layer(self, k: int) -> Matrix2:
        return m3_layer(self, k)

    def entry(self, i: int, j: int, k: int) -> FieldElement:
        return m3_layer(self, k).entry(i, j)

    def tolist(self) -> list[list[list[str]]]:
        return [L.tolist() for L in self.layers]

    def __eq__(self, other):
        if not isinstance(other, Matrix3):
            return NotImplemented
        return self.shape == other.shape and self.layers == other.layers

    def __hash__(self):
        return hash(self.layers)

    def __repr__(self):
        body = " ".join(
            f"k={k}:[" + "; ".join(" ".join(r) for r in L.tolist()) + "]"
            for k, L in enumerate(self.layers, 1)
        )
        return f"Matrix3({self.spec}, {self.m}x{self.n}x{self.p}, {body})"

    def __add__(self, other):
        return m3_add(self, other)

    def __neg__(self):
        return m3_neg(self)

    def __matmul__(self, other):
        return m3_odot(self, other)


class MultiScalar:
    """A length-p vector of field elements, components indexed k = 1..p."""

    __slots__ = ("spec", "components")

    def __init__(self, spec: FieldSpec, components: Iterable):
        comps = tuple(spec.coerce(c) for c in components)
        if not comps:
            raise ShapeMismatch("a multi-scalar needs at least one component")
        self.spec = spec
        self.components = comps

    @classmethod
    def ones(cls, p: int, spec: FieldSpec) -> "MultiScalar":
        return cls(spec, [spec.raw_one()] * p)

    @classmethod
    def zeros(cls, p: int, spec: FieldSpec) -> "MultiScalar":
        """The absolutely-zero multi-scalar."""
        return cls(spec, [spec.raw_zero()] * p)

    @property
    def p(self) -> int:
        return len(self.components)

    def component(self, k: int) -> FieldElement:
        if not 1 <= k <= self.p:
            raise IndexOutOfRange(f"component {k} outside 1..{self.p}")
        return FieldElement(self.spec, self.components[k - 1])

    def __iter__(self):
        return (FieldElement(self.spec, c) for c in self.components)

    def __len__(self):
        return self.p

    def tolist(self) -> list[str]:
        return [self.spec.format(c) for c in self.components]

    def __eq__(self, other):
        if not isinstance(other, MultiScalar):
            return NotImplemented
        if self.spec != other.spec or self.p != other.p:
            return False
        eq = self.spec.eq
        return all(eq(a, b) for a, b in zip(self.components, other.components))

    def __hash__(self):
        if self.spec.is_exact:
            return hash((self.spec, self.components))
        return hash((self.spec, self.p))

    def __repr__(self):
        return f"MultiScalar({self.spec}, [{' '.join(self.tolist())}])"

    def to_matrix3(self) -> Matrix3:
        return Matrix3([Matrix2.from_raw(self.spec, 1, 1, (c,)) for c in self.components])

    @classmethod
    def from_matrix3(cls, A: Matrix3) -> "MultiScalar":
        if (A.m, A.n) != (1, 1):
            raise ShapeMismatch(f"only a 1x1xp matrix is a multi-scalar, got {A.m}x{A.n}x{A.p}")
        return cls(A.spec, [L.data[0] for L in A.layers])


# -- construction and projection ------------------------------------------------


def m3_zero(m: int, n: int, p: int, spec: FieldSpec) -> Matrix3:
    return Matrix3([Matrix2.zero(m, n, spec)] * p)


def m3_identity(n: int, p: int, spec: FieldSpec) -> Matrix3:
    return Matrix3([Matrix2.identity(n, spec)] * p)


def m3_layer(A: Matrix3, k: int) -> Matrix2:
    if not 1 <= k <= A.p:
        raise IndexOutOfRange(f"layer {k} outside 1..{A.p}")
    return A.layers[k - 1]


def m3_from_layers(layers: Sequence[Matrix2]) -> Matrix3:
    return Matrix3(layers)


# -- layer-wise arithmetic ----------------------------------------------------------


def _check_pair(A: Matrix3, B: Matrix3, what: str):
    if A.spec != B.spec:
        raise FieldMismatch(f"{what}: operands over {A.spec} and {B.spec}")
    if A.shape != B.shape:
        raise ShapeMismatch(
            f"{what}: shapes {A.m}x{A.n}x{A.p} and {B.m}x{B.n}x{B.p} differ"
        )


def _require_square(A: Matrix3, what: str):
    if A.m != A.n:
        raise NotSquare(f"{what} needs square layers, got {A.m}x{A.n}x{A.p}")


def m3_add(A: Matrix3, B: Matrix3) -> Matrix3:
    _check_pair(A, B, "add")
    return Matrix3([l2.m2_add(a, b) for a, b in zip(A.layers, B.layers)])


def m3_neg(A: Matrix3) -> Matrix3:
    return Matrix3([l2.m2_neg(a) for a in A.layers])


def m3_odot(A: Matrix3, B: Matrix3) -> Matrix3:
    """Layer-wise product: layer k of the result is ``A_k @ B_k``."""
    _require_square(A, "odot")
    _require_square(B, "odot")
    _check_pair(A, B, "odot")
    return Matrix3([l2.m2_mul(a, b) for a, b in zip(A.layers, B.layers)])


def _check_depth(a: MultiScalar, p: int, spec: FieldSpec):
    if a.spec != spec:
        raise FieldMismatch(f"multi-scalar over {a.spec}, operand over {spec}")
    if a.p != p:
        raise DepthMismatch(f"multi-scalar has {a.p} components, operand has depth {p}")


def ms_mul(a: MultiScalar, A: Matrix3) -> Matrix3:
    """Scale layer k of ``A`` by component k of ``a``."""
    _check_depth(a, A.p, A.spec)
    return Matrix3([l2.m2_scale(c, L) for c, L in zip(a.components, A.layers)])


def ms_componentwise_mul(a: MultiScalar, b: MultiScalar) -> MultiScalar:
    _check_depth(a, b.p, b.spec)
    mul = a.spec.mul
    return MultiScalar(a.spec, [mul(x, y) for x, y in zip(a.components, b.components)])


def det3(A: Matrix3) -> MultiScalar:
    _require_square(A, "det3")
    return MultiScalar(A.spec, [l2.m2_det(L).value for L in A.layers])


def ms_is_absolutely_nonzero(a: MultiScalar) -> bool:
    is_zero = a.spec.is_zero
    return not any(is_zero(c) for c in a.components)


def ms_hat(a: MultiScalar) -> MultiScalar:
    """Componentwise reciprocal of an absolutely nonzero multi-scalar."""
    is_zero = a.spec.is_zero
    for k, c in enumerate(a.components, 1):
        if is_zero(c):
            raise NotAbsolutelyNonzero(f"component {k} is zero; multi-scalar has no inverse", k)
    inv = a.spec.inv
    return MultiScalar(a.spec, [inv(c) for c in a.components])


def m3_adjugate(A: Matrix3) -> Matrix3:
    _require_square(A, "adjugate")
    return Matrix3([l2.m2_adjugate(L) for L in A.layers])


def singular_layers(A: Matrix3) -> list[int]:
    _require_square(A, "det3")
    is_zero = A.spec.is_zero
    return [k for k, d in enumerate(det3(A).components, 1) if is_zero(d)]


def m3_inverse(A: Matrix3) -> Matrix3:
    """Inverse under the layer-wise product: ``hat(det3(A)) * adjugate(A)``."""
    _require_square(A, "inverse")
    d = det3(A)
    bad = [k for k, c in enumerate(d.components, 1) if A.spec.is_zero(c)]
    if bad:
        names = ", ".join(str(k) for k in bad)
        which = f"layer {names} has" if len(bad) == 1 else f"layers {names} have"
        raise Singular(f"matrix is not invertible: {which} det = 0", bad)
    return ms_mul(ms_hat(d), m3_adjugate(A))
