"""Dense 2D matrices over a :class:`~trimat.field.FieldSpec`.

These are the layers of a 3D matrix. Entries are stored row-major as raw
field values; indices are 1-based at the public surface (``entry(i, j)``,
``m2_cofactor(A, i, j)``) and 0-based internally.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import FieldMismatch, IndexOutOfRange, NotSquare, ShapeMismatch, Singular
from .field import FieldElement, FieldSpec


class Matrix2:
    """Immutable m x n matrix over ``spec``."""

    __slots__ = ("spec", "rows", "cols", "data")

    def __init__(self, spec: FieldSpec, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ShapeMismatch("a matrix needs at least one row and one column")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ShapeMismatch("ragged rows")
        coerce = spec.coerce
        self.spec = spec
        self.rows = len(rows)
        self.cols = n
        self.data = tuple(coerce(x) for r in rows for x in r)

    @classmethod
    def from_raw(cls, spec: FieldSpec, rows: int, cols: int, data: Iterable) -> "Matrix2":
        self = object.__new__(cls)
        self.spec = spec
        self.rows = rows
        self.cols = cols
        self.data = tuple(data)
        if len(self.data) != rows * cols or rows < 1 or cols < 1:
            raise ShapeMismatch(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(self.data)}")
        return self

    @classmethod
    def identity(cls, n: int, spec: FieldSpec) -> "Matrix2":
        one, zero = spec.raw_one(), spec.raw_zero()
        return cls.from_raw(spec, n, n, (one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, m: int, n: int, spec: FieldSpec) -> "Matrix2":
        return cls.from_raw(spec, m, n, [spec.raw_zero()] * (m * n))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> FieldElement:
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexOutOfRange(f"entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
        return FieldElement(self.spec, self.data[(i - 1) * self.cols + (j - 1)])

    def raw_rows(self) -> list[list]:
        c = self.cols
        return [list(self.data[r * c:(r + 1) * c]) for r in range(self.rows)]

    def tolist(self) -> list[list[str]]:
        """Rows of entries rendered as literals."""
        fmt = self.spec.format
        return [[fmt(x) for x in row] for row in self.raw_rows()]

    def __eq__(self, other):
        if not isinstance(other, Matrix2):
            return NotImplemented
        if self.shape != other.shape or self.spec != other.spec:
            return False
        eq = self.spec.eq
        return all(eq(a, b) for a, b in zip(self.data, other.data))

    def __hash__(self):
        if self.spec.is_exact:
            return hash((self.spec, self.rows, self.cols, self.data))
        return hash((self.spec, self.rows, self.cols))

    def __repr__(self):
        body = "; ".join(" ".join(r) for r in self.tolist())
        return f"Matrix2({self.spec}, [{body}])"

    def __add__(self, other):
        return m2_add(self, other)

    def __matmul__(self, other):
        return m2_mul(self, other)

    def __neg__(self):
        return m2_neg(self)


def _check_field(A: Matrix2, B: Matrix2) -> FieldSpec:
    if A.spec != B.spec:
        raise FieldMismatch(f"cannot combine {A.spec} with {B.spec}")
    return A.spec


def _require_square(A: Matrix2, what: str) -> int:
    if A.rows != A.cols:
        raise NotSquare(f"{what} needs a square matrix, got {A.rows}x{A.cols}")
    return A.rows


def m2_add(A: Matrix2, B: Matrix2) -> Matrix2:
    spec = _check_field(A, B)
    if A.shape != B.shape:
        raise ShapeMismatch(f"cannot add {A.rows}x{A.cols} and {B.rows}x{B.cols}")
    add = spec.add
    return Matrix2.from_raw(spec, A.rows, A.cols, (add(a, b) for a, b in zip(A.data, B.data)))


def m2_neg(A: Matrix2) -> Matrix2:
    neg = A.spec.neg
    return Matrix2.from_raw(A.spec, A.rows, A.cols, (neg(a) for a in A.data))


def m2_scale(c, A: Matrix2) -> Matrix2:
    """Multiply every entry of ``A`` by the scalar ``c``."""
    c = A.spec.coerce(c)
    mul = A.spec.mul
    return Matrix2.from_raw(A.spec, A.rows, A.cols, (mul(c, a) for a in A.data))


def m2_mul(A: Matrix2, B: Matrix2) -> Matrix2:
    spec = _check_field(A, B)
    if A.cols != B.rows:
        raise ShapeMismatch(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    m, k, n = A.rows, A.cols, B.cols
    a, b = A.data, B.data
    add, mul = spec.add, spec.mul
    out = []
    for i in range(m):
        row = a[i * k:(i + 1) * k]
        for j in range(n):
            acc = mul(row[0], b[j])
            for t in range(1, k):
                acc = add(acc, mul(row[t], b[t * n + j]))
            out.append(acc)
    return Matrix2.from_raw(spec, m, n, out)


def m2_transpose(A: Matrix2) -> Matrix2:
    m, n, d = A.rows, A.cols, A.data
    return Matrix2.from_raw(A.spec, n, m, (d[i * n + j] for j in range(n) for i in range(m)))


# -- determinants ---------------------------------------------------------------


def _minor_rows(rows: list[list], i: int, j: int) -> list[list]:
    return [r[:j] + r[j + 1:] for t, r in enumerate(rows) if t != i]


def _det_laplace(spec: FieldSpec, rows: list[list]):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    add, sub, mul = spec.add, spec.sub, spec.mul
    if n == 2:
        return sub(mul(rows[0][0], rows[1][1]), mul(rows[0][1], rows[1][0]))
    acc = spec.raw_zero()
    for j in range(n):
        if spec.is_zero(rows[0][j]) and spec.is_exact:
            continue
        term = mul(rows[0][j], _det_laplace(spec, _minor_rows(rows, 0, j)))
        acc = sub(acc, term) if j % 2 else add(acc, term)
    return acc


def det_cofactor(A: Matrix2) -> FieldElement:
    """Determinant by cofactor expansion along the first row."""
    _require_square(A, "det")
    return FieldElement(A.spec, _det_laplace(A.spec, A.raw_rows()))


def det_bareiss(A: Matrix2) -> FieldElement:
    """Fraction-free (Bareiss) elimination; every division is exact."""
    n = _require_square(A, "det")
    spec = A.spec
    M = A.raw_rows()
    sub, mul, div, is_zero = spec.sub, spec.mul, spec.div, spec.is_zero
    negate = False
    prev = spec.raw_one()
    for k in range(n - 1):
        if is_zero(M[k][k]):
            for r in range(k + 1, n):
                if not is_zero(M[r][k]):
                    M[k], M[r] = M[r], M[k]
                    negate = not negate
                    break
            else:
                return spec.zero()
        pivot = M[k][k]
        for i in range(k + 1, n):
            Mi, Mk = M[i], M[k]
            for j in range(k + 1, n):
                Mi[j] = div(sub(mul(Mi[j], pivot), mul(Mi[k], Mk[j])), prev)
            Mi[k] = spec.raw_zero()
        prev = pivot
    det = M[n - 1][n - 1]
    return FieldElement(spec, spec.neg(det) if negate else det)


def det_elimination(A: Matrix2) -> FieldElement:
    """Gaussian elimination with partial pivoting by absolute value.

    Meant for the float field, where it is the stable choice; over exact
    fields "largest" pivot degenerates to "first nonzero".
    """
    n = _require_square(A, "det")
    spec = A.spec
    M = A.raw_rows()
    sub, mul, div, is_zero = spec.sub, spec.mul, spec.div, spec.is_zero
    det = spec.raw_one()
    for k in range(n):
        if spec.is_exact:
            piv = next((r for r in range(k, n) if not is_zero(M[r][k])), None)
        else:
            piv = max(range(k, n), key=lambda r: abs(M[r][k]))
            if is_zero(M[piv][k]):
                piv = None
        if piv is None:
            return spec.zero()
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = spec.neg(det)
        pivot = M[k][k]
        det = mul(det, pivot)
        for i in range(k + 1, n):
            f = div(M[i][k], pivot)
            if is_zero(f) and spec.is_exact:
                continue
            Mi, Mk = M[i], M[k]
            for j in range(k + 1, n):
                Mi[j] = sub(Mi[j], mul(f, Mk[j]))
    return FieldElement(spec, det)


def m2_det(A: Matrix2) -> FieldElement:
    """Exact determinant of a square matrix.

    Cofactor expansion for n <= 3; beyond that Bareiss over exact fields and
    pivoted elimination over floats.
    """
    n = _require_square(A, "det")
    if n <= 3:
        return det_cofactor(A)
    if A.spec.is_exact:
        return det_bareiss(A)
    return det_elimination(A)


# -- cofactors, adjugate, inverses -------------------------------------------


def m2_minor(A: Matrix2, i: int, j: int) -> Matrix2:
    n = _require_square(A, "minor")
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexOutOfRange(f"cofactor ({i}, {j}) outside a {n}x{n} matrix")
    rows = _minor_rows(A.raw_rows(), i - 1, j - 1)
    return Matrix2.from_raw(A.spec, n - 1, n - 1, (x for r in rows for x in r))


def m2_cofactor(A: Matrix2, i: int, j: int) -> FieldElement:
    """Signed cofactor ``(-1)**(i+j) * det(minor(A, i, j))``, 1-based."""
    n = _require_square(A, "cofactor")
    if n == 1:
        if (i, j) != (1, 1):
            raise IndexOutOfRange(f"cofactor ({i}, {j}) outside a 1x1 matrix")
        return A.spec.one()
    d = m2_det(m2_minor(A, i, j))
    return -d if (i + j) % 2 else d


def m2_cofactor_matrix(A: Matrix2) -> Matrix2:
    n = _require_square(A, "cofactor matrix")
    vals = [m2_cofactor(A, i, j).value for i in range(1, n + 1) for j in range(1, n + 1)]
    return Matrix2.from_raw(A.spec, n, n, vals)


def m2_adjugate(A: Matrix2) -> Matrix2:
    return m2_transpose(m2_cofactor_matrix(A))


def m2_inverse_adjugate(A: Matrix2) -> Matrix2:
    _require_square(A, "inverse")
    d = m2_det(A)
    if d.is_zero():
        raise Singular("matrix is singular (det = 0)")
    return m2_scale(d.inverse(), m2_adjugate(A))


def m2_inverse_gauss(A: Matrix2) -> Matrix2:
    """Gauss-Jordan inverse on the augmented matrix ``[A | I]``."""
    n = _require_square(A, "inverse")
    spec = A.spec
    one, zero = spec.raw_one(), spec.raw_zero()
    M = [row + [one if i == j else zero for j in range(n)] for i, row in enumerate(A.raw_rows())]
    sub, mul, inv, is_zero = spec.sub, spec.mul, spec.inv, spec.is_zero
    for k in range(n):
        if spec.is_exact:
            piv = next((r for r in range(k, n) if not is_zero(M[r][k])), None)
        else:
            piv = max(range(k, n), key=lambda r: abs(M[r][k]))
            if is_zero(M[piv][k]):
                piv = None
        if piv is None:
            raise Singular("matrix is singular (no pivot in column %d)" % (k + 1))
        M[k], M[piv] = M[piv], M[k]
        r = inv(M[k][k])
        M[k] = [mul(r, x) for x in M[k]]
        Mk = M[k]
        for i in range(n):
            if i == k:
                continue
            f = M[i][k]
            if is_zero(f) and spec.is_exact:
                continue
            M[i] = [sub(x, mul(f, y)) for x, y in zip(M[i], Mk)]
    return Matrix2.from_raw(spec, n, n, (x for row in M for x in row[n:]))


m2_inverse = m2_inverse_adjugate
