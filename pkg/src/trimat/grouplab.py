"""Mechanical checks of the algebraic structure of layered 3D matrices.

Each ``verify_*`` function draws seeded random samples (or enumerates a tiny
finite case exhaustively), checks one structural law, and returns a
:class:`VerificationReport`. Failures never raise; they are counted and the
first few offending inputs are kept as witnesses.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import tensor3d as t3
from .errors import EnumerationTooLarge, SamplingExhausted, TrimatError
from .field import FieldSpec, gf
from .linalg2d import Matrix2, m2_det
from .tensor3d import Matrix3
from .textio import serialize_object

MAX_WITNESSES = 5
MAX_REDRAWS = 1000
ENUMERATION_CAP = 2**20

LAWS = ("add-group", "semigroup", "closure", "gl-group")


@dataclass
class VerificationReport:
    property: str
    samples: int = 0
    failures: int = 0
    witnesses: list = dc_field(default_factory=list)
    elapsed: float = 0.0
    field: str = ""
    n: int = 0
    p: int = 0
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, witness: str | None):
        """Count one sample; ``witness`` is None when the sample passed."""
        self.samples += 1
        if witness is not None:
            self.failures += 1
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(witness)

    def to_text(self) -> str:
        # elapsed is left out so identical runs print identical text
        status = "PASS" if self.passed else "FAIL"
        head = (f"[{status}] {self.property}: field={self.field} n={self.n} p={self.p} "
                f"seed={self.seed} samples={self.samples} failures={self.failures}")
        lines = [head] + [f"  witness: {w}" for w in self.witnesses]
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def merge(cls, reports: Sequence["VerificationReport"]) -> "VerificationReport":
        """Combine partial reports in the given (partition) order."""
        first = reports[0]
        out = cls(first.property, field=first.field, n=first.n, p=first.p, seed=first.seed)
        for r in reports:
            out.samples += r.samples
            out.failures += r.failures
            out.elapsed += r.elapsed
            out.witnesses.extend(r.witnesses)
        del out.witnesses[MAX_WITNESSES:]
        return out


@dataclass(frozen=True)
class GlCensus:
    n: int
    p: int
    field: FieldSpec
    total_matrices: int
    gl_order: int

    @property
    def closed_form(self) -> int:
        return gl_order_formula(self.n, self.field.modulus) ** self.p

    @property
    def matches_closed_form(self) -> bool:
        return self.gl_order == self.closed_form


def gl_order_formula(n: int, q: int) -> int:
    """|GL(n, q)| = prod_{i<n} (q^n - q^i)."""
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


# -- sampling ---------------------------------------------------------------------


def _as_rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _draw(rng: random.Random, spec: FieldSpec):
    if spec.kind == "gf":
        return rng.randrange(spec.modulus)
    value = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return value if spec.kind == "rational" else float(value)


def sample_matrix2(m: int, n: int, spec: FieldSpec, rng) -> Matrix2:
    rng = _as_rng(rng)
    return Matrix2.from_raw(spec, m, n, [_draw(rng, spec) for _ in range(m * n)])


def sample_matrix3(n: int, p: int, spec: FieldSpec, rng_seed, m: int | None = None) -> Matrix3:
    """Uniform random n x n x p matrix (m x n x p if ``m`` is given)."""
    rng = _as_rng(rng_seed)
    rows = n if m is None else m
    return Matrix3([sample_matrix2(rows, n, spec, rng) for _ in range(p)])


def sample_gl_layer(n: int, spec: FieldSpec, rng) -> tuple[Matrix2, int]:
    """Draw nonsingular n x n layers by rejection; return the layer and attempts used."""
    rng = _as_rng(rng)
    for attempt in range(1, MAX_REDRAWS + 1):
        L = sample_matrix2(n, n, spec, rng)
        if not m2_det(L).is_zero():
            return L, attempt
    raise SamplingExhausted(f"no nonsingular {n}x{n} layer over {spec} in {MAX_REDRAWS} draws")


def sample_gl(n: int, p: int, spec: FieldSpec, rng_seed) -> Matrix3:
    rng = _as_rng(rng_seed)
    return Matrix3([sample_gl_layer(n, spec, rng)[0] for _ in range(p)])


def enumerate_matrix3(n: int, p: int, spec: FieldSpec) -> Iterable[Matrix3]:
    """Every n x n x p matrix over a prime field, in a fixed order."""
    if not spec.is_finite:
        raise ValueError("enumeration needs a finite field")
    q = spec.modulus
    if q ** (n * n * p) > ENUMERATION_CAP:
        raise EnumerationTooLarge(f"{q}^{n * n * p} matrices exceed the cap of {ENUMERATION_CAP}")
    layers = [Matrix2.from_raw(spec, n, n, t)
              for t in itertools.product(range(q), repeat=n * n)]
    for combo in itertools.product(layers, repeat=p):
        yield Matrix3(combo)


def _show(*named) -> str:
    return "; ".join(f"{name}={serialize_object(X).replace(chr(10), ' ')}" for name, X in named)


def _safe(check: Callable, *args) -> str | None:
    try:
        return check(*args)
    except (TrimatError, ArithmeticError) as exc:
        return f"raised {type(exc).__name__}: {exc}"


def _report(prop, spec, n, p, seed) -> VerificationReport:
    return VerificationReport(prop, field=str(spec), n=n, p=p, seed=seed)


# -- Abelian group under + ---------------------------------------------------------


def verify_abelian_group_add(n, p, spec, samples=200, seed=0, *, add=t3.m3_add,
                             exhaustive=False) -> VerificationReport:
    """Associativity, commutativity, zero and opposites for ``+``.

    ``add`` can be swapped for a deliberately broken operation to check that
    the harness actually catches failures.
    """
    started = time.perf_counter()
    report = _report("abelian-group-add", spec, n, p, seed)
    O = t3.m3_zero(n, n, p, spec)

    def check(A, B, C):
        bad = []
        if add(add(A, B), C) != add(A, add(B, C)):
            bad.append("associativity")
        if add(A, B) != add(B, A):
            bad.append("commutativity")
        if add(A, O) != A or add(O, A) != A:
            bad.append("zero")
        if add(A, t3.m3_neg(A)) != O:
            bad.append("opposite")
        return f"{','.join(bad)}: {_show(('A', A), ('B', B), ('C', C))}" if bad else None

    for A, B, C in _triples(n, p, spec, samples, seed, exhaustive):
        report.record(_safe(check, A, B, C))
    report.elapsed = time.perf_counter() - started
    return report


def _triples(n, p, spec, samples, seed, exhaustive, draw=sample_matrix3):
    if exhaustive:
        everything = list(enumerate_matrix3(n, p, spec))
        yield from itertools.product(everything, repeat=3)
        return
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = _as_rng(seed)
    for _ in range(samples):
        yield draw(n, p, spec, rng), draw(n, p, spec, rng), draw(n, p, spec, rng)


# -- unitary semigroup under odot ---------------------------------------------------


def verify_semigroup_odot(n, p, spec, samples=200, seed=0, *, odot=t3.m3_odot,
                          exhaustive=False) -> VerificationReport:
    started = time.perf_counter()
    report = _report("semigroup-odot", spec, n, p, seed)
    I = t3.m3_identity(n, p, spec)

    def check(A, B, C):
        bad = []
        if odot(odot(A, B), C) != odot(A, odot(B, C)):
            bad.append("associativity")
        if odot(I, A) != A or odot(A, I) != A:
            bad.append("identity")
        return f"{','.join(bad)}: {_show(('A', A), ('B', B), ('C', C))}" if bad else None

    for A, B, C in _triples(n, p, spec, samples, seed, exhaustive):
        report.record(_safe(check, A, B, C))
    report.elapsed = time.perf_counter() - started
    return report


# -- closure of the invertible matrices ---------------------------------------------


def verify_gl_closure(n, p, spec, samples=200, seed=0) -> VerificationReport:
    """Products of invertible matrices stay invertible and det3 is multiplicative."""
    started = time.perf_counter()
    report = _report("gl-closure", spec, n, p, seed)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = _as_rng(seed)

    def check(A, B):
        dAB = t3.det3(t3.m3_odot(A, B))
        bad = []
        if not t3.ms_is_absolutely_nonzero(dAB):
            bad.append("closure")
        if dAB != t3.ms_componentwise_mul(t3.det3(A), t3.det3(B)):
            bad.append("det-multiplicative")
        return f"{','.join(bad)}: {_show(('A', A), ('B', B))}" if bad else None

    for _ in range(samples):
        A, B = sample_gl(n, p, spec, rng), sample_gl(n, p, spec, rng)
        report.record(_safe(check, A, B))
    report.elapsed = time.perf_counter() - started
    return report


# -- group structure of the invertible matrices -------------------------------------


def _check_inverse(A: Matrix3) -> str | None:
    I = t3.m3_identity(A.n, A.p, A.spec)
    Ainv = t3.m3_inverse(A)
    bad = []
    if t3.m3_odot(A, Ainv) != I:
        bad.append("right-inverse")
    if t3.m3_odot(Ainv, A) != I:
        bad.append("left-inverse")
    dinv = t3.det3(Ainv)
    if not t3.ms_is_absolutely_nonzero(dinv):
        bad.append("inverse-in-GL")
    elif dinv != t3.ms_hat(t3.det3(A)):
        bad.append("det-of-inverse")
    return f"{','.join(bad)}: {_show(('A', A))}" if bad else None


def verify_group_gl(n, p, spec, samples=200, seed=0, *, pinned: Sequence[Matrix3] = (),
                    exhaustive=False) -> VerificationReport:
    """Every sampled invertible A has a two-sided inverse inside the group.

    ``pinned`` matrices are checked before the random ones and count towards
    ``samples``. With ``exhaustive=True`` (finite fields only) the whole group
    is enumerated and its Cayley table checked instead.
    """
    if exhaustive:
        return verify_cayley_gl(n, p, spec)
    started = time.perf_counter()
    report = _report("gl-group", spec, n, p, seed)
    for A in pinned:
        report.record(_safe(_check_inverse, A))
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = _as_rng(seed)
    for _ in range(max(samples - len(pinned), 0)):
        report.record(_safe(_check_inverse, sample_gl(n, p, spec, rng)))
    report.elapsed = time.perf_counter() - started
    return report


def gl_elements(n: int, p: int, spec: FieldSpec) -> list[Matrix3]:
    return [A for A in enumerate_matrix3(n, p, spec)
            if t3.ms_is_absolutely_nonzero(t3.det3(A))]


def verify_cayley_gl(n: int, p: int, spec: FieldSpec) -> VerificationReport:
    """Build the full Cayley table of the invertible n x n x p matrices and
    check closure, associativity, identity and inverses on it."""
    started = time.perf_counter()
    report = _report("gl-group-cayley", spec, n, p, None)
    elems = gl_elements(n, p, spec)
    index = {A: i for i, A in enumerate(elems)}
    size = len(elems)
    table = [[None] * size for _ in range(size)]
    for i, A in enumerate(elems):
        for j, B in enumerate(elems):
            table[i][j] = index.get(t3.m3_odot(A, B))
            report.record(None if table[i][j] is not None
                          else f"closure: {_show(('A', A), ('B', B))}")
    if report.failures:
        report.elapsed = time.perf_counter() - started
        return report
    for a, b, c in itertools.product(range(size), repeat=3):
        ok = table[table[a][b]][c] == table[a][table[b][c]]
        report.record(None if ok else
                      f"associativity: {_show(('A', elems[a]), ('B', elems[b]), ('C', elems[c]))}")
    e = index.get(t3.m3_identity(n, p, spec))
    report.record(None if e is not None else "identity: I is not in the group")
    if e is not None:
        for a in range(size):
            ok = table[e][a] == a == table[a][e]
            report.record(None if ok else f"identity: {_show(('A', elems[a]))}")
            ok = any(table[a][b] == e == table[b][a] for b in range(size))
            report.record(None if ok else f"inverse: {_show(('A', elems[a]))}")
    report.elapsed = time.perf_counter() - started
    return report


def census_gl(n: int, p: int, q: int) -> GlCensus:
    """Count all n x n x p matrices over GF(q) and those with absolutely nonzero det."""
    spec = gf(q)
    if q ** (n * n * p) > ENUMERATION_CAP:
        raise EnumerationTooLarge(f"{q}^{n * n * p} matrices exceed the cap of {ENUMERATION_CAP}")
    # a layer's det only depends on the layer, so compute it once per layer
    invertible = [not m2_det(Matrix2.from_raw(spec, n, n, t)).is_zero()
                  for t in itertools.product(range(q), repeat=n * n)]
    total = gl = 0
    for combo in itertools.product(invertible, repeat=p):
        total += 1
        gl += all(combo)
    return GlCensus(n, p, spec, total, gl)


def run_laws(laws: Sequence[str], n, p, spec, samples, seed) -> list[VerificationReport]:
    """Run the named suites in the order add-group, semigroup, closure, gl-group."""
    funcs = {
        "add-group": verify_abelian_group_add,
        "semigroup": verify_semigroup_odot,
        "closure": verify_gl_closure,
        "gl-group": verify_group_gl,
    }
    if "all" in laws:
        laws = LAWS
    return [funcs[law](n, p, spec, samples, seed) for law in LAWS if law in laws]
