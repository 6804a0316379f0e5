import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from trimat.errors import DivisionByZero, FieldMismatch
from trimat.field import (
    FieldSpec,
    f_add,
    f_inv,
    f_is_zero,
    f_mul,
    f_neg,
    f_one,
    f_zero,
    float_field,
    gf,
    mod_inverse,
    rational_field,
)

from conftest import FIELDS

Q = rational_field()


def test_gf_add_reduces():
    F = gf(7)
    assert f_add(F(5), F(4)) == F(2)
    assert f_add(F(5), F(4)).value == 2


def test_rational_add():
    assert f_add(Q("1/2"), Q("1/3")) == Q("5/6")


@pytest.mark.parametrize("spec", FIELDS, ids=str)
def test_additive_and_multiplicative_identity(spec):
    a = spec(3)
    assert f_add(a, f_zero(spec)) == a
    assert f_mul(a, f_one(spec)) == a


def test_gf7_inverse_matches_brute_force_scan():
    F = gf(7)
    scan = [x for x in range(1, 7) if 3 * x % 7 == 1]
    assert scan == [5]
    assert f_inv(F(3)) == F(5)


def test_rational_inverse():
    assert f_inv(Q("-2/3")) == Q("-3/2")


def test_mod_inverse_exhaustive_against_scan():
    for q in (2, 3, 5, 7, 11, 13):
        for a in range(1, q):
            assert mod_inverse(a, q) == next(x for x in range(1, q) if a * x % q == 1)


@pytest.mark.parametrize("spec", FIELDS, ids=str)
def test_inverse_of_zero_raises(spec):
    with pytest.raises(DivisionByZero):
        f_inv(f_zero(spec))


def test_float_inverse_below_tolerance_raises():
    with pytest.raises(DivisionByZero):
        f_inv(float_field()(1e-12))


def test_is_zero():
    assert f_is_zero(Q(Fraction(0, 1)))
    assert f_is_zero(gf(5)(5))
    assert f_is_zero(float_field(1e-9)(1e-12))
    assert not f_is_zero(float_field(1e-9)(1e-6))


def test_rational_canonical_form():
    assert Q("2/4") == Q("1/2")
    assert Q("2/4").value.denominator == 2
    assert Q("6/4").value == Fraction(3, 2)
    assert hash(Q("2/4")) == hash(Q("1/2"))


def test_float_equality_is_relative_and_absolute():
    F = float_field(1e-9)
    assert F(1e12) == F(1e12 + 100)  # relative
    assert F(0.0) == F(5e-10)  # absolute near zero
    assert F(1.0) != F(1.0 + 1e-6)


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_wilson(q):
    F = gf(q)
    prod = F(1)
    for a in range(1, q):
        prod = f_mul(prod, F(a))
    assert prod == f_neg(F(1))


@pytest.mark.parametrize("spec", FIELDS, ids=str)
def test_field_axioms_random_triples(spec):
    rng = random.Random(42)

    def draw():
        if spec.kind == "gf":
            return spec(rng.randrange(spec.modulus))
        v = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        return spec(v)

    for _ in range(200):
        a, b, c = draw(), draw(), draw()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + f_neg(a) == f_zero(spec)
        if not f_is_zero(a):
            assert a * f_inv(a) == f_one(spec)


@given(st.integers(), st.integers(min_value=1))
def test_rational_from_pair_is_canonical(num, den):
    x = Q(Fraction(num, den))
    v = x.value
    assert v.denominator > 0
    assert math.gcd(abs(v.numerator), v.denominator) == 1


@given(st.integers(min_value=-10**6, max_value=10**6), st.sampled_from([2, 3, 5, 7, 101]))
def test_gf_residue_in_range(value, q):
    assert 0 <= gf(q)(value).value < q


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        f_add(gf(5)(1), gf(7)(1))
    with pytest.raises(FieldMismatch):
        gf(5)(1) * Q(1)


@pytest.mark.parametrize("q", [0, 1, 4, 9, 91, 2**31 - 1 + 2, 2**31])
def test_non_prime_or_oversized_modulus_rejected(q):
    with pytest.raises(ValueError):
        gf(q)


def test_largest_allowed_prime():
    F = gf(2**31 - 1)
    assert F(2**31 - 2) * F(2**31 - 2) == F(1)


def test_negative_tolerance_rejected():
    with pytest.raises(ValueError):
        float_field(-1.0)


@pytest.mark.parametrize("text,expected", [
    ("rational", rational_field()),
    ("gf 7", gf(7)),
    ("gf7", gf(7)),
    ("GF:7", gf(7)),
    ("float", float_field()),
    ("float 1e-6", float_field(1e-6)),
])
def test_fieldspec_parse(text, expected):
    assert FieldSpec.parse(text) == expected
    assert FieldSpec.parse(str(expected)) == expected


@pytest.mark.parametrize("spec,text", [
    (gf(7), "1/2"), (gf(7), "0.5"), (Q, "0.5"), (Q, "1/0"), (float_field(), "nan"),
    (float_field(), "1e999"), (Q, ""), (Q, "1/-2"),
])
def test_bad_literals(spec, text):
    with pytest.raises(ValueError):
        spec.parse_literal(text)


def test_gf_accepts_fraction_via_inverse():
    assert gf(7)(Fraction(1, 2)) == gf(7)(4)
