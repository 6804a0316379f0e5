import random

import pytest

from trimat.errors import DepthMismatch, FieldMismatch, IndexOutOfRange, NotAbsolutelyNonzero, NotSquare, ShapeMismatch, Singular
from trimat.field import gf, rational_field
from trimat.grouplab import sample_gl, sample_matrix3
from trimat.linalg2d import Matrix2, m2_add, m2_inverse_gauss, m2_mul
from trimat.tensor3d import (
    Matrix3,
    MultiScalar,
    det3,
    m3_add,
    m3_adjugate,
    m3_from_layers,
    m3_identity,
    m3_inverse,
    m3_layer,
    m3_neg,
    m3_odot,
    m3_zero,
    ms_componentwise_mul,
    ms_hat,
    ms_is_absolutely_nonzero,
    ms_mul,
    singular_layers,
)

from conftest import EX5_ADJUGATE, EX5_INVERSE, FIELDS, EXACT_FIELDS

Q = rational_field()


def test_identity_and_zero():
    F = gf(2)
    I = m3_identity(2, 2, F)
    assert I.layers == (Matrix2.identity(2, F), Matrix2.identity(2, F))
    assert det3(m3_identity(3, 4, Q)) == MultiScalar.ones(4, Q)
    A = sample_matrix3(3, 2, Q, 5, m=2)
    assert m3_add(m3_zero(2, 3, 2, Q), A) == A


def test_add_neg(ex1):
    O = m3_zero(2, 2, 3, Q)
    assert m3_add(ex1, O) == ex1
    assert m3_add(ex1, m3_neg(ex1)) == O


def test_characteristic_two():
    F = gf(2)
    for seed in range(20):
        A = sample_matrix3(2, 3, F, seed)
        assert m3_add(A, A) == m3_zero(2, 2, 3, F)


def test_odot_gf3_one_by_one():
    F = gf(3)
    A = Matrix3.from_lists(F, [[[2]], [[2]]])
    B = Matrix3.from_lists(F, [[[2]], [[1]]])
    assert m3_odot(A, B) == Matrix3.from_lists(F, [[[1]], [[2]]])


def test_odot_identity_and_det(ex1):
    I = m3_identity(2, 3, Q)
    assert m3_odot(I, ex1) == ex1
    assert det3(m3_odot(ex1, I)) == ms_componentwise_mul(det3(ex1), det3(I))


def test_odot_errors(ex1):
    rect = sample_matrix3(3, 3, Q, 1, m=2)
    with pytest.raises(NotSquare):
        m3_odot(rect, rect)
    with pytest.raises(ShapeMismatch):
        m3_odot(ex1, m3_identity(2, 2, Q))
    with pytest.raises(FieldMismatch):
        m3_odot(ex1, m3_identity(2, 3, gf(5)))


def test_multi_scalar_action(ex1, ex1_scalar):
    expected = Matrix3.from_lists(Q, [[[3, 12], [15, 9]], [[25, 0], [45, 5]], [[4, 6], [8, 10]]])
    assert ms_mul(ex1_scalar, ex1) == expected
    assert ms_mul(MultiScalar.ones(3, Q), ex1) == ex1
    assert ms_mul(MultiScalar.zeros(3, Q), ex1) == m3_zero(2, 2, 3, Q)
    with pytest.raises(DepthMismatch):
        ms_mul(MultiScalar(Q, [1, 2]), ex1)


def test_multi_scalar_action_on_rectangular():
    A = sample_matrix3(3, 2, Q, 3, m=2)
    assert ms_mul(MultiScalar(Q, [2, 2]), A) == m3_add(A, A)


def test_componentwise_mul():
    assert ms_componentwise_mul(MultiScalar(Q, [-2, 5, -17]), MultiScalar.ones(3, Q)) == MultiScalar(Q, [-2, 5, -17])
    assert ms_componentwise_mul(MultiScalar(Q, [-6, 25]), MultiScalar(Q, [25, -6])) == MultiScalar(Q, [-150, -150])
    a = MultiScalar(Q, [4, 7])
    assert ms_componentwise_mul(a, MultiScalar.zeros(2, Q)) == MultiScalar.zeros(2, Q)


def test_det3_examples(ex1, ex5):
    assert det3(ex1) == MultiScalar(Q, [-17, 5, -2])
    assert det3(ex5) == MultiScalar(Q, [25, -6])
    assert det3(m3_zero(3, 3, 2, Q)) == MultiScalar.zeros(2, Q)
    with pytest.raises(NotSquare):
        det3(sample_matrix3(3, 2, Q, 0, m=2))


def test_absolutely_nonzero():
    assert ms_is_absolutely_nonzero(MultiScalar(Q, [-6, 25]))
    assert not ms_is_absolutely_nonzero(MultiScalar(Q, [2, 0, 3]))
    assert not ms_is_absolutely_nonzero(MultiScalar.zeros(3, Q))


def test_hat():
    assert ms_hat(MultiScalar(Q, [3, 5, 2])) == MultiScalar(Q, ["1/3", "1/5", "1/2"])
    assert ms_hat(MultiScalar(Q, [-6, 25])) == MultiScalar(Q, ["-1/6", "1/25"])
    assert ms_hat(MultiScalar.ones(4, Q)) == MultiScalar.ones(4, Q)
    with pytest.raises(NotAbsolutelyNonzero) as err:
        ms_hat(MultiScalar(Q, [2, 0, 3, 0]))
    assert err.value.index == 2


def test_adjugate_examples(ex5):
    assert m3_adjugate(ex5) == Matrix3.from_lists(Q, EX5_ADJUGATE)
    assert m3_adjugate(m3_identity(3, 2, Q)) == m3_identity(3, 2, Q)
    one_by_one = Matrix3.from_lists(Q, [[[4]], [[0]], [[-3]]])
    assert m3_adjugate(one_by_one) == m3_identity(1, 3, Q)


def test_inverse_example(ex5):
    inv = m3_inverse(ex5)
    assert inv == Matrix3.from_lists(Q, EX5_INVERSE)
    I = m3_identity(3, 2, Q)
    assert m3_odot(ex5, inv) == I
    assert m3_odot(inv, ex5) == I
    assert m3_inverse(I) == I


def test_inverse_names_every_singular_layer():
    A = Matrix3.from_lists(Q, [[[1, 2], [2, 4]], [[1, 0], [0, 1]], [[0, 0], [0, 0]]])
    assert singular_layers(A) == [1, 3]
    with pytest.raises(Singular) as err:
        m3_inverse(A)
    assert err.value.layers == (1, 3)
    assert "1, 3" in str(err.value)


@pytest.mark.parametrize("spec", EXACT_FIELDS, ids=str)
def test_double_inverse(spec):
    rng = random.Random(11)
    for _ in range(30):
        A = sample_gl(3, 2, spec, rng)
        Ainv = m3_inverse(A)
        assert m3_inverse(Ainv) == A
        assert Ainv.layers == tuple(m2_inverse_gauss(L) for L in A.layers)


def test_layer_projection(ex5):
    assert m3_layer(ex5, 2) == Matrix2(Q, [[3, 1, 5], [0, 2, 1], [1, 7, 4]])
    assert m3_from_layers([m3_layer(ex5, k) for k in (1, 2)]) == ex5
    single = m3_from_layers([Matrix2(Q, [[1, 2], [3, 4]])])
    assert single.shape == (2, 2, 1)
    with pytest.raises(IndexOutOfRange):
        m3_layer(ex5, 3)
    with pytest.raises(ShapeMismatch):
        m3_from_layers([])
    with pytest.raises(ShapeMismatch):
        m3_from_layers([Matrix2(Q, [[1]]), Matrix2(Q, [[1, 2], [3, 4]])])


def test_multiscalar_matrix_round_trip():
    a = MultiScalar(gf(7), [3, 0, 6])
    M = a.to_matrix3()
    assert M.shape == (1, 1, 3)
    assert MultiScalar.from_matrix3(M) == a
    with pytest.raises(ShapeMismatch):
        MultiScalar.from_matrix3(m3_identity(2, 3, gf(7)))


@pytest.mark.parametrize("spec", FIELDS, ids=str)
def test_layer_homomorphism(spec):
    rng = random.Random(3)
    for _ in range(50):
        A, B = sample_matrix3(3, 3, spec, rng), sample_matrix3(3, 3, spec, rng)
        P, S = m3_odot(A, B), m3_add(A, B)
        for k in (1, 2, 3):
            assert m3_layer(P, k) == m2_mul(m3_layer(A, k), m3_layer(B, k))
            assert m3_layer(S, k) == m2_add(m3_layer(A, k), m3_layer(B, k))


@pytest.mark.parametrize("spec", FIELDS, ids=str)
def test_det3_multiplicative(spec):
    rng = random.Random(4)
    for _ in range(200):
        A, B = sample_matrix3(2, 3, spec, rng), sample_matrix3(2, 3, spec, rng)
        assert det3(m3_odot(A, B)) == ms_componentwise_mul(det3(A), det3(B))


@pytest.mark.parametrize("spec", FIELDS, ids=str)
def test_inverse_is_two_sided_and_scalar_action_invertible(spec):
    rng = random.Random(8)
    for _ in range(50):
        A = sample_gl(3, 2, spec, rng)
        I = m3_identity(3, 2, spec)
        Ainv = m3_inverse(A)
        assert m3_odot(A, Ainv) == I
        assert m3_odot(Ainv, A) == I
        a = det3(A)
        assert ms_mul(ms_hat(a), ms_mul(a, A)) == A


@pytest.mark.parametrize("spec", FIELDS, ids=str)
def test_ring_laws(spec):
    rng = random.Random(5)
    I, O = m3_identity(2, 2, spec), m3_zero(2, 2, 2, spec)
    for _ in range(100):
        A, B, C = (sample_matrix3(2, 2, spec, rng) for _ in range(3))
        assert m3_odot(m3_odot(A, B), C) == m3_odot(A, m3_odot(B, C))
        assert m3_odot(I, A) == A == m3_odot(A, I)
        assert m3_add(A, B) == m3_add(B, A)
        assert m3_add(m3_add(A, B), C) == m3_add(A, m3_add(B, C))
        assert m3_add(A, O) == A
        assert m3_add(A, m3_neg(A)) == O


def test_operators(ex5):
    assert ex5 @ m3_identity(3, 2, Q) == ex5
    assert ex5 + (-ex5) == m3_zero(3, 3, 2, Q)
    assert ex5.entry(1, 3, 2) == Q(5)
