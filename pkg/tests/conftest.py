from fractions import Fraction

import pytest

from trimat import Matrix3, MultiScalar, float_field, gf, rational_field

Q = rational_field()

# Worked examples, listed bottom layer (k=1) first.
EX1_LAYERS = [[[1, 4], [5, 3]], [[5, 0], [9, 1]], [[2, 3], [4, 5]]]
EX1_SCALAR = [3, 5, 2]
EX5_LAYERS = [[[1, 2, 4], [8, 1, 1], [3, 1, 0]], [[3, 1, 5], [0, 2, 1], [1, 7, 4]]]
EX5_INVERSE = [
    [["-1/25", "4/25", "-2/25"], ["3/25", "-12/25", "31/25"], ["1/5", "1/5", "-3/5"]],
    [["-1/6", "-31/6", "3/2"], ["-1/6", "-7/6", "1/2"], ["1/3", "10/3", "-1"]],
]
EX5_ADJUGATE = [
    [[-1, 4, -2], [3, -12, 31], [5, 5, -15]],
    [[1, 31, -9], [1, 7, -3], [-2, -20, 6]],
]

FIELDS = [Q, gf(2), gf(5), gf(7), float_field()]
EXACT_FIELDS = [Q, gf(2), gf(5), gf(7)]


def as_fractions(nested):
    if isinstance(nested, list):
        return [as_fractions(x) for x in nested]
    return Fraction(nested)


@pytest.fixture
def ex1():
    return Matrix3.from_lists(Q, EX1_LAYERS)


@pytest.fixture
def ex1_scalar():
    return MultiScalar(Q, EX1_SCALAR)


@pytest.fixture
def ex5():
    return Matrix3.from_lists(Q, EX5_LAYERS)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[num])
