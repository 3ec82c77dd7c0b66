import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heisyn.group import (
    IDENTITY,
    GroupPoint,
    group_inverse,
    group_multiply,
    left_translate,
    reflect_vertical,
    rotate_about_z,
    to_chamber,
)

coord = st.floats(-2, 2, allow_nan=False)
point = st.tuples(coord, coord, coord)
int_point = st.tuples(*[st.integers(-50, 50)] * 3)


def test_multiply_examples():
    assert group_multiply((0, 0, 0), (1.5, -2, 3)) == (1.5, -2, 3)
    assert group_multiply((1, 0, 0), (0, 1, 0)) == (1, 1, 0.5)
    assert group_multiply((1, 0, 0), (-1, 0, 0)) == (0, 0, 0)


def test_inverse_examples():
    assert group_inverse((0, 0, 0)) == (0, 0, 0)
    assert group_inverse((1, 2, 3)) == (-1, -2, -3)
    assert group_multiply((1, 2, 3), group_inverse((1, 2, 3))) == IDENTITY


def test_rotation_and_reflection_examples():
    assert rotate_about_z((1, 0, 5), math.pi / 2) == pytest.approx((0, 1, 5), abs=1e-15)
    assert rotate_about_z((0, 0, 7), 1.234) == (0, 0, 7)
    assert rotate_about_z((1, 1, 0), math.pi) == pytest.approx((-1, -1, 0), abs=1e-15)
    assert reflect_vertical((1, 2, 3)) == (1, -2, -3)
    assert reflect_vertical((0, 0, 0)) == (0, 0, 0)
    assert reflect_vertical((4, 0, 0)) == (4, 0, 0)


@given(point, point, point)
def test_associative(a, b, c):
    lhs = group_multiply(a, group_multiply(b, c))
    rhs = group_multiply(group_multiply(a, b), c)
    assert max(abs(u - v) for u, v in zip(lhs, rhs)) <= 1e-14


@given(int_point)
def test_identity_and_inverse_exact(a):
    assert group_multiply(a, IDENTITY) == a
    assert group_multiply(IDENTITY, a) == a
    assert group_multiply(a, group_inverse(a)) == IDENTITY
    assert group_multiply(group_inverse(a), a) == IDENTITY
    assert group_inverse(group_inverse(a)) == a


@given(point)
def test_reflection_is_involution(q):
    assert reflect_vertical(reflect_vertical(q)) == q


@given(point, point)
def test_left_translate_moves_base_to_identity(a, b):
    assert left_translate(a, a) == IDENTITY
    back = group_multiply(a, left_translate(a, b))
    assert max(abs(u - v) for u, v in zip(back, b)) <= 1e-14


def test_chamber():
    q, flipped, alpha = to_chamber((0, -2, -1))
    assert flipped
    assert q == pytest.approx((2, 0, 1))
    assert rotate_about_z(q, alpha) == pytest.approx(reflect_vertical((0, -2, -1)))


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        GroupPoint.of((math.nan, 0, 0))
