import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heisyn.subriemann import cut_time_sr, exp_sr, sr_axis_distance

c_st = st.floats(-5, 5).filter(lambda c: abs(c) > 1e-3)
angle_st = st.floats(-math.pi, math.pi)


def test_examples():
    assert exp_sr(0.0, 0.4, 2.0) == pytest.approx([2 * math.cos(0.4), 2 * math.sin(0.4), 0.0], abs=1e-15)
    assert exp_sr(1.0, 0.0, math.pi) == pytest.approx([0.0, 2.0, math.pi / 2], abs=1e-15)
    assert exp_sr(1.0, 0.0, 2 * math.pi) == pytest.approx([0.0, 0.0, math.pi], abs=1e-15)


def test_cut_time():
    assert cut_time_sr(1.0) == pytest.approx(2 * math.pi)
    assert cut_time_sr(0.0) == math.inf
    assert cut_time_sr(-4.0) == pytest.approx(math.pi / 2)


def test_axis_distance_matches_cut_arc():
    z = 2.7
    c = math.sqrt(math.pi / z)
    assert exp_sr(c, 0.3, sr_axis_distance(z)) == pytest.approx([0, 0, z], abs=1e-12)


@given(st.sampled_from([1e-8, -1e-8]), angle_st, st.floats(0, 10))
def test_continuity_at_zero(c, psi, t):
    assert np.max(np.abs(exp_sr(c, psi, t) - exp_sr(0.0, psi, t))) <= 1e-6


@given(c_st, angle_st)
def test_cut_arc_ends_on_axis(c, psi):
    p = exp_sr(c, psi, cut_time_sr(c))
    assert np.max(np.abs(p - [0, 0, math.copysign(math.pi / c**2, c)])) <= 1e-12 * max(1.0, math.pi / c**2)


@given(c_st, angle_st, st.floats(0, 10), angle_st)
def test_symmetries(c, psi, t, alpha):
    p = exp_sr(c, psi, t)
    rot = exp_sr(c, psi + alpha, t)
    ca, sa = math.cos(alpha), math.sin(alpha)
    assert rot == pytest.approx([ca * p[0] - sa * p[1], sa * p[0] + ca * p[1], p[2]], abs=1e-12 * max(1, np.abs(p).max()))
    assert exp_sr(-c, -psi, t) == pytest.approx([p[0], -p[1], -p[2]], abs=1e-12 * max(1, np.abs(p).max()))
