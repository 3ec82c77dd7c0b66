import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heisyn.errors import DomainError, Unreached
from heisyn.group import reflect_vertical, rotate_about_z
from heisyn.riemann import cut_time, exp_riemann
from heisyn.synthesis import (
    brute_force_distance,
    distance,
    distance_between,
    invert_exp,
    minimizers,
    solve,
)

from conftest import FORWARD_POINT

coord = st.floats(-3, 3, allow_nan=False)


def test_invert_forward_point():
    rep = invert_exp(1.0, FORWARD_POINT)
    assert rep.residual <= 1e-10
    assert rep.momentum.theta == pytest.approx(math.pi / 6, abs=1e-12)
    assert rep.momentum.phi == pytest.approx(0.0, abs=1e-12)
    assert rep.time == pytest.approx(math.pi, abs=1e-12)
    assert rep.branch == "generic"


def test_invert_rejects_boundary_of_domain():
    with pytest.raises(DomainError):
        invert_exp(1.0, (1.0, 0.0, 0.0))
    with pytest.raises(DomainError):
        invert_exp(1.0, (0.0, 0.0, 1.0))


@settings(max_examples=200, deadline=None)
@given(
    st.floats(0.2, 3.0),
    st.floats(1e-3, math.pi / 2 - 1e-3),
    st.floats(-math.pi + 1e-9, math.pi),
    st.floats(1e-3, 2 * math.pi - 1e-3),
    st.booleans(),
)
def test_forward_then_invert(eps, theta, phi, tau, lower):
    t = eps * tau / math.sin(theta)
    if lower:
        theta, phi = -theta, -phi
    rep = invert_exp(eps, exp_riemann(eps, theta, phi, t))
    assert rep.momentum.theta == pytest.approx(theta, abs=1e-9)
    assert math.remainder(rep.momentum.phi - phi, 2 * math.pi) == pytest.approx(0.0, abs=1e-9)
    assert rep.time == pytest.approx(t, abs=1e-9 * max(1.0, t))
    assert rep.time <= cut_time(eps, rep.momentum.theta)


def test_distance_examples():
    assert distance(1.0, (0, 0, math.pi)) == pytest.approx(math.pi, abs=1e-12)
    assert distance(1.0, (0, 0, 4 * math.pi)) == pytest.approx(2 * math.pi * math.sqrt(3), abs=1e-12)
    assert distance(1.0, (1, 0, 0)) == 1.0
    assert distance(1.0, (0, 0, 0)) == 0.0
    assert distance(1.0, FORWARD_POINT) == pytest.approx(math.pi, abs=1e-12)


def test_distance_axis_branches_meet_at_boundary():
    for eps in (0.3, 1.0, 2.0):
        z = 2 * math.pi * eps**2
        below = distance(eps, (0, 0, z * (1 - 1e-12)))
        above = distance(eps, (0, 0, z * (1 + 1e-12)))
        assert below == pytest.approx(2 * math.pi * eps, rel=1e-9)
        assert above == pytest.approx(2 * math.pi * eps, rel=1e-5)


def test_sub_riemannian_closed_forms():
    assert distance(0.0, (0, 0, 0)) == 0.0
    assert distance(0.0, (3, 4, 0)) == pytest.approx(5.0)
    assert distance(0.0, (0, 0, math.pi)) == pytest.approx(2 * math.pi)
    with pytest.raises(DomainError):
        distance(0.0, (1, 1, 1))


@pytest.mark.parametrize("z", [0.5, 2.0, math.pi, 6.0])
def test_short_axis_continuity(z):
    assert abs(distance(1.0, (1e-4, 0, z)) - z) <= 1e-6


@pytest.mark.parametrize("z", [4 * math.pi, 9.0, 20.0])
def test_long_axis_first_order_kink(z):
    # several minimizers meet here; moving off the axis by rho lowers the
    # distance by cos(theta*) rho to first order
    d0 = distance(1.0, (0, 0, z))
    theta = minimizers(1.0, (0, 0, z)).geodesics[0].momentum.theta
    for rho in (1e-3, 1e-4, 1e-5):
        slope = (distance(1.0, (rho, 0, z)) - d0) / rho
        assert slope == pytest.approx(-math.cos(theta), abs=5 * rho)


@settings(max_examples=50, deadline=None)
@given(coord, coord, coord, st.floats(-math.pi, math.pi))
def test_symmetry_invariance(x, y, z, alpha):
    q = (x, y, z)
    d = distance(1.0, q)
    assert distance(1.0, rotate_about_z(q, alpha)) == pytest.approx(d, abs=1e-9)
    assert distance(1.0, reflect_vertical(q)) == pytest.approx(d, abs=1e-9)


@settings(max_examples=50, deadline=None)
@given(*[st.tuples(coord, coord, coord)] * 3)
def test_triangle_inequality(a, b, m):
    assert distance_between(0.7, a, b) <= distance_between(0.7, a, m) + distance_between(0.7, m, b) + 1e-8


@settings(max_examples=50, deadline=None)
@given(coord, coord, coord)
def test_optimality_certificate(x, y, z):
    rep = solve(1.0, (x, y, z))
    assert rep.time <= cut_time(1.0, rep.momentum.theta) + 1e-9


def test_minimizers():
    fam = minimizers(1.0, (0, 0, 4 * math.pi))
    assert fam.multiple and fam.branch == "axis-long"
    g = fam.geodesics[0]
    assert g.momentum.theta == pytest.approx(math.asin(1 / math.sqrt(3)), abs=1e-14)
    assert g.duration == pytest.approx(2 * math.pi * math.sqrt(3), abs=1e-12)
    for member in fam.family(6):
        assert np.max(np.abs(np.subtract(member.endpoint, (0, 0, 4 * math.pi)))) <= 1e-12

    line = minimizers(1.0, (1, 1, 0))
    assert not line.multiple and len(line.geodesics) == 1
    assert line.geodesics[0].duration == pytest.approx(math.sqrt(2))

    gen = minimizers(1.0, FORWARD_POINT)
    (g,) = gen.geodesics
    assert (g.momentum.theta, g.momentum.phi, g.duration) == pytest.approx((math.pi / 6, 0, math.pi), abs=1e-12)

    edge = minimizers(2.0, (0, 0, 8 * math.pi))
    assert edge.degenerate and edge.geodesics[0].momentum.theta == pytest.approx(math.pi / 2)


@pytest.mark.parametrize(
    "q, expected",
    [((1, 0, 0), 1.0), ((0, 0, math.pi), math.pi), (FORWARD_POINT, math.pi)],
)
def test_brute_force_examples(q, expected):
    assert brute_force_distance(1.0, q) == pytest.approx(expected, abs=0.02)


def test_brute_force_unreached():
    with pytest.raises(Unreached):
        brute_force_distance(1.0, (5, 0, 1), t_max=1.0)
