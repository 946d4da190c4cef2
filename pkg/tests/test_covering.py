import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

from wigneroid.covering import (
    OSC_IDENTITY,
    TWO_PI,
    E2Element,
    OscElement,
    conjugate_heisenberg,
    e2_mul,
    heisenberg_part,
    osc_inv,
    osc_mul,
    project,
    rotation_part,
)
from wigneroid.errors import NotInSubgroupError
from wigneroid.verify import oscillator_vs_extension_residual

coords = hst.floats(min_value=-20.0, max_value=20.0)
elements = hst.builds(lambda s, ax, ay, phi: OscElement(s, (ax, ay), phi),
                      coords, coords, coords, coords)


def close(g: OscElement, h: OscElement, tol=1e-12) -> bool:
    return (abs(g.s - h.s) <= tol and abs(g.a[0] - h.a[0]) <= tol
            and abs(g.a[1] - h.a[1]) <= tol and abs(g.phi - h.phi) <= tol)


# ---------------------------------------------------------------------------
# product and inverse
# ---------------------------------------------------------------------------

def test_identity_is_two_sided_unit():
    g = OscElement(2.0, (1.0, -3.0), 0.7)
    assert osc_mul(g, OSC_IDENTITY) == g
    assert osc_mul(OSC_IDENTITY, g) == g


def test_product_frozen_value():
    out = osc_mul(OscElement(0, (1, 0), 0), OscElement(0, (0, 1), 0))
    assert out == OscElement(0.5, (1.0, 1.0), 0.0)


@settings(max_examples=150, deadline=None)
@given(g=elements, h=elements, k=elements)
def test_associativity(g, h, k):
    assert close(osc_mul(osc_mul(g, h), k), osc_mul(g, osc_mul(h, k)), tol=1e-11)


@settings(max_examples=150, deadline=None)
@given(g=elements)
def test_inverse_property(g):
    assert close(osc_mul(g, osc_inv(g)), OSC_IDENTITY)
    assert close(osc_mul(osc_inv(g), g), OSC_IDENTITY)


def test_inverse_formula():
    g = OscElement(1.5, (2.0, -1.0), 0.9)
    inv = osc_inv(g)
    c, s = math.cos(-0.9), math.sin(-0.9)
    expected_a = (-(c * 2.0 - s * -1.0), -(s * 2.0 + c * -1.0))
    assert inv.s == -1.5 and inv.phi == -0.9
    assert inv.a == pytest.approx(expected_a)
    assert osc_inv(OSC_IDENTITY) == OSC_IDENTITY
    assert osc_inv(OscElement(0, (0, 0), 1.2)) == OscElement(0, (0, 0), -1.2)


# ---------------------------------------------------------------------------
# projection to E(2)
# ---------------------------------------------------------------------------

def test_projection_frozen():
    out = project(OscElement(5.0, (1.0, 2.0), TWO_PI))
    assert out == E2Element((1.0, 2.0), 0.0)
    for s in (-3.0, 0.0, 11.0):
        assert project(OscElement(s, (0.0, 0.0), 0.0)) == E2Element((0.0, 0.0), 0.0)


def test_projection_kernel_is_full_turns_only():
    for k in (-2, -1, 1, 2):
        assert project(OscElement(1.0, (0.0, 0.0), TWO_PI * k)) == \
            E2Element((0.0, 0.0), 0.0)
    # a half turn does NOT project to the identity: R_pi = -I on the plane
    assert project(OscElement(0.0, (0.0, 0.0), math.pi)).theta == math.pi


@settings(max_examples=150, deadline=None)
@given(g=elements, h=elements)
def test_projection_homomorphism(g, h):
    lhs = project(osc_mul(g, h))
    rhs = e2_mul(project(g), project(h))
    dtheta = abs(lhs.theta - rhs.theta)
    dtheta = min(dtheta, TWO_PI - dtheta)
    assert abs(lhs.a[0] - rhs.a[0]) < 1e-10
    assert abs(lhs.a[1] - rhs.a[1]) < 1e-10
    assert dtheta < 1e-10


def test_angle_reduction_edges():
    assert E2Element((0, 0), TWO_PI).theta == 0.0
    assert E2Element((0, 0), -1e-18).theta == 0.0
    assert 0.0 <= E2Element((0, 0), -123.456).theta < TWO_PI


@settings(max_examples=100, deadline=None)
@given(theta=hst.floats(min_value=-1e6, max_value=1e6))
def test_angle_always_in_range(theta):
    assert 0.0 <= E2Element((0, 0), theta).theta < TWO_PI


# ---------------------------------------------------------------------------
# Heisenberg subgroup
# ---------------------------------------------------------------------------

def test_conjugation_frozen():
    g = OscElement(0.0, (0.0, 0.0), math.pi / 2)
    h = OscElement(0.0, (1.0, 0.0), 0.0)
    out = conjugate_heisenberg(g, h)
    assert out.phi == 0.0
    assert out.s == pytest.approx(0.0, abs=1e-15)
    assert out.a == pytest.approx((0.0, 1.0), abs=1e-15)


def test_conjugation_requires_subgroup_member():
    with pytest.raises(NotInSubgroupError):
        conjugate_heisenberg(OSC_IDENTITY, OscElement(0.0, (0.0, 0.0), 0.1))


def test_conjugation_rotates_translation_part(rng):
    for _ in range(500):
        g = OscElement(*rng.uniform(-4, 4, 1), tuple(rng.uniform(-4, 4, 2)),
                       rng.uniform(-9, 9))
        h = OscElement(*rng.uniform(-4, 4, 1), tuple(rng.uniform(-4, 4, 2)), 0.0)
        out = conjugate_heisenberg(g, h)
        assert out.phi == 0.0
        c, s = math.cos(g.phi), math.sin(g.phi)
        assert out.a[0] == pytest.approx(c * h.a[0] - s * h.a[1], abs=1e-12)
        assert out.a[1] == pytest.approx(s * h.a[0] + c * h.a[1], abs=1e-12)


def test_phi_zero_conjugation_stays_in_subgroup():
    g = OscElement(1.0, (2.0, 0.5), 0.0)
    h = OscElement(0.0, (0.0, 3.0), 0.0)
    out = conjugate_heisenberg(g, h)
    assert out.phi == 0.0
    assert out.a == pytest.approx(h.a)  # translations commute up to the centre


# ---------------------------------------------------------------------------
# semidirect structure and the Lie-algebra cross-check
# ---------------------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(g=elements)
def test_unique_semidirect_factorization(g):
    h, r = heisenberg_part(g), rotation_part(g)
    assert h.phi == 0.0 and r.s == 0.0 and r.a == (0.0, 0.0)
    assert osc_mul(h, r) == g


def test_lie_algebra_matches_central_extension():
    # numerical differentiation of the product law against the exact
    # central extension of e(2)
    assert oscillator_vs_extension_residual() < 1e-6
