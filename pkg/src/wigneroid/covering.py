"""The projective covering group of E(2): universal cover of the oscillator
group, with the explicit product law as the source of truth.

Elements are (s, a, phi) with s real, a in R^2, phi an unbounded angle;
reduction mod 2*pi happens only in the projection to E(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotInSubgroupError, ValidationError

TWO_PI = 2.0 * math.pi


def _rot(phi: float, a: tuple[float, float]) -> tuple[float, float]:
    c, s = math.cos(phi), math.sin(phi)
    return (c * a[0] - s * a[1], s * a[0] + c * a[1])


def _cross(a: tuple[float, float], b: tuple[float, float]) -> float:
    return a[0] * b[1] - a[1] * b[0]


def _reduce_angle(theta: float) -> float:
    r = theta % TWO_PI
    return 0.0 if r >= TWO_PI else r


@dataclass(frozen=True)
class OscElement:
    s: float
    a: tuple[float, float]
    phi: float

    def __post_init__(self):
        a = (float(self.a[0]), float(self.a[1]))
        if len(self.a) != 2:
            raise ValidationError("translation part must be a pair")
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "phi", float(self.phi))

    def to_json(self) -> dict:
        return {"s": self.s, "a": list(self.a), "phi": self.phi}


OSC_IDENTITY = OscElement(0.0, (0.0, 0.0), 0.0)


@dataclass(frozen=True)
class E2Element:
    """Euclidean-group element (a, R_theta) with theta in [0, 2*pi)."""

    a: tuple[float, float]
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "a", (float(self.a[0]), float(self.a[1])))
        object.__setattr__(self, "theta", _reduce_angle(float(self.theta)))

    def to_json(self) -> dict:
        return {"a": list(self.a), "theta": self.theta}


def osc_mul(g: OscElement, h: OscElement) -> OscElement:
    """(s,a,phi)(s',a',phi') = (s + s' + a x R_phi a' / 2, a + R_phi a', phi + phi')."""
    ra = _rot(g.phi, h.a)
    return OscElement(
        g.s + h.s + 0.5 * _cross(g.a, ra),
        (g.a[0] + ra[0], g.a[1] + ra[1]),
        g.phi + h.phi,
    )


def osc_inv(g: OscElement) -> OscElement:
    ra = _rot(-g.phi, g.a)
    return OscElement(-g.s, (-ra[0], -ra[1]), -g.phi)


def project(g: OscElement) -> E2Element:
    """Canonical projection to E(2); kernel is {(s, 0, 2*pi*k)}."""
    return E2Element(g.a, g.phi)


def e2_mul(x: E2Element, y: E2Element) -> E2Element:
    ra = _rot(x.theta, y.a)
    return E2Element((x.a[0] + ra[0], x.a[1] + ra[1]), x.theta + y.theta)


def conjugate_heisenberg(g: OscElement, h: OscElement) -> OscElement:
    """g h g^{-1} for h in the Heisenberg subgroup (phi = 0); lands back in it."""
    if h.phi != 0.0:
        raise NotInSubgroupError("h must have phi = 0")
    return osc_mul(osc_mul(g, h), osc_inv(g))


def heisenberg_part(g: OscElement) -> OscElement:
    """H(2) factor of the unique factorization g = h * r."""
    return OscElement(g.s, g.a, 0.0)


def rotation_part(g: OscElement) -> OscElement:
    """R_phi factor of the unique factorization g = h * r."""
    return OscElement(0.0, (0.0, 0.0), g.phi)
