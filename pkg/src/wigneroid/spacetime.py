"""Lorentzian metrics, Kruskal charts and orthonormal tetrad frames.

Conventions: signature (+,-,-,-), geometric units G = c = 1, lengths in
units of the mass parameter.  Covectors are always handled in tetrad
(orthonormal-frame) components, so their Minkowski square is
metric-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BadParams, ChartDomainError, ConvergenceError, ValidationError

MINKOWSKI_KIND = "minkowski"
KRUSKAL_KIND = "schwarzschild_kruskal"

ETA = np.diag([1.0, -1.0, -1.0, -1.0])
ETA.setflags(write=False)


@dataclass(frozen=True)
class MetricSpec:
    """Built-in metric selector: flat Minkowski or Schwarzschild in Kruskal coordinates."""

    kind: str
    mass: float | None = None

    def __post_init__(self):
        if self.kind == MINKOWSKI_KIND:
            if self.mass is not None:
                raise ValidationError("minkowski metric takes no mass parameter")
        elif self.kind == KRUSKAL_KIND:
            if self.mass is None or not (self.mass > 0):
                raise ValidationError("schwarzschild_kruskal requires mass > 0")
        else:
            raise ValidationError(f"unknown metric kind {self.kind!r}")

    def to_json(self) -> dict:
        if self.kind == MINKOWSKI_KIND:
            return {"kind": MINKOWSKI_KIND}
        return {"kind": KRUSKAL_KIND, "mass": self.mass}

    @staticmethod
    def from_json(obj: dict) -> "MetricSpec":
        kind = obj.get("kind")
        if kind == MINKOWSKI_KIND:
            return MINKOWSKI
        if kind == KRUSKAL_KIND:
            return MetricSpec(KRUSKAL_KIND, float(obj["mass"]))
        raise ValidationError(f"unknown metric kind {kind!r}")


MINKOWSKI = MetricSpec(MINKOWSKI_KIND)


def schwarzschild_kruskal(mass: float) -> MetricSpec:
    return MetricSpec(KRUSKAL_KIND, float(mass))


@dataclass(frozen=True)
class ChartPoint:
    """Chart coordinates: (t,x,y,z) on Minkowski, (U,V,theta,phi) on Kruskal."""

    coords: tuple[float, float, float, float]

    def __post_init__(self):
        if len(self.coords) != 4:
            raise ValidationError("chart point needs 4 coordinates")
        coords = tuple(float(c) for c in self.coords)
        if not all(math.isfinite(c) for c in coords):
            raise ValidationError("chart coordinates must be finite")
        object.__setattr__(self, "coords", coords)

    def to_json(self) -> list:
        return list(self.coords)


def _check_kruskal_domain(spec: MetricSpec, x: ChartPoint) -> tuple[float, float, float, float]:
    U, V, theta, phi = x.coords
    if U * V >= 1.0:
        raise ChartDomainError(f"U*V = {U * V} >= 1 lies beyond the r = 0 singularity")
    if not (0.0 < theta < math.pi):
        raise ChartDomainError(f"theta = {theta} outside the chart (poles excluded)")
    return U, V, theta, phi


@dataclass(frozen=True, eq=False)
class TetradFrame:
    """Orthonormal frame; column I holds the chart components of the frame vector e_I."""

    e: np.ndarray

    def __post_init__(self):
        e = np.array(self.e, dtype=float)
        if e.shape != (4, 4):
            raise ValidationError("tetrad frame must be a 4x4 matrix")
        e.setflags(write=False)
        object.__setattr__(self, "e", e)


_EXACT_TYPES = (int, Fraction)


@dataclass(frozen=True)
class TetradCovector:
    """Covector components p_I in the dual tetrad basis.

    Components may be floats or exact rationals; exact input lets the orbit
    classifier bypass the numerical zero tolerance.
    """

    components: tuple

    def __post_init__(self):
        if len(self.components) != 4:
            raise ValidationError("covector needs 4 components")
        comps = []
        for c in self.components:
            if isinstance(c, bool):
                raise ValidationError("covector components must be numbers")
            if isinstance(c, _EXACT_TYPES):
                comps.append(c if isinstance(c, Fraction) else int(c))
            else:
                c = float(c)
                if not math.isfinite(c):
                    raise ValidationError("covector components must be finite")
                comps.append(c)
        object.__setattr__(self, "components", tuple(comps))

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, _EXACT_TYPES) for c in self.components)

    @property
    def array(self) -> np.ndarray:
        return np.array([float(c) for c in self.components])

    def to_json(self) -> list:
        return [float(c) for c in self.components]


def as_covector(p) -> TetradCovector:
    if isinstance(p, TetradCovector):
        return p
    return TetradCovector(tuple(p))


def metric_at(spec: MetricSpec, x: ChartPoint) -> np.ndarray:
    """Metric matrix g_{mu nu}(x) in chart coordinates; signature (1,3)."""
    if spec.kind == MINKOWSKI_KIND:
        return ETA.copy()
    U, V, theta, _ = _check_kruskal_domain(spec, x)
    M = spec.mass
    r = kruskal_radius(M, U, V)
    g = np.zeros((4, 4))
    guv = -(32.0 * M**3 / r) * math.exp(-r / (2.0 * M))
    g[0, 1] = g[1, 0] = guv
    g[2, 2] = -(r * r)
    g[3, 3] = -(r * math.sin(theta)) ** 2
    return g


def kruskal_radius(M: float, U: float, V: float) -> float:
    """Areal radius r(U,V), the root of (1 - r/2M) e^{r/2M} = UV.

    The left-hand side is strictly decreasing in r, so a bracketed Newton
    iteration with bisection fallback always converges for UV < 1.
    """
    if not M > 0:
        raise BadParams("mass must be positive")
    w = U * V
    if w >= 1.0:
        raise ChartDomainError(f"U*V = {w} >= 1 lies beyond the r = 0 singularity")

    def f(r: float) -> float:
        u = r / (2.0 * M)
        if u > 700.0:  # (1-u)e^u would overflow; its sign is certainly negative
            return -math.inf
        return (1.0 - u) * math.exp(u) - w

    # f(0+) = 1 - w > 0; grow the upper end until the bracket straddles the root.
    lo, hi = 0.0, 4.0 * M
    while f(hi) > 0.0:
        hi *= 2.0
        if hi > 1e8 * M:
            raise ConvergenceError("failed to bracket the Kruskal radius")

    r = 2.0 * M if lo < 2.0 * M < hi else 0.5 * (lo + hi)
    tol = 1e-14 * max(1.0, abs(w))
    for _ in range(200):
        fr = f(r)
        if abs(fr) <= tol:
            return r
        if fr > 0.0:
            lo = r
        else:
            hi = r
        df = -(r / (4.0 * M * M)) * math.exp(min(r / (2.0 * M), 700.0))
        if math.isfinite(fr) and math.isfinite(df) and df != 0.0:
            step = r - fr / df
        else:
            step = 0.5 * (lo + hi)
        r = step if lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 4.0 * math.ulp(max(abs(lo), abs(hi))):
            return r
    raise ConvergenceError(f"Kruskal radius solve stalled at UV = {w}")


def kruskal_residual(M: float, U: float, V: float, r: float) -> float:
    """Relative defining-equation residual |(1-r/2M)e^{r/2M} - UV| / max(1,|UV|)."""
    w = U * V
    return abs((1.0 - r / (2.0 * M)) * math.exp(r / (2.0 * M)) - w) / max(1.0, abs(w))


def tetrad_at(spec: MetricSpec, x: ChartPoint) -> TetradFrame:
    """Orthonormal tetrad at x: e^T g(x) e = diag(1,-1,-1,-1), timelike leg first."""
    if spec.kind == MINKOWSKI_KIND:
        return TetradFrame(np.eye(4))
    U, V, theta, _ = _check_kruskal_domain(spec, x)
    M = spec.mass
    r = kruskal_radius(M, U, V)
    # Null-pair normalization: with g_{UV} < 0 the timelike direction is dV - dU.
    a = math.sqrt(r / (32.0 * M**3)) * math.exp(r / (4.0 * M)) / math.sqrt(2.0)
    e = np.zeros((4, 4))
    e[0, 0], e[1, 0] = -a, a
    e[0, 1], e[1, 1] = a, a
    e[2, 2] = 1.0 / r
    e[3, 3] = 1.0 / (r * math.sin(theta))
    return TetradFrame(e)


def tetrad_congruence_residual(spec: MetricSpec, x: ChartPoint) -> float:
    """max |e^T g e - eta| at x; the frame-orthonormality defect."""
    g = metric_at(spec, x)
    e = tetrad_at(spec, x).e
    return float(np.max(np.abs(e.T @ g @ e - ETA)))


def p_squared(p) -> float | Fraction:
    """Minkowski square p_0^2 - p_1^2 - p_2^2 - p_3^2 of tetrad components.

    Exact when every component is an int or Fraction.
    """
    p = as_covector(p)
    if p.is_exact:
        c = p.components
        return c[0] * c[0] - c[1] * c[1] - c[2] * c[2] - c[3] * c[3]
    arr = p.array
    return float(arr[0] ** 2 - arr[1] ** 2 - arr[2] ** 2 - arr[3] ** 2)


def sample_kruskal_point(rng: np.random.Generator, mass: float,
                         r_min: float, r_max: float) -> ChartPoint:
    """Random admissible Kruskal chart point with areal radius in (r_min, r_max)."""
    r = rng.uniform(r_min, r_max)
    w = (1.0 - r / (2.0 * mass)) * math.exp(r / (2.0 * mass))
    v = rng.uniform(0.1, 3.0) * rng.choice([-1.0, 1.0])
    u = w / v
    theta = rng.uniform(0.1, math.pi - 0.1)
    phi = rng.uniform(0.0, 2.0 * math.pi)
    return ChartPoint((u, v, theta, phi))


def sample_minkowski_point(rng: np.random.Generator) -> ChartPoint:
    return ChartPoint(tuple(rng.uniform(-10.0, 10.0, size=4)))
