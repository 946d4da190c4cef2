"""Poincare- and Wigner-groupoid morphisms in tetrad frames, orbit
classification of covectors, and finite gauge groupoids.

A morphism stores its Lorentz matrix in orthonormal tetrad components, so the
isometry condition is the frame-independent algebraic identity L^T eta L = eta
regardless of the underlying metric.  The target covector of a Wigner morphism
is derived, never stored.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import (
    NonComposableError,
    CovectorMismatchError,
    NotLorentzError,
    ValidationError,
)
from .spacetime import (
    ETA,
    ChartPoint,
    MetricSpec,
    TetradCovector,
    as_covector,
    p_squared,
)

LORENTZ_TOL = 1e-8
ORBIT_EPS = 1e-9
COMPOSE_TOL = 1e-10


# ---------------------------------------------------------------------------
# Lorentz matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LorentzMatrix:
    """4x4 matrix with L^T eta L = eta; restricted means det = +1 and L[0,0] >= 1."""

    matrix: np.ndarray
    restricted: bool = True

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape != (4, 4):
            raise NotLorentzError("Lorentz matrix must be 4x4")
        defect = float(np.max(np.abs(m.T @ ETA @ m - ETA)))
        if defect > LORENTZ_TOL:
            raise NotLorentzError(f"metric-preservation defect {defect:.3e}")
        if self.restricted:
            det = float(np.linalg.det(m))
            if abs(det - 1.0) > LORENTZ_TOL:
                raise NotLorentzError(f"det = {det} (restricted component needs +1)")
            if m[0, 0] < 1.0 - LORENTZ_TOL:
                raise NotLorentzError(f"L[0,0] = {m[0, 0]} < 1 (time orientation flipped)")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def as_lorentz(lam, restricted: bool = True) -> LorentzMatrix:
    if isinstance(lam, LorentzMatrix):
        if restricted and not lam.restricted:
            return LorentzMatrix(lam.matrix, restricted=True)
        return lam
    return LorentzMatrix(np.asarray(lam, dtype=float), restricted=restricted)


def rotation_about(axis: int, angle: float) -> np.ndarray:
    """Spatial rotation by `angle` about the spatial axis 0=x, 1=y, 2=z."""
    if axis not in (0, 1, 2):
        raise ValidationError("axis must be 0, 1 or 2")
    c, s = math.cos(angle), math.sin(angle)
    i, j = [(1, 2), (2, 0), (0, 1)][axis]
    r = np.eye(4)
    r[1 + i, 1 + i] = c
    r[1 + j, 1 + j] = c
    r[1 + i, 1 + j] = -s
    r[1 + j, 1 + i] = s
    return r


def boost(direction, rapidity: float) -> np.ndarray:
    """Pure boost along the spatial unit direction with the given rapidity."""
    n = np.asarray(direction, dtype=float)
    norm = np.linalg.norm(n)
    if norm == 0:
        raise ValidationError("boost direction must be nonzero")
    n = n / norm
    ch, sh = math.cosh(rapidity), math.sinh(rapidity)
    b = np.eye(4)
    b[0, 0] = ch
    b[0, 1:] = sh * n
    b[1:, 0] = sh * n
    b[1:, 1:] = np.eye(3) + (ch - 1.0) * np.outer(n, n)
    return b


def null_rotation(a: float, b: float) -> np.ndarray:
    """Element of the E(2) subgroup fixing the null covector (1,1,0,0).

    Exponential of a nilpotent generator, so the series terminates exactly.
    """
    n = np.zeros((4, 4))
    n[0, 2] = n[2, 0] = n[2, 1] = a
    n[1, 2] = -a
    n[0, 3] = n[3, 0] = n[3, 1] = b
    n[1, 3] = -b
    return np.eye(4) + n + 0.5 * (n @ n)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    out = np.eye(4)
    out[1:, 1:] = q
    return out


def random_restricted_lorentz(rng: np.random.Generator, max_rapidity: float = 2.0) -> LorentzMatrix:
    lam = random_rotation(rng) @ boost((1.0, 0.0, 0.0), rng.uniform(0.0, max_rapidity)) \
        @ random_rotation(rng)
    return LorentzMatrix(lam)


# ---------------------------------------------------------------------------
# Wigner groupoid
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CotangentPoint:
    """Object of the Wigner groupoid: chart point plus tetrad-frame covector."""

    spec: MetricSpec
    point: ChartPoint
    p: TetradCovector

    def __post_init__(self):
        object.__setattr__(self, "p", as_covector(self.p))


@dataclass(frozen=True, eq=False)
class PoincareMorphism:
    """Frame isometry between tangent spaces: (target point, L, source point)."""

    src: tuple[MetricSpec, ChartPoint]
    tgt: tuple[MetricSpec, ChartPoint]
    lam: LorentzMatrix

    def __post_init__(self):
        if not isinstance(self.lam, LorentzMatrix):
            object.__setattr__(self, "lam", LorentzMatrix(np.asarray(self.lam, dtype=float)))


@dataclass(frozen=True, eq=False)
class WignerMorphism:
    """Poincare morphism matching covectors by pullback; p_tgt is derived."""

    base: PoincareMorphism
    p_src: TetradCovector

    def __post_init__(self):
        object.__setattr__(self, "p_src", as_covector(self.p_src))

    @property
    def lam(self) -> np.ndarray:
        return self.base.lam.matrix

    @property
    def p_tgt(self) -> TetradCovector:
        return transport_covector(self.base.lam, self.p_src)

    @property
    def src(self) -> CotangentPoint:
        spec, point = self.base.src
        return CotangentPoint(spec, point, self.p_src)

    @property
    def tgt(self) -> CotangentPoint:
        spec, point = self.base.tgt
        return CotangentPoint(spec, point, self.p_tgt)

    def to_json(self) -> dict:
        return {
            "src": {"metric": self.base.src[0].to_json(), "point": self.base.src[1].to_json()},
            "tgt": {"metric": self.base.tgt[0].to_json(), "point": self.base.tgt[1].to_json()},
            "lambda": self.lam.tolist(),
            "p_src": self.p_src.to_json(),
        }

    @staticmethod
    def from_json(obj: dict) -> "WignerMorphism":
        src = (MetricSpec.from_json(obj["src"]["metric"]), ChartPoint(tuple(obj["src"]["point"])))
        tgt = (MetricSpec.from_json(obj["tgt"]["metric"]), ChartPoint(tuple(obj["tgt"]["point"])))
        base = PoincareMorphism(src, tgt, LorentzMatrix(np.array(obj["lambda"])))
        return WignerMorphism(base, TetradCovector(tuple(obj["p_src"])))


def transport_covector(lam, p_src) -> TetradCovector:
    """Covector at the target: the unique p_tgt with L^T p_tgt = p_src."""
    lam = as_lorentz(lam)
    p = as_covector(p_src)
    out = np.linalg.solve(lam.matrix.T, p.array)
    return TetradCovector(tuple(float(v) for v in out))


def unit(xi: CotangentPoint) -> WignerMorphism:
    base = PoincareMorphism((xi.spec, xi.point), (xi.spec, xi.point), LorentzMatrix(np.eye(4)))
    return WignerMorphism(base, xi.p)


def inverse(alpha: WignerMorphism) -> WignerMorphism:
    lam = alpha.lam
    inv = ETA @ lam.T @ ETA  # exact inverse for exact Lorentz matrices
    base = PoincareMorphism(alpha.base.tgt, alpha.base.src, LorentzMatrix(inv))
    return WignerMorphism(base, alpha.p_tgt)


def compose(beta: WignerMorphism, alpha: WignerMorphism,
            tol: float = COMPOSE_TOL) -> WignerMorphism:
    """beta after alpha; requires tgt(alpha) = src(beta) as cotangent points."""
    if alpha.base.tgt != beta.base.src:
        raise NonComposableError("target of alpha differs from source of beta")
    pa = alpha.p_tgt.array
    pb = beta.p_src.array
    scale = max(1.0, float(np.linalg.norm(pb)))
    if float(np.linalg.norm(pa - pb)) > tol * scale:
        raise CovectorMismatchError(
            f"transported covector {pa} does not match {pb}")
    base = PoincareMorphism(alpha.base.src, beta.base.tgt,
                            LorentzMatrix(beta.lam @ alpha.lam))
    return WignerMorphism(base, alpha.p_src)


# ---------------------------------------------------------------------------
# Orbits and isotropy
# ---------------------------------------------------------------------------

MASSIVE_PLUS = "massive_plus"
MASSIVE_MINUS = "massive_minus"
MASSLESS_PLUS = "massless_plus"
MASSLESS_MINUS = "massless_minus"
ZERO = "zero"
TACHYONIC = "tachyonic"


@dataclass(frozen=True)
class OrbitClass:
    tag: str
    m: float | None = None

    def to_json(self) -> dict:
        out = {"tag": self.tag}
        if self.m is not None:
            out["m"] = self.m
        return out


def classify_orbit(p, eps: float = ORBIT_EPS) -> OrbitClass:
    """Orbit stratum of a tetrad covector: sign of p^2 and of p_0.

    The p^2 = 0 stratum is decided by |p^2| <= eps * |p|^2 (Euclidean norm);
    exact rational input bypasses the tolerance entirely.
    """
    p = as_covector(p)
    if p.is_exact:
        q = p_squared(p)
        if all(c == 0 for c in p.components):
            return OrbitClass(ZERO)
        if q > 0:
            m = math.sqrt(float(q))
            return OrbitClass(MASSIVE_PLUS if p.components[0] > 0 else MASSIVE_MINUS, m)
        if q < 0:
            return OrbitClass(TACHYONIC, math.sqrt(float(-q)))
        return OrbitClass(MASSLESS_PLUS if p.components[0] > 0 else MASSLESS_MINUS)

    arr = p.array
    n2 = float(np.dot(arr, arr))
    if n2 == 0.0:
        return OrbitClass(ZERO)
    q = float(p_squared(p))
    if abs(q) <= eps * n2:
        if arr[0] > 0:
            return OrbitClass(MASSLESS_PLUS)
        if arr[0] < 0:
            return OrbitClass(MASSLESS_MINUS)
        return OrbitClass(ZERO)
    if q > 0:
        m = math.sqrt(q)
        return OrbitClass(MASSIVE_PLUS if arr[0] > 0 else MASSIVE_MINUS, m)
    return OrbitClass(TACHYONIC, math.sqrt(-q))


class IsotropyType(Enum):
    SO3 = "SO(3)"
    E2 = "E(2)"
    SO0_13 = "SO0(1,3)"
    UNSUPPORTED = "unsupported"

    @property
    def label(self) -> str:
        return self.value


def isotropy_type(c: OrbitClass) -> IsotropyType:
    """Isotropy group of the orbit stratum; tachyonic orbits are unsupported."""
    if c.tag in (MASSIVE_PLUS, MASSIVE_MINUS):
        return IsotropyType.SO3
    if c.tag in (MASSLESS_PLUS, MASSLESS_MINUS):
        return IsotropyType.E2
    if c.tag == ZERO:
        return IsotropyType.SO0_13
    return IsotropyType.UNSUPPORTED


def stabilizer_check(lam, p, tol: float = COMPOSE_TOL) -> bool:
    """True iff transporting p along lam returns p (within tol, relative)."""
    lam = as_lorentz(lam)
    p = as_covector(p)
    moved = transport_covector(lam, p).array
    scale = max(1.0, float(np.linalg.norm(p.array)))
    return float(np.linalg.norm(moved - p.array)) <= tol * scale


# ---------------------------------------------------------------------------
# Finite groups and gauge groupoids
# ---------------------------------------------------------------------------

class FiniteGroup:
    """Finite group given by a multiplication table on 0..k-1.

    The table is validated: one two-sided identity, inverses, associativity.
    """

    def __init__(self, table, names=None):
        table = tuple(tuple(int(v) for v in row) for row in table)
        k = len(table)
        if k == 0 or any(len(row) != k for row in table):
            raise ValidationError("multiplication table must be square and nonempty")
        if any(not (0 <= v < k) for row in table for v in row):
            raise ValidationError("table entries must index elements")
        identity = None
        for e in range(k):
            if all(table[e][a] == a and table[a][e] == a for a in range(k)):
                identity = e
                break
        if identity is None:
            raise ValidationError("table has no two-sided identity")
        inv = [None] * k
        for a in range(k):
            for b in range(k):
                if table[a][b] == identity and table[b][a] == identity:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise ValidationError(f"element {a} has no inverse")
        for a in range(k):
            for b in range(k):
                for c in range(k):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise ValidationError(f"table not associative at ({a},{b},{c})")
        self.table = table
        self.order = k
        self.identity = identity
        self._inv = tuple(inv)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(k))
        if len(self.names) != k:
            raise ValidationError("names must match the number of elements")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    @property
    def elements(self) -> range:
        return range(self.order)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValidationError("cyclic group order must be >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, names=[str(a) for a in range(n)])


def symmetric_group(n: int) -> FiniteGroup:
    """S_n as a table over lexicographically ordered permutation tuples."""
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return FiniteGroup(table, names=["".join(map(str, p)) for p in perms])


@dataclass(frozen=True)
class GaugeGroupoid:
    """Transitive groupoid (y, g, x) on n objects decorated by a finite group."""

    n_objects: int
    group: FiniteGroup

    def __post_init__(self):
        if self.n_objects < 1:
            raise ValidationError("gauge groupoid needs at least one object")

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    def morphisms(self):
        for y in self.objects:
            for g in self.group.elements:
                for x in self.objects:
                    yield (y, g, x)

    @property
    def n_morphisms(self) -> int:
        return self.n_objects * self.n_objects * self.group.order


def _check_gauge_morphism(gpd: GaugeGroupoid, m) -> tuple[int, int, int]:
    y, g, x = m
    if not (0 <= y < gpd.n_objects and 0 <= x < gpd.n_objects and 0 <= g < gpd.group.order):
        raise ValidationError(f"morphism {m} outside the groupoid")
    return y, g, x


def gauge_unit(gpd: GaugeGroupoid, x: int) -> tuple[int, int, int]:
    if not 0 <= x < gpd.n_objects:
        raise ValidationError(f"object {x} outside the groupoid")
    return (x, gpd.group.identity, x)


def gauge_compose(gpd: GaugeGroupoid, m2, m1) -> tuple[int, int, int]:
    """(z, h, y) after (y, g, x) is (z, h*g, x)."""
    z, h, y2 = _check_gauge_morphism(gpd, m2)
    y1, g, x = _check_gauge_morphism(gpd, m1)
    if y2 != y1:
        raise NonComposableError(f"cannot compose {m2} after {m1}")
    return (z, gpd.group.mul(h, g), x)


def gauge_inverse(gpd: GaugeGroupoid, m) -> tuple[int, int, int]:
    y, g, x = _check_gauge_morphism(gpd, m)
    return (x, gpd.group.inv(g), y)
