"""Classification engine: orbits of the rotation line on the dual of the
Heisenberg group H(2), representation labels of the projective cover of E(2),
the group-side Poincare orbit classification, and the particle table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import BadParams, NonIntegralHelicityError, ValidationError
from .groupoid import (
    MASSIVE_MINUS,
    MASSIVE_PLUS,
    MASSLESS_MINUS,
    MASSLESS_PLUS,
    TACHYONIC,
    ZERO,
    CotangentPoint,
    IsotropyType,
    OrbitClass,
    classify_orbit,
    isotropy_type,
)
from .spacetime import MetricSpec, as_covector, p_squared


# ---------------------------------------------------------------------------
# Dual of H(2) and the rotation action
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DualPointH2:
    """Point of the unitary dual of H(2).

    kind "character": one-dimensional character labelled by p in R^2 (mu = 0).
    kind "stone_von_neumann": the unique fibre with central character mu != 0.
    """

    kind: str
    p: tuple[float, float] | None = None
    mu: float | None = None

    def __post_init__(self):
        if self.kind == "character":
            if self.p is None or len(self.p) != 2:
                raise ValidationError("character needs a 2-vector p")
            object.__setattr__(self, "p", (float(self.p[0]), float(self.p[1])))
        elif self.kind == "stone_von_neumann":
            if self.mu is None or self.mu == 0:
                raise ValidationError("Stone-von Neumann point needs mu != 0")
            object.__setattr__(self, "mu", float(self.mu))
        else:
            raise ValidationError(f"unknown dual point kind {self.kind!r}")


def character(p) -> DualPointH2:
    return DualPointH2("character", p=tuple(p))


def stone_von_neumann(mu: float) -> DualPointH2:
    return DualPointH2("stone_von_neumann", mu=mu)


ORIGIN_ORBIT = "origin"
CIRCLE_ORBIT = "circle"
FIXED_MAGNETIC = "fixed_magnetic"

STAB_FULL_LINE = "full_line"
STAB_TWO_PI_Z = "two_pi_z"


@dataclass(frozen=True)
class DualOrbit:
    kind: str
    stabilizer: str
    rho: float | None = None
    mu: float | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "stabilizer": self.stabilizer}
        if self.rho is not None:
            out["rho"] = self.rho
        if self.mu is not None:
            out["mu"] = self.mu
        return out


def rotate_character(phi: float, p) -> tuple[float, float]:
    """Action of the rotation line on character labels: p -> R_phi p."""
    c, s = math.cos(phi), math.sin(phi)
    return (c * p[0] - s * p[1], s * p[0] + c * p[1])


def dual_orbit(pt: DualPointH2) -> DualOrbit:
    """Orbit and stabilizer of a dual point under the rotation line."""
    if pt.kind == "stone_von_neumann":
        return DualOrbit(FIXED_MAGNETIC, STAB_FULL_LINE, mu=pt.mu)
    if pt.p == (0.0, 0.0):
        return DualOrbit(ORIGIN_ORBIT, STAB_FULL_LINE)
    return DualOrbit(CIRCLE_ORBIT, STAB_TWO_PI_Z, rho=math.hypot(*pt.p))


# ---------------------------------------------------------------------------
# Representation labels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Massive:
    m: float
    s: Fraction

    def to_json(self) -> dict:
        return {"tag": "massive", "m": self.m, "s": str(self.s)}


@dataclass(frozen=True)
class MasslessHelicity:
    helicity: int

    def to_json(self) -> dict:
        return {"tag": "massless_helicity", "lambda": self.helicity}


@dataclass(frozen=True)
class ContinuousSpin:
    rho: float
    phi0: float  # character parameter, stored mod 1

    def to_json(self) -> dict:
        return {"tag": "continuous_spin", "rho": self.rho, "phi0": self.phi0}


@dataclass(frozen=True)
class Magnetic:
    mu: float
    c0: float

    def j_spectrum(self, n: int) -> float:
        """Angular spectrum n + 1/2 + c0: the shifted oscillator ladder."""
        return n + 0.5 + self.c0

    def to_json(self) -> dict:
        return {"tag": "magnetic", "mu": self.mu, "c0": self.c0}


@dataclass(frozen=True)
class Vacuum:
    def to_json(self) -> dict:
        return {"tag": "vacuum"}


@dataclass(frozen=True)
class Tachyon:
    m: float

    def to_json(self) -> dict:
        return {"tag": "tachyonic", "m": self.m}


RepLabel = Massive | MasslessHelicity | ContinuousSpin | Magnetic | Vacuum | Tachyon


def _as_half_integer(s) -> Fraction:
    f = Fraction(s)
    if f < 0 or (2 * f).denominator != 1:
        raise BadParams(f"spin must be a non-negative half-integer, got {s}")
    return f


def classify_E2bar(orbit: DualOrbit, character_param) -> RepLabel:
    """Representation label of the projective cover of E(2) for a dual orbit.

    The parameter is the helicity for the origin orbit (must be an integer to
    descend to E(2)), the stabilizer character phi0 for a circle orbit, and
    the spectral shift c0 for a magnetic fibre.
    """
    if orbit.kind == ORIGIN_ORBIT:
        lam = character_param
        if isinstance(lam, float):
            if not lam.is_integer():
                raise NonIntegralHelicityError(
                    f"helicity {lam} is not an integer: no descent to E(2)")
            lam = int(lam)
        elif isinstance(lam, Fraction):
            if lam.denominator != 1:
                raise NonIntegralHelicityError(
                    f"helicity {lam} is not an integer: no descent to E(2)")
            lam = int(lam)
        elif not isinstance(lam, int):
            raise ValidationError("helicity must be a number")
        return MasslessHelicity(lam)
    if orbit.kind == CIRCLE_ORBIT:
        return ContinuousSpin(orbit.rho, float(character_param) % 1.0)
    if orbit.kind == FIXED_MAGNETIC:
        return Magnetic(orbit.mu, float(character_param))
    raise ValidationError(f"unknown dual orbit kind {orbit.kind!r}")


# ---------------------------------------------------------------------------
# Group-side Poincare classification
# ---------------------------------------------------------------------------

class LittleGroup(Enum):
    SU2 = "SU(2)"
    DOUBLE_COVER_E2 = "double cover of E(2)"
    SO12_LIKE = "SO(1,2)-like"
    SL2C = "SL(2,C)"


MASS_SHELL = "mass_shell"
LIGHT_CONE = "light_cone"
SPACELIKE = "spacelike"
ORIGIN = "origin"


@dataclass(frozen=True)
class PoincareOrbitLabel:
    tag: str
    little_group: LittleGroup
    m: float | None = None
    future: bool | None = None

    def to_json(self) -> dict:
        out = {"tag": self.tag, "little_group": self.little_group.value}
        if self.m is not None:
            out["m"] = self.m
        if self.future is not None:
            out["future"] = self.future
        return out


def classify_poincare(p, eps: float = 1e-9) -> PoincareOrbitLabel:
    """Orbit of a 4-momentum under the restricted Lorentz group, with its
    little group in the double-cover picture."""
    orbit = classify_orbit(p, eps=eps)
    if orbit.tag in (MASSIVE_PLUS, MASSIVE_MINUS):
        return PoincareOrbitLabel(MASS_SHELL, LittleGroup.SU2, m=orbit.m,
                                  future=orbit.tag == MASSIVE_PLUS)
    if orbit.tag in (MASSLESS_PLUS, MASSLESS_MINUS):
        return PoincareOrbitLabel(LIGHT_CONE, LittleGroup.DOUBLE_COVER_E2,
                                  future=orbit.tag == MASSLESS_PLUS)
    if orbit.tag == TACHYONIC:
        return PoincareOrbitLabel(SPACELIKE, LittleGroup.SO12_LIKE, m=orbit.m)
    return PoincareOrbitLabel(ORIGIN, LittleGroup.SL2C)


# ---------------------------------------------------------------------------
# Particle table
# ---------------------------------------------------------------------------

PROVENANCE_SHARED = "shared"
PROVENANCE_GROUPOID_ONLY = "groupoid_only"
PROVENANCE_GROUP_ONLY = "group_only"
PROVENANCE_UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class RepParams:
    """Representation parameters sampled per sector when building the table."""

    spins: tuple = (Fraction(0), Fraction(1, 2), Fraction(1))
    helicities: tuple = (-1, 0, 1)
    continuous: tuple = ((1.0, 0.0),)
    magnetic: tuple = ((1.0, 0.0),)

    def __post_init__(self):
        object.__setattr__(self, "spins", tuple(_as_half_integer(s) for s in self.spins))


@dataclass(frozen=True)
class TableRow:
    orbit: OrbitClass
    p2: float
    isotropy: IsotropyType
    labels: tuple
    provenance: str

    def to_json(self) -> dict:
        return {
            "orbit": self.orbit.to_json(),
            "p_squared": self.p2,
            "isotropy": self.isotropy.label,
            "representations": [dict(l.to_json(), provenance=label_provenance(l))
                                for l in self.labels],
            "provenance": self.provenance,
        }


def label_provenance(label) -> str:
    """Which classification owns the label: both sides, groupoid only, or none."""
    if isinstance(label, Magnetic):
        return PROVENANCE_GROUPOID_ONLY
    if isinstance(label, Tachyon):
        return PROVENANCE_UNSUPPORTED
    return PROVENANCE_SHARED


def _labels_for(orbit: OrbitClass, params: RepParams) -> tuple:
    if orbit.tag in (MASSIVE_PLUS, MASSIVE_MINUS):
        return tuple(Massive(orbit.m, s) for s in params.spins)
    if orbit.tag in (MASSLESS_PLUS, MASSLESS_MINUS):
        labels = [classify_E2bar(DualOrbit(ORIGIN_ORBIT, STAB_FULL_LINE), lam)
                  for lam in params.helicities]
        labels += [classify_E2bar(DualOrbit(CIRCLE_ORBIT, STAB_TWO_PI_Z, rho=rho), phi0)
                   for rho, phi0 in params.continuous]
        labels += [classify_E2bar(DualOrbit(FIXED_MAGNETIC, STAB_FULL_LINE, mu=mu), c0)
                   for mu, c0 in params.magnetic]
        return tuple(labels)
    if orbit.tag == ZERO:
        return (Vacuum(),)
    return (Tachyon(orbit.m),)


def particle_table(spec: MetricSpec, samples: list[CotangentPoint],
                   params: RepParams | None = None,
                   eps: float = 1e-9) -> list[TableRow]:
    """One classified row per sample; depends only on the tetrad covectors,
    never on the chart points or the metric."""
    params = params or RepParams()
    rows = []
    for sample in samples:
        if sample.spec != spec:
            raise ValidationError("sample metric does not match the table metric")
        p = as_covector(sample.p)
        orbit = classify_orbit(p, eps=eps)
        labels = _labels_for(orbit, params)
        provenance = ",".join(sorted({label_provenance(l) for l in labels}))
        rows.append(TableRow(orbit, float(p_squared(p)), isotropy_type(orbit),
                             labels, provenance))
    return rows


def table_to_json(rows: list[TableRow]) -> list[dict]:
    return [row.to_json() for row in rows]


def table_to_text(rows: list[TableRow]) -> str:
    headers = ("orbit", "p^2", "isotropy", "representations", "provenance")
    cells = []
    for row in rows:
        orbit = row.orbit.tag if row.orbit.m is None else f"{row.orbit.tag}(m={row.orbit.m:g})"
        reps = ", ".join(_label_text(l) for l in row.labels)
        cells.append((orbit, f"{row.p2:.6g}", row.isotropy.label, reps, row.provenance))
    widths = [max(len(h), *(len(c[i]) for c in cells)) if cells else len(h)
              for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for c in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(c, widths)))
    return "\n".join(lines)


def _label_text(label) -> str:
    if isinstance(label, Massive):
        return f"massive(m={label.m:g}, s={label.s})"
    if isinstance(label, MasslessHelicity):
        return f"helicity({label.helicity})"
    if isinstance(label, ContinuousSpin):
        return f"continuous_spin(rho={label.rho:g}, phi0={label.phi0:g})"
    if isinstance(label, Magnetic):
        return f"magnetic(mu={label.mu:g}, c0={label.c0:g})"
    if isinstance(label, Vacuum):
        return "vacuum"
    return f"tachyonic(m={label.m:g})"


# ---------------------------------------------------------------------------
# Group vs groupoid comparison
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SectorComparison:
    sector: str
    group_side: str | None
    groupoid_side: str | None

    def to_json(self) -> dict:
        return {"sector": self.sector, "group": self.group_side,
                "groupoid": self.groupoid_side}


def compare_with_group_classification() -> list[SectorComparison]:
    """Three-column diff between the group-based and the groupoid-based
    massless/massive sectors."""
    return [
        SectorComparison(
            "massive",
            "Massive(m, s), s a half-integer via SU(2)",
            "Massive(m, s), s a half-integer via SU(2)"),
        SectorComparison(
            "massless integer helicity",
            "helicity lambda in Z",
            "helicity lambda in Z"),
        SectorComparison(
            "massless half-integer helicity",
            "helicity lambda in Z + 1/2 (double cover of E(2))",
            None),
        SectorComparison(
            "continuous spin",
            "circle representations (rho > 0, phi0 in R/Z)",
            "circle representations (rho > 0, phi0 in R/Z)"),
        SectorComparison(
            "magnetic",
            None,
            "Magnetic(mu != 0, c0): oscillator spectrum n + 1/2 + c0"),
    ]


def comparison_to_text(rows: list[SectorComparison]) -> str:
    headers = ("sector", "group classification", "groupoid classification")
    cells = [(r.sector, r.group_side or "-", r.groupoid_side or "-") for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for c in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(c, widths)))
    return "\n".join(lines)
