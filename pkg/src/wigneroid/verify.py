"""Aggregated witness suite behind the `verify` CLI subcommand.

Each check returns a residual and a pinned tolerance; counting checks use a
failure count against tolerance 0.5.  All randomness is driven by one seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import cohomology as coh
from . import covering as cov
from . import groupoid as gpd
from . import mackey
from . import repcheck as rc
from . import spacetime as st
from .errors import ValidationError

DEFAULT_SEED = 20250810


@dataclass(frozen=True)
class CheckResult:
    check: str
    status: str
    residual: float
    tolerance: float

    def to_json(self) -> dict:
        return {"check": self.check, "status": self.status,
                "residual": self.residual, "tolerance": self.tolerance}


def _result(name: str, residual: float, tolerance: float) -> CheckResult:
    status = "pass" if residual <= tolerance else "fail"
    return CheckResult(name, status, float(residual), float(tolerance))


# ---------------------------------------------------------------------------
# geometry
# ---------------------------------------------------------------------------

def _check_geometry(rng: np.random.Generator) -> list[CheckResult]:
    out = []
    res = max(st.tetrad_congruence_residual(st.MINKOWSKI, st.sample_minkowski_point(rng))
              for _ in range(100))
    out.append(_result("geometry.minkowski_tetrad", res, 1e-10))

    spec = st.schwarzschild_kruskal(1.0)
    res = 0.0
    for _ in range(1000):
        x = st.sample_kruskal_point(rng, 1.0, 0.1, 20.0)
        res = max(res, st.tetrad_congruence_residual(spec, x))
    out.append(_result("geometry.kruskal_tetrad", res, 1e-10))

    res = 0.0
    for _ in range(1000):
        w = rng.uniform(-5.0, 1.0)
        v = rng.uniform(0.1, 3.0) * rng.choice([-1.0, 1.0])
        u = w / v
        r = st.kruskal_radius(1.0, u, v)
        res = max(res, st.kruskal_residual(1.0, u, v, r))
    out.append(_result("geometry.kruskal_radius", res, 1e-12))

    res = max(abs(st.kruskal_radius(1.0, 0.0, v) - 2.0) for v in (-2.0, 0.0, 0.7, 3.0))
    out.append(_result("geometry.kruskal_horizon", res, 1e-13))
    return out


# ---------------------------------------------------------------------------
# covering group
# ---------------------------------------------------------------------------

def _random_osc(rng: np.random.Generator) -> cov.OscElement:
    return cov.OscElement(rng.uniform(-5, 5), tuple(rng.uniform(-5, 5, 2)),
                          rng.uniform(-12, 12))


def _osc_distance(g: cov.OscElement, h: cov.OscElement) -> float:
    return max(abs(g.s - h.s), abs(g.a[0] - h.a[0]), abs(g.a[1] - h.a[1]),
               abs(g.phi - h.phi))


def oscillator_bracket_table(t: float = 1e-2) -> np.ndarray:
    """Structure constants of the implemented cover in the basis
    (E, P1, P2, J), extracted by Richardson-extrapolated group commutators."""
    basis = [np.eye(4)[i] for i in range(4)]

    def element(coords) -> cov.OscElement:
        return cov.OscElement(coords[0], (coords[1], coords[2]), coords[3])

    def comm_coords(x, y, h):
        g1, g2 = element(h * x), element(h * y)
        k = cov.osc_mul(cov.osc_mul(g1, g2), cov.osc_mul(cov.osc_inv(g1), cov.osc_inv(g2)))
        return np.array([k.s, k.a[0], k.a[1], k.phi])

    def bracket(x, y, h):
        sym = 0.5 * (comm_coords(x, y, h) + comm_coords(x, y, -h))
        return sym / (h * h)

    table = np.zeros((4, 4, 4))
    for i in range(4):
        for j in range(4):
            coarse = bracket(basis[i], basis[j], t)
            fine = bracket(basis[i], basis[j], t / 2.0)
            table[i, j] = (4.0 * fine - coarse) / 3.0
    return table


def oscillator_vs_extension_residual() -> float:
    """Compare the numerically extracted bracket with the central extension
    of e(2) computed in exact arithmetic."""
    e2 = coh.preset_algebra("e2")
    gen = coh.h2(e2).basis[0]
    ext = coh.central_extension(e2, [gen])  # basis (J, P1, P2, E)
    perm = [3, 1, 2, 0]  # covering basis (E, P1, P2, J) in extension indices
    expected = np.zeros((4, 4, 4))
    for i in range(4):
        for j in range(4):
            for k in range(4):
                expected[i, j, k] = float(ext.c[perm[i]][perm[j]][perm[k]])
    return float(np.max(np.abs(oscillator_bracket_table() - expected)))


def _check_covering(rng: np.random.Generator) -> list[CheckResult]:
    out = []
    res = 0.0
    for _ in range(10_000):
        g, h, k = _random_osc(rng), _random_osc(rng), _random_osc(rng)
        res = max(res, _osc_distance(cov.osc_mul(cov.osc_mul(g, h), k),
                                     cov.osc_mul(g, cov.osc_mul(h, k))))
    out.append(_result("covering.associativity", res, 1e-12))

    res = 0.0
    for _ in range(10_000):
        g = _random_osc(rng)
        res = max(res, _osc_distance(cov.osc_mul(g, cov.osc_inv(g)), cov.OSC_IDENTITY))
        res = max(res, _osc_distance(cov.osc_mul(cov.osc_inv(g), g), cov.OSC_IDENTITY))
    out.append(_result("covering.inverse", res, 1e-12))

    res = 0.0
    for _ in range(10_000):
        g, h = _random_osc(rng), _random_osc(rng)
        lhs = cov.project(cov.osc_mul(g, h))
        rhs = cov.e2_mul(cov.project(g), cov.project(h))
        dth = abs(lhs.theta - rhs.theta)
        dth = min(dth, cov.TWO_PI - dth)
        res = max(res, abs(lhs.a[0] - rhs.a[0]), abs(lhs.a[1] - rhs.a[1]), dth)
    out.append(_result("covering.projection", res, 1e-12))

    res = 0.0
    for _ in range(1000):
        g = _random_osc(rng)
        h = cov.heisenberg_part(_random_osc(rng))
        res = max(res, abs(cov.conjugate_heisenberg(g, h).phi))
    out.append(_result("covering.heisenberg_normality", res, 1e-12))

    out.append(_result("covering.lie_algebra", oscillator_vs_extension_residual(), 1e-6))
    return out


# ---------------------------------------------------------------------------
# groupoid axioms
# ---------------------------------------------------------------------------

def _random_cotangent(rng: np.random.Generator, spec: st.MetricSpec) -> gpd.CotangentPoint:
    if spec.kind == st.MINKOWSKI_KIND:
        x = st.sample_minkowski_point(rng)
    else:
        x = st.sample_kruskal_point(rng, spec.mass, 0.5, 10.0)
    p = st.TetradCovector(tuple(rng.uniform(-3, 3, 4)))
    return gpd.CotangentPoint(spec, x, p)


def _random_morphism_from(rng: np.random.Generator, xi: gpd.CotangentPoint,
                          tgt_point: st.ChartPoint) -> gpd.WignerMorphism:
    lam = gpd.random_restricted_lorentz(rng)
    base = gpd.PoincareMorphism((xi.spec, xi.point), (xi.spec, tgt_point), lam)
    return gpd.WignerMorphism(base, xi.p)


def _check_groupoid(rng: np.random.Generator) -> list[CheckResult]:
    out = []
    specs = [st.MINKOWSKI, st.schwarzschild_kruskal(1.0)]

    res = 0.0
    for i in range(1000):
        spec = specs[i % 2]
        xi = _random_cotangent(rng, spec)
        pts = [xi.point] + [
            st.sample_minkowski_point(rng) if spec.kind == st.MINKOWSKI_KIND
            else st.sample_kruskal_point(rng, spec.mass, 0.5, 10.0)
            for _ in range(3)]
        alpha = _random_morphism_from(rng, xi, pts[1])
        beta = _random_morphism_from(rng, alpha.tgt, pts[2])
        gamma = _random_morphism_from(rng, beta.tgt, pts[3])
        lhs = gpd.compose(gpd.compose(gamma, beta), alpha)
        rhs = gpd.compose(gamma, gpd.compose(beta, alpha))
        if lhs.base.src != rhs.base.src or lhs.base.tgt != rhs.base.tgt:
            res = max(res, 1.0)
        res = max(res, float(np.max(np.abs(lhs.lam - rhs.lam))))
    out.append(_result("groupoid.associativity", res, 1e-10))

    res = 0.0
    for i in range(1000):
        spec = specs[i % 2]
        xi = _random_cotangent(rng, spec)
        tgt = (st.sample_minkowski_point(rng) if spec.kind == st.MINKOWSKI_KIND
               else st.sample_kruskal_point(rng, spec.mass, 0.5, 10.0))
        alpha = _random_morphism_from(rng, xi, tgt)
        left = gpd.compose(gpd.unit(alpha.tgt), alpha)
        res = max(res, float(np.max(np.abs(left.lam - alpha.lam))))
        round_trip = gpd.compose(gpd.inverse(alpha), alpha)
        res = max(res, float(np.max(np.abs(round_trip.lam - np.eye(4)))))
    out.append(_result("groupoid.unit_inverse", res, 1e-10))

    res = 0.0
    for _ in range(10_000):
        lam = gpd.random_restricted_lorentz(rng)
        p = st.TetradCovector(tuple(rng.uniform(-3, 3, 4)))
        moved = gpd.transport_covector(lam, p)
        scale = max(1.0, float(np.dot(p.array, p.array)))
        res = max(res, abs(float(st.p_squared(moved)) - float(st.p_squared(p))) / scale)
    out.append(_result("groupoid.p2_invariance", res, 1e-10))

    failures = 0
    reference = [st.TetradCovector((2.0, 0.5, 0.0, 0.0)),
                 st.TetradCovector((1.0, 1.0, 0.0, 0.0)),
                 st.TetradCovector((0.3, 1.0, -0.4, 0.2)),
                 st.TetradCovector((-2.0, 0.1, 0.0, 0.3)),
                 st.TetradCovector((0.0, 0.0, 0.0, 0.0))]
    for _ in range(500):
        lam = gpd.random_restricted_lorentz(rng)
        for p in reference:
            before = gpd.classify_orbit(p).tag
            after = gpd.classify_orbit(gpd.transport_covector(lam, p)).tag
            failures += before != after
    out.append(_result("groupoid.orbit_invariance", failures, 0.5))
    return out


# ---------------------------------------------------------------------------
# cohomology
# ---------------------------------------------------------------------------

def _check_cohomology(rng: np.random.Generator) -> list[CheckResult]:
    out = []
    e2 = coh.preset_algebra("e2")
    result = coh.h2(e2)
    failures = int(result.dim_h2 != 1)
    if result.basis:
        gen = result.basis[0]
        failures += gen.entries != {(1, 2): Fraction(1)}
    out.append(_result("cohomology.h2_e2", failures, 0.5))

    failures = 0
    algebras = [e2, coh.preset_algebra("su2"),
                coh.central_extension(e2, [coh.TwoCochain(3, {(1, 2): 1})])]
    for L in algebras:
        for _ in range(50):
            alpha = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7)))
                     for _ in range(L.dim)]
            if not coh.d2(L, coh.d1(L, alpha)).is_zero():
                failures += 1
    out.append(_result("cohomology.d2_after_d1", failures, 0.5))
    return out


# ---------------------------------------------------------------------------
# mackey classification
# ---------------------------------------------------------------------------

def _check_mackey(rng: np.random.Generator) -> list[CheckResult]:
    out = []
    mismatches = 0
    tag_map = {
        gpd.MASSIVE_PLUS: (mackey.MASS_SHELL, True),
        gpd.MASSIVE_MINUS: (mackey.MASS_SHELL, False),
        gpd.MASSLESS_PLUS: (mackey.LIGHT_CONE, True),
        gpd.MASSLESS_MINUS: (mackey.LIGHT_CONE, False),
        gpd.TACHYONIC: (mackey.SPACELIKE, None),
        gpd.ZERO: (mackey.ORIGIN, None),
    }
    for _ in range(10_000):
        p = tuple(rng.uniform(-4, 4, 4))
        orbit = gpd.classify_orbit(p)
        label = mackey.classify_poincare(p)
        want_tag, want_future = tag_map[orbit.tag]
        if label.tag != want_tag or label.future != want_future:
            mismatches += 1
    out.append(_result("mackey.partition_agreement", mismatches, 0.5))

    samples_p = [(1.0, 0.0, 0.0, 0.0), (1.0, 1.0, 0.0, 0.0),
                 (0.0, 0.0, 0.0, 0.0), (0.0, 1.0, 0.0, 0.0)]
    mink = [gpd.CotangentPoint(st.MINKOWSKI, st.ChartPoint((0, 0, 0, 0)),
                               st.TetradCovector(p)) for p in samples_p]
    spec = st.schwarzschild_kruskal(1.0)
    kr_point = st.ChartPoint((0.0, 1.0, math.pi / 2, 0.0))
    kruskal = [gpd.CotangentPoint(spec, kr_point, st.TetradCovector(p))
               for p in samples_p]
    t1 = mackey.particle_table(st.MINKOWSKI, mink)
    t2 = mackey.particle_table(spec, kruskal)
    failures = sum((r1.orbit != r2.orbit or r1.labels != r2.labels
                    or r1.isotropy != r2.isotropy)
                   for r1, r2 in zip(t1, t2))
    out.append(_result("mackey.table_metric_independence", failures, 0.5))
    return out


# ---------------------------------------------------------------------------
# representation witnesses
# ---------------------------------------------------------------------------

def _check_svn(rng: np.random.Generator) -> list[CheckResult]:
    out = []
    N = 32
    for mu in (1.0, -3.0, 0.5):
        svn = rc.build_svn(mu, N)
        comm = svn.P1 @ svn.P2 - svn.P2 @ svn.P1
        defect = comm - 1j * mu * np.eye(N)
        bulk = defect.copy()
        bulk[N - 1, N - 1] = 0.0
        out.append(_result(f"svn.commutator_bulk[mu={mu:g}]",
                           float(np.max(np.abs(bulk))), 1e-12))
        out.append(_result(f"svn.commutator_corner[mu={mu:g}]",
                           abs(defect[N - 1, N - 1] - (-1j * mu * N)), 1e-10))
        eigs = np.sort(np.linalg.eigvalsh(svn.J))
        # oscillator ladder n + 1/2 for n <= N-2 plus the truncation corner (N-1)/2
        expected = np.sort(np.concatenate([np.arange(N - 1) + 0.5, [(N - 1) / 2.0]]))
        res = float(np.max(np.abs(eigs - expected)))
        out.append(_result(f"svn.spectrum[mu={mu:g}]", res, 1e-9))
    return out


def _check_circle(rng: np.random.Generator) -> list[CheckResult]:
    out = []
    M = 12
    for rho in (1.0, 5.0):
        for phi0 in (0.0, 0.3):
            rep = rc.CircleRep(M, rho, phi0)
            tag = f"[M={M},rho={rho:g},phi0={phi0:g}]"
            res = 0.0
            for _ in range(20):
                a = tuple(rng.uniform(-3, 3, 2))
                t = rc.circle_translation(rep, a)
                res = max(res, float(np.max(np.abs(t.conj().T @ t - np.eye(M)))))
            for j in range(M):
                r = rc.circle_rotation(rep, j)
                res = max(res, float(np.max(np.abs(r.conj().T @ r - np.eye(M)))))
            out.append(_result(f"circle.unitarity{tag}", res, 1e-13))

            res = 0.0
            for j in range(M):
                r = rc.circle_rotation(rep, j)
                ang = cov.TWO_PI * j / M
                for _ in range(100):
                    a = rng.uniform(-3, 3, 2)
                    ra = (math.cos(ang) * a[0] - math.sin(ang) * a[1],
                          math.sin(ang) * a[0] + math.cos(ang) * a[1])
                    lhs = r @ rc.circle_translation(rep, a) @ r.conj().T
                    rhs = rc.circle_translation(rep, ra)
                    res = max(res, float(np.max(np.abs(lhs - rhs))))
            out.append(_result(f"circle.covariance{tag}", res, 1e-13))

            full = rc.circle_rotation(rep, M)
            ref = np.exp(1j * (cov.TWO_PI * phi0 * (M / M))) * np.eye(M)
            out.append(_result(f"circle.stabilizer{tag}",
                               float(np.max(np.abs(full - ref))), 1e-13))
    return out


def _check_spin(rng: np.random.Generator) -> list[CheckResult]:
    out = []
    for s in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2)):
        rep = rc.build_spin(s)
        tag = f"[s={s}]"
        comm = float(max(
            np.max(np.abs(rep.jx @ rep.jy - rep.jy @ rep.jx - 1j * rep.jz)),
            np.max(np.abs(rep.jy @ rep.jz - rep.jz @ rep.jy - 1j * rep.jx)),
            np.max(np.abs(rep.jz @ rep.jx - rep.jx @ rep.jz - 1j * rep.jy))))
        out.append(_result(f"spin.commutation{tag}", comm, 1e-12))
        cas = float(np.max(np.abs(rep.casimir() - float(s * (s + 1)) * np.eye(rep.dim))))
        out.append(_result(f"spin.casimir{tag}", cas, 1e-12))
        sign = (-1.0) ** (2 * s)
        res = 0.0
        for axis in ((0.0, 0.0, 1.0), (0.0, 1.0, 0.0), (1.0, 1.0, 1.0)):
            u = rc.spin_rotation(rep, axis, cov.TWO_PI)
            res = max(res, float(np.max(np.abs(u - sign * np.eye(rep.dim)))))
        out.append(_result(f"spin.double_valuedness{tag}", res, 1e-10))
    return out


def _induction_cases():
    z3 = gpd.cyclic_group(3)
    s3 = gpd.symmetric_group(3)
    cases = []
    for j in range(3):
        cases.append((f"z3_character_{j}", gpd.GaugeGroupoid(3, z3),
                      rc.cyclic_character(3, j), True))
    irreps = rc.s3_irreps()
    for name in ("trivial", "sign", "standard"):
        cases.append((f"s3_{name}", gpd.GaugeGroupoid(3, s3),
                      irreps[name], True))
    cases.append(("s3_regular", gpd.GaugeGroupoid(3, s3),
                  rc.regular_representation(s3), False))
    cases.append(("z3_char_sum", gpd.GaugeGroupoid(3, z3),
                  rc.direct_sum(rc.cyclic_character(3, 0), rc.cyclic_character(3, 1)),
                  False))
    return cases


def _check_induction(rng: np.random.Generator) -> list[CheckResult]:
    out = []
    functorial = 0.0
    roundtrip = 0.0
    equiv_failures = 0
    irr_failures = 0
    witness_res = 0.0
    for name, groupoid, base, expect_irr in _induction_cases():
        rep = rc.induce_groupoid_rep(groupoid, base)
        functorial = max(functorial, rc.check_functoriality(rep))
        restricted = rc.restrict_rep(rep, 0)
        roundtrip = max(roundtrip, max(
            float(np.max(np.abs(r - b))) for r, b in zip(restricted, base)))
        again = rc.induce_groupoid_rep(groupoid, restricted)
        ok, _ = rc.equivalent_groupoid_reps(again, rep)
        equiv_failures += not ok
        verdict = rc.is_irreducible(rep)
        char_dim = rc.commutant_dimension_character(base)
        if verdict.irreducible != expect_irr or (char_dim == 1) != expect_irr:
            irr_failures += 1
        if not verdict.irreducible:
            witness_res = max(witness_res,
                              rc.invariant_subbundle_residual(rep, verdict.witness))
    out.append(_result("induction.functoriality", functorial, 1e-13))
    out.append(_result("induction.restriction_roundtrip", roundtrip, 1e-13))
    out.append(_result("induction.reinduction_equivalence", equiv_failures, 0.5))
    out.append(_result("induction.irreducibility", irr_failures, 0.5))
    out.append(_result("induction.reducible_witness", witness_res, 1e-8))
    return out


SUITES = {
    "geometry": _check_geometry,
    "covering": _check_covering,
    "groupoid": _check_groupoid,
    "cohomology": _check_cohomology,
    "mackey": _check_mackey,
    "svn": _check_svn,
    "circle": _check_circle,
    "spin": _check_spin,
    "induction": _check_induction,
}


def run_suite(suites=None, seed: int = DEFAULT_SEED,
              tol_scale: float = 1.0) -> list[CheckResult]:
    if suites is None or suites == ["all"] or suites == "all":
        names = list(SUITES)
    else:
        names = list(suites)
    for name in names:
        if name not in SUITES:
            raise ValidationError(f"unknown suite {name!r}; "
                                  f"choose from {', '.join(['all'] + list(SUITES))}")
    rng = np.random.default_rng(seed)
    results = []
    for name in names:
        for check in SUITES[name](rng):
            if tol_scale != 1.0:
                check = _result(check.check, check.residual, check.tolerance * tol_scale)
            results.append(check)
    return results
