import math
from fractions import Fraction

import numpy as np
import pytest

from wigneroid.errors import (
    CovectorMismatchError,
    NonComposableError,
    NotLorentzError,
    ValidationError,
)
from wigneroid.groupoid import (
    MASSIVE_MINUS,
    MASSIVE_PLUS,
    MASSLESS_MINUS,
    MASSLESS_PLUS,
    TACHYONIC,
    ZERO,
    CotangentPoint,
    FiniteGroup,
    GaugeGroupoid,
    IsotropyType,
    LorentzMatrix,
    OrbitClass,
    PoincareMorphism,
    WignerMorphism,
    boost,
    classify_orbit,
    compose,
    cyclic_group,
    gauge_compose,
    gauge_inverse,
    gauge_unit,
    inverse,
    isotropy_type,
    null_rotation,
    random_restricted_lorentz,
    rotation_about,
    stabilizer_check,
    symmetric_group,
    transport_covector,
    unit,
)
from wigneroid.spacetime import (
    ETA,
    MINKOWSKI,
    ChartPoint,
    TetradCovector,
    p_squared,
    sample_kruskal_point,
    schwarzschild_kruskal,
)

KRUSKAL = schwarzschild_kruskal(1.0)
ORIGIN = ChartPoint((0.0, 0.0, 0.0, 0.0))


def wigner(spec, src_pt, tgt_pt, lam, p):
    base = PoincareMorphism((spec, src_pt), (spec, tgt_pt), LorentzMatrix(lam))
    return WignerMorphism(base, TetradCovector(p))


# ---------------------------------------------------------------------------
# Lorentz matrices
# ---------------------------------------------------------------------------

def test_lorentz_validation():
    LorentzMatrix(np.eye(4))
    LorentzMatrix(boost((0, 0, 1), 1.3))
    with pytest.raises(NotLorentzError):
        LorentzMatrix(2.0 * np.eye(4))
    # total inversion preserves eta but is not in the connected component
    pt = -np.eye(4)
    with pytest.raises(NotLorentzError):
        LorentzMatrix(pt)
    LorentzMatrix(pt, restricted=False)


def test_random_restricted_lorentz(rng):
    for _ in range(100):
        lam = random_restricted_lorentz(rng).matrix
        assert np.max(np.abs(lam.T @ ETA @ lam - ETA)) < 1e-10
        assert np.linalg.det(lam) == pytest.approx(1.0, abs=1e-10)
        assert lam[0, 0] >= 1.0 - 1e-12


# ---------------------------------------------------------------------------
# transport
# ---------------------------------------------------------------------------

def test_transport_identity():
    p = transport_covector(np.eye(4), (1.0, 2.0, 3.0, 4.0))
    assert np.allclose(p.array, [1, 2, 3, 4], rtol=0, atol=0)


def test_transport_pi_rotation_flips_null_covector():
    lam = rotation_about(2, math.pi)  # x,y -> -x,-y
    p = transport_covector(lam, (2.0, 2.0, 0.0, 0.0))
    assert np.allclose(p.array, [2.0, -2.0, 0.0, 0.0], atol=1e-15)


def test_transport_pullback_identity(rng):
    for _ in range(200):
        lam = random_restricted_lorentz(rng)
        p = TetradCovector(tuple(rng.uniform(-3, 3, 4)))
        moved = transport_covector(lam, p)
        assert np.max(np.abs(lam.matrix.T @ moved.array - p.array)) < 1e-12


def test_transport_preserves_p_squared(rng):
    for _ in range(500):
        lam = random_restricted_lorentz(rng)
        p = TetradCovector(tuple(rng.uniform(-3, 3, 4)))
        moved = transport_covector(lam, p)
        scale = max(1.0, float(np.dot(p.array, p.array)))
        assert abs(float(p_squared(moved)) - float(p_squared(p))) / scale < 1e-10


def test_transport_rejects_non_lorentz():
    with pytest.raises(NotLorentzError):
        transport_covector(np.diag([1.0, 1.0, 1.0, 2.0]), (1, 0, 0, 0))


# ---------------------------------------------------------------------------
# composition, units, inverses
# ---------------------------------------------------------------------------

def test_unit_laws():
    xi = CotangentPoint(MINKOWSKI, ORIGIN, TetradCovector((2.0, 1.0, 0.0, 0.0)))
    e = unit(xi)
    assert np.array_equal(e.lam, np.eye(4))
    assert e.p_src == xi.p and e.p_tgt.components == pytest.approx(xi.p.components)
    alpha = wigner(MINKOWSKI, ORIGIN, ORIGIN, boost((1, 0, 0), 0.7), (2.0, 1.0, 0.0, 0.0))
    assert np.allclose(compose(alpha, unit(alpha.src)).lam, alpha.lam)
    assert np.allclose(compose(unit(alpha.tgt), alpha).lam, alpha.lam)


def test_inverse_laws(rng):
    alpha = wigner(MINKOWSKI, ORIGIN, ChartPoint((1, 0, 0, 0)),
                   random_restricted_lorentz(rng).matrix, (1.5, 0.3, -0.2, 0.1))
    rt = compose(inverse(alpha), alpha)
    assert np.max(np.abs(rt.lam - np.eye(4))) < 1e-12
    assert rt.base.src == alpha.base.src and rt.base.tgt == alpha.base.src
    again = inverse(inverse(alpha))
    assert np.allclose(again.lam, alpha.lam)
    assert again.base.src == alpha.base.src


def test_inverse_of_boost_is_opposite_boost(rng):
    lam = boost((0.4, -0.8, 0.2), 1.1)
    alpha = wigner(MINKOWSKI, ORIGIN, ORIGIN, lam, (1.0, 0.0, 0.0, 0.0))
    inv = inverse(alpha)
    assert np.allclose(inv.lam, boost((0.4, -0.8, 0.2), -1.1), atol=1e-12)
    # numeric inverse equals eta-conjugated transpose
    assert np.allclose(inv.lam, ETA @ lam.T @ ETA, atol=0)


def test_compose_matches_matrix_product():
    b = boost((1, 0, 0), 0.9)
    r = rotation_about(2, 0.4)
    p = (2.0, 0.0, 0.0, 0.0)
    alpha = wigner(MINKOWSKI, ORIGIN, ORIGIN, b, p)
    beta = WignerMorphism(PoincareMorphism((MINKOWSKI, ORIGIN), (MINKOWSKI, ORIGIN),
                                           LorentzMatrix(r)), alpha.p_tgt)
    combined = compose(beta, alpha)
    assert np.allclose(combined.lam, r @ b, rtol=0, atol=0)


def test_compose_object_mismatch():
    alpha = wigner(MINKOWSKI, ORIGIN, ChartPoint((1, 0, 0, 0)), np.eye(4), (1, 0, 0, 0))
    beta = wigner(MINKOWSKI, ChartPoint((2, 0, 0, 0)), ORIGIN, np.eye(4), (1, 0, 0, 0))
    with pytest.raises(NonComposableError):
        compose(beta, alpha)
    kr_pt = ChartPoint((0.0, 1.0, math.pi / 2, 0.0))
    gamma = wigner(KRUSKAL, kr_pt, kr_pt, np.eye(4), (1, 0, 0, 0))
    with pytest.raises(NonComposableError):
        compose(gamma, alpha)


def test_compose_covector_mismatch():
    alpha = wigner(MINKOWSKI, ORIGIN, ORIGIN, boost((1, 0, 0), 0.5), (1.0, 0.0, 0.0, 0.0))
    beta = wigner(MINKOWSKI, ORIGIN, ORIGIN, np.eye(4), (1.0, 0.0, 0.0, 0.0))
    with pytest.raises(CovectorMismatchError):
        compose(beta, alpha)


def test_associativity_and_source_target(rng):
    for i in range(100):
        spec = MINKOWSKI if i % 2 == 0 else KRUSKAL
        if spec.kind == "minkowski":
            pts = [ChartPoint(tuple(rng.uniform(-3, 3, 4))) for _ in range(4)]
        else:
            pts = [sample_kruskal_point(rng, 1.0, 0.5, 8.0) for _ in range(4)]
        p0 = tuple(rng.uniform(-2, 2, 4))
        alpha = wigner(spec, pts[0], pts[1], random_restricted_lorentz(rng).matrix, p0)
        beta = WignerMorphism(PoincareMorphism((spec, pts[1]), (spec, pts[2]),
                                               random_restricted_lorentz(rng)), alpha.p_tgt)
        gamma = WignerMorphism(PoincareMorphism((spec, pts[2]), (spec, pts[3]),
                                                random_restricted_lorentz(rng)), beta.p_tgt)
        lhs = compose(compose(gamma, beta), alpha)
        rhs = compose(gamma, compose(beta, alpha))
        assert np.max(np.abs(lhs.lam - rhs.lam)) < 1e-10
        for result in (lhs, rhs):
            assert result.base.src == alpha.base.src
            assert result.base.tgt == gamma.base.tgt


# ---------------------------------------------------------------------------
# orbit classification
# ---------------------------------------------------------------------------

def test_classify_orbit_frozen():
    assert classify_orbit((3.0, 0.0, 0.0, 0.0)) == OrbitClass(MASSIVE_PLUS, 3.0)
    assert classify_orbit((2.0, 2.0, 0.0, 0.0)) == OrbitClass(MASSLESS_PLUS)
    assert classify_orbit((0.0, 1.0, 0.0, 0.0)) == OrbitClass(TACHYONIC, 1.0)
    assert classify_orbit((0.0, 0.0, 0.0, 0.0)) == OrbitClass(ZERO)
    assert classify_orbit((-3.0, 0.0, 0.0, 0.0)) == OrbitClass(MASSIVE_MINUS, 3.0)
    assert classify_orbit((-1.0, 1.0, 0.0, 0.0)) == OrbitClass(MASSLESS_MINUS)
    sqrt5 = math.sqrt(5.0)
    assert classify_orbit((3.0, 2.0, 0.0, 0.0)).m == pytest.approx(sqrt5)


def test_classify_orbit_tolerance_vs_exact():
    # floating point: |p^2| = 4e-10 * ~ |p|^2/2 falls inside the null stratum
    p_float = (1.0, 1.0 + 2e-10, 0.0, 0.0)
    assert classify_orbit(p_float).tag == MASSLESS_PLUS
    # the same covector in exact arithmetic is honestly tachyonic
    eps = Fraction(2, 10**10)
    p_exact = TetradCovector((1, 1 + eps, 0, 0))
    assert classify_orbit(p_exact).tag == TACHYONIC
    # widening the tolerance flips the float case back to tachyonic
    assert classify_orbit(p_float, eps=1e-12).tag == TACHYONIC


def test_orbit_invariance_under_transport(rng):
    samples = [(2.0, 0.5, 0.0, 0.0), (1.0, 1.0, 0.0, 0.0), (0.1, 2.0, 0.0, 0.5),
               (-1.5, 0.2, 0.2, 0.2), (0.0, 0.0, 0.0, 0.0)]
    for _ in range(100):
        lam = random_restricted_lorentz(rng)
        for p in samples:
            assert classify_orbit(transport_covector(lam, p)).tag == classify_orbit(p).tag


def test_isotropy_type():
    assert isotropy_type(OrbitClass(MASSIVE_PLUS, 1.0)) is IsotropyType.SO3
    assert isotropy_type(OrbitClass(MASSIVE_MINUS, 1.0)) is IsotropyType.SO3
    assert isotropy_type(OrbitClass(MASSLESS_PLUS)) is IsotropyType.E2
    assert isotropy_type(OrbitClass(MASSLESS_MINUS)) is IsotropyType.E2
    assert isotropy_type(OrbitClass(ZERO)) is IsotropyType.SO0_13
    assert isotropy_type(OrbitClass(TACHYONIC, 1.0)) is IsotropyType.UNSUPPORTED
    assert IsotropyType.SO3.label == "SO(3)"


# ---------------------------------------------------------------------------
# stabilizers
# ---------------------------------------------------------------------------

def test_stabilizer_check_massive():
    rest = (3.0, 0.0, 0.0, 0.0)
    assert stabilizer_check(rotation_about(2, 0.7), rest)
    assert stabilizer_check(rotation_about(0, 2.1), rest)
    assert not stabilizer_check(boost((1, 0, 0), 0.3), rest)


def test_null_rotation_stabilizes_null_covector(rng):
    p = (2.5, 2.5, 0.0, 0.0)
    for _ in range(50):
        a, b = rng.uniform(-2, 2, 2)
        lam = null_rotation(a, b)
        assert np.max(np.abs(lam.T @ ETA @ lam - ETA)) < 1e-12
        assert stabilizer_check(lam, p)
    # rotations in the plane orthogonal to the spatial momentum also stabilize
    assert stabilizer_check(rotation_about(0, 1.234), p)
    assert not stabilizer_check(boost((1, 0, 0), 0.5), p)


def test_stabilizer_closure(rng):
    p = (1.0, 1.0, 0.0, 0.0)
    elements = [null_rotation(*rng.uniform(-1, 1, 2)) for _ in range(8)]
    elements += [rotation_about(0, ang) for ang in rng.uniform(0, 2 * math.pi, 4)]
    for x in elements:
        assert stabilizer_check(np.linalg.inv(x), p)
        for y in elements:
            assert stabilizer_check(x @ y, p)


# ---------------------------------------------------------------------------
# gauge groupoids
# ---------------------------------------------------------------------------

def test_finite_group_validation():
    cyclic_group(5)
    symmetric_group(3)
    with pytest.raises(ValidationError):
        FiniteGroup([[0, 1], [1, 1]])  # 1 has no inverse
    with pytest.raises(ValidationError):
        FiniteGroup([[0, 1]])  # not square
    with pytest.raises(ValidationError):
        FiniteGroup([[1, 0], [1, 0]])  # no identity


def test_gauge_operations_frozen():
    gpd = GaugeGroupoid(3, cyclic_group(3))
    e = gpd.group.identity
    assert gauge_compose(gpd, (1, e, 0), (0, e, 2)) == (1, e, 2)
    assert gauge_compose(gpd, (0, 1, 1), (1, 2, 0)) == (0, 0, 0)
    assert gauge_unit(gpd, 2) == (2, 0, 2)
    assert gauge_inverse(gpd, (2, 1, 0)) == (0, 2, 2)
    with pytest.raises(NonComposableError):
        gauge_compose(gpd, (0, 1, 2), (1, 1, 0))


def test_gauge_axioms_exhaustive_z2():
    gpd = GaugeGroupoid(3, cyclic_group(2))
    morphisms = list(gpd.morphisms())
    assert len(morphisms) == gpd.n_morphisms == 3 * 3 * 2
    for a in morphisms:
        assert gauge_compose(gpd, a, gauge_unit(gpd, a[2])) == a
        assert gauge_compose(gpd, gauge_unit(gpd, a[0]), a) == a
        assert gauge_compose(gpd, gauge_inverse(gpd, a), a) == gauge_unit(gpd, a[2])
        for b in morphisms:
            if b[0] != a[2]:
                continue
            ab = gauge_compose(gpd, a, b)
            for c in morphisms:
                if c[0] != b[2]:
                    continue
                assert gauge_compose(gpd, ab, c) == \
                    gauge_compose(gpd, a, gauge_compose(gpd, b, c))


def test_gauge_transitivity():
    gpd = GaugeGroupoid(4, symmetric_group(3))
    assert gpd.n_morphisms == 16 * 6
    reachable = {(y, x) for (y, g, x) in gpd.morphisms()}
    assert reachable == {(y, x) for y in range(4) for x in range(4)}


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def test_morphism_json_roundtrip(rng):
    lam = random_restricted_lorentz(rng)
    alpha = WignerMorphism(
        PoincareMorphism((MINKOWSKI, ORIGIN), (MINKOWSKI, ChartPoint((1, 2, 3, 4))), lam),
        TetradCovector((1.0, 0.5, -0.25, 0.0)))
    blob = alpha.to_json()
    assert set(blob) == {"src", "tgt", "lambda", "p_src"}
    back = WignerMorphism.from_json(blob)
    assert back.base.src == alpha.base.src
    assert back.base.tgt == alpha.base.tgt
    assert np.array_equal(back.lam, alpha.lam)
    assert back.p_src == alpha.p_src


def test_orbit_class_json():
    assert OrbitClass(MASSIVE_PLUS, 2.0).to_json() == {"tag": "massive_plus", "m": 2.0}
    assert OrbitClass(ZERO).to_json() == {"tag": "zero"}
