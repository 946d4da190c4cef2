"""Finite-dimensional numerical witnesses: truncated Stone-von Neumann
operators, the circle-grid induced representation, spin matrices, and
induction of unitary representations over finite gauge groupoids with a
brute-force irreducibility search.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .covering import TWO_PI, OscElement
from .errors import BadParams, NotUnitaryError, TooLargeError, ValidationError
from .groupoid import FiniteGroup, GaugeGroupoid, gauge_compose, symmetric_group

UNITARY_TOL = 1e-8
FIBER_CAP = 8
ORDER_CAP = 24


# ---------------------------------------------------------------------------
# Truncated Stone-von Neumann representation
# ---------------------------------------------------------------------------

def ladder(N: int) -> np.ndarray:
    """Truncated annihilation operator: a[n-1, n] = sqrt(n)."""
    return np.diag(np.sqrt(np.arange(1.0, N)), k=1).astype(complex)


@dataclass(frozen=True, eq=False)
class TruncatedSvN:
    N: int
    mu: float
    Q: np.ndarray
    P: np.ndarray
    P1: np.ndarray
    P2: np.ndarray
    J: np.ndarray

    @property
    def E(self) -> np.ndarray:
        return self.mu * np.eye(self.N, dtype=complex)

    def analytic_J(self) -> np.ndarray:
        """Untruncated oscillator spectrum diag(n + 1/2).

        The truncated J = (Q^2 + P^2)/2 differs from it exactly by
        -(N/2) in the last diagonal entry.
        """
        return np.diag(np.arange(self.N) + 0.5).astype(complex)


def build_svn(mu: float, N: int) -> TruncatedSvN:
    """Level-N truncation of the magnetic-sector operators.

    P1 = sqrt(|mu|) Q, P2 = sgn(mu) sqrt(|mu|) P, J = (Q^2 + P^2)/2; the
    commutator [P1, P2] equals i*mu*(I - N e_{N-1} e_{N-1}^T) exactly.
    """
    if not isinstance(N, int) or N < 2:
        raise BadParams("truncation dimension must be an integer >= 2")
    if mu == 0:
        raise BadParams("mu must be nonzero")
    a = ladder(N)
    ad = a.conj().T
    q = (a + ad) / math.sqrt(2.0)
    p = 1j * (ad - a) / math.sqrt(2.0)
    root = math.sqrt(abs(mu))
    p1 = root * q
    p2 = math.copysign(root, mu) * p
    j = 0.5 * (q @ q + p @ p)
    return TruncatedSvN(N, float(mu), q, p, p1, p2, j)


# ---------------------------------------------------------------------------
# Circle-grid induced representation (continuous spin sector)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CircleRep:
    """Grid model of the induced circle representation.

    Functions live on theta_k = 2*pi*k/M; rotations are restricted to grid
    multiples so covariance is exact.
    """

    M: int
    rho: float
    phi0: float

    def __post_init__(self):
        if not isinstance(self.M, int) or self.M < 3:
            raise BadParams("grid size must be an integer >= 3")
        if not self.rho > 0:
            raise BadParams("rho must be positive")

    def thetas(self) -> np.ndarray:
        return TWO_PI * np.arange(self.M) / self.M


def circle_translation(rep: CircleRep, a) -> np.ndarray:
    """Diagonal unitary (T_a f)(theta) = exp(i rho a.n(theta)) f(theta)."""
    th = rep.thetas()
    phase = rep.rho * (a[0] * np.cos(th) + a[1] * np.sin(th))
    return np.diag(np.exp(1j * phase))


def circle_rotation(rep: CircleRep, j: int) -> np.ndarray:
    """Cyclic shift by j grid steps times the stabilizer phase e^{i phi0 2 pi j / M}."""
    j = int(j)
    out = np.zeros((rep.M, rep.M), dtype=complex)
    phase = cmath.exp(1j * (TWO_PI * rep.phi0 * (j / rep.M)))
    for k in range(rep.M):
        out[k, (k - j) % rep.M] = phase
    return out


def circle_operator(rep: CircleRep, g: OscElement) -> np.ndarray:
    """Operator of a cover element whose angle is a grid multiple: T_a R_phi."""
    steps = g.phi * rep.M / TWO_PI
    j = round(steps)
    if abs(steps - j) > 1e-9:
        raise BadParams(f"angle {g.phi} is not a grid multiple of 2*pi/{rep.M}")
    return circle_translation(rep, g.a) @ circle_rotation(rep, j)


# ---------------------------------------------------------------------------
# Spin representations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SpinRep:
    s: Fraction
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray

    @property
    def dim(self) -> int:
        return int(2 * self.s) + 1

    def casimir(self) -> np.ndarray:
        return self.jx @ self.jx + self.jy @ self.jy + self.jz @ self.jz


def _half_integer(s) -> Fraction:
    f = Fraction(s)
    if f < 0 or (2 * f).denominator != 1:
        raise BadParams(f"spin must be a non-negative half-integer, got {s}")
    return f


def build_spin(s) -> SpinRep:
    """Standard ladder construction of the spin-s matrices ([Jx,Jy] = i Jz)."""
    s = _half_integer(s)
    d = int(2 * s) + 1
    ms = [float(s - k) for k in range(d)]
    jz = np.diag(ms).astype(complex)
    jp = np.zeros((d, d), dtype=complex)
    sval = float(s)
    for k in range(1, d):
        m = ms[k]
        jp[k - 1, k] = math.sqrt(sval * (sval + 1.0) - m * (m + 1.0))
    jm = jp.conj().T
    jx = 0.5 * (jp + jm)
    jy = -0.5j * (jp - jm)
    return SpinRep(s, jx, jy, jz)


def spin_rotation(rep: SpinRep, axis, angle: float) -> np.ndarray:
    """exp(-i angle n.J) for a unit axis n, via the Hermitian eigendecomposition."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    h = n[0] * rep.jx + n[1] * rep.jy + n[2] * rep.jz
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * angle * w)) @ v.conj().T


# ---------------------------------------------------------------------------
# Finite group representations
# ---------------------------------------------------------------------------

def trivial_rep(group: FiniteGroup) -> list[np.ndarray]:
    return [np.eye(1, dtype=complex) for _ in group.elements]


def cyclic_character(n: int, j: int) -> list[np.ndarray]:
    """Character a -> e^{2 pi i j a / n} of Z/n as 1x1 matrices."""
    return [np.array([[cmath.exp(2j * math.pi * j * a / n)]]) for a in range(n)]


def s3_permutations() -> list[tuple[int, ...]]:
    return sorted(itertools.permutations(range(3)))


def s3_sign_rep() -> list[np.ndarray]:
    out = []
    for p in s3_permutations():
        inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
        out.append(np.array([[(-1.0 + 0j) ** inversions]]))
    return out


def s3_standard_rep() -> list[np.ndarray]:
    """The 2-dimensional irreducible representation of S3 (sum-zero plane)."""
    b = np.array([[1.0, 1.0], [-1.0, 1.0], [0.0, -2.0]])
    b[:, 0] /= math.sqrt(2.0)
    b[:, 1] /= math.sqrt(6.0)
    out = []
    for p in s3_permutations():
        perm = np.zeros((3, 3))
        for i in range(3):
            perm[p[i], i] = 1.0
        out.append((b.T @ perm @ b).astype(complex))
    return out


def s3_irreps() -> dict[str, list[np.ndarray]]:
    return {"trivial": trivial_rep(symmetric_group(3)),
            "sign": s3_sign_rep(),
            "standard": s3_standard_rep()}


def regular_representation(group: FiniteGroup) -> list[np.ndarray]:
    out = []
    for g in group.elements:
        m = np.zeros((group.order, group.order), dtype=complex)
        for h in group.elements:
            m[group.mul(g, h), h] = 1.0
        out.append(m)
    return out


def direct_sum(rep1: list[np.ndarray], rep2: list[np.ndarray]) -> list[np.ndarray]:
    out = []
    for m1, m2 in zip(rep1, rep2):
        d1, d2 = m1.shape[0], m2.shape[0]
        m = np.zeros((d1 + d2, d1 + d2), dtype=complex)
        m[:d1, :d1] = m1
        m[d1:, d1:] = m2
        out.append(m)
    return out


def _check_unitary(mats: list[np.ndarray]):
    for m in mats:
        d = m.shape[0]
        if m.shape != (d, d) or np.max(np.abs(m.conj().T @ m - np.eye(d))) > UNITARY_TOL:
            raise NotUnitaryError("representation matrices must be unitary")


# ---------------------------------------------------------------------------
# Groupoid representations by induction
# ---------------------------------------------------------------------------

class GroupoidRep:
    """Unitary representation of a gauge groupoid in trivialized frames.

    The morphism (y, g, x) acts as C_y T(g) C_x^dagger where T is the base
    isotropy representation and C are per-object unitary frames.
    """

    def __init__(self, groupoid: GaugeGroupoid, base_rep: list[np.ndarray],
                 frames: list[np.ndarray] | None = None):
        base_rep = [np.asarray(m, dtype=complex) for m in base_rep]
        if len(base_rep) != groupoid.group.order:
            raise ValidationError("need one matrix per group element")
        _check_unitary(base_rep)
        d = base_rep[0].shape[0]
        if frames is None:
            frames = [np.eye(d, dtype=complex) for _ in groupoid.objects]
        frames = [np.asarray(f, dtype=complex) for f in frames]
        if len(frames) != groupoid.n_objects:
            raise ValidationError("need one frame per object")
        _check_unitary(frames)
        self.groupoid = groupoid
        self.fiber_dim = d
        self.base_rep = base_rep
        self.frames = frames

    def matrix(self, morphism) -> np.ndarray:
        y, g, x = morphism
        return self.frames[y] @ self.base_rep[g] @ self.frames[x].conj().T


def induce_groupoid_rep(groupoid: GaugeGroupoid, base_rep: list[np.ndarray],
                        section: list[int] | None = None) -> GroupoidRep:
    """Induced representation of the groupoid from a unitary isotropy rep.

    `section` optionally picks the group part g_x of the section morphism
    (x, g_x, x0); the canonical choice is the identity everywhere.  Different
    sections give equivalent representations.
    """
    rep = GroupoidRep(groupoid, base_rep)
    if section is None:
        return rep
    if len(section) != groupoid.n_objects:
        raise ValidationError("need one section element per object")
    frames = [rep.base_rep[s].conj().T for s in section]
    return GroupoidRep(groupoid, base_rep, frames=frames)


def restrict_rep(rep: GroupoidRep, x0: int) -> list[np.ndarray]:
    """Isotropy representation at x0 in the representation's own frames."""
    return [rep.matrix((x0, g, x0)) for g in rep.groupoid.group.elements]


def check_functoriality(rep: GroupoidRep) -> float:
    """Max residual of Phi(beta o alpha) - Phi(beta) Phi(alpha) over all
    composable pairs, plus the unit condition."""
    gpd = rep.groupoid
    residual = 0.0
    for x in gpd.objects:
        unit = rep.matrix((x, gpd.group.identity, x))
        residual = max(residual, float(np.max(np.abs(unit - np.eye(rep.fiber_dim)))))
    for beta in gpd.morphisms():
        for alpha in gpd.morphisms():
            if alpha[0] != beta[2]:
                continue
            combined = gauge_compose(gpd, beta, alpha)
            residual = max(residual, float(np.max(np.abs(
                rep.matrix(combined) - rep.matrix(beta) @ rep.matrix(alpha)))))
    return residual


# ---------------------------------------------------------------------------
# Irreducibility
# ---------------------------------------------------------------------------

def _nullspace_matrices(system_blocks: list[np.ndarray], d_out: int, d_in: int,
                        tol: float = 1e-9) -> list[np.ndarray]:
    a = np.vstack(system_blocks)
    _, sing, vh = np.linalg.svd(a)
    cutoff = tol * max(1.0, sing[0] if len(sing) else 0.0)
    null_dim = sum(1 for s in sing if s <= cutoff) + max(0, a.shape[1] - len(sing))
    basis = vh.conj()[len(vh) - null_dim:] if null_dim else []
    return [vec.reshape(d_out, d_in) for vec in basis]


def intertwiners(rep_to: list[np.ndarray], rep_from: list[np.ndarray]) -> list[np.ndarray]:
    """Basis of {X : rep_to(g) X = X rep_from(g) for all g}."""
    d_out = rep_to[0].shape[0]
    d_in = rep_from[0].shape[0]
    eye_in = np.eye(d_in)
    eye_out = np.eye(d_out)
    blocks = [np.kron(t, eye_in) - np.kron(eye_out, f.T)
              for t, f in zip(rep_to, rep_from)]
    return _nullspace_matrices(blocks, d_out, d_in)


def commutant_dimension_character(rep: list[np.ndarray]) -> int:
    """Character-theoretic commutant dimension: sum |tr T(g)|^2 / |G|."""
    total = sum(abs(np.trace(m)) ** 2 for m in rep)
    return round(total / len(rep))


@dataclass(frozen=True, eq=False)
class IrreducibilityResult:
    irreducible: bool
    commutant_dim: int
    witness: dict | None  # object -> orthonormal basis of an invariant subspace

    def __bool__(self) -> bool:
        return self.irreducible


def _invariant_subspace(rep: list[np.ndarray], commutant: list[np.ndarray]) -> np.ndarray:
    d = rep[0].shape[0]
    for x in commutant:
        x0 = x - (np.trace(x) / d) * np.eye(d)
        if np.max(np.abs(x0)) < 1e-9:
            continue
        h = x0 + x0.conj().T
        if np.max(np.abs(h)) < 1e-9:
            h = 1j * (x0 - x0.conj().T)
        w, v = np.linalg.eigh(h)
        gaps = np.diff(w)
        split = int(np.argmax(gaps)) + 1
        return v[:, :split]
    raise AssertionError("no non-scalar commutant element found")


def is_irreducible(rep: GroupoidRep, method: str = "auto") -> IrreducibilityResult:
    """Invariant-subbundle search for a groupoid representation.

    Within the brute-force caps (fiber dimension 8, group order 24) the
    commutant is computed exactly as a nullspace and a reducible input yields
    an explicit invariant subbundle.  Beyond the caps, method "auto" falls
    back to the character formula; method "subspace" raises TooLargeError.
    """
    d = rep.fiber_dim
    order = rep.groupoid.group.order
    within_caps = d <= FIBER_CAP and order <= ORDER_CAP
    if method not in ("auto", "subspace", "character"):
        raise ValidationError(f"unknown method {method!r}")
    if method == "subspace" and not within_caps:
        raise TooLargeError(
            f"fiber dim {d} / order {order} beyond the brute-force caps")
    iso = restrict_rep(rep, 0)
    if method == "character" or (method == "auto" and not within_caps):
        cd = commutant_dimension_character(iso)
        return IrreducibilityResult(cd == 1, cd, None)
    commutant = intertwiners(iso, iso)
    cd = len(commutant)
    if cd == 1:
        return IrreducibilityResult(True, 1, None)
    w = _invariant_subspace(iso, commutant)
    e = rep.groupoid.group.identity
    witness = {x: rep.matrix((x, e, 0)) @ w for x in rep.groupoid.objects}
    return IrreducibilityResult(False, cd, witness)


def invariant_subbundle_residual(rep: GroupoidRep, witness: dict) -> float:
    """How far the witness is from being an invariant subbundle: the max of
    |(I - W_y W_y^+) Phi(beta) W_x| over all morphisms beta: x -> y."""
    residual = 0.0
    for beta in rep.groupoid.morphisms():
        y, _, x = beta
        wy, wx = witness[y], witness[x]
        proj = np.eye(rep.fiber_dim) - wy @ wy.conj().T
        residual = max(residual, float(np.max(np.abs(proj @ rep.matrix(beta) @ wx))))
    return residual


def equivalent_groupoid_reps(rep1: GroupoidRep, rep2: GroupoidRep,
                             tol: float = 1e-8):
    """Search for per-object unitaries chi with chi_y Phi1 = Phi2 chi_x.

    Returns (True, {object: chi}) or (False, None).
    """
    if rep1.groupoid is not rep2.groupoid and (
            rep1.groupoid.n_objects != rep2.groupoid.n_objects
            or rep1.groupoid.group.table != rep2.groupoid.group.table):
        return False, None
    if rep1.fiber_dim != rep2.fiber_dim:
        return False, None
    t1 = restrict_rep(rep1, 0)
    t2 = restrict_rep(rep2, 0)
    basis = intertwiners(t2, t1)
    s = _invertible_combination(basis, rep1.fiber_dim)
    if s is None:
        return False, None
    u, _, vh = np.linalg.svd(s)
    s = u @ vh  # polar part: still an intertwiner for unitary reps
    gpd = rep1.groupoid
    e = gpd.group.identity
    chi = {x: rep2.matrix((x, e, 0)) @ s @ rep1.matrix((x, e, 0)).conj().T
           for x in gpd.objects}
    for beta in gpd.morphisms():
        y, _, x = beta
        if np.max(np.abs(chi[y] @ rep1.matrix(beta) - rep2.matrix(beta) @ chi[x])) > tol:
            return False, None
    return True, chi


def _invertible_combination(basis: list[np.ndarray], d: int):
    for x in basis:
        if abs(np.linalg.det(x)) > 1e-9:
            return x
    rng = np.random.default_rng(0)
    for _ in range(16):
        coeffs = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
        x = sum(c * b for c, b in zip(coeffs, basis))
        if isinstance(x, np.ndarray) and abs(np.linalg.det(x)) > 1e-9:
            return x
    return None
