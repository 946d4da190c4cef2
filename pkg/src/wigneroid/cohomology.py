"""Chevalley-Eilenberg H^1/H^2 of finite-dimensional real Lie algebras in
exact rational arithmetic, plus central extensions by 2-cocycles.

Sign conventions used throughout (H^2 dimensions are independent of them):

    (d1 a)(Xi, Xj)      = -a([Xi, Xj])
    (d2 w)(Xi, Xj, Xk)  = -w([Xi,Xj], Xk) + w([Xi,Xk], Xj) - w([Xj,Xk], Xi)

Everything is computed over Fraction; no floating-point rank decisions.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import JacobiError, NotClosedError, ValidationError


def _frac(v) -> Fraction:
    if isinstance(v, float):
        raise ValidationError("structure constants must be exact rationals, not floats")
    return Fraction(v)


# ---------------------------------------------------------------------------
# Exact rational linear algebra (small dense matrices)
# ---------------------------------------------------------------------------

def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = Fraction(1, 1) / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    return m[:rank], pivots


def rational_rank(rows: list[list[Fraction]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} for A given by rows; deterministic rref construction."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def reduce_mod_rowspace(vec: list[Fraction], red: list[list[Fraction]],
                        pivots: list[int]) -> list[Fraction]:
    v = list(vec)
    for r, pc in enumerate(pivots):
        if v[pc] != 0:
            factor = v[pc]
            v = [a - factor * b for a, b in zip(v, red[r])]
    return v


def invert_matrix(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [list(r) + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValidationError("matrix is singular over the rationals")
    return [row[n:] for row in red]


# ---------------------------------------------------------------------------
# Lie algebras
# ---------------------------------------------------------------------------

class LieAlgebra:
    """Lie algebra by structure constants c^k_{ij}: [X_i, X_j] = sum_k c^k_{ij} X_k.

    Only antisymmetry is enforced at construction; use check_jacobi for the
    Jacobi identity.
    """

    def __init__(self, dim: int, entries: dict | None = None, names=None):
        if dim < 1:
            raise ValidationError("dimension must be positive")
        self.dim = dim
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), val in (entries or {}).items():
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise ValidationError(f"index ({i},{j},{k}) out of range")
            val = _frac(val)
            if i == j:
                if val != 0:
                    raise ValidationError("c^k_{ii} must vanish")
                continue
            if c[i][j][k] not in (Fraction(0), val) or c[j][i][k] not in (Fraction(0), -val):
                raise ValidationError(f"conflicting entries for ({i},{j},{k})")
            c[i][j][k] = val
            c[j][i][k] = -val
        self.c = tuple(tuple(tuple(row) for row in plane) for plane in c)
        self.names = tuple(names) if names is not None else tuple(f"X{i+1}" for i in range(dim))
        if len(self.names) != dim:
            raise ValidationError("need one name per basis vector")

    def bracket_basis(self, i: int, j: int) -> tuple[Fraction, ...]:
        return self.c[i][j]

    def bracket(self, x, y) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for i in range(self.dim):
            if x[i] == 0:
                continue
            for j in range(self.dim):
                if y[j] == 0:
                    continue
                coef = _frac(x[i]) * _frac(y[j])
                for k in range(self.dim):
                    out[k] += coef * self.c[i][j][k]
        return out

    def nonzero_entries(self) -> list[tuple[int, int, int, Fraction]]:
        return [(i, j, k, self.c[i][j][k])
                for i in range(self.dim) for j in range(i + 1, self.dim)
                for k in range(self.dim) if self.c[i][j][k] != 0]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "names": list(self.names),
            "c": [{"i": i, "j": j, "k": k, "val": str(v)}
                  for i, j, k, v in self.nonzero_entries()],
        }

    @staticmethod
    def from_json(obj: dict) -> "LieAlgebra":
        entries = {(int(e["i"]), int(e["j"]), int(e["k"])): Fraction(str(e["val"]))
                   for e in obj.get("c", [])}
        return LieAlgebra(int(obj["dim"]), entries, names=obj.get("names"))


def preset_algebra(name: str) -> LieAlgebra:
    """Named presets: e2, su2, heisenberg3, abelian:n."""
    if name == "e2":
        return LieAlgebra(3, {(0, 1, 2): 1, (0, 2, 1): -1}, names=("J", "P1", "P2"))
    if name == "su2":
        return LieAlgebra(3, {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1},
                          names=("X1", "X2", "X3"))
    if name == "heisenberg3":
        return LieAlgebra(3, {(0, 1, 2): 1}, names=("P1", "P2", "E"))
    if name.startswith("abelian:"):
        n = int(name.split(":", 1)[1])
        return LieAlgebra(n, {})
    raise ValidationError(f"unknown algebra preset {name!r}")


def check_jacobi(L: LieAlgebra):
    """None if the Jacobi identity holds exactly, else the first (i,j,k,l) violating it."""
    n = L.dim
    c = L.c
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for l in range(n):
                    s = Fraction(0)
                    for m in range(n):
                        s += (c[i][j][m] * c[m][k][l]
                              + c[j][k][m] * c[m][i][l]
                              + c[k][i][m] * c[m][j][l])
                    if s != 0:
                        return (i, j, k, l)
    return None


# ---------------------------------------------------------------------------
# Cochains and differentials
# ---------------------------------------------------------------------------

class TwoCochain:
    """Antisymmetric bilinear form by its values w(X_i, X_j) for i < j."""

    def __init__(self, dim: int, entries: dict | None = None):
        self.dim = dim
        self.entries = {}
        for (i, j), val in (entries or {}).items():
            val = _frac(val)
            if i == j:
                if val != 0:
                    raise ValidationError("w(X,X) must vanish")
                continue
            if i > j:
                i, j, val = j, i, -val
            if val != 0:
                self.entries[(i, j)] = self.entries.get((i, j), Fraction(0)) + val
                if self.entries[(i, j)] == 0:
                    del self.entries[(i, j)]

    @staticmethod
    def from_matrix(mat) -> "TwoCochain":
        n = len(mat)
        for i in range(n):
            for j in range(n):
                if _frac(mat[i][j]) != -_frac(mat[j][i]):
                    raise ValidationError("matrix is not antisymmetric")
        return TwoCochain(n, {(i, j): mat[i][j] for i in range(n) for j in range(i + 1, n)})

    def value(self, i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(0)
        if i < j:
            return self.entries.get((i, j), Fraction(0))
        return -self.entries.get((j, i), Fraction(0))

    def matrix(self) -> list[list[Fraction]]:
        return [[self.value(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return isinstance(other, TwoCochain) and self.dim == other.dim \
            and self.entries == other.entries

    def __repr__(self):
        return f"TwoCochain(dim={self.dim}, entries={self.entries})"


class ThreeForm:
    """Totally antisymmetric trilinear form by values on i < j < k."""

    def __init__(self, dim: int, entries: dict):
        self.dim = dim
        self.entries = {t: _frac(v) for t, v in entries.items() if v != 0}

    def value(self, i: int, j: int, k: int) -> Fraction:
        idx = (i, j, k)
        if len(set(idx)) < 3:
            return Fraction(0)
        order = tuple(sorted(idx))
        base = self.entries.get(order, Fraction(0))
        # permutation parity of idx relative to sorted order
        perm = [order.index(v) for v in idx]
        sign = 1
        for a in range(3):
            for b in range(a + 1, 3):
                if perm[a] > perm[b]:
                    sign = -sign
        return base * sign

    def is_zero(self) -> bool:
        return not self.entries


def pair_index(dim: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(dim) for j in range(i + 1, dim)]


def triple_index(dim: int) -> list[tuple[int, int, int]]:
    return [(i, j, k) for i in range(dim) for j in range(i + 1, dim)
            for k in range(j + 1, dim)]


def d1(L: LieAlgebra, alpha) -> TwoCochain:
    """(d1 a)(Xi, Xj) = -a([Xi, Xj])."""
    if len(alpha) != L.dim:
        raise ValidationError("1-cochain has wrong length")
    a = [_frac(v) for v in alpha]
    entries = {}
    for (i, j) in pair_index(L.dim):
        entries[(i, j)] = -sum(L.c[i][j][k] * a[k] for k in range(L.dim))
    return TwoCochain(L.dim, entries)


def d2_single(L: LieAlgebra, omega: TwoCochain, i: int, j: int, k: int) -> Fraction:
    def wb(p, q, r):  # w([Xp, Xq], Xr)
        return sum(L.c[p][q][m] * omega.value(m, r) for m in range(L.dim))

    return -wb(i, j, k) + wb(i, k, j) - wb(j, k, i)


def d2(L: LieAlgebra, omega: TwoCochain) -> ThreeForm:
    """(d2 w)(Xi,Xj,Xk) = -w([Xi,Xj],Xk) + w([Xi,Xk],Xj) - w([Xj,Xk],Xi)."""
    if omega.dim != L.dim:
        raise ValidationError("cochain dimension mismatch")
    entries = {t: d2_single(L, omega, *t) for t in triple_index(L.dim)}
    return ThreeForm(L.dim, entries)


def d1_matrix(L: LieAlgebra) -> list[list[Fraction]]:
    """Matrix of d1 : C^1 -> C^2 in the lexicographic pair basis."""
    pairs = pair_index(L.dim)
    return [[-L.c[i][j][k] for k in range(L.dim)] for (i, j) in pairs]


def d2_matrix(L: LieAlgebra) -> list[list[Fraction]]:
    """Matrix of d2 : C^2 -> C^3 in lexicographic pair/triple bases."""
    pairs = pair_index(L.dim)
    return [[d2_single(L, TwoCochain(L.dim, {(a, b): 1}), i, j, k) for (a, b) in pairs]
            for (i, j, k) in triple_index(L.dim)]


class CohomologyResult:
    def __init__(self, dim_h2: int, basis: list[TwoCochain]):
        self.dim_h2 = dim_h2
        self.basis = basis

    def to_json(self, names=None) -> dict:
        gens = []
        for w in self.basis:
            label = {}
            for (i, j), v in sorted(w.entries.items()):
                if names is not None:
                    key = f"({names[i]},{names[j]})"
                else:
                    key = f"({i},{j})"
                label[key] = str(v)
            gens.append(label)
        return {"dim_h2": self.dim_h2, "generators": gens}


def h2(L: LieAlgebra) -> CohomologyResult:
    """H^2(L, R) = ker d2 / im d1 by exact rational rank computations.

    Representatives are the reduced echelon basis of ker d2 complemented
    against im d1, so the output is deterministic.
    """
    violation = check_jacobi(L)
    if violation is not None:
        raise JacobiError(f"Jacobi identity fails at (i,j,k,l) = {violation}")
    pairs = pair_index(L.dim)
    kernel = nullspace(d2_matrix(L), len(pairs))
    image_rows = [list(col) for col in zip(*d1_matrix(L))]
    red_b, piv_b = rref(image_rows)
    reduced = [reduce_mod_rowspace(v, red_b, piv_b) for v in kernel]
    reps, _ = rref([v for v in reduced if any(x != 0 for x in v)])
    dim_h2 = len(kernel) - len(piv_b)
    if len(reps) != dim_h2:
        raise AssertionError("rank bookkeeping mismatch in h2")
    basis = [TwoCochain(L.dim, {pairs[idx]: v for idx, v in enumerate(vec) if v != 0})
             for vec in reps]
    return CohomologyResult(dim_h2, basis)


def central_extension(L: LieAlgebra, cocycles: list[TwoCochain]) -> LieAlgebra:
    """Central extension of L by the given closed 2-cochains.

    New basis vectors are appended and central; the bracket picks up
    w_r(X_i, X_j) along the r-th new direction.
    """
    for w in cocycles:
        if w.dim != L.dim:
            raise ValidationError("cocycle dimension mismatch")
        if not d2(L, w).is_zero():
            raise NotClosedError("cochain is not closed")
    n, k = L.dim, len(cocycles)
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(n):
                if L.c[i][j][l] != 0:
                    entries[(i, j, l)] = L.c[i][j][l]
            for r, w in enumerate(cocycles):
                v = w.value(i, j)
                if v != 0:
                    entries[(i, j, n + r)] = v
    if k == 1:
        new_names = ("E",)
    else:
        new_names = tuple(f"E{r+1}" for r in range(k))
    return LieAlgebra(n + k, entries, names=L.names + new_names)


def quotient_by_center(L: LieAlgebra, n_central: int) -> LieAlgebra:
    """Drop the last n_central (assumed central) directions; recovers the base."""
    n = L.dim - n_central
    if n < 1:
        raise ValidationError("quotient would be empty")
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if L.c[i][j][k] != 0:
                    entries[(i, j, k)] = L.c[i][j][k]
    return LieAlgebra(n, entries, names=L.names[:n])


def change_basis(L: LieAlgebra, S) -> LieAlgebra:
    """Structure constants in the basis X'_i = sum_a S[a][i] X_a (exact)."""
    n = L.dim
    s = [[_frac(v) for v in row] for row in S]
    if len(s) != n or any(len(row) != n for row in s):
        raise ValidationError("basis change must be n x n")
    sinv = invert_matrix(s)
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            vec = [Fraction(0)] * n
            for a in range(n):
                if s[a][i] == 0:
                    continue
                for b in range(n):
                    if s[b][j] == 0:
                        continue
                    coef = s[a][i] * s[b][j]
                    for cidx in range(n):
                        vec[cidx] += coef * L.c[a][b][cidx]
            for k in range(n):
                val = sum(sinv[k][cidx] * vec[cidx] for cidx in range(n))
                if val != 0:
                    entries[(i, j, k)] = val
    return LieAlgebra(n, entries, names=L.names)
