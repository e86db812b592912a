"""Nilpotent Lie algebras over Q given by structure constants.

A :class:`LieAlgebra` stores the constants c_{ij}^k only for i < j
(antisymmetry is implicit); indices are 0-based internally, while the
``from_table`` constructor and ``table`` accessor speak the 1-based
convention used in printed bracket tables.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .exactla import (Mat, Q, Vec, identity, in_row_space, inverse, kernel,
                      mat_mul, mat_vec, mat_pow, qify, rank, rref, vec_add,
                      vec_scale, zeros)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n given by a row-reduced basis."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]  # rows, in rref

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vec) -> bool:
        rows = [list(r) for r in self.basis]
        return rank(rows + [list(v)]) == len(rows) if rows else all(x == 0 for x in v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(list(r)) for r in other.basis)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and
                self.ambient_dim == other.ambient_dim and
                self.basis == other.basis)


def span(ambient_dim: int, vectors: Iterable[Vec]) -> Subspace:
    rows = [list(v) for v in vectors if any(x != 0 for x in v)]
    if not rows:
        return Subspace(ambient_dim, ())
    red, rk, _ = rref(rows)
    return Subspace(ambient_dim, tuple(tuple(r) for r in red[:rk]))


@dataclass(frozen=True)
class LieAlgebra:
    """Lie algebra over Q by structure constants (0-based, i < j only)."""

    dim: int
    brackets: Mapping[tuple[int, int], Mapping[int, Fraction]]

    @staticmethod
    def from_table(dim: int, table: Mapping[tuple[int, int], Mapping[int, object]]
                   ) -> "LieAlgebra":
        """1-based bracket table, e.g. {(1,2): {3: 1}} for [x1,x2]=x3."""
        out: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), rhs in table.items():
            if not 1 <= i < j <= dim:
                raise ValueError(f"bad bracket indices ({i},{j})")
            entry = {k - 1: qify(c) for k, c in rhs.items() if qify(c) != 0}
            if entry:
                out[(i - 1, j - 1)] = entry
        return LieAlgebra(dim, out)

    def table(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        """1-based copy of the nonzero structure constants."""
        return {(i + 1, j + 1): {k + 1: c for k, c in rhs.items()}
                for (i, j), rhs in sorted(self.brackets.items())}

    def bracket(self, x: Vec, y: Vec) -> Vec:
        out = [Q(0)] * self.dim
        for (i, j), rhs in self.brackets.items():
            coeff = x[i] * y[j] - x[j] * y[i]
            if coeff:
                for k, c in rhs.items():
                    out[k] += coeff * c
        return out

    def ad(self, x: Vec) -> Mat:
        """Matrix of ad(x): y -> [x, y] on the standard basis (columns)."""
        cols = [self.bracket(x, basis_vec(self.dim, j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def basis_bracket(self, i: int, j: int) -> Vec:
        out = [Q(0)] * self.dim
        if i == j:
            return out
        sgn = 1
        if i > j:
            i, j, sgn = j, i, -1
        for k, c in self.brackets.get((i, j), {}).items():
            out[k] = sgn * c
        return out


def basis_vec(n: int, i: int) -> Vec:
    v = [Q(0)] * n
    v[i] = Q(1)
    return v


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {})


def validate_jacobi(l: LieAlgebra) -> list[tuple[int, int, int]]:
    """Triples (i,j,k), 0-based, where Jacobi fails; empty means valid."""
    bad = []
    n = l.dim
    for i in range(n):
        ei = basis_vec(n, i)
        for j in range(i + 1, n):
            ej = basis_vec(n, j)
            bij = l.basis_bracket(i, j)
            for k in range(j + 1, n):
                ek = basis_vec(n, k)
                s = vec_add(vec_add(l.bracket(bij, ek),
                                    l.bracket(l.basis_bracket(j, k), ei)),
                            l.bracket(l.basis_bracket(k, i), ej))
                if any(x != 0 for x in s):
                    bad.append((i, j, k))
    return bad


def _require_lie(l: LieAlgebra) -> None:
    bad = validate_jacobi(l)
    if bad:
        raise ValueError(f"Jacobi identity fails on triples {bad[:3]}")


def lower_central_series(l: LieAlgebra, check: bool = True) -> list[Subspace]:
    """C^1 = g, C^k = [g, C^(k-1)]; chain down to 0."""
    if check:
        _require_lie(l)
    n = l.dim
    chain = [span(n, [basis_vec(n, i) for i in range(n)])]
    while chain[-1].dim > 0:
        prev = chain[-1]
        vecs = [l.bracket(basis_vec(n, i), list(v))
                for i in range(n) for v in prev.basis]
        nxt = span(n, vecs)
        if nxt.dim == prev.dim:
            raise ValueError("Lie algebra is not nilpotent")
        chain.append(nxt)
    return chain


def nilpotency_class(l: LieAlgebra) -> int:
    return len(lower_central_series(l, check=False)) - 1


def is_nilpotent(l: LieAlgebra) -> bool:
    try:
        lower_central_series(l, check=False)
        return True
    except ValueError:
        return False


def derived(l: LieAlgebra) -> Subspace:
    n = l.dim
    return span(n, [l.basis_bracket(i, j)
                    for i in range(n) for j in range(i + 1, n)])


def center(l: LieAlgebra) -> Subspace:
    """Kernel of x -> (all brackets [x, e_j])."""
    n = l.dim
    big = []
    for j in range(n):
        # row block: coordinates of [x, e_j] as linear forms in x
        adj = l.ad(basis_vec(n, j))  # [e_j, x]
        for row in adj:
            big.append([-x for x in row])
    return span(n, kernel_cols_as_vectors(big, n))


def kernel_cols_as_vectors(m: Mat, n: int) -> list[Vec]:
    if not m:
        return [basis_vec(n, i) for i in range(n)]
    return kernel(m)


def upper_central_series(l: LieAlgebra) -> list[Subspace]:
    """0 = Z_0 < Z_1 = center < ... up to the full algebra (nilpotent)."""
    n = l.dim
    chain = [span(n, [])]
    while chain[-1].dim < n:
        z = chain[-1]
        proj = _quotient_projection(z)
        big = []
        for j in range(n):
            adj = l.ad(basis_vec(n, j))
            cols = [proj(l.bracket(basis_vec(n, i), basis_vec(n, j)))
                    for i in range(n)]
            for r in range(len(cols[0]) if cols and cols[0] else 0):
                big.append([cols[i][r] for i in range(n)])
        nxt = span(n, kernel_cols_as_vectors(big, n))
        if nxt.dim == z.dim:
            raise ValueError("Lie algebra is not nilpotent")
        chain.append(nxt)
    return chain


def _quotient_projection(s: Subspace):
    """Map v -> coordinates of v + S in a complement of S (non-pivot coords)."""
    rows = [list(r) for r in s.basis]
    if not rows:
        return lambda v: list(v)
    red, rk, pivots = rref(rows)
    free = [c for c in range(s.ambient_dim) if c not in pivots]

    def proj(v: Vec) -> Vec:
        w = list(v)
        for i, p in enumerate(pivots):
            if w[p] != 0:
                f = w[p]
                w = [a - f * b for a, b in zip(w, red[i])]
        return [w[c] for c in free]

    return proj


def quotient_projection(s: Subspace):
    return _quotient_projection(s)


def characteristic_sequence(l: LieAlgebra, samples: int = 64,
                            seed: int = 0) -> list[int]:
    """Max (lexicographic) Jordan-block size sequence of ad(x), x not in derived.

    Sampling-based: all basis vectors plus ``samples`` random integer vectors
    of height <= 10; the generic value is attained on a Zariski-open set.
    """
    if not is_nilpotent(l):
        raise ValueError("characteristic sequence needs a nilpotent algebra")
    n = l.dim
    d = derived(l)
    rng = random.Random(seed)
    cands = [basis_vec(n, i) for i in range(n)]
    for _ in range(samples):
        cands.append([Q(rng.randint(-10, 10)) for _ in range(n)])
    best: list[int] | None = None
    for x in cands:
        if d.contains(x):
            continue
        seq = _jordan_sizes(l.ad(x), n)
        if best is None or seq > best:
            best = seq
    if best is None:
        raise ValueError("no sample outside the derived algebra")
    return best


def _jordan_sizes(a: Mat, n: int) -> list[int]:
    ranks = [n]
    p = identity(n)
    while True:
        p = mat_mul(p, a)
        r = rank(p)
        ranks.append(r)
        if r == 0:
            break
        if len(ranks) > n + 1:
            raise ValueError("ad(x) is not nilpotent")
    ranks.append(0)
    sizes = []
    for k in range(1, len(ranks) - 1):
        cnt = ranks[k - 1] - 2 * ranks[k] + ranks[k + 1]
        sizes.extend([k] * cnt)
    return sorted(sizes, reverse=True)


def carnot_associated(l: LieAlgebra) -> tuple[LieAlgebra, list[int]]:
    """Graded algebra Car(g) = sum of C^i/C^(i+1); returns (algebra, grading dims).

    The output basis is adapted: consecutive groups of sizes given by the
    grading list represent the layers g^1, g^2, ...
    """
    chain = lower_central_series(l)
    n = l.dim
    # layer representatives: vectors of C^i completing C^(i+1)
    layers: list[list[Vec]] = []
    for i in range(len(chain) - 1):
        cur = [list(r) for r in chain[i].basis]
        below = [list(r) for r in chain[i + 1].basis]
        reps = []
        rows = below[:]
        for v in cur:
            if rank(rows + [v]) > rank(rows):
                reps.append(v)
                rows.append(v)
        layers.append(reps)
    grading = [len(x) for x in layers]
    reps_flat = [v for layer in layers for v in layer]
    levels = [i + 1 for i, layer in enumerate(layers) for _ in layer]
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(n):
        for b in range(a + 1, n):
            lev = levels[a] + levels[b]
            if lev > len(layers):
                continue
            w = l.bracket(reps_flat[a], reps_flat[b])
            coords = _coords_mod(w, layers[lev - 1],
                                 chain[lev] if lev < len(chain) else span(n, []))
            entry = {}
            off = sum(grading[:lev - 1])
            for t, c in enumerate(coords):
                if c != 0:
                    entry[off + t] = c
            if entry:
                table[(a, b)] = entry
    return LieAlgebra(n, table), grading


def _coords_mod(w: Vec, reps: list[Vec], below: Subspace) -> list[Fraction]:
    """Coordinates of w in span(reps) modulo the subspace ``below``."""
    cols = [list(r) for r in reps] + [list(r) for r in below.basis]
    m = [[cols[j][i] for j in range(len(cols))] for i in range(len(w))]
    from .exactla import solve
    sol = solve(m, list(w))
    if sol is None:
        raise ValueError("vector not in expected layer span")
    return sol[:len(reps)]


def bch_product(l: LieAlgebra, x: Vec, y: Vec) -> Vec:
    """Baker-Campbell-Hausdorff product through degree 4 (class <= 4 only)."""
    if nilpotency_class(l) > 4:
        raise ValueError("BCH truncation requires nilpotency class <= 4")
    b = l.bracket
    xy = b(x, y)
    xxy = b(x, xy)
    yyx = b(y, b(y, x))
    yxxy = b(y, xxy)
    z = vec_add(x, y)
    z = vec_add(z, vec_scale(Q(1, 2), xy))
    z = vec_add(z, vec_scale(Q(1, 12), vec_add(xxy, yyx)))
    z = vec_add(z, vec_scale(Q(-1, 24), yxxy))
    return z


def fibration_dims(l: LieAlgebra, n: int) -> tuple[int, int]:
    """(p, q): q = dim C^2, p = 2n+2-q, with the rank bound asserted."""
    if l.dim != 2 * n + 2:
        raise ValueError(f"dimension {l.dim} != 2n+2 for n={n}")
    q = derived(l).dim
    p = l.dim - q
    assert 3 * p >= 2 * n + 1, "fibration base dimension below the rank bound"
    return p, q


def derivation_dim(l: LieAlgebra) -> int:
    """Dimension of the derivation algebra Der(l) (an isomorphism invariant)."""
    n = l.dim
    rows: list[Vec] = []
    # unknowns: D[p][q] row-major (D e_q = sum_p D[p][q] e_p)
    for i in range(n):
        for j in range(i + 1, n):
            br = l.basis_bracket(i, j)
            for k in range(n):
                row = [Q(0)] * (n * n)
                for m in range(n):
                    row[k * n + m] += br[m]
                for p in range(n):
                    row[p * n + i] -= l.basis_bracket(p, j)[k]
                    row[p * n + j] -= l.basis_bracket(i, p)[k]
                rows.append(row)
    from .exactla import rank as _rank
    rows = [r for r in rows if any(c != 0 for c in r)]
    return n * n - (_rank(rows) if rows else 0)


def direct_sum(l1: LieAlgebra, l2: LieAlgebra) -> LieAlgebra:
    n1 = l1.dim
    table: dict[tuple[int, int], dict[int, Fraction]] = {
        k: dict(v) for k, v in l1.brackets.items()}
    for (i, j), rhs in l2.brackets.items():
        table[(i + n1, j + n1)] = {k + n1: c for k, c in rhs.items()}
    return LieAlgebra(n1 + l2.dim, table)


def abelian_factor_dim(l: LieAlgebra) -> int:
    """Dimension of the maximal abelian direct summand: dim Z - dim(Z n C^2)."""
    z = center(l)
    d = derived(l)
    inter = subspace_intersection(z, d)
    return z.dim - inter.dim


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    n = a.ambient_dim
    ra = [list(r) for r in a.basis]
    rb = [list(r) for r in b.basis]
    if not ra or not rb:
        return span(n, [])
    # x = sum s_i ra_i = sum t_j rb_j  ->  kernel of [ra^T | -rb^T]
    m = [[ra[i][c] for i in range(len(ra))] + [-rb[j][c] for j in range(len(rb))]
         for c in range(n)]
    ker = kernel(m)
    vecs = []
    for k in ker:
        v = [Q(0)] * n
        for i in range(len(ra)):
            v = vec_add(v, vec_scale(k[i], ra[i]))
        vecs.append(v)
    return span(n, vecs)


def change_of_basis(l: LieAlgebra, t: Mat) -> LieAlgebra:
    """Structure constants in the basis y_i = sum_j t[i][j] x_j."""
    tinv = inverse([list(r) for r in zip(*t)])  # columns are new basis vectors
    n = l.dim
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = l.bracket(list(t[i]), list(t[j]))
            coords = mat_vec(tinv, w)
            entry = {k: c for k, c in enumerate(coords) if c != 0}
            if entry:
                table[(i, j)] = entry
    return LieAlgebra(n, table)


def is_isomorphism(l1: LieAlgebra, l2: LieAlgebra, t: Mat) -> bool:
    """Does y = t·x (rows of t = images of l1 basis in l2 coords) carry l1 to l2?"""
    n = l1.dim
    if l2.dim != n:
        return False
    from .exactla import det
    if det([list(r) for r in t]) == 0:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            lhs = l2.bracket(list(t[i]), list(t[j]))
            rhs = [Q(0)] * n
            for k, c in l1.brackets.get((i, j), {}).items():
                rhs = vec_add(rhs, vec_scale(c, list(t[k])))
            if lhs != rhs:
                return False
    return True


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    nilpotency_class: int
    lcs_dims: tuple[int, ...]
    ucs_dims: tuple[int, ...]
    center_dim: int
    derived_dim: int
    char_seq: tuple[int, ...]
    abelian_factor_dim: int

    def as_tuple(self):
        return (self.dim, self.nilpotency_class, self.lcs_dims, self.ucs_dims,
                self.center_dim, self.derived_dim, self.char_seq,
                self.abelian_factor_dim)


def fingerprint(l: LieAlgebra, samples: int = 64, seed: int = 0) -> Fingerprint:
    lcs = lower_central_series(l, check=False)
    ucs = upper_central_series(l)
    return Fingerprint(
        dim=l.dim,
        nilpotency_class=len(lcs) - 1,
        lcs_dims=tuple(s.dim for s in lcs),
        ucs_dims=tuple(s.dim for s in ucs),
        center_dim=center(l).dim,
        derived_dim=derived(l).dim,
        char_seq=tuple(characteristic_sequence(l, samples=samples, seed=seed)),
        abelian_factor_dim=abelian_factor_dim(l),
    )
