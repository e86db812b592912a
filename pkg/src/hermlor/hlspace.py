"""The Hermite-Lorentz space C^{n+1} with form q(r,u,s) = r s-bar + r-bar s + u^t u-bar,
the unipotent data (gamma2, gamma3, b2, b3), the algebra u(gamma2,gamma3,b2,b3),
its matrix model, the conjugation action, and the structural subgroups
U, P, B, D, B-hat of U(n,1).

Real coordinates: W = C^{n-1} is stored as Q^{2(n-1)} in the interleaved basis
(re1, im1, re2, im2, ...); C is stored as Q^2 = (re, im).  The full algebra
coordinates are (r_re, r_im, u..., s_re, s_im), dimension 2n+2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactla import (Mat, Q, Vec, dot, identity, kernel, mat, mat_mul,
                      mat_vec, qify, rank, rref, transpose, vec_add, vec_scale,
                      vec_sub, zeros)
from .liealg import LieAlgebra, Subspace, span


# ---------------------------------------------------------------------------
# exact complex rationals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexQ:
    re: Fraction
    im: Fraction

    @staticmethod
    def of(re, im=0) -> "ComplexQ":
        return ComplexQ(qify(re), qify(im))

    def __add__(self, o): return ComplexQ(self.re + o.re, self.im + o.im)
    def __sub__(self, o): return ComplexQ(self.re - o.re, self.im - o.im)
    def __neg__(self): return ComplexQ(-self.re, -self.im)

    def __mul__(self, o):
        if isinstance(o, ComplexQ):
            return ComplexQ(self.re * o.re - self.im * o.im,
                            self.re * o.im + self.im * o.re)
        o = qify(o)
        return ComplexQ(self.re * o, self.im * o)

    __rmul__ = __mul__

    def conj(self) -> "ComplexQ":
        return ComplexQ(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inv(self) -> "ComplexQ":
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("inverse of complex zero")
        return ComplexQ(self.re / n, -self.im / n)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0


CZERO = ComplexQ(Q(0), Q(0))
CONE = ComplexQ(Q(1), Q(0))
CI = ComplexQ(Q(0), Q(1))

CMat = list[list[ComplexQ]]


def cmat_mul(a: CMat, b: CMat) -> CMat:
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), CZERO)
             for j in range(len(b[0]))] for i in range(len(a))]


def cmat_sub(a: CMat, b: CMat) -> CMat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def cmat_eq(a: CMat, b: CMat) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def czeros(r: int, c: int) -> CMat:
    return [[CZERO for _ in range(c)] for _ in range(r)]


def cidentity(n: int) -> CMat:
    out = czeros(n, n)
    for i in range(n):
        out[i][i] = CONE
    return out


def cmat_inverse(a: CMat) -> CMat:
    """Inverse via realification (exact)."""
    n = len(a)
    big = zeros(2 * n, 2 * n)
    for i in range(n):
        for j in range(n):
            z = a[i][j]
            big[2 * i][2 * j] = z.re
            big[2 * i][2 * j + 1] = -z.im
            big[2 * i + 1][2 * j] = z.im
            big[2 * i + 1][2 * j + 1] = z.re
    from .exactla import inverse
    binv = inverse(big)
    return [[ComplexQ(binv[2 * i][2 * j], binv[2 * i + 1][2 * j])
             for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# real model of W = C^(n-1) and of C
# ---------------------------------------------------------------------------

def j_matrix(m: int) -> Mat:
    """Multiplication by i on Q^(2m) in the interleaved basis."""
    out = zeros(2 * m, 2 * m)
    for k in range(m):
        out[2 * k][2 * k + 1] = Q(-1)
        out[2 * k + 1][2 * k] = Q(1)
    return out


def apply_j(v: Vec) -> Vec:
    out = []
    for k in range(0, len(v), 2):
        out.extend([-v[k + 1], v[k]])
    return out


def cmul_vec(s: ComplexQ, v: Vec) -> Vec:
    """Complex scalar multiplication on an interleaved real vector."""
    return vec_add(vec_scale(s.re, v), vec_scale(s.im, apply_j(v)))


def herm_w(x: Vec, y: Vec) -> ComplexQ:
    """h(x,y) = y-bar^t x on W; <x,y> = Re h, omega(x,y) = Im h = <x, Jy>."""
    return ComplexQ(dot(x, y), dot(x, apply_j(y)))


def inner(x: Vec, y: Vec) -> Fraction:
    return dot(x, y)


def omega(x: Vec, y: Vec) -> Fraction:
    return dot(x, apply_j(y))


def real_to_complex_vec(v: Vec) -> list[ComplexQ]:
    return [ComplexQ(v[k], v[k + 1]) for k in range(0, len(v), 2)]


def complex_to_real_vec(v: Sequence[ComplexQ]) -> Vec:
    out: Vec = []
    for z in v:
        out.extend([z.re, z.im])
    return out


def complex_scalar(v: Vec) -> ComplexQ:
    """A length-2 real vector as a complex number."""
    return ComplexQ(v[0], v[1])


def real_matrix_of_unitary(sigma: CMat) -> Mat:
    """Realify an (n-1)x(n-1) complex matrix to 2(n-1)x2(n-1)."""
    m = len(sigma)
    out = zeros(2 * m, 2 * m)
    for i in range(m):
        for j in range(m):
            z = sigma[i][j]
            out[2 * i][2 * j] = z.re
            out[2 * i][2 * j + 1] = -z.im
            out[2 * i + 1][2 * j] = z.im
            out[2 * i + 1][2 * j + 1] = z.re
    return out


def is_unitary_real(sigma: Mat) -> bool:
    """sigma^t sigma = Id and sigma J = J sigma (realified unitary)."""
    m2 = len(sigma)
    st = transpose(sigma)
    if mat_mul(st, sigma) != identity(m2):
        return False
    j = j_matrix(m2 // 2)
    return mat_mul(sigma, j) == mat_mul(j, sigma)


# ---------------------------------------------------------------------------
# HLData
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HLData:
    """The data (gamma2, gamma3, b2, b3) of u(gamma2,gamma3,b2,b3).

    gamma2: 2(n-1) x 2(n-1), gamma3: 2(n-1) x 2, b2: row of length 2(n-1),
    b3: row of length 2, all over Q in the interleaved real basis of W.
    """

    n: int
    gamma2: tuple[tuple[Fraction, ...], ...]
    gamma3: tuple[tuple[Fraction, ...], ...]
    b2: tuple[Fraction, ...]
    b3: tuple[Fraction, ...]

    @staticmethod
    def make(n: int, gamma2=None, gamma3=None, b2=None, b3=None) -> "HLData":
        w = 2 * (n - 1)
        g2 = mat(gamma2) if gamma2 is not None else zeros(w, w)
        g3 = mat(gamma3) if gamma3 is not None else zeros(w, 2)
        bb2 = [qify(x) for x in b2] if b2 is not None else [Q(0)] * w
        bb3 = [qify(x) for x in b3] if b3 is not None else [Q(0), Q(0)]
        if len(g2) != w or (w and len(g2[0]) != w) or len(g3) != w or \
                (w and len(g3[0]) != 2) or len(bb2) != w or len(bb3) != 2:
            raise ValueError("dimension mismatch in HLData")
        return HLData(n, tuple(map(tuple, g2)), tuple(map(tuple, g3)),
                      tuple(bb2), tuple(bb3))

    @property
    def wdim(self) -> int:
        return 2 * (self.n - 1)

    def g2(self) -> Mat:
        return [list(r) for r in self.gamma2]

    def g3(self) -> Mat:
        return [list(r) for r in self.gamma3]

    def gamma2_apply(self, u: Vec) -> Vec:
        return mat_vec(self.g2(), u)

    def gamma3_apply(self, s: ComplexQ) -> Vec:
        g3 = self.g3()
        return [row[0] * s.re + row[1] * s.im for row in g3]

    def gamma_apply(self, u: Vec, s: ComplexQ) -> Vec:
        return vec_add(self.gamma2_apply(u), self.gamma3_apply(s))

    def b2_apply(self, u: Vec) -> Fraction:
        return dot(list(self.b2), u)

    def b3_apply(self, s: ComplexQ) -> Fraction:
        return self.b3[0] * s.re + self.b3[1] * s.im

    def b_apply(self, u: Vec, s: ComplexQ) -> Fraction:
        return self.b2_apply(u) + self.b3_apply(s)

    def im_gamma2(self) -> Subspace:
        cols = transpose(self.g2()) if self.wdim else []
        return span(self.wdim, cols)

    def ker_gamma2(self) -> Subspace:
        if self.wdim == 0:
            return span(0, [])
        return span(self.wdim, kernel(self.g2()))

    def w0(self) -> Vec:
        """gamma3(i) - J gamma3(1)."""
        return vec_sub(self.gamma3_apply(CI), apply_j(self.gamma3_apply(CONE)))

    def decomposition(self) -> tuple[list[Vec], list[Vec], list[Vec], list[Vec]]:
        """Adapted bases of (Im gamma2, J Im gamma2, S, T)."""
        w = self.wdim
        im2 = [list(r) for r in self.im_gamma2().basis]
        jim2 = [apply_j(v) for v in im2]
        u2 = im2 + jim2
        # <,>-orthogonal complement of U2 (J-invariant, hence h-orthogonal)
        comp = kernel(u2) if u2 else ([list(r) for r in identity(w)] if w else [])
        ker2 = self.ker_gamma2()
        # S = ker gamma2 n U2-perp (then ker gamma2 = U2 + S for admissible data)
        from .liealg import subspace_intersection
        s_space = subspace_intersection(span(w, comp), ker2)
        s_basis = [list(r) for r in s_space.basis]
        # T = <,>-orthogonal complement of S inside U2-perp
        t_basis = _relative_orthogonal(span(w, comp), s_basis)
        return im2, jim2, s_basis, t_basis

    def pi(self, which: int, v: Vec) -> Vec:
        """Projection of v in ker gamma2 onto factor 1, 2 or 3 of the
        decomposition Im gamma2 + J Im gamma2 + S (+ T)."""
        im2, jim2, s_b, t_b = self.decomposition()
        parts = [im2, jim2, s_b, t_b]
        cols = [u for p in parts for u in p]
        m = [[cols[j][i] for j in range(len(cols))] for i in range(self.wdim)]
        from .exactla import solve
        sol = solve(m, v)
        if sol is None:
            raise ValueError("vector outside W decomposition span")
        offs = [0, len(im2), len(im2) + len(jim2),
                len(im2) + len(jim2) + len(s_b)]
        sizes = [len(im2), len(jim2), len(s_b), len(t_b)]
        k = which - 1
        out = [Q(0)] * self.wdim
        for t in range(sizes[k]):
            out = vec_add(out, vec_scale(sol[offs[k] + t], parts[k][t]))
        return out


def _relative_orthogonal(ambient: Subspace, s_basis: list[Vec]) -> list[Vec]:
    """Basis of the <,>-orthogonal complement of span(s_basis) inside ambient."""
    if not s_basis:
        return [list(r) for r in ambient.basis]
    out = []
    rows = s_basis[:]
    for v in (list(r) for r in ambient.basis):
        # project v orthogonally off span(s_basis): exact Gram-Schmidt
        w = list(v)
        basis_o: list[Vec] = []
        for sb in s_basis:
            u = list(sb)
            for b in basis_o:
                u = vec_sub(u, vec_scale(dot(u, b) / dot(b, b), b))
            if any(x != 0 for x in u):
                basis_o.append(u)
        for b in basis_o:
            w = vec_sub(w, vec_scale(dot(w, b) / dot(b, b), b))
        if any(x != 0 for x in w) and rank(rows + [w]) > rank(rows):
            out.append(w)
            rows.append(w)
    return out


# ---------------------------------------------------------------------------
# admissibility
# ---------------------------------------------------------------------------

def validate_hl(d: HLData) -> dict[str, bool]:
    """The four admissibility conditions plus structural checks."""
    w = d.wdim
    im2 = d.im_gamma2()
    ker2 = d.ker_gamma2()
    im2_vecs = [list(r) for r in im2.basis]
    jim2_vecs = [apply_j(v) for v in im2_vecs]

    cond1a = all(ker2.contains(v) for v in im2_vecs + jim2_vecs) and \
        rank(im2_vecs + jim2_vecs) == 2 * im2.dim
    cond1b = all(omega(x, y) == 0 for x in im2_vecs for y in im2_vecs)
    cond2 = ker2.contains(d.w0()) if w else True

    basis_w = [[Q(1) if i == k else Q(0) for i in range(w)] for k in range(w)]
    cond3a = True
    for u in basis_w:
        g2u = d.gamma2_apply(u)
        for s in (CONE, CI):
            if d.b2_apply(cmul_vec(s, g2u)) != 2 * omega(g2u, d.gamma3_apply(s)):
                cond3a = False
    cond3b = True
    for s, sp in itertools.product((CONE, CI), repeat=2):
        lhs = d.b2_apply(vec_sub(cmul_vec(sp, d.gamma3_apply(s)),
                                 cmul_vec(s, d.gamma3_apply(sp))))
        rhs = 2 * omega(d.gamma3_apply(s), d.gamma3_apply(sp))
        if lhs != rhs:
            cond3b = False
    rank_bound = 3 * rank(d.g2()) <= 2 * d.n - 2 if w else True
    return {
        "im_jim_in_ker": cond1a,
        "omega_isotropic": cond1b,
        "w0_in_ker": cond2,
        "b2_gamma2": cond3a,
        "b2_gamma3": cond3b,
        "rank_bound": rank_bound,
    }


def is_admissible(d: HLData) -> bool:
    return all(validate_hl(d).values())


# ---------------------------------------------------------------------------
# the algebra and its matrix model
# ---------------------------------------------------------------------------

def _coords_split(d: HLData, x: Vec) -> tuple[ComplexQ, Vec, ComplexQ]:
    w = d.wdim
    r = ComplexQ(x[0], x[1])
    u = x[2:2 + w]
    s = ComplexQ(x[2 + w], x[3 + w])
    return r, u, s


def _coords_join(r: ComplexQ, u: Vec, s: ComplexQ) -> Vec:
    return [r.re, r.im] + list(u) + [s.re, s.im]


def algebra_bracket(d: HLData, x: Vec, y: Vec) -> Vec:
    """[(r,u,s),(r',u',s')] in real coordinates (dimension 2n+2)."""
    r, u, s = _coords_split(d, x)
    rp, up, sp = _coords_split(d, y)
    gus = d.gamma_apply(u, s)
    gups = d.gamma_apply(up, sp)
    new_r = herm_w(u, gups) - herm_w(up, gus) + \
        CI * (sp * d.b_apply(u, s) - s * d.b_apply(up, sp))
    new_u = vec_sub(cmul_vec(sp, gus), cmul_vec(s, gups))
    return _coords_join(new_r, new_u, CZERO)


def build_algebra(d: HLData) -> LieAlgebra:
    """The Lie algebra u(gamma2,gamma3,b2,b3) as structure constants."""
    if not is_admissible(d):
        raise ValueError("HLData fails admissibility: "
                         f"{validate_hl(d)}")
    dim = 2 * d.n + 2
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    basis = [[Q(1) if t == i else Q(0) for t in range(dim)] for i in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            b = algebra_bracket(d, basis[i], basis[j])
            entry = {k: c for k, c in enumerate(b) if c != 0}
            if entry:
                table[(i, j)] = entry
    return LieAlgebra(dim, table)


def matrix_rep(d: HLData, x: Vec) -> CMat:
    """The (n+2)x(n+2) complex affine matrix of (r,u,s)."""
    n = d.n
    r, u, s = _coords_split(d, x)
    g = real_to_complex_vec(d.gamma_apply(u, s))
    ucx = real_to_complex_vec(u)
    out = czeros(n + 2, n + 2)
    for k in range(n - 1):
        out[0][1 + k] = -g[k].conj()
    out[0][n] = CI * d.b_apply(u, s)
    out[0][n + 1] = r
    for k in range(n - 1):
        out[1 + k][n] = g[k]
        out[1 + k][n + 1] = ucx[k]
    out[n][n + 1] = s
    return out


# ---------------------------------------------------------------------------
# conjugation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjParams:
    lam: ComplexQ
    sigma: tuple[tuple[Fraction, ...], ...]  # realified unitary, 2(n-1) square
    v: tuple[Fraction, ...]                  # vector in W (interleaved)
    s1: ComplexQ

    @staticmethod
    def make(n: int, lam=CONE, sigma=None, v=None, s1=CZERO) -> "ConjParams":
        w = 2 * (n - 1)
        sg = mat(sigma) if sigma is not None else identity(w)
        vv = [qify(x) for x in v] if v is not None else [Q(0)] * w
        if lam.is_zero():
            raise ValueError("lambda must be nonzero")
        if not is_unitary_real(sg):
            raise ValueError("sigma is not unitary")
        return ConjParams(lam, tuple(map(tuple, sg)), tuple(vv), s1)

    def sigma_mat(self) -> Mat:
        return [list(r) for r in self.sigma]


def conjugate(d: HLData, p: ConjParams) -> HLData:
    """The data of g U(gamma2,gamma3,b2,b3) g^-1 (Prop. conj formulas)."""
    w = d.wdim
    lam, s1, v = p.lam, p.s1, list(p.v)
    sig = p.sigma_mat()
    sig_inv = transpose(sig)
    lam2 = lam.norm2()

    def stilde(s: ComplexQ) -> Vec:
        return vec_sub(cmul_vec(lam * s1, d.gamma3_apply(lam * s)),
                       cmul_vec(s, v))

    basis_w = [[Q(1) if t == i else Q(0) for t in range(w)] for i in range(w)]
    g2_cols = []
    b2_new = []
    for u in basis_w:
        siu = mat_vec(sig_inv, u)
        g2siu = d.gamma2_apply(siu)
        g2_cols.append(cmul_vec(lam, mat_vec(sig, g2siu)))
        b2_new.append(lam2 * d.b2_apply(vec_add(siu, cmul_vec(lam * s1, g2siu)))
                      - 2 * omega(cmul_vec(lam, g2siu), v))
    g2_new = [[g2_cols[j][i] for j in range(w)] for i in range(w)]

    g3_cols = []
    b3_new = []
    for s in (CONE, CI):
        st = stilde(s)
        g3s = vec_add(cmul_vec(lam, mat_vec(sig, d.gamma3_apply(lam * s))),
                      cmul_vec(lam, mat_vec(sig, d.gamma2_apply(st))))
        g3_cols.append(g3s)
        b3_new.append(lam2 * d.b3_apply(lam * s)
                      + lam2 * d.b2_apply(vec_add(st, cmul_vec(lam * s1,
                                                               d.gamma2_apply(st))))
                      - 2 * omega(cmul_vec(lam, vec_add(d.gamma2_apply(st),
                                                        d.gamma3_apply(lam * s))), v))
    g3_new = [[g3_cols[0][i], g3_cols[1][i]] for i in range(w)]
    return HLData.make(d.n, g2_new, g3_new, b2_new, b3_new)


def conj_group_matrix(d: HLData, p: ConjParams, r1: ComplexQ = CZERO,
                      u1: Vec | None = None) -> CMat:
    """The affine (n+2)x(n+2) element g realizing the conjugation."""
    n = d.n
    w = d.wdim
    lam, s1 = p.lam, p.s1
    v = list(p.v)
    vcx = real_to_complex_vec(v)
    vnorm2 = sum((z.norm2() for z in vcx), Q(0))
    a = ComplexQ(-vnorm2, Q(0)) * lam.inv() * Q(1, 2)  # Re(lam a) = -|v|^2/2
    sig_cx = _complex_matrix_of_real(p.sigma_mat())
    u1 = u1 if u1 is not None else [Q(0)] * w
    u1cx = real_to_complex_vec(u1)
    g = czeros(n + 2, n + 2)
    g[0][0] = lam.conj()
    for k in range(n - 1):
        g[0][1 + k] = -vcx[k].conj()
    g[0][n] = a
    g[0][n + 1] = r1
    sv = [sum((sig_cx[i][k] * vcx[k] for k in range(n - 1)), CZERO)
          for i in range(n - 1)]
    for i in range(n - 1):
        for k in range(n - 1):
            g[1 + i][1 + k] = sig_cx[i][k]
        g[1 + i][n] = lam.inv() * sv[i]
        g[1 + i][n + 1] = u1cx[i]
    g[n][n] = lam.inv()
    g[n][n + 1] = s1
    g[n + 1][n + 1] = CONE
    return g


def _complex_matrix_of_real(sig: Mat) -> CMat:
    m = len(sig) // 2
    return [[ComplexQ(sig[2 * i][2 * j], sig[2 * i + 1][2 * j])
             for j in range(m)] for i in range(m)]


def simplify_pi2_gamma3(d: HLData, height: int = 2) -> ConjParams | None:
    """Search conjugation parameters making pi2(gamma3'(xi)) = 0.

    Bounded rational search (Remark semplification realizes this over R; a
    rational witness need not exist, in which case None is returned).
    """
    w = d.wdim
    if rank(d.g2()) == 0:
        raise ValueError("solver requires gamma2 != 0")
    if all(x == 0 for x in d.pi(3, d.w0())):
        raise ValueError("solver requires pi3(w0) != 0")
    vals = [Q(k) for k in range(-height, height + 1)]
    for xre, xim in itertools.product(vals, repeat=2):
        lam = ComplexQ(xre, xim)
        if lam.is_zero():
            continue
        for s1re in vals:
            p = ConjParams.make(d.n, lam=lam, s1=ComplexQ(s1re, Q(0)))
            dd = conjugate(d, p)
            if not is_admissible(dd):
                continue
            g3xi = dd.gamma3_apply(CONE)
            if all(x == 0 for x in dd.pi(2, g3xi)):
                return p
    return None


# ---------------------------------------------------------------------------
# subgroup membership (linear parts, (n+1)x(n+1) over ComplexQ)
# ---------------------------------------------------------------------------

def _shape_check(m: CMat) -> int:
    n1 = len(m)
    if any(len(row) != n1 for row in m):
        raise ValueError("membership test requires a square complex matrix")
    return n1 - 1  # = n


def _block_zero_below(m: CMat, n: int) -> bool:
    for i in range(1, n + 1):
        if not m[i][0].is_zero():
            return False
    for i in range(n, n + 1):
        for j in range(1, n):
            if not m[i][j].is_zero():
                return False
    return True


def in_maximal_unipotent(m: CMat) -> bool:
    n = _shape_check(m)
    if not _block_zero_below(m, n):
        return False
    if m[0][0] != CONE or m[n][n] != CONE:
        return False
    for i in range(1, n):
        for j in range(1, n):
            if m[i][j] != (CONE if i == j else CZERO):
                return False
    v = [m[i][n] for i in range(1, n)]
    if any(m[0][j] != -v[j - 1].conj() for j in range(1, n)):
        return False
    vn = sum((z.norm2() for z in v), Q(0))
    return m[0][n].re == -vn / 2


def in_parabolic(m: CMat) -> bool:
    n = _shape_check(m)
    if not _block_zero_below(m, n):
        return False
    lam = m[0][0].conj()
    if lam.is_zero() or m[n][n] != lam.inv():
        return False
    sigma = [[m[i][j] for j in range(1, n)] for i in range(1, n)]
    if not _is_unitary_cmat(sigma):
        return False
    v = [-m[0][j].conj() for j in range(1, n)]
    sv = [sum((sigma[i][k] * v[k] for k in range(n - 1)), CZERO)
          for i in range(n - 1)]
    if any(m[1 + i][n] != lam.inv() * sv[i] for i in range(n - 1)):
        return False
    a = m[0][n]
    vn = sum((z.norm2() for z in v), Q(0))
    return (lam * a).re == -vn / 2


def in_borel(m: CMat) -> bool:
    n = _shape_check(m)
    if not in_parabolic(m):
        return False
    return _is_diagonal_block(m, n)


def in_D(m: CMat) -> bool:
    n = _shape_check(m)
    for i in range(n + 1):
        for j in range(n + 1):
            if i != j and not m[i][j].is_zero():
                return False
    lam = m[0][0].conj()
    if lam.is_zero() or m[n][n] != lam.inv():
        return False
    return all(m[i][i].norm2() == 1 for i in range(1, n))


def in_Bhat(m: CMat) -> bool:
    n = _shape_check(m)
    if not _block_zero_below(m, n):
        return False
    lam = m[0][0]
    if lam.norm2() != 1 or m[n][n] != lam:
        return False
    sigma = [[m[i][j] for j in range(1, n)] for i in range(1, n)]
    if not _is_unitary_cmat(sigma) or not _is_diag_cmat(sigma):
        return False
    v = [-m[0][j].conj() for j in range(1, n)]
    sv = [sum((sigma[i][k] * v[k] for k in range(n - 1)), CZERO)
          for i in range(n - 1)]
    if any(m[1 + i][n] != lam * sv[i] for i in range(n - 1)):
        return False
    a = m[0][n]
    vn = sum((z.norm2() for z in v), Q(0))
    return (lam.conj() * a).re == -vn / 2


def _is_unitary_cmat(sigma: CMat) -> bool:
    k = len(sigma)
    for i in range(k):
        for j in range(k):
            acc = sum((sigma[t][i].conj() * sigma[t][j] for t in range(k)), CZERO)
            if acc != (CONE if i == j else CZERO):
                return False
    return True


def _is_diag_cmat(sigma: CMat) -> bool:
    k = len(sigma)
    return all(sigma[i][j].is_zero() for i in range(k) for j in range(k) if i != j)


def _is_diagonal_block(m: CMat, n: int) -> bool:
    return all(m[i][j].is_zero()
               for i in range(1, n) for j in range(1, n) if i != j)


def b2_vanishing_consequence(d: HLData) -> bool:
    """Theorem check (Prop. b2): pi3(w0)=0 implies Im gamma3 in Im gamma2
    and b2 = 0 on Im gamma2 + J Im gamma2."""
    if any(x != 0 for x in d.pi(3, d.w0())):
        raise ValueError("precondition pi3(w0) = 0 violated")
    im2 = d.im_gamma2()
    ok = im2.contains(d.gamma3_apply(CONE)) and im2.contains(d.gamma3_apply(CI))
    for v in [list(r) for r in im2.basis]:
        if d.b2_apply(v) != 0 or d.b2_apply(apply_j(v)) != 0:
            ok = False
    return ok
