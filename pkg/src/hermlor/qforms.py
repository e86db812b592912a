"""Binary cubics over Q, cubic-field generators, and abelian-by-cyclic groups.

A :class:`BinaryCubic` (e, f, g, h) is the form e y^3 + 3f y^2 z + 3g y z^2
+ h z^3.  Cubics with negative discriminant have exactly one real root; the
GL(2, Q) reduction either splits off a rational root, giving the normal form
y(e y^2 + g z^2), or produces an irreducible cubic field generated by a root.
Cubic fields are presented by generators theta with minimal polynomial
y^3 - t (form 1) or y^3 - 3y - t (form 2), and minimal polynomials of
combinations m theta^2 + n theta + r are computed by exact elimination.

Gamma(2n+2, A) = Z x_A Z^(2n+1) is the abelian-by-cyclic group of an integer
matrix A; isomorphism and commensurability tests reduce to integer/rational
conjugacy of powers of A.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy

from .exactla import (Mat, Poly, Q, Vec, charpoly, identity, inverse,
                      invariant_factors, kernel, mat, mat_add, mat_mul,
                      mat_pow, mat_scale, poly_deg, poly_eval, poly_gcd,
                      poly_derivative, poly_factor_rational_roots, poly_monic,
                      poly_str, qify, rational_canonical_form)
from .liealg import LieAlgebra, validate_jacobi


# ---------------------------------------------------------------------------
# rational power classes


def is_rational_square(r: Fraction) -> bool:
    r = qify(r)
    if r < 0:
        return False
    a, ea = sympy.integer_nthroot(r.numerator, 2)
    b, eb = sympy.integer_nthroot(r.denominator, 2)
    return ea and eb


def is_rational_cube(r: Fraction) -> bool:
    r = qify(r)
    s = 1 if r >= 0 else -1
    a, ea = sympy.integer_nthroot(abs(r.numerator), 3)
    b, eb = sympy.integer_nthroot(r.denominator, 3)
    return ea and eb


def rational_cbrt(r: Fraction) -> Optional[Fraction]:
    r = qify(r)
    s = 1 if r >= 0 else -1
    a, ea = sympy.integer_nthroot(abs(r.numerator), 3)
    b, eb = sympy.integer_nthroot(r.denominator, 3)
    return Fraction(s * a, b) if (ea and eb) else None


# ---------------------------------------------------------------------------
# binary cubics


@dataclass(frozen=True)
class BinaryCubic:
    """e y^3 + 3f y^2 z + 3g y z^2 + h z^3."""

    e: Fraction
    f: Fraction
    g: Fraction
    h: Fraction

    @staticmethod
    def of(e, f, g, h) -> "BinaryCubic":
        return BinaryCubic(qify(e), qify(f), qify(g), qify(h))

    def coeffs(self) -> tuple[Fraction, ...]:
        """Plain coefficients of y^3, y^2 z, y z^2, z^3."""
        return (self.e, 3 * self.f, 3 * self.g, self.h)

    def univariate(self) -> Poly:
        """p(y, 1) lowest-first."""
        return [self.h, 3 * self.g, 3 * self.f, self.e]

    def is_zero(self) -> bool:
        return self.e == self.f == self.g == self.h == 0


def cubic_disc_negative(c: BinaryCubic) -> bool:
    """Sign test of 3f^2g^2 + 6efgh - 4f^3h - 4g^3e - e^2h^2."""
    e, f, g, h = c.e, c.f, c.g, c.h
    q = (3 * f * f * g * g + 6 * e * f * g * h - 4 * f ** 3 * h
         - 4 * g ** 3 * e - e * e * h * h)
    return q < 0


def gl2_act_cubic(gm: Mat, c: BinaryCubic) -> BinaryCubic:
    """Substitution (y, z) -> (s1 y + s2 z, s3 y + s4 z); a right action."""
    s1, s2 = qify(gm[0][0]), qify(gm[0][1])
    s3, s4 = qify(gm[1][0]), qify(gm[1][1])
    if s1 * s4 - s2 * s3 == 0:
        raise ValueError("gl2_act_cubic needs an invertible matrix")
    a0, a1, a2, a3 = c.coeffs()
    out = [Q(0)] * 4  # coefficients of y^3, y^2 z, y z^2, z^3
    # expand a0*Y^3 + a1*Y^2 Z + a2*Y Z^2 + a3*Z^3 with Y=s1 y+s2 z, Z=s3 y+s4 z
    for coef, py, pz in ((a0, 3, 0), (a1, 2, 1), (a2, 1, 2), (a3, 0, 3)):
        terms = [Q(1)]
        for _ in range(py):
            terms = _lin_mul(terms, s1, s2)
        for _ in range(pz):
            terms = _lin_mul(terms, s3, s4)
        for k, t in enumerate(terms):
            out[k] += coef * t
    return BinaryCubic(out[0], out[1] / 3, out[2] / 3, out[3])


def _lin_mul(terms: list[Fraction], a: Fraction, b: Fraction) -> list[Fraction]:
    """Multiply a binary form (coeff list in y-degree) by (a y + b z)."""
    res = [Q(0)] * (len(terms) + 1)
    for k, t in enumerate(terms):
        res[k] += t * a
        res[k + 1] += t * b
    return res


@dataclass(frozen=True)
class ReducedCubic:
    """Result of reduce_rational_root: a split pair or an irreducible cubic."""

    kind: str                 # "split" | "irreducible"
    e: Optional[Fraction] = None
    g: Optional[Fraction] = None
    minpoly: Optional[tuple[Fraction, ...]] = None


def split_pairs_equivalent(e1, g1, e2, g2) -> bool:
    """y(e1 y^2 + g1 z^2) ~ y(e2 y^2 + g2 z^2): e2 = s1^3 e1, g2 = s1 s2^2 g1."""
    e1, g1, e2, g2 = map(qify, (e1, g1, e2, g2))
    if (e1 == 0) != (e2 == 0) or (g1 == 0) != (g2 == 0):
        return False
    if e1 == 0:
        s1 = Q(1)
    else:
        s1 = rational_cbrt(e2 / e1)
        if s1 is None:
            return False
    if g1 == 0:
        return True
    ratio = g2 / (s1 * g1)
    return is_rational_square(ratio)


def reduce_rational_root(c: BinaryCubic) -> ReducedCubic:
    """GL(2, Q)-reduce: split off a rational root or report the cubic field."""
    if c.is_zero():
        raise ValueError("zero cubic")
    p = c.univariate()
    roots, _ = poly_factor_rational_roots(p)
    if c.e == 0:
        root: Optional[tuple[Fraction, Fraction]] = (Q(1), Q(0))  # [1:0]
    elif roots:
        root = (roots[0], Q(1))
    else:
        root = None
    if root is None:
        return ReducedCubic("irreducible", minpoly=tuple(poly_monic(p)))
    gm = _root_to_zero(root)
    d = gl2_act_cubic(gm, c)
    if d.h != 0:
        raise AssertionError("rational root not moved to [0:1]")
    # d = y (e y^2 + 3f y z + 3g z^2); kill the middle term with z -> sy + z
    if d.g == 0:
        # degenerate (repeated-root) cases; discriminant is not negative here
        if d.f != 0:
            return ReducedCubic("split", e=Q(0), g=Q(1))
        return ReducedCubic("split", e=d.e, g=Q(0))
    s = -d.f / (2 * d.g)
    d2 = gl2_act_cubic(mat([[1, 0], [s, 1]]), d)
    if d2.f != 0 or d2.h != 0:
        raise AssertionError("middle term not eliminated")
    return ReducedCubic("split", e=d2.e, g=3 * d2.g)


def _root_to_zero(root: tuple[Fraction, Fraction]) -> Mat:
    """An invertible substitution sending the projective root to y = 0."""
    r1, r2 = root
    # columns map (0,1) -> direction (r1, r2): take matrix [[r1, 1], [r2, 0]]
    # acting as substitution y -> r1*? ; easier: substitution matrix with
    # (y, z) -> (r1*z + y', ...): choose m so p(m.(y,z)) has no y^3..? Use
    # m = [[a, r1],[b, r2]] with det != 0; then the new z-axis [0:1] maps to
    # the root, i.e. new form has zero z^3 coefficient.
    if r2 != 0:
        return mat([[1, r1 / r2], [0, 1]])
    return mat([[0, 1], [1, 0]])


# ---------------------------------------------------------------------------
# cubic field generators


@dataclass(frozen=True)
class CubicGen:
    """A cubic field presented by theta with minpoly y^3 - t or y^3 - 3y - t."""

    form: int
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", qify(self.t))
        if self.form == 1:
            if self.t == 0 or is_rational_cube(self.t):
                raise ValueError("form 1 needs t not a rational cube")
        elif self.form == 2:
            d = self.t * self.t - 4
            if d <= 0 or is_rational_square(d):
                raise ValueError("form 2 needs t^2 - 4 positive and not a square")
            roots, _ = poly_factor_rational_roots([-self.t, Q(-3), Q(0), Q(1)])
            if roots:
                raise ValueError("form 2 needs t outside the image of x^3 - 3x")
        else:
            raise ValueError("form must be 1 or 2")

    def minpoly(self) -> Poly:
        """Lowest-first coefficients of theta's minimal polynomial."""
        if self.form == 1:
            return [-self.t, Q(0), Q(0), Q(1)]
        return [-self.t, Q(-3), Q(0), Q(1)]


def minpoly_combo(m, n, r, gen: CubicGen) -> Poly:
    """Minimal polynomial of m*theta^2 + n*theta + r, lowest-first, monic.

    Computed as the matrix minimal polynomial of the combination evaluated
    on the companion matrix of theta's minimal polynomial (equivalent to the
    classical resultant elimination).
    """
    m, n, r = qify(m), qify(n), qify(r)
    from .exactla import companion
    a = companion(gen.minpoly())
    b = mat_add(mat_add(mat_scale(m, mat_mul(a, a)), mat_scale(n, a)),
                mat_scale(r, identity(3)))
    return invariant_factors(b)[-1]


def same_field_form1(t1, t2) -> bool:
    """Do y^3 - t1 and y^3 - t2 generate the same field (t2 = mu^3 t1^j)?"""
    g1, g2 = CubicGen(1, t1), CubicGen(1, t2)
    return (is_rational_cube(g2.t / g1.t)
            or is_rational_cube(g2.t / (g1.t * g1.t)))


def conic_points(t1: Fraction, height_bound: int):
    """Rational points on alpha^2 + t1*alpha*beta + beta^2 = 1.

    Chord parametrization through (0, 1) by slope s = p/q; yields (alpha,
    beta) pairs including the base points (0, +-1).
    """
    t1 = qify(t1)
    yield Q(0), Q(1)
    yield Q(0), Q(-1)
    for qd in range(1, height_bound + 1):
        for pn in range(-height_bound, height_bound + 1):
            if Fraction(pn, qd).denominator != qd:
                continue
            s = Fraction(pn, qd)
            den = 1 + t1 * s + s * s
            if den == 0:
                continue
            alpha = -(t1 + 2 * s) / den
            beta = 1 + s * alpha
            yield alpha, beta


def same_field_form2(t1, t2, height_bound: int = 60) -> Optional[bool]:
    """Bounded search for the (alpha, beta) conic relation between t1 and t2.

    Returns True when a witness is found, None (unknown) when the height
    bound is exhausted.
    """
    g1, g2 = CubicGen(2, t1), CubicGen(2, t2)
    for a, b in conic_points(g1.t, height_bound):
        t1_, a3 = g1.t, a ** 3
        val = (-3 * t1_ * a * a * b + t1_ * b ** 3 + 6 * a
               + a3 * t1_ * t1_ - 8 * a3)
        if val == g2.t:
            return True
    return None


def cross_form_same_field(t_form2) -> bool:
    """A form-2 generator collapses to form 1 iff t^2 - 4 is a square."""
    t = qify(t_form2)
    return is_rational_square(t * t - 4)


# ---------------------------------------------------------------------------
# the g_Q(e,f,g,h,j,k,l) bracket template and the h-families


def gQ_template(e, f, g, h, j, k, l) -> LieAlgebra:
    """The general 8-dimensional bracket template of the gQ family."""
    e, f, g, h, j, k, l = map(qify, (e, f, g, h, j, k, l))
    table = {
        (1, 2): {4: 1}, (1, 3): {5: 1}, (2, 3): {6: 1},
        (1, 4): {7: 1}, (1, 5): {8: 1},
        (2, 4): {7: f, 8: h}, (2, 5): {7: -g, 8: -f},
        (3, 4): {7: -g, 8: -f}, (3, 5): {7: e, 8: g},
        (2, 6): {7: j, 8: k}, (3, 6): {7: l, 8: -j},
    }
    return LieAlgebra.from_table(8, table)


def gQ_gate(e, f, g, h, j, k, l) -> list[str]:
    """Appendix-side conditions; returns a list of violated-condition names."""
    e, f, g, h, j, k, l = map(qify, (e, f, g, h, j, k, l))
    bad = []
    if not cubic_disc_negative(BinaryCubic(e, f, g, h)):
        bad.append("discriminant-not-negative")
    v1 = [h * l + 2 * g * j - f * k, -e * h + f * g + j,
          2 * g * g - 2 * f * h + k]
    v2 = [-g * l + e * k - 2 * f * j, 2 * e * g - 2 * f * f + l,
          e * h - f * g - j]
    cross = [v1[1] * v2[2] - v1[2] * v2[1],
             v1[2] * v2[0] - v1[0] * v2[2],
             v1[0] * v2[1] - v1[1] * v2[0]]
    if all(c == 0 for c in cross):
        bad.append("coefficient-wedge-zero")
    return bad


INFINITY = "inf"


def build_hQ_family(which: int, params: dict) -> LieAlgebra:
    """Build an h^1/h^2/h^3 instance of the gQ template.

    params: h1 -> e, g, j, k, l; h2/h3 -> e, m ("inf" allowed), j, k, l, t.
    Family substitutions fix (f, g, h) from the parameters; the appendix
    gate (negative discriminant, nonzero coefficient wedge) is enforced.
    """
    j, k, l = qify(params["j"]), qify(params["k"]), qify(params["l"])
    e = qify(params["e"])
    if which == 1:
        f, h = Q(0), Q(0)
        g = qify(params["g"])
    elif which == 2:
        t = CubicGen(1, params["t"]).t
        m = params["m"]
        if m == INFINITY:
            f, g, h = Q(0), Q(0), -e * t * t
        else:
            m = qify(m)
            f, g, h = Q(0), -e * m * t, -e * t * (m ** 3 * t + 1)
    elif which == 3:
        t = CubicGen(2, params["t"]).t
        m = params["m"]
        if m == INFINITY:
            f, g, h = -2 * e, 3 * e, -e * t * t
        else:
            m = qify(m)
            f = -2 * e * m
            g = e * (3 * m * m - t * m - 1)
            h = e * t * (3 * m * m - m ** 3 * t - 1)
    else:
        raise ValueError("which must be 1, 2 or 3")
    bad = gQ_gate(e, f, g, h, j, k, l)
    if bad:
        raise ValueError("parameter constraints violated: " + ", ".join(bad))
    out = gQ_template(e, f, g, h, j, k, l)
    if validate_jacobi(out):
        raise AssertionError("template produced a non-Lie table")
    return out


def e_param_equivalent(e1, e2) -> bool:
    """e ~ e' iff e' = mu^9 e for rational mu (ninth-power class test)."""
    e1, e2 = qify(e1), qify(e2)
    if e1 == 0 or e2 == 0:
        return e1 == e2
    r = e2 / e1
    if r < 0:
        num, den = -r.numerator, r.denominator
        a, ea = sympy.integer_nthroot(num, 9)
        b, eb = sympy.integer_nthroot(den, 9)
        return ea and eb
    a, ea = sympy.integer_nthroot(r.numerator, 9)
    b, eb = sympy.integer_nthroot(r.denominator, 9)
    return ea and eb


# ---------------------------------------------------------------------------
# Malcev integral bases


def malcev_integralize(l: LieAlgebra) -> tuple[int, Mat]:
    """A diagonal rescaling y_i = S x_i making the constants integral and the
    BCH lattice products closed for class <= 3.

    Scaling every basis vector by S multiplies each structure constant by S;
    the extra factor 6 clears the 1/2 and 1/12 BCH denominators (degree-4 BCH
    terms vanish at class <= 3).
    """
    denoms = [c.denominator for rhs in l.brackets.values() for c in rhs.values()]
    base = 1
    for d in denoms:
        base = base * d // _gcd(base, d)
    scale = 6 * base
    basis = mat_scale(scale, identity(l.dim))
    return scale, basis


def scaled_algebra(l: LieAlgebra, scale: int) -> LieAlgebra:
    table = {(i + 1, j + 1): {k + 1: c * scale for k, c in rhs.items()}
             for (i, j), rhs in l.brackets.items()}
    return LieAlgebra.from_table(l.dim, table)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# abelian-by-cyclic groups Gamma(2n+2, A)


@dataclass(frozen=True)
class GammaAC:
    """Gamma(2n+2, A) = Z x_A Z^m with m = 2n+1 odd and A in GL(m, Z)."""

    m: int
    a: Mat

    def __post_init__(self):
        if self.m % 2 == 0 or self.m < 3:
            raise ValueError("m must be odd and >= 3")
        if len(self.a) != self.m:
            raise ValueError("matrix size does not match m")
        for row in self.a:
            for c in row:
                if qify(c).denominator != 1:
                    raise ValueError("A must be an integer matrix")
        from .exactla import det
        if abs(det([list(r) for r in self.a])) != 1:
            raise ValueError("A must be invertible over Z")


def gamma_validate(g: GammaAC) -> dict[str, bool]:
    """Diagonalizability and eigenvalue-pattern checks on A."""
    a = [list(r) for r in g.a]
    cp = charpoly(a)
    mp = invariant_factors(a)[-1]
    sqfree = poly_deg(poly_gcd(mp, poly_derivative(mp))) == 0
    # peel off the (x - 1) factors, expect a trailing x^2 - t x + 1 factor
    roots, rest = poly_factor_rational_roots(cp)
    ones = sum(1 for r in roots if r == 1)
    others = [r for r in roots if r != 1]
    quad_ok = False
    if poly_deg(rest) == 2 and rest[0] == rest[2]:
        quad_ok = True
    elif poly_deg(rest) == 0 and len(others) == 2 and others[0] * others[1] == 1:
        quad_ok = True
    return {
        "integer_unimodular": True,
        "minpoly_squarefree": sqfree,
        "one_eigenvalue_count_ok": ones >= g.m - 2,
        "reciprocal_quadratic_factor": quad_ok,
    }


def gamma_iso(g1: GammaAC, g2: GammaAC, search_bound: int = 2
              ) -> Optional[bool]:
    """Z x_A Z^m iso test: A ~_Z A' or A'^-1; bounded conjugator search.

    False when the charpoly obstruction rules it out; True with a unimodular
    conjugator found; None (unknown) when the necessary condition holds but
    the bounded search fails.
    """
    if g1.m != g2.m:
        return False
    a = [list(r) for r in g1.a]
    cps = charpoly(a)
    targets = []
    for b in (g2.a, inverse([list(r) for r in g2.a])):
        b = [list(r) for r in b]
        if charpoly(b) == cps:
            targets.append(b)
    if not targets:
        return False
    for b in targets:
        if _unimodular_conjugator(a, b, search_bound) is not None:
            return True
    return None


def _unimodular_conjugator(a: Mat, b: Mat, bound: int) -> Optional[Mat]:
    """Search P with P a = b P, det P = +-1, P integral, in the Sylvester
    solution space with small integer coordinates."""
    from .exactla import det
    n = len(a)
    # vectorized Sylvester operator: P -> P a - b P on row-major coordinates
    rows = []
    for i in range(n):
        for j in range(n):
            row = [Q(0)] * (n * n)
            for k in range(n):
                row[i * n + k] += a[k][j]
                row[k * n + j] -= b[i][k]
            rows.append(row)
    basis = kernel(rows)
    if not basis:
        return None
    # clear denominators in each basis vector
    ibasis = []
    for v in basis:
        den = 1
        for c in v:
            den = den * c.denominator // _gcd(den, c.denominator)
        ibasis.append([c * den for c in v])
    coords = _small_tuples(len(ibasis), bound)
    for tup in coords:
        if all(t == 0 for t in tup):
            continue
        flat = [sum(t * bv[idx] for t, bv in zip(tup, ibasis))
                for idx in range(n * n)]
        p = [[flat[i * n + j] for j in range(n)] for i in range(n)]
        if abs(det(p)) == 1:
            return p
    return None


def _small_tuples(k: int, bound: int):
    vals = list(range(-bound, bound + 1))
    def rec(i):
        if i == k:
            yield ()
            return
        for v in vals:
            for rest in rec(i + 1):
                yield (v,) + rest
    return rec(0)


def gamma_commensurable(g1: GammaAC, g2: GammaAC, rmax: int = 6) -> bool:
    """A^r ~_Q A'^s for some nonzero r, s with |r|, |s| <= rmax.

    Rational conjugacy is decided exactly by rational canonical forms; the
    verdict False means no witness within the bound.
    """
    if g1.m != g2.m:
        return False
    a = [list(r) for r in g1.a]
    b = [list(r) for r in g2.a]
    ainv = inverse(a)
    binv = inverse(b)
    for r in range(1, rmax + 1):
        for ap in (mat_pow(a, r), mat_pow(ainv, r)):
            fa = invariant_factors(ap)
            for s in range(1, rmax + 1):
                for bp in (mat_pow(b, s), mat_pow(binv, s)):
                    if invariant_factors(bp) == fa:
                        return True
    return False


def gamma_realize(g: GammaAC) -> list[Mat]:
    """Affine generators of Gamma(2n+2, A): the A-block and the translations."""
    n = g.m
    gens = []
    top = [[qify(g.a[i][j]) for j in range(n)] + [Q(0)] for i in range(n)]
    top.append([Q(0)] * n + [Q(1)])
    gens.append(top)
    for i in range(n):
        tr = identity(n + 1)
        tr[i][n] = Q(1)
        gens.append(tr)
    return gens
