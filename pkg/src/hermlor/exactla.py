"""Exact linear algebra over Q.

Matrices are lists of rows, each row a list of :class:`fractions.Fraction`;
polynomials are coefficient lists, lowest degree first, with no trailing
zeros (the zero polynomial is the empty list).  Every operation is pure and
exact: no floating point appears anywhere in the package.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction
Vec = list[Fraction]
Mat = list[list[Fraction]]
Poly = list[Fraction]


# ---------------------------------------------------------------------------
# construction helpers
# ---------------------------------------------------------------------------

def qify(x) -> Fraction:
    """Coerce ints / strings / Fractions to Fraction (floats are rejected)."""
    if isinstance(x, float):
        raise TypeError("floating point values are not allowed; use Fraction")
    return Fraction(x)


def mat(rows: Iterable[Iterable]) -> Mat:
    return [[qify(x) for x in row] for row in rows]


def vec(entries: Iterable) -> Vec:
    return [qify(x) for x in entries]


def zeros(r: int, c: int) -> Mat:
    return [[Q(0)] * c for _ in range(r)]


def identity(n: int) -> Mat:
    return [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)]


def copy_mat(m: Mat) -> Mat:
    return [row[:] for row in m]


def shape(m: Mat) -> tuple[int, int]:
    return len(m), len(m[0]) if m else 0


# ---------------------------------------------------------------------------
# basic matrix arithmetic
# ---------------------------------------------------------------------------

def mat_add(a: Mat, b: Mat) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a: Mat) -> Mat:
    c = qify(c)
    return [[c * x for x in row] for row in a]


def mat_mul(a: Mat, b: Mat) -> Mat:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"shape mismatch {ra}x{ca} * {rb}x{cb}")
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Q(0)) for col in bt]
            for row in a]


def mat_vec(a: Mat, v: Vec) -> Vec:
    return [sum((x * y for x, y in zip(row, v)), Q(0)) for row in a]


def transpose(m: Mat) -> Mat:
    return [list(col) for col in zip(*m)] if m else []


def mat_eq(a: Mat, b: Mat) -> bool:
    return shape(a) == shape(b) and all(ra == rb for ra, rb in zip(a, b))


def mat_pow(a: Mat, k: int) -> Mat:
    n = len(a)
    if k < 0:
        return mat_pow(inverse(a), -k)
    out = identity(n)
    base = copy_mat(a)
    while k:
        if k & 1:
            out = mat_mul(out, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return out


def vec_add(u: Vec, v: Vec) -> Vec:
    return [x + y for x, y in zip(u, v)]


def vec_sub(u: Vec, v: Vec) -> Vec:
    return [x - y for x, y in zip(u, v)]


def vec_scale(c, v: Vec) -> Vec:
    c = qify(c)
    return [c * x for x in v]


def dot(u: Vec, v: Vec) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), Q(0))


def is_zero_vec(v: Vec) -> bool:
    return all(x == 0 for x in v)


# ---------------------------------------------------------------------------
# elimination: rref / rank / kernel / det / inverse / solve
# ---------------------------------------------------------------------------

def rref(m: Mat) -> tuple[Mat, int, list[int]]:
    """Reduced row-echelon form.  Returns (reduced, rank, pivot columns)."""
    a = [[x if isinstance(x, Fraction) else qify(x) for x in row] for row in m]
    rows, cols = shape(a)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, len(pivots), pivots


def rank(m: Mat) -> int:
    if not m or not m[0]:
        return 0
    return rref(m)[1]


def kernel(m: Mat) -> list[Vec]:
    """Basis of the right null space, returned as a list of vectors."""
    rows, cols = shape(m)
    if cols == 0:
        return []
    red, rk, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Q(0)] * cols
        v[f] = Q(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def row_space_basis(m: Mat) -> list[Vec]:
    red, rk, _ = rref(m)
    return [red[i][:] for i in range(rk)]


def in_row_space(m: Mat, v: Vec) -> bool:
    return rank(m + [v]) == rank(m)


def det(m: Mat) -> Fraction:
    a = [[x if isinstance(x, Fraction) else qify(x) for x in row] for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("det of non-square matrix")
    sign = Q(1)
    out = Q(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pr is None:
            return Q(0)
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            sign = -sign
        out *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return sign * out


def inverse(m: Mat) -> Mat:
    n = len(m)
    aug = [row[:] + idrow[:] for row, idrow in zip(m, identity(n))]
    red, rk, _ = rref(aug)
    if rk < n or any(red[i][i] != 1 for i in range(n)):
        raise ValueError("matrix not invertible")
    return [row[n:] for row in red]


def solve(a: Mat, b: Vec) -> Vec | None:
    """One solution of a·x = b, or None if inconsistent."""
    rows, cols = shape(a)
    aug = [row[:] + [bb] for row, bb in zip(a, b)]
    red, rk, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Q(0)] * cols
    for i, p in enumerate(pivots):
        x[p] = red[i][cols]
    return x


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def poly(coeffs: Iterable) -> Poly:
    return poly_trim([qify(c) for c in coeffs])


def poly_trim(p: Sequence[Fraction]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_deg(p: Poly) -> int:
    return len(p) - 1  # zero polynomial -> -1


def poly_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else Q(0)) +
                      (q[i] if i < len(q) else Q(0)) for i in range(n)])


def poly_sub(p: Poly, q: Poly) -> Poly:
    return poly_add(p, poly_scale(-1, q))


def poly_scale(c, p: Poly) -> Poly:
    c = qify(c)
    return poly_trim([c * x for x in p])


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [Q(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [Q(0)] * max(len(p) - len(q) + 1, 0)
    dq, lq = poly_deg(q), q[-1]
    while poly_deg(rem) >= dq and rem:
        d = poly_deg(rem) - dq
        f = rem[-1] / lq
        quo[d] = f
        for i, c in enumerate(q):
            rem[i + d] -= f * c
        rem = poly_trim(rem)
    return poly_trim(quo), rem


def poly_mod(p: Poly, q: Poly) -> Poly:
    return poly_divmod(p, q)[1]


def poly_gcd(p: Poly, q: Poly) -> Poly:
    a, b = list(p), list(q)
    while b:
        a, b = b, poly_mod(a, b)
    return poly_monic(a) if a else []


def poly_monic(p: Poly) -> Poly:
    if not p:
        return []
    return poly_scale(1 / p[-1], p)


def poly_eval(p: Poly, x) -> Fraction:
    x = qify(x)
    out = Q(0)
    for c in reversed(p):
        out = out * x + c
    return out


def poly_derivative(p: Poly) -> Poly:
    return poly_trim([i * c for i, c in enumerate(p)][1:])


def poly_pow(p: Poly, k: int) -> Poly:
    out = [Q(1)]
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def poly_eq(p: Poly, q: Poly) -> bool:
    return poly_trim(list(p)) == poly_trim(list(q))


def poly_str(p: Poly, var: str = "x") -> str:
    if not p:
        return "0"
    terms = []
    for i in range(poly_deg(p), -1, -1):
        c = p[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
    s = " + ".join(terms)
    return s.replace("+ -", "- ")


# ---------------------------------------------------------------------------
# charpoly, resultant, rational roots
# ---------------------------------------------------------------------------

def charpoly(m: Mat) -> Poly:
    """Characteristic polynomial det(xI - m), monic, lowest degree first.

    Faddeev-LeVerrier recursion; exact over Q.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("charpoly of non-square matrix")
    coeffs = [Q(0)] * (n + 1)
    coeffs[n] = Q(1)
    mk = identity(n)
    for k in range(1, n + 1):
        mk = mat_mul(m, mk)
        ck = -Q(sum(mk[i][i] for i in range(n)), k)
        coeffs[n - k] = ck
        for i in range(n):
            mk[i][i] += ck
    return coeffs


def sylvester(p: Poly, q: Poly) -> Mat:
    dp, dq = poly_deg(p), poly_deg(q)
    n = dp + dq
    rows = []
    pr = list(reversed(p))  # highest degree first
    qr = list(reversed(q))
    for i in range(dq):
        rows.append([Q(0)] * i + pr + [Q(0)] * (n - i - len(pr)))
    for i in range(dp):
        rows.append([Q(0)] * i + qr + [Q(0)] * (n - i - len(qr)))
    return rows


def resultant(p: Poly, q: Poly) -> Fraction:
    """Sylvester-determinant resultant (standard sign convention)."""
    if not p or not q:
        raise ValueError("resultant of the zero polynomial")
    if poly_deg(p) == 0:
        return p[0] ** poly_deg(q)
    if poly_deg(q) == 0:
        return q[0] ** poly_deg(p)
    return det(sylvester(p, q))


def poly_factor_rational_roots(p: Poly) -> tuple[list[Fraction], Poly]:
    """All rational roots with multiplicity, and the rootless cofactor."""
    if not p:
        raise ValueError("zero polynomial")
    roots: list[Fraction] = []
    cur = list(p)
    # strip powers of x
    while cur and cur[0] == 0:
        roots.append(Q(0))
        cur = cur[1:]
    while poly_deg(cur) >= 1:
        root = _one_rational_root(cur)
        if root is None:
            break
        roots.append(root)
        cur, rem = poly_divmod(cur, [-root, Q(1)])
        assert not rem
        while cur and cur[0] == 0:
            roots.append(Q(0))
            cur = cur[1:]
    return roots, cur


def _one_rational_root(p: Poly) -> Fraction | None:
    from math import gcd
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g:
        ints = [c // g for c in ints]
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        return Q(0)
    for r in _divisors(abs(a0)):
        for s in _divisors(abs(an)):
            if gcd(r, s) != 1:
                continue
            for cand in (Q(r, s), Q(-r, s)):
                if poly_eval(p, cand) == 0:
                    return cand
    return None


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# rational canonical (Frobenius) form
# ---------------------------------------------------------------------------

def companion(p: Poly) -> Mat:
    """Companion matrix of a monic polynomial."""
    d = poly_deg(p)
    c = zeros(d, d)
    for i in range(1, d):
        c[i][i - 1] = Q(1)
    for i in range(d):
        c[i][d - 1] = -p[i]
    return c


def invariant_factors(m: Mat) -> list[Poly]:
    """Nonconstant invariant factors of m, in divisibility order.

    Computed as the Smith normal form of xI - m over Q[x]; no factorization
    of polynomials over Q is needed.
    """
    n = len(m)
    a: list[list[Poly]] = [[poly_trim([-m[i][j]]) if i != j else
                            poly_trim([-m[i][j], Q(1)]) for j in range(n)]
                           for i in range(n)]
    _poly_smith(a)
    facs = [poly_monic(a[i][i]) for i in range(n) if poly_deg(a[i][i]) >= 1]
    return facs


def _poly_smith(a: list[list[Poly]]) -> None:
    """In-place Smith normal form over Q[x] (diagonal, divisibility chain)."""
    n = len(a)
    for t in range(n):
        while True:
            # locate a nonzero entry of minimal degree in the working block
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if a[i][j] and (best is None or
                                    poly_deg(a[i][j]) < poly_deg(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return
            bi, bj = best
            a[t], a[bi] = a[bi], a[t]
            for row in a:
                row[t], row[bj] = row[bj], row[t]
            pivot = a[t][t]
            dirty = False
            for i in range(t + 1, n):
                if a[i][t]:
                    q, _ = poly_divmod(a[i][t], pivot)
                    for j in range(t, n):
                        a[i][j] = poly_sub(a[i][j], poly_mul(q, a[t][j]))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q, _ = poly_divmod(a[t][j], pivot)
                    for i in range(t, n):
                        a[i][j] = poly_sub(a[i][j], poly_mul(q, a[i][t]))
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            if all(not a[i][t] for i in range(t + 1, n)) and \
               all(not a[t][j] for j in range(t + 1, n)):
                # make pivot divide everything below-right
                offender = None
                for i in range(t + 1, n):
                    for j in range(t + 1, n):
                        if a[i][j] and poly_mod(a[i][j], pivot):
                            offender = i
                            break
                    if offender is not None:
                        break
                if offender is None:
                    break
                for j in range(t, n):
                    a[t][j] = poly_add(a[t][j], a[offender][j])


def rational_canonical_form(m: Mat, seed: int = 0) -> tuple[Mat, Mat]:
    """Frobenius normal form F and an invertible T with T^-1 m T = F."""
    n = len(m)
    facs = invariant_factors(m)
    blocks = [companion(f) for f in facs]
    f = zeros(n, n)
    off = 0
    for b in blocks:
        d = len(b)
        for i in range(d):
            for j in range(d):
                f[off + i][off + j] = b[i][j]
        off += d
    t = _similarity_transform(m, f, seed)
    return f, t


def _similarity_transform(a: Mat, f: Mat, seed: int = 0) -> Mat:
    """Invertible T with a·T = T·f, via the kernel of X -> aX - Xf."""
    n = len(a)
    # rows of the big system indexed by (i,j) of aX - Xf = 0
    big = zeros(n * n, n * n)
    for i in range(n):
        for j in range(n):
            r = i * n + j
            for k in range(n):
                big[r][k * n + j] += a[i][k]      # (aX)_{ij}
                big[r][i * n + k] -= f[k][j]      # (Xf)_{ij}
    basis = kernel(big)
    rng = random.Random(seed)
    for attempt in range(200):
        coeffs = [Q(rng.randint(-3 - attempt // 20, 3 + attempt // 20))
                  for _ in basis]
        flat = [sum((c * b[k] for c, b in zip(coeffs, basis)), Q(0))
                for k in range(n * n)]
        t = [flat[i * n:(i + 1) * n] for i in range(n)]
        if det(t) != 0:
            return t
    raise ArithmeticError("no invertible similarity transform found")
