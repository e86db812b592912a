import random
from fractions import Fraction as Q

import pytest

from hermlor.exactla import (mat, identity, transpose, mat_mul, mat_eq,
                             rref, rank, kernel, det, inverse, solve,
                             charpoly, companion, invariant_factors,
                             poly, poly_mul, poly_divmod, poly_gcd,
                             poly_eval, poly_factor_rational_roots,
                             poly_str, resultant, rational_canonical_form,
                             mat_vec, is_zero_vec)
from conftest import rand_invertible


def test_rref_rank_kernel():
    m = mat([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    r, rk, piv = rref(m)
    assert rk == 2 and piv == [0, 1]
    assert rank(m) == 2
    ker = kernel(m)
    assert len(ker) == 1
    for v in ker:
        assert is_zero_vec(mat_vec(m, v))


def test_det_inverse_solve():
    m = mat([[2, 1], [1, 1]])
    assert det([r[:] for r in m]) == 1
    assert mat_eq(mat_mul(m, inverse(m)), identity(2))
    x = solve(m, [Q(3), Q(2)])
    assert x == [Q(1), Q(1)]
    assert solve(mat([[1, 1], [1, 1]]), [Q(0), Q(1)]) is None


def test_det_multiplicative_random():
    rng = random.Random(0)
    for _ in range(20):
        a = rand_invertible(4, rng)
        b = rand_invertible(4, rng)
        assert det([r[:] for r in mat_mul(a, b)]) == \
            det([r[:] for r in a]) * det([r[:] for r in b])


def test_charpoly_companion():
    # charpoly of companion(p) is p, for monic p
    p = poly([-2, 0, 0, 1])      # x^3 - 2, lowest-first
    assert charpoly(companion(p)) == p
    # Cayley-Hamilton on a random matrix
    rng = random.Random(1)
    m = rand_invertible(3, rng)
    cp = charpoly(m)
    acc = [[Q(0)] * 3 for _ in range(3)]
    power = identity(3)
    for c in cp:
        for i in range(3):
            for j in range(3):
                acc[i][j] += c * power[i][j]
        power = mat_mul(power, m)
    assert all(x == 0 for row in acc for x in row)


def test_poly_arithmetic():
    p = poly([1, 1])      # x + 1
    q = poly([-1, 1])     # x - 1
    assert poly_mul(p, q) == poly([-1, 0, 1])
    quot, rem = poly_divmod(poly([-1, 0, 1]), p)
    assert quot == q and rem == []
    assert poly_gcd(poly_mul(p, p), poly_mul(p, q)) == p
    assert poly_eval(poly([1, 2, 3]), Q(2)) == 17


def test_rational_roots():
    # (x - 1/2)(x + 3)(x^2 + 1)
    p = poly_mul(poly_mul(poly([Q(-1, 2), 1]), poly([3, 1])), poly([1, 0, 1]))
    roots, rest = poly_factor_rational_roots(p)
    assert sorted(roots) == [Q(-3), Q(1, 2)]
    assert poly_gcd(rest, rest) is not None
    assert poly_eval(rest, Q(0)) != 0 and len(rest) == 3


def test_resultant():
    # res((x-1)(x+1), (x-2)(x+2)) = prod of root differences = 9
    p = poly([-1, 0, 1])
    q = poly([-4, 0, 1])
    assert resultant(p, q) == 9
    # shared root => resultant 0
    assert resultant(p, poly([-1, 1])) == 0


def test_invariant_factors_conjugation_invariant():
    rng = random.Random(2)
    m = mat([[0, 1, 0], [0, 0, 1], [2, 0, 0]])
    f = invariant_factors([r[:] for r in m])
    g = rand_invertible(3, rng)
    conj = mat_mul(mat_mul(g, m), inverse(g))
    assert invariant_factors(conj) == f
    # minimal polynomial of a companion matrix is its defining polynomial
    assert f[-1] == poly([-2, 0, 0, 1])


def test_rational_canonical_form():
    m = mat([[1, 1], [0, 1]])
    f, t = rational_canonical_form([r[:] for r in m])
    assert mat_eq(mat_mul(mat_mul(inverse(t), m), t), f)


def test_poly_str():
    assert poly_str(poly([-2, 0, 0, 1]), "y") == "y^3 - 2"
    assert poly_str(poly([]), "x") == "0"
    assert poly_str(poly([Q(1, 2), -1, 1])) == "x^2 - x + 1/2"
