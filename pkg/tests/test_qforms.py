import random
from fractions import Fraction as Q

import pytest

from hermlor.exactla import companion, poly, identity, mat_pow, mat_vec
from hermlor.liealg import LieAlgebra, validate_jacobi, bch_product, basis_vec
from hermlor.qforms import (is_rational_square, is_rational_cube,
                            rational_cbrt, BinaryCubic, cubic_disc_negative,
                            gl2_act_cubic, reduce_rational_root,
                            split_pairs_equivalent, CubicGen, minpoly_combo,
                            same_field_form1, same_field_form2,
                            build_hQ_family, malcev_integralize,
                            scaled_algebra, GammaAC, gamma_validate,
                            gamma_iso, gamma_commensurable, gamma_realize)


def test_square_cube_predicates():
    assert is_rational_square(Q(9, 4))
    assert not is_rational_square(Q(2))
    assert is_rational_cube(Q(-27, 8))
    assert not is_rational_cube(Q(2))
    assert rational_cbrt(Q(-27, 8)) == Q(-3, 2)
    assert rational_cbrt(Q(2)) is None


def test_cubic_disc():
    assert cubic_disc_negative(BinaryCubic.of(3, 0, 1, 0))
    assert not cubic_disc_negative(BinaryCubic.of(1, 0, 0, 0))
    # split cubic with three rational roots: y(y-z)(y+z)
    assert not cubic_disc_negative(BinaryCubic.of(1, 0, Q(-1, 3), 0))


def test_gl2_action():
    c = BinaryCubic.of(1, 2, 3, 4)
    assert gl2_act_cubic(identity(2), c).coeffs() == c.coeffs()
    g1 = [[Q(1), Q(1)], [Q(0), Q(1)]]
    g2 = [[Q(2), Q(0)], [Q(1), Q(1)]]
    from hermlor.exactla import mat_mul
    lhs = gl2_act_cubic(g2, gl2_act_cubic(g1, c))
    rhs = gl2_act_cubic(mat_mul(g1, g2), c)
    assert lhs.coeffs() == rhs.coeffs()


def test_reduce_rational_root():
    # 3y^3 + 3yz^2 has root at z-axis; reduced pair equivalent to (3, 3)
    r = reduce_rational_root(BinaryCubic.of(3, 0, 1, 0))
    assert r.kind == "split"
    assert split_pairs_equivalent(r.e, r.g, 3, 3)
    # y^3 - 2z^3 irreducible
    r2 = reduce_rational_root(BinaryCubic.of(1, 0, 0, -2))
    assert r2.kind == "irreducible"
    assert list(r2.minpoly) == poly([-2, 0, 0, 1])
    with pytest.raises(ValueError):
        reduce_rational_root(BinaryCubic.of(0, 0, 0, 0))


def test_split_pair_equivalence():
    # e' = s1^3 e, g' = s1 s2^2 g with s1 = 2, s2 = 3
    assert split_pairs_equivalent(1, 1, 8, 18)
    assert not split_pairs_equivalent(1, 1, 2, 1)


def test_cubicgen_invariants():
    with pytest.raises(ValueError):
        CubicGen(1, 8)          # 8 is a cube
    with pytest.raises(ValueError):
        CubicGen(2, 2)          # t^2 - 4 = 0
    with pytest.raises(ValueError):
        CubicGen(2, 18)         # 18 = x^3 - 3x at x = 3
    assert CubicGen(1, 2).minpoly() == poly([-2, 0, 0, 1])
    assert CubicGen(2, 3).minpoly() == poly([-3, -3, 0, 1])


def test_minpoly_combo_theta():
    # theta itself
    assert minpoly_combo(0, 1, 0, CubicGen(1, 2)) == poly([-2, 0, 0, 1])
    # rational combination degenerates to degree 1
    assert len(minpoly_combo(0, 0, Q(5), CubicGen(1, 2))) == 2


def test_same_field():
    assert same_field_form1(2, 16)
    assert not same_field_form1(2, 3)
    assert same_field_form2(3, 3) is True


def test_build_hQ_family():
    l = build_hQ_family(1, {"e": 1, "g": 1, "j": 0, "k": 0, "l": 0})
    assert validate_jacobi(l) == []
    with pytest.raises(ValueError):
        build_hQ_family(1, {"e": 1, "g": 0, "j": 0, "k": 0, "l": 0})


def test_malcev_integralize():
    h = LieAlgebra.from_table(3, {(1, 2): {3: Q(1, 2)}})
    scale, basis = malcev_integralize(h)
    s = scaled_algebra(h, scale)
    assert all(c.denominator == 1 for rhs in s.brackets.values()
               for c in rhs.values())
    # lattice closure under BCH at this scale
    rng = random.Random(6)
    for _ in range(20):
        x = [Q(rng.randint(-3, 3)) for _ in range(3)]
        y = [Q(rng.randint(-3, 3)) for _ in range(3)]
        z = bch_product(s, x, y)
        assert all(c.denominator == 1 for c in z)


def test_gamma_validate():
    a = [[0, 1, 0], [0, 0, 1], [1, -3, 3]]
    g = GammaAC(3, tuple(map(tuple, a)))
    rep = gamma_validate(g)
    assert rep["integer_unimodular"]
    with pytest.raises(ValueError):
        GammaAC(4, tuple(map(tuple, identity(4))))  # even size
    with pytest.raises(ValueError):
        GammaAC(3, ((2, 0, 0), (0, 1, 0), (0, 0, 1)))  # det 2


def pad3(two_by_two):
    """companion(quadratic) + a fixed-1 block, as a 3x3 integer matrix."""
    (a, b), (c, d) = two_by_two
    return ((a, b, 0), (c, d, 0), (0, 0, 1))


def test_gamma_iso_inverse():
    from hermlor.exactla import inverse
    a = [[0, 1, 0], [0, 0, 1], [1, -3, 3]]
    ainv = inverse([[Q(x) for x in r] for r in a])
    ainv_int = tuple(tuple(int(x) for x in r) for r in ainv)
    g1 = GammaAC(3, tuple(map(tuple, a)))
    g2 = GammaAC(3, ainv_int)
    assert gamma_iso(g1, g2) is True


def test_gamma_commensurable_square():
    a = [[Q(x) for x in r] for r in ((0, 1, 0), (0, 0, 1), (1, -3, 3))]
    a2 = mat_pow(a, 2)
    g1 = GammaAC(3, tuple(tuple(int(x) for x in r) for r in a))
    g2 = GammaAC(3, tuple(tuple(int(x) for x in r) for r in a2))
    assert gamma_commensurable(g1, g2) is True


def test_gamma_commensurable_power_relation():
    # the unit of x^2-3x+1 squared is the unit of x^2-7x+1 (both in Q(sqrt 5))
    g1 = GammaAC(3, pad3(((0, -1), (1, 3))))
    g2 = GammaAC(3, pad3(((0, -1), (1, 7))))
    assert gamma_commensurable(g1, g2, rmax=6) is True


def test_gamma_commensurable_field_obstruction():
    # units from x^2-3x+1 (Q(sqrt 5)) and x^2-4x+1 (Q(sqrt 3)): no powers of
    # one are conjugate to powers of the other
    g1 = GammaAC(3, pad3(((0, -1), (1, 3))))
    g2 = GammaAC(3, pad3(((0, -1), (1, 4))))
    assert gamma_commensurable(g1, g2, rmax=6) is False


def test_gamma_realize_relations():
    from hermlor.exactla import inverse, mat_mul, mat_eq
    a = ((0, 1, 0), (0, 0, 1), (1, -3, 3))
    g = GammaAC(3, a)
    gens = gamma_realize(g)
    bmat, trs = gens[0], gens[1:]
    assert len(trs) == 3
    # translations commute
    for i in range(3):
        for j in range(3):
            assert mat_eq(mat_mul(trs[i], trs[j]), mat_mul(trs[j], trs[i]))
    # b t_i b^-1 = prod_k t_k^(A_ki) : conjugation acts by A on translations
    binv = inverse([r[:] for r in bmat])
    for i in range(3):
        conj = mat_mul(mat_mul(bmat, trs[i]), binv)
        expected = identity(4)
        for k in range(3):
            expected[k][3] += Q(a[k][i])
        assert mat_eq(conj, expected)
