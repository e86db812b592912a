import random
from fractions import Fraction as Q

import pytest

from hermlor.liealg import (LieAlgebra, abelian, validate_jacobi,
                            lower_central_series, upper_central_series,
                            nilpotency_class, is_nilpotent, derived, center,
                            characteristic_sequence, carnot_associated,
                            bch_product, change_of_basis, is_isomorphism,
                            fingerprint, derivation_dim, direct_sum,
                            basis_vec, abelian_factor_dim)
from conftest import rand_invertible


def heis3():
    return LieAlgebra.from_table(3, {(1, 2): {3: 1}})


def test_jacobi():
    assert validate_jacobi(heis3()) == []
    bad = LieAlgebra.from_table(3, {(1, 2): {3: 1}, (1, 3): {1: 1}})
    assert validate_jacobi(bad) != []


def test_series_and_center():
    h = heis3()
    lcs = [s.dim for s in lower_central_series(h)]
    assert lcs == [3, 1, 0]
    ucs = [s.dim for s in upper_central_series(h)]
    assert ucs == [0, 1, 3]
    assert center(h).dim == 1
    assert derived(h).dim == 1
    assert nilpotency_class(h) == 2
    assert is_nilpotent(h)
    assert nilpotency_class(abelian(4)) == 1


def test_characteristic_sequence_heisenberg():
    assert tuple(characteristic_sequence(heis3())) == (2, 1)
    assert tuple(characteristic_sequence(abelian(3))) == (1, 1, 1)


def test_characteristic_sequence_isomorphism_invariant():
    rng = random.Random(3)
    l = LieAlgebra.from_table(4, {(1, 2): {3: 1}, (1, 3): {4: 1}})
    c = tuple(characteristic_sequence(l))
    assert c == (3, 1)
    for _ in range(5):
        t = rand_invertible(4, rng)
        assert tuple(characteristic_sequence(change_of_basis(l, t))) == c


def test_carnot():
    l = LieAlgebra.from_table(4, {(1, 2): {3: 1}, (1, 3): {4: 1}})
    car, dims = carnot_associated(l)
    assert dims == [2, 1, 1]
    assert validate_jacobi(car) == []
    assert nilpotency_class(car) == 3


def test_bch():
    h = heis3()
    x, y = basis_vec(3, 0), basis_vec(3, 1)
    # x * y = x + y + [x,y]/2 in the Heisenberg group
    assert bch_product(h, x, y) == [Q(1), Q(1), Q(1, 2)]
    # associativity at class 2
    z = basis_vec(3, 2)
    lhs = bch_product(h, bch_product(h, x, y), z)
    rhs = bch_product(h, x, bch_product(h, y, z))
    assert lhs == rhs


def test_change_of_basis_isomorphism():
    rng = random.Random(4)
    l = LieAlgebra.from_table(4, {(1, 2): {3: 1}, (1, 3): {4: 1}})
    for _ in range(5):
        t = rand_invertible(4, rng)
        m = change_of_basis(l, t)
        assert validate_jacobi(m) == []
        # rows of t are the images of m's basis in l's coordinates
        assert is_isomorphism(m, l, t)
    assert not is_isomorphism(l, abelian(4), rand_invertible(4, rng))


def test_fingerprint_invariance():
    rng = random.Random(5)
    l = LieAlgebra.from_table(4, {(1, 2): {3: 1}, (1, 3): {4: 1}})
    fp = fingerprint(l).as_tuple()
    for _ in range(3):
        t = rand_invertible(4, rng)
        assert fingerprint(change_of_basis(l, t)).as_tuple() == fp
    assert fingerprint(abelian(4)).as_tuple() != fp


def test_derivation_dim():
    # derivations of heis3: all 3x3 matrices d with d[x,y]=[dx,y]+[x,dy];
    # classical count is 6
    assert derivation_dim(heis3()) == 6
    assert derivation_dim(abelian(3)) == 9


def test_direct_sum_and_abelian_factor():
    s = direct_sum(heis3(), abelian(2))
    assert s.dim == 5
    assert validate_jacobi(s) == []
    assert abelian_factor_dim(s) == 2
    assert abelian_factor_dim(heis3()) == 0
