import random
from fractions import Fraction as Q

from hermlor.exactla import det


def rand_invertible(n, rng=None, lo=-2, hi=2):
    """A random invertible integer matrix with entries in [lo, hi]."""
    rng = rng or random
    while True:
        t = [[Q(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)]
        if det([r[:] for r in t]) != 0:
            return t


def rand_sl(n, rng=None, lo=-2, hi=2):
    """A random determinant-1 integer matrix with entries in [lo, hi]."""
    rng = rng or random
    while True:
        t = [[Q(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)]
        if det([r[:] for r in t]) == 1:
            return t
