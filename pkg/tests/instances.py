"""Seeded random instances shared by the test modules."""

import random
from fractions import Fraction

from tropopt.linalg import Matrix, tr_fn
from tropopt.semifield import MAXPLUS, ZERO

Z = "-inf"


def three_activities():
    C = Matrix([[4, 0, Z], [1, 3, -1], [0, 2, 2]])
    D = Matrix([[Z, Z, Z], [0, Z, Z], [2, 1, Z]])
    g = Matrix.column([3, 2, 1])
    f = Matrix.column([8, 7, 4])
    return C, D, g, f


def scalar(rng, lo=-5, hi=5, p_zero=0.0, den=1):
    if p_zero and rng.random() < p_zero:
        return ZERO
    return Fraction(rng.randint(lo * den, hi * den), den)


def matrix(rng, n, m=None, lo=-5, hi=5, p_zero=0.0, den=1, sf=MAXPLUS):
    m = n if m is None else m
    return Matrix([[scalar(rng, lo, hi, p_zero, den) for _ in range(m)] for _ in range(n)], sf)


def regular_vector(rng, n, lo=-5, hi=5, den=1, sf=MAXPLUS):
    return Matrix.column([scalar(rng, lo, hi, 0.0, den) for _ in range(n)], sf)


def nonzero_vector(rng, n, lo=-5, hi=5, p_zero=0.3, den=1):
    while True:
        v = Matrix.column([scalar(rng, lo, hi, p_zero, den) for _ in range(n)])
        if v.is_nonzero():
            return v


def row_regular(rng, n, lo=-3, hi=6, p_zero=0.4):
    while True:
        C = matrix(rng, n, lo=lo, hi=hi, p_zero=p_zero)
        if C.is_row_regular():
            return C


def regular(rng, n, lo=-3, hi=6, p_zero=0.3):
    while True:
        C = matrix(rng, n, lo=lo, hi=hi, p_zero=p_zero)
        if C.is_regular():
            return C


def star_convergent(rng, n, lo=-4, hi=3, p_zero=0.5):
    """Random integer matrix with Tr(B) <= 0."""
    while True:
        B = matrix(rng, n, lo=lo, hi=hi, p_zero=p_zero)
        if MAXPLUS.leq(tr_fn(B), MAXPLUS.one):
            return B


def sf_instance(seed):
    rng = random.Random(seed)
    return row_regular(rng, rng.randint(1, 4))


def due_date_instance(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    C = regular(rng, n)
    g = regular_vector(rng, n, 0, 4)
    slack = [rng.randint(0, 3) for _ in range(n)]
    f = Matrix.column([y + s for y, s in zip((C @ g).entries(), slack)])
    return C, g, f


def finish_start_instance(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    C = row_regular(rng, n, -2, 4)
    while True:
        D = matrix(rng, n, lo=-6, hi=2, p_zero=0.6)
        if MAXPLUS.leq(tr_fn(D @ C), MAXPLUS.one):
            break
    g = regular_vector(rng, n, 0, 4)
    return C, D, g
