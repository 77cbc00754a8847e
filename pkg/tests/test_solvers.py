import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from instances import Z, matrix, regular_vector
from tropopt.errors import (
    DimensionMismatch,
    IrregularBound,
    IrregularCoefficient,
    NotColumnRegular,
    ZeroRightHandSide,
)
from tropopt.linalg import Matrix, conj, vector
from tropopt.semifield import ZERO
from tropopt.solvers import solve_equation, solve_inequality

seeds = st.integers(min_value=0, max_value=2**32)


def test_equation_unit_coefficients():
    fam = solve_equation(Matrix.ones(3), 5)
    assert fam.upper == vector([5, 5, 5])
    low, high = fam.box(0)
    assert low == vector([5, Z, Z]) and high == vector([5, 5, 5])
    assert fam.contains(vector([5, 1, -2]))
    assert not fam.contains(vector([4, 1, -2]))
    assert not fam.contains(vector([6, 1, -2]))
    assert fam.k_set == (0, 1, 2)
    with pytest.raises(IndexError):
        fam.representative(3)


def test_equation_errors():
    with pytest.raises(IrregularCoefficient):
        solve_equation(vector([0, Z]), 1)
    with pytest.raises(ZeroRightHandSide):
        solve_equation(vector([0, 0]), ZERO)
    with pytest.raises(DimensionMismatch):
        solve_equation(Matrix.identity(2), 1)


@given(seeds)
def test_equation_family_is_exactly_the_solution_set(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    a = regular_vector(rng, n)
    d = rng.randint(-5, 5)
    fam = solve_equation(a, d)
    ub = fam.upper.entries()
    ranges = [range(int(u) - 3, int(u) + 2) for u in ub]
    for pt in itertools.product(*ranges):
        x = vector(pt)
        solves = (a.T @ x).scalar() == d
        assert fam.contains(x) == solves


@given(seeds)
def test_equation_samples_solve(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    a = regular_vector(rng, n, den=2)
    d = rng.randint(-5, 5)
    fam = solve_equation(a, d)
    for k in range(n):
        x = fam.sample(seed=seed, k=k)
        assert (a.T @ x).scalar() == d
        assert x[k, 0] == fam.upper[k, 0]
        assert fam.representative(k) == fam.upper


def test_inequality_identity():
    d = vector([1, -2, 3])
    assert solve_inequality(Matrix.identity(3), d) == d


def test_inequality_due_dates():
    C = Matrix([[4, 0, Z], [1, 3, -1], [0, 2, 2]])
    f = vector([8, 7, 4])
    assert conj(solve_inequality(C, f)) == Matrix.row([-4, -2, -2])
    assert solve_inequality(C, f) == vector([4, 2, 2])


def test_inequality_errors():
    with pytest.raises(NotColumnRegular):
        solve_inequality(Matrix([[0, Z], [1, Z]]), vector([0, 0]))
    with pytest.raises(IrregularBound):
        solve_inequality(Matrix.identity(2), vector([0, Z]))
    with pytest.raises(DimensionMismatch):
        solve_inequality(Matrix.identity(2), vector([0, 0, 0]))


@given(seeds)
def test_inequality_solution_is_greatest(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 5), rng.randint(1, 5)
    while True:
        A = matrix(rng, m, n, p_zero=0.4)
        if A.is_column_regular():
            break
    d = regular_vector(rng, m, den=2)
    x = solve_inequality(A, d)
    assert x.is_regular()
    assert (A @ x).leq(d)
    for i in range(n):
        bumped = list(x.entries())
        bumped[i] += 1
        assert not (A @ vector(bumped)).leq(d)
