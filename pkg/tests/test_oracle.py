from fractions import Fraction

import pytest

from instances import due_date_instance, finish_start_instance, three_activities, sf_instance
from tropopt import oracle
from tropopt.errors import GridTooLarge
from tropopt.linalg import Matrix, conj
from tropopt.optimize import Problem
from tropopt.scheduling import ProjectSpec, makespan_sf, makespan_sf_es_lf, makespan_sf_fs_es
from tropopt.semifield import ZERO


def test_grid_due_dates():
    C, D, g, f = three_activities()
    r = makespan_sf_es_lf(C, g, f)
    h = conj(conj(f) @ C)
    rep = oracle.grid_check(r.problem, g, h, r.makespan)
    assert rep.best == "5" and rep.best_point == ["3", "2", "2"]
    assert rep.attained and rep.passed


def test_grid_finish_start():
    C, D, g, f = three_activities()
    r = makespan_sf_fs_es(C, D, g)
    high = Matrix.column([a + 10 for a in g.entries()])
    rep = oracle.grid_check(r.problem, g, high, r.makespan)
    assert rep.best == "10" and rep.attained and rep.passed


def test_grid_scalar():
    rep = oracle.grid_check(Problem(Matrix([[7]])), -3, 3)
    assert rep.best == "7"


def test_grid_reports_a_false_claim():
    C, *_ = three_activities()
    r = makespan_sf(C)
    rep = oracle.grid_check(r.problem, 0, 3, claimed=5)
    assert not rep.passed and rep.violation_count > 0 and not rep.attained


def test_grid_limits():
    with pytest.raises(GridTooLarge):
        oracle.grid_check(Problem(Matrix.identity(5)), 0, 1)
    with pytest.raises(GridTooLarge):
        oracle.grid_check(Problem(Matrix.identity(4)), 0, 100)


def test_grid_minimum_monotone_in_box():
    for seed in range(10):
        C = sf_instance(seed)
        problem = makespan_sf(C).problem
        best = None
        for width in range(0, 5):
            rep = oracle.grid_check(problem, 0, width)
            val = int(rep.best)
            assert best is None or val <= best
            best = val


def test_sample_check_start_finish_members():
    C, *_ = three_activities()
    r = makespan_sf(C)
    rep = oracle.sample_check(r.problem, r.makespan, r.solutions, samples=10_000, seed=1)
    assert rep.passed and rep.member_samples == 10_000
    rep = oracle.sample_check(r.problem, r.makespan, r.box, samples=10_000, seed=1)
    assert rep.passed


@pytest.mark.parametrize("make", [
    lambda s: makespan_sf(sf_instance(s)),
    lambda s: makespan_sf_es_lf(*due_date_instance(s)),
    lambda s: makespan_sf_fs_es(*finish_start_instance(s)),
])
def test_sample_check_random(make):
    for seed in range(10):
        r = make(seed)
        rep = oracle.sample_check(r.problem, r.makespan, r.solutions, samples=10_000, seed=seed)
        assert rep.passed, rep.violations


def test_sample_check_deterministic():
    C, D, g, f = three_activities()
    r = makespan_sf_fs_es(C, D, g)
    a = oracle.sample_check(r.problem, r.makespan, r.solutions, samples=3000, seed=9)
    b = oracle.sample_check(r.problem, r.makespan, r.solutions, samples=3000, seed=9)
    assert a.to_dict() == b.to_dict()


def test_sample_check_detects_wrong_minimum_and_wrong_set():
    C, D, g, f = three_activities()
    r = makespan_sf_fs_es(C, D, g)
    rep = oracle.sample_check(r.problem, 11, r.solutions, samples=2000, seed=0)
    assert not rep.passed
    bogus = makespan_sf(C).solutions
    rep = oracle.sample_check(r.problem, r.makespan, bogus, samples=2000, seed=0)
    assert not rep.passed


def test_schedule_grid_box():
    C, D, g, f = three_activities()
    assert oracle.schedule_grid_box(ProjectSpec(C)) == ([0, 0, 0], [5, 5, 5])
    lo, hi = oracle.schedule_grid_box(ProjectSpec(C, g=g, f=f))
    assert lo == [3, 2, 1] and hi == [4, 2, 2]
    lo, hi = oracle.schedule_grid_box(ProjectSpec(C, D=D, g=g))
    assert lo == [3, 2, 1] and all(b >= x for b, x in zip(hi, [3, 7, 11]))


def test_integer_box():
    assert oracle.integer_box([Fraction(1), ZERO, Fraction(-3)])
    assert not oracle.integer_box([Fraction(1, 2)])
