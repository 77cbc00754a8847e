"""Brute-force verification of solver claims at desk scale.

The oracle never calls the solvers.  It re-evaluates objectives and
constraints with its own vectorized max-plus kernels (numpy, ``-inf`` for the
zero).  For the exact backend every quantity is first multiplied by the least
common multiple of all denominators involved, so the float64 arithmetic runs
on integers and is exact; comparisons against the claimed minimum are
therefore exact as well.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import GridTooLarge
from .linalg import Matrix
from .optimize import BoxSet, GeneratorSet, Problem
from .semifield import ZERO

MAX_GRID_DIM = 4
MAX_GRID_POINTS = 2_000_000
MAX_REPORTED = 20
_EXACT_LIMIT = 2.0 ** 50


@dataclass
class OracleReport:
    kind: str
    instance: str
    claimed: str
    best: str | None
    best_point: list[str] | None
    violations: list[str] = field(default_factory=list)
    violation_count: int = 0
    samples: int = 0
    feasible_samples: int = 0
    member_samples: int = 0
    seed: int | None = None
    attained: bool = False

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


# -- numeric encoding -------------------------------------------------------


def _matrices_of(*objs):
    for o in objs:
        if o is None:
            continue
        if isinstance(o, Matrix):
            yield o
        elif isinstance(o, Problem):
            yield from _matrices_of(o.objective, o.lower, o.upper, o.closure)
            if o.bound is not None:
                yield from o.bound
        elif isinstance(o, GeneratorSet):
            yield from _matrices_of(o.star, o.u_low, o.u_high)
        elif isinstance(o, BoxSet):
            yield from _matrices_of(o.lower, o.upper)
        elif isinstance(o, (tuple, list)):
            yield from _matrices_of(*o)


class _Encoder:
    """Maps semifield data onto float64 arrays (scaled to integers when exact)."""

    def __init__(self, sf, objs, scalars=(), refine: int = 1):
        self.sf = sf
        values = [a for m in _matrices_of(*objs) for a in m.entries() if a is not ZERO]
        values += [a for a in scalars if a is not None and a is not ZERO]
        if sf.exact:
            scale = refine
            for a in values:
                scale = math.lcm(scale, Fraction(a).denominator)
            self.scale = scale
            self.tol = 0.0
        else:
            self.scale = 1
            self.tol = sf.eps
        self.magnitude = max((abs(float(a)) for a in values), default=0.0)
        if sf.exact and (self.magnitude + 1) * self.scale * 8 > _EXACT_LIMIT:
            raise ValueError("instance too large for exact float64 evaluation")

    def scalar(self, a) -> float:
        if a is ZERO:
            return -math.inf
        return float(Fraction(a) * self.scale) if self.sf.exact else float(a)

    def array(self, m: Matrix | None) -> np.ndarray | None:
        if m is None:
            return None
        return np.array([[self.scalar(a) for a in r] for r in m.rows], dtype=float)

    def vec(self, m: Matrix | None) -> np.ndarray | None:
        return None if m is None else self.array(m).reshape(-1)

    def decode(self, v: float) -> str:
        if v == -math.inf:
            return self.sf.fmt(ZERO)
        if self.sf.exact:
            return self.sf.fmt(Fraction(int(v), self.scale))
        return self.sf.fmt(float(v))


def _apply(M: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Row-wise max-plus product: result[s] = M (x) X[s]."""
    return (X[:, None, :] + M[None, :, :]).max(axis=2)


def _objective(A: np.ndarray, X: np.ndarray) -> np.ndarray:
    return (_apply(A, X) - X).max(axis=1)


class _Numeric:
    def __init__(self, problem: Problem, enc: _Encoder):
        self.enc = enc
        self.A = enc.array(problem.objective)
        self.g = enc.vec(problem.lower)
        self.h = enc.vec(problem.upper)
        self.M, self.d = (None, None)
        if problem.bound is not None:
            self.M = enc.array(problem.bound[0])
            self.d = enc.vec(problem.bound[1])
        self.B = enc.array(problem.closure)

    def feasible(self, X: np.ndarray) -> np.ndarray:
        tol = self.enc.tol
        ok = np.isfinite(X).all(axis=1)
        if self.g is not None:
            ok &= (X >= self.g - tol).all(axis=1)
        if self.h is not None:
            ok &= (X <= self.h + tol).all(axis=1)
        if self.M is not None:
            ok &= (_apply(self.M, X) <= self.d + tol).all(axis=1)
        if self.B is not None:
            ok &= (_apply(self.B, X) <= X + tol).all(axis=1)
        return ok

    def objective(self, X: np.ndarray) -> np.ndarray:
        return _objective(self.A, X)

    def upper_envelope(self) -> np.ndarray:
        """Componentwise upper limit implied by ``x <= h`` and ``M x <= d``."""
        n = self.A.shape[0]
        hi = np.full(n, math.inf)
        if self.h is not None:
            hi = np.minimum(hi, self.h)
        if self.M is not None:
            with np.errstate(invalid="ignore"):
                slack = self.d[:, None] - self.M
            slack[~np.isfinite(self.M)] = math.inf
            hi = np.minimum(hi, slack.min(axis=0))
        return hi

    def close(self, X: np.ndarray) -> np.ndarray:
        """Push samples up to the least point above them with ``B x <= x``."""
        if self.B is None:
            return X
        for _ in range(X.shape[1] + 1):
            Y = np.maximum(X, _apply(self.B, X))
            if np.array_equal(Y, X):
                return X
            X = Y
        return X


def _point(enc: _Encoder, x: np.ndarray) -> list[str]:
    return [enc.decode(v) for v in x]


def _record(report: OracleReport, message: str):
    report.violation_count += 1
    if len(report.violations) < MAX_REPORTED:
        report.violations.append(message)


# -- grid ------------------------------------------------------------------


def _as_bounds(b, n: int) -> list:
    if isinstance(b, Matrix):
        return list(b.entries())
    if isinstance(b, (list, tuple)):
        return list(b)
    return [b] * n


def grid_check(problem: Problem, low, high, claimed=None, step=1,
               max_points: int = MAX_GRID_POINTS) -> OracleReport:
    """Exhaustive minimum of the objective over feasible points of a grid.

    ``low``/``high`` give finite per-coordinate bounds (scalars broadcast);
    the grid is ``low + k*step`` inside ``[low, high]``.  A grid point
    beating ``claimed`` is a violation; ``attained`` records whether the grid
    minimum equals ``claimed``.
    """
    sf = problem.sf
    n = problem.n
    if n > MAX_GRID_DIM:
        raise GridTooLarge(f"grid search limited to n <= {MAX_GRID_DIM}, got {n}")
    lows = [sf.coerce(a) for a in _as_bounds(low, n)]
    highs = [sf.coerce(a) for a in _as_bounds(high, n)]
    step = sf.coerce(step)
    if any(a is ZERO for a in lows + highs):
        raise ValueError("grid bounds must be finite")
    if step <= 0:
        raise ValueError("grid step must be positive")
    counts = [int(math.floor((hi - lo) / step)) + 1 if hi >= lo else 0 for lo, hi in zip(lows, highs)]
    total = math.prod(counts)
    if total > max_points:
        raise GridTooLarge(f"grid has {total} points, limit is {max_points}")
    enc = _Encoder(sf, [problem], scalars=lows + highs + [step, claimed])
    num = _Numeric(problem, enc)
    report = OracleReport("grid", problem.name, sf.fmt(claimed) if claimed is not None else "",
                          None, None, samples=total)
    if total == 0:
        return report
    s = enc.scalar(step)
    axes = [enc.scalar(lo) + s * np.arange(c) for lo, c in zip(lows, counts)]
    X = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    mask = num.feasible(X)
    report.feasible_samples = int(mask.sum())
    if not mask.any():
        return report
    Xf = X[mask]
    vals = num.objective(Xf)
    k = int(np.argmin(vals))
    report.best = enc.decode(vals[k])
    report.best_point = _point(enc, Xf[k])
    if claimed is not None:
        c = enc.scalar(claimed)
        below = vals < c - enc.tol
        for idx in np.flatnonzero(below)[:MAX_REPORTED]:
            _record(report, f"grid point {_point(enc, Xf[idx])} has objective "
                            f"{enc.decode(vals[idx])} < claimed {sf.fmt(claimed)}")
        report.violation_count = int(below.sum())
        report.attained = bool(abs(vals[k] - c) <= enc.tol)
    return report


# -- sampling --------------------------------------------------------------


def _draw(rng, lo: np.ndarray, hi: np.ndarray, radius: float, count: int, exact: bool) -> np.ndarray:
    """Uniform draws per coordinate in ``[lo, hi]``; infinite sides get ``radius`` of room."""
    lo = np.where(np.isfinite(lo), lo, np.where(np.isfinite(hi), hi - radius, -radius))
    hi = np.where(np.isfinite(hi), hi, lo + 2 * radius)
    hi = np.maximum(hi, lo)
    if exact:
        return rng.integers(lo.astype(np.int64), hi.astype(np.int64), endpoint=True,
                            size=(count, lo.size)).astype(float)
    return rng.uniform(lo, hi, size=(count, lo.size))


def sample_check(problem: Problem, claimed, solutions: GeneratorSet | BoxSet | None = None,
                 samples: int = 10_000, seed: int = 0, refine: int = 4) -> OracleReport:
    """Randomized soundness check of a claimed minimum and solution set.

    Feasible random points must not beat ``claimed``; sampled members of
    ``solutions`` must be feasible and attain ``claimed`` exactly.  Points
    are drawn on a ``1/refine`` lattice (exact backend) and pushed through
    the closure of ``B x <= x`` rather than rejected.
    """
    sf = problem.sf
    n = problem.n
    enc = _Encoder(sf, [problem, solutions], scalars=[claimed], refine=refine)
    num = _Numeric(problem, enc)
    rng = np.random.default_rng(seed)
    c = enc.scalar(claimed)
    radius = float(np.ceil((2 * enc.magnitude + 4) * enc.scale))
    report = OracleReport("sample", problem.name, sf.fmt(claimed), None, None,
                          samples=samples, seed=seed)

    lo = num.g if num.g is not None else np.full(n, -math.inf)
    X = _draw(rng, lo, num.upper_envelope(), radius, samples, sf.exact)
    X = num.close(X)
    mask = num.feasible(X)
    report.feasible_samples = int(mask.sum())
    if mask.any():
        Xf = X[mask]
        vals = num.objective(Xf)
        k = int(np.argmin(vals))
        report.best = enc.decode(vals[k])
        report.best_point = _point(enc, Xf[k])
        report.attained = bool(abs(vals[k] - c) <= enc.tol)
        for idx in np.flatnonzero(vals < c - enc.tol):
            _record(report, f"feasible point {_point(enc, Xf[idx])} has objective "
                            f"{enc.decode(vals[idx])} < claimed {sf.fmt(claimed)}")

    if solutions is not None:
        members = _members(solutions, enc, rng, radius, samples, sf.exact)
        report.member_samples = len(members)
        ok = num.feasible(members)
        for idx in np.flatnonzero(~ok):
            _record(report, f"solution-set member {_point(enc, members[idx])} is infeasible")
        vals = num.objective(members)
        off = ok & (np.abs(vals - c) > enc.tol)
        for idx in np.flatnonzero(off):
            _record(report, f"solution-set member {_point(enc, members[idx])} has objective "
                            f"{enc.decode(vals[idx])} != claimed {sf.fmt(claimed)}")
        if ok.any():
            report.attained = True
    return report


def _members(s, enc: _Encoder, rng, radius: float, count: int, exact: bool) -> np.ndarray:
    if isinstance(s, GeneratorSet):
        n = s.star.nrows
        lo = np.full(n, -math.inf) if s.scale_free else enc.vec(s.u_low)
        hi = enc.vec(s.u_high) if s.u_high is not None else np.full(n, math.inf)
        U = _draw(rng, lo, hi, radius, count, exact)
        return _apply(enc.array(s.star), U)
    lower = enc.vec(s.lower)
    upper = enc.vec(s.upper)
    alpha = _draw(rng, np.array([-radius]), np.array([radius]), radius, count, exact)
    lo = np.where(np.isfinite(lower), lower, upper - radius)
    t = rng.integers(0, 8, endpoint=True, size=(count, lower.size)) / 8
    X = alpha + lo + t * (upper - lo)
    return np.floor(X) if exact else X


def check_instance(problem: Problem, claimed, solutions=None, samples: int = 10_000,
                   seed: int = 0, grid: tuple | None = None) -> list[OracleReport]:
    """Run ``sample_check`` and, when a grid box is given, ``grid_check``."""
    reports = [sample_check(problem, claimed, solutions, samples, seed)]
    if grid is not None:
        low, high = grid
        reports.append(grid_check(problem, low, high, claimed))
    return reports


def integer_box(values: Sequence) -> bool:
    return all(v is ZERO or Fraction(v).denominator == 1 for v in values)


def schedule_grid_box(project) -> tuple[list, list] | None:
    """Integer box guaranteed to contain an optimal schedule, from the data alone.

    Start-finish only: optimal schedules shifted to start at 0 stay below the
    spread of ``C``.  Due dates: ``[g, h]`` with ``h_j = min_i (f_i - C[i, j])``.
    Finish-start: least optimal schedule is within ``(n-1) * max(D C, 0)``
    plus the spread of ``g`` above ``g``.  Returns ``None`` when no finite box
    follows from the data.
    """
    n = project.n
    C = project.C.rows
    finite = [a for r in C for a in r if a is not ZERO]
    spread = max(finite) - min(finite)
    if project.f is not None:
        if project.g is None or not project.g.is_regular():
            return None
        f = project.f.entries()
        hi = [min(f[i] - C[i][j] for i in range(n) if C[i][j] is not ZERO) for j in range(n)]
        return list(project.g.entries()), hi
    if project.D is None and project.g is None:
        return [0] * n, [spread] * n
    D = project.D.rows if project.D is not None else [[ZERO] * n for _ in range(n)]
    dc = [D[i][k] + C[k][j] for i in range(n) for j in range(n) for k in range(n)
          if D[i][k] is not ZERO and C[k][j] is not ZERO]
    if project.g is None:
        lo = [0] * n
    else:
        g = [a for a in project.g.entries() if a is not ZERO]
        base = min(g, default=0)
        lo = [base if a is ZERO else a for a in project.g.entries()]
    width = (n - 1) * max([0] + dc) + (max(lo) - min(lo))
    return lo, [a + width for a in lo]
