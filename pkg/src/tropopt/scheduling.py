"""Minimum-makespan project scheduling in max-plus form.

For activities ``i = 1..n`` with initiation times ``x_i``:

* ``C[i, j]`` is the start-finish lag: activity ``i`` completes no earlier
  than ``x_j + C[i, j]``, so completions are ``y = C x``;
* ``D[i, j]`` is the finish-start lag: ``x_i >= y_j + D[i, j]``;
* ``g`` holds early-start times (``x >= g``), ``f`` due dates (``y <= f``).

Missing lags are the semifield zero.  The makespan ``max y - min x`` equals
``1^T C x x^- 1``, a rank-one instance of :mod:`tropopt.optimize`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CyclicFinishStart,
    DimensionMismatch,
    InfeasibleDueDates,
    IrregularBound,
    NotRegular,
    NotRowRegular,
    NotSquare,
    UnsupportedConstraintCombination,
    ValidationError,
)
from .linalg import Matrix, conj, kleene_star, norm, powers, tr_fn
from .optimize import BoxSet, GeneratorSet, Problem, rank_one_unconstrained
from .semifield import ZERO

SF_ONLY = "start-finish"
SF_ES_LF = "start-finish + early start + due dates"
SF_FS_ES = "start-finish + finish-start + early start"


@dataclass(frozen=True)
class ProjectSpec:
    C: Matrix
    D: Matrix | None = None
    g: Matrix | None = None
    f: Matrix | None = None
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        n = self.C.nrows
        if not self.C.is_square:
            raise ValidationError(f"start-finish matrix must be square, got {self.C.shape}")
        if self.D is not None and self.D.shape != (n, n):
            raise ValidationError(f"finish-start matrix must be {n}x{n}, got {self.D.shape}")
        for label, v in (("early-start", self.g), ("due-date", self.f)):
            if v is not None and v.shape != (n, 1):
                raise ValidationError(f"{label} vector must have {n} entries, got {v.shape}")
        if self.names is not None and len(self.names) != n:
            raise ValidationError(f"{len(self.names)} names for {n} activities")
        if not self.C.is_row_regular():
            raise ValidationError("every activity needs at least one start-finish lag")

    @property
    def n(self) -> int:
        return self.C.nrows

    @property
    def sf(self):
        return self.C.sf


@dataclass(frozen=True)
class ScheduleResult:
    """Optimal makespan with the full set of optimal initiation vectors.

    ``earliest_x`` is the least optimal schedule when early starts bound it
    from below (``u`` is the generator argument producing it).  Without
    early starts the set has no least element and a normalized member is
    reported instead (smallest start at zero, or for due-date problems the
    latest member).
    """

    makespan: object
    solutions: GeneratorSet
    earliest_x: Matrix
    completions_y: Matrix
    problem: Problem
    problem_class: str
    u: Matrix | None = None
    box: BoxSet | None = None

    def value(self, x: Matrix):
        return self.problem.value(x)


def completions(C: Matrix, x: Matrix) -> Matrix:
    """Completion times ``y_i = max_j (x_j + C[i, j])``."""
    if not C.is_row_regular():
        raise NotRowRegular("start-finish matrix has an activity with no lags")
    if not x.is_regular():
        raise IrregularBound("initiation times must all be finite")
    return C @ x


def _ones_setup(C: Matrix):
    if not C.is_square:
        raise NotSquare(f"start-finish matrix must be square, got {C.shape}")
    if not C.is_row_regular():
        raise NotRowRegular("start-finish matrix has an activity with no lags")
    one = Matrix.ones(C.nrows, C.sf)
    return one, one.T @ C


def _normalized(x: Matrix) -> Matrix:
    sf = x.sf
    low = min(x.entries())
    return x.map(lambda a: sf.div(a, low))


def _fill_zeros(v: Matrix, fill) -> Matrix:
    return Matrix.column(
        [b if a is ZERO else a for a, b in zip(v.entries(), fill.entries())], v.sf
    )


def makespan_sf(C: Matrix) -> ScheduleResult:
    """Start-finish constraints only: the minimum makespan is ``||C||``."""
    one, qc = _ones_setup(C)
    r = rank_one_unconstrained(one, qc, name="makespan, start-finish")
    x = r.solutions.star @ one
    return ScheduleResult(
        makespan=r.minimum,
        solutions=r.solutions,
        earliest_x=x,
        completions_y=C @ x,
        problem=r.problem,
        problem_class=SF_ONLY,
        u=one,
        box=r.box,
    )


def makespan_sf_es_lf(C: Matrix, g: Matrix | None, f: Matrix) -> ScheduleResult:
    """Start-finish, early-start and due-date constraints.

    The makespan is ``||C|| + ||C g|| ||f^- C||`` (tropical operations) and
    the optimal schedules are ``(I + t^{-1} 1 1^T C) u`` for
    ``g <= u <= (f^- C (I + t^{-1} 1 1^T C))^-``.
    """
    one, qc = _ones_setup(C)
    sf = C.sf
    n = C.nrows
    if not C.is_regular():
        raise NotRegular("start-finish matrix must have no zero rows or columns")
    if f.shape != (n, 1):
        raise DimensionMismatch(f"due dates must have {n} entries")
    if not f.is_regular():
        raise IrregularBound("every activity needs a due date")
    g = Matrix.zeros(n, 1, sf) if g is None else g
    if g.shape != (n, 1):
        raise DimensionMismatch(f"early starts must have {n} entries")
    fC = conj(f) @ C
    fcg = (fC @ g).scalar()
    if not sf.leq(fcg, sf.one):
        raise InfeasibleDueDates(
            f"f^- C g = {sf.fmt(fcg)} > 0: the early starts cannot meet the due dates"
        )
    theta = sf.add(norm(C), sf.mul(norm(C @ g), norm(fC)))
    A = one @ qc
    star = Matrix.identity(n, sf) + A.scale(sf.inv(theta))
    u_high = conj(fC @ star)
    gen = GeneratorSet(star, g, u_high)
    u = _fill_zeros(g, u_high)
    x = star @ u
    problem = Problem(A, lower=g, bound=(C, f), name="makespan, start-finish + early start + due dates")
    return ScheduleResult(theta, gen, x, C @ x, problem, SF_ES_LF, u=u)


def makespan_sf_fs_es(C: Matrix, D: Matrix, g: Matrix | None) -> ScheduleResult:
    """Start-finish, finish-start and early-start constraints.

    Requires ``Tr(D C) <= 0`` (no positive finish-start cycle).  The makespan
    is ``||C (D C)*||`` and the optimal schedules are
    ``(t^{-1} 1 1^T C + D C)* u`` for ``u >= g``.
    """
    one, qc = _ones_setup(C)
    sf = C.sf
    n = C.nrows
    if D.shape != C.shape:
        raise DimensionMismatch(f"finish-start matrix {D.shape} does not match {C.shape}")
    if g is not None and g.shape != (n, 1):
        raise DimensionMismatch(f"early starts must have {n} entries")
    B = D @ C
    pows = powers(B)
    t = tr_fn(B, pows)
    if not sf.leq(t, sf.one):
        raise CyclicFinishStart(
            f"Tr(DC) = {sf.fmt(t)} > 0: the finish-start lags contain a positive cycle"
        )
    B_star = kleene_star(B, pows)
    theta = norm(C @ B_star)
    A = one @ qc
    star = kleene_star(A.scale(sf.inv(theta)) + B)
    if g is None:
        gen = GeneratorSet(star, one, None, scale_free=True)
        u = one
        x = _normalized(star @ one)
    else:
        gen = GeneratorSet(star, g, None)
        finite = [a for a in g.entries() if a is not ZERO]
        u = _fill_zeros(g, Matrix.column([min(finite, default=sf.one)] * n, sf))
        x = star @ u
    problem = Problem(A, lower=g, closure=B, name="makespan, start-finish + finish-start + early start")
    return ScheduleResult(theta, gen, x, C @ x, problem, SF_FS_ES, u=u)


def classify(project: ProjectSpec) -> str:
    """Which problem class a project falls into, by the constraints present."""
    has_fs = project.D is not None
    has_lf = project.f is not None
    if has_fs and has_lf:
        raise UnsupportedConstraintCombination(
            "due dates together with finish-start lags are not supported"
        )
    if has_lf:
        return SF_ES_LF
    if has_fs or project.g is not None:
        return SF_FS_ES
    return SF_ONLY


def solve_project(project: ProjectSpec) -> ScheduleResult:
    kind = classify(project)
    if kind == SF_ONLY:
        return makespan_sf(project.C)
    if kind == SF_ES_LF:
        return makespan_sf_es_lf(project.C, project.g, project.f)
    D = project.D if project.D is not None else Matrix.zeros(project.n, project.n, project.sf)
    return makespan_sf_fs_es(project.C, D, project.g)
