"""Tropical (max-plus) optimization and minimum-makespan project scheduling."""

from .errors import TropicalError
from .linalg import (
    Matrix,
    conj,
    conjugate_transpose,
    kleene_star,
    mat_mul,
    norm,
    spectral_radius,
    tr_fn,
    trace,
    vector,
)
from .optimize import (
    BoxSet,
    GeneratorSet,
    OptResult,
    Problem,
    min_rank_one,
    min_rank_one_boxed,
    min_rank_one_linear,
    min_rayleigh,
    min_rayleigh_boxed,
    min_rayleigh_linear,
)
from .scheduling import (
    ProjectSpec,
    ScheduleResult,
    completions,
    makespan_sf,
    makespan_sf_es_lf,
    makespan_sf_fs_es,
    solve_project,
)
from .semifield import MAXPLUS, MINPLUS, ZERO, MaxPlus, MinPlus, max_plus
from .solvers import solve_equation, solve_inequality

__version__ = "0.1.0"
