"""Closed-form solutions of ``a^T x = d`` and ``A x <= d``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    IrregularBound,
    IrregularCoefficient,
    NotColumnRegular,
    ZeroRightHandSide,
)
from .linalg import Matrix, conj
from .semifield import ZERO


@dataclass(frozen=True)
class EquationSolutionFamily:
    """All solutions of ``a^T x = d`` for regular ``a``.

    For every index ``k`` the family contains the box where ``x_k`` is pinned
    to ``a_k^{-1} d`` and every other component lies below ``a_i^{-1} d``.
    The boxes share the upper vector, so only it and the index set are kept.
    Indices are 0-based.
    """

    coefficients: Matrix
    rhs: object
    upper: Matrix

    @property
    def k_set(self) -> tuple[int, ...]:
        return tuple(range(self.upper.nrows))

    def box(self, k: int) -> tuple[Matrix, Matrix]:
        """Lower and upper corner of the k-th box (lower is zero off ``k``)."""
        ub = self.upper.entries()
        low = [ZERO] * len(ub)
        low[k] = ub[k]
        return Matrix.column(low, self.upper.sf), self.upper

    def representative(self, k: int) -> Matrix:
        if not 0 <= k < self.upper.nrows:
            raise IndexError(k)
        # x_k pinned and the rest at their bounds is the shared upper vector
        return self.upper

    def contains(self, x: Matrix) -> bool:
        if x.shape != self.upper.shape:
            return False
        sf = self.upper.sf
        if not x.leq(self.upper):
            return False
        return any(sf.eq(a, b) for a, b in zip(x.entries(), self.upper.entries()))

    def sample(self, seed: int | None = None, k: int | None = None) -> Matrix:
        """A member of the k-th box (random k if omitted), other entries pushed down."""
        rng = random.Random(seed)
        sf = self.upper.sf
        ub = self.upper.entries()
        k = rng.randrange(len(ub)) if k is None else k
        out = []
        for i, b in enumerate(ub):
            if i == k:
                out.append(b)
            else:
                drop = Fraction(rng.randint(0, 16), 4)
                out.append(sf.mul(b, sf.coerce(-drop)))
        return Matrix.column(out, sf)


def solve_equation(a: Matrix, d) -> EquationSolutionFamily:
    """Solution family of the scalar equation ``a^T x = d``."""
    if a.ncols != 1:
        raise DimensionMismatch("coefficients must be a column vector")
    sf = a.sf
    d = sf.coerce(d)
    if not a.is_regular():
        raise IrregularCoefficient("coefficient vector has zero entries")
    if d is ZERO:
        raise ZeroRightHandSide("right-hand side must be nonzero")
    upper = conj(a).T.scale(d)
    return EquationSolutionFamily(a, d, upper)


def solve_inequality(A: Matrix, d: Matrix) -> Matrix:
    """Greatest regular solution ``(d^- A)^-`` of ``A x <= d``.

    Every regular ``x`` below the returned vector solves the inequality, and
    nothing else does.
    """
    if d.ncols != 1 or d.nrows != A.nrows:
        raise DimensionMismatch(f"bound of shape {d.shape} does not fit {A.shape}")
    if not A.is_column_regular():
        raise NotColumnRegular("inequality matrix has a zero column")
    if not d.is_regular():
        raise IrregularBound("right-hand side has zero entries")
    return conj(conj(d) @ A)
