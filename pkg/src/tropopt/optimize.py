"""Minimization of ``x^- A x`` and of the rank-one objective ``q^- x x^- p``.

Every solver returns an :class:`OptResult` holding the minimum and a complete
description of the minimizers.  Solution sets come in two shapes:

* :class:`BoxSet` -- all ``x`` with ``a*lower <= x <= a*upper`` for some
  nonzero scalar ``a``;
* :class:`GeneratorSet` -- all ``x = S u`` where ``S`` is a Kleene star and
  ``u`` ranges over ``u_low <= u <= u_high``.

Because ``S`` is a star (``S S = S``) a vector belongs to a generator set
exactly when ``S x = x`` and ``x`` itself lies in the ``u`` range, so
membership needs no witness search.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    EmptySolutionSet,
    EnumerationTooLarge,
    InfeasibleBounds,
    IrregularH,
    IrregularQ,
    NotSquare,
    StarDiverges,
    ZeroP,
    ZeroSpectralRadius,
)
from .linalg import Matrix, conj, kleene_star, powers, spectral_radius, trace, tr_fn
from .semifield import ZERO

MAX_ENUMERATION_ORDER = 12


def rayleigh(A: Matrix, x: Matrix):
    """``x^- A x`` for a regular column ``x``."""
    return (conj(x) @ A @ x).scalar()


def rank_one_objective(p: Matrix, q: Matrix, x: Matrix):
    """``q^- x x^- p``."""
    return ((conj(q) @ x) @ (conj(x) @ p)).scalar()


@dataclass(frozen=True)
class Problem:
    """Descriptor of ``minimize x^- A x`` under optional constraints.

    ``lower``: ``g <= x``; ``upper``: ``x <= h``; ``bound``: ``M x <= d``;
    ``closure``: ``B x <= x``.  Zero entries of ``lower`` impose nothing.
    """

    objective: Matrix
    lower: Matrix | None = None
    upper: Matrix | None = None
    bound: tuple[Matrix, Matrix] | None = None
    closure: Matrix | None = None
    name: str = "x^- A x"

    @property
    def n(self) -> int:
        return self.objective.nrows

    @property
    def sf(self):
        return self.objective.sf

    def value(self, x: Matrix):
        return rayleigh(self.objective, x)

    def is_feasible(self, x: Matrix) -> bool:
        if not x.is_regular():
            return False
        if self.lower is not None and not self.lower.leq(x):
            return False
        if self.upper is not None and not x.leq(self.upper):
            return False
        if self.bound is not None:
            M, d = self.bound
            if not (M @ x).leq(d):
                return False
        if self.closure is not None and not (self.closure @ x).leq(x):
            return False
        return True


def _offset(rng: random.Random, span: int) -> Fraction:
    return Fraction(rng.randint(0, 4 * span), 4)


def _magnitude(*mats) -> int:
    vals = [abs(a) for m in mats if m is not None for a in m.entries() if a is not ZERO]
    return int(max(vals, default=0)) + 2


@dataclass(frozen=True)
class BoxSet:
    """``{x regular : a*lower <= x <= a*upper for some scalar a != 0}``."""

    lower: Matrix
    upper: Matrix
    scale_free: bool = True

    def alpha_range(self, x: Matrix):
        """Tightest admissible scalars ``(a_min, a_max)`` for ``x``."""
        sf = x.sf
        a_max = sf.inv((conj(x) @ self.lower).scalar())
        a_min = (conj(self.upper) @ x).scalar()
        return a_min, a_max

    def contains(self, x: Matrix) -> bool:
        if x.shape != self.lower.shape or not x.is_regular():
            return False
        a_min, a_max = self.alpha_range(x)
        return x.sf.leq(a_min, a_max)

    def sample(self, seed: int | None = None) -> Matrix:
        sf = self.lower.sf
        if not self.lower.leq(self.upper):
            raise EmptySolutionSet("box lower corner exceeds the upper corner")
        rng = random.Random(seed)
        span = _magnitude(self.lower, self.upper)
        alpha = sf.coerce(_offset(rng, 2 * span) - span)
        out = []
        for lo, hi in zip(self.lower.entries(), self.upper.entries()):
            top = sf.mul(alpha, hi)
            if lo is ZERO:
                out.append(sf.mul(top, sf.coerce(-_offset(rng, span))))
            else:
                t = sf.coerce(Fraction(rng.randint(0, 8), 8))
                bottom = sf.mul(alpha, lo)
                out.append(bottom + t * (top - bottom))
        return Matrix.column(out, sf)


@dataclass(frozen=True)
class GeneratorSet:
    """``{S u : u_low <= u <= u_high}`` with ``S`` a Kleene star.

    ``u_high`` of ``None`` leaves ``u`` unbounded above.  With ``scale_free``
    the lower bound is only a normalization and every regular ``u`` is
    allowed.
    """

    star: Matrix
    u_low: Matrix
    u_high: Matrix | None = None
    scale_free: bool = False

    def contains(self, x: Matrix) -> bool:
        if x.shape != self.u_low.shape or not x.is_regular():
            return False
        if not (self.star @ x).allclose(x):
            return False
        if not self.scale_free and not self.u_low.leq(x):
            return False
        if self.u_high is not None and not x.leq(self.u_high):
            return False
        return True

    def is_empty(self) -> bool:
        return self.u_high is not None and not self.u_low.leq(self.u_high)

    def least(self) -> Matrix | None:
        """``S u_low``, the least member, or ``None`` if it is not regular."""
        if self.scale_free:
            return None
        x = self.star @ self.u_low
        return x if x.is_regular() else None

    def greatest(self) -> Matrix | None:
        if self.u_high is None:
            return None
        return self.star @ self.u_high

    def sample_u(self, seed: int | None = None) -> Matrix:
        if self.is_empty():
            raise EmptySolutionSet("u range is empty")
        sf = self.star.sf
        rng = random.Random(seed)
        span = _magnitude(self.star, self.u_low, self.u_high)
        highs = self.u_high.entries() if self.u_high is not None else (None,) * self.u_low.nrows
        out = []
        for lo, hi in zip(self.u_low.entries(), highs):
            if self.scale_free:
                lo = ZERO
            if lo is not ZERO and hi is not None:
                t = sf.coerce(Fraction(rng.randint(0, 8), 8))
                out.append(lo + t * (hi - lo))
            elif lo is not ZERO:
                out.append(sf.mul(lo, sf.coerce(_offset(rng, span))))
            elif hi is not None:
                out.append(sf.mul(hi, sf.coerce(-_offset(rng, span))))
            else:
                out.append(sf.coerce(_offset(rng, 2 * span) - span))
        return Matrix.column(out, sf)

    def sample(self, seed: int | None = None) -> Matrix:
        return self.star @ self.sample_u(seed)


SolutionSet = BoxSet | GeneratorSet


def membership(s: SolutionSet, x: Matrix) -> bool:
    return s.contains(x)


def sample(s: SolutionSet, seed: int | None = None) -> Matrix:
    """Deterministic member of ``s`` for a given seed."""
    return s.sample(seed)


@dataclass(frozen=True)
class OptResult:
    minimum: object
    solutions: GeneratorSet
    problem: Problem
    box: BoxSet | None = None
    extras: dict = field(default_factory=dict, compare=False)

    def value(self, x: Matrix):
        return self.problem.value(x)


# -- helpers ---------------------------------------------------------------


def _square(A: Matrix, what: str = "objective matrix"):
    if not A.is_square:
        raise NotSquare(f"{what} must be square, got {A.shape}")


def _column(v: Matrix, n: int, what: str):
    if v.shape != (n, 1):
        raise DimensionMismatch(f"{what} must be a column of length {n}, got {v.shape}")


def _positive_radius(A: Matrix, pows=None):
    lam = spectral_radius(A, pows)
    if lam is ZERO:
        raise ZeroSpectralRadius("spectral radius is zero; the objective is unbounded")
    return lam


def _scaled_powers(pows, c):
    sf = pows[0].sf
    return [P.scale(sf.power(c, m)) for m, P in enumerate(pows)]


def _check_box(g: Matrix, h: Matrix, error=InfeasibleBounds):
    if not h.is_regular():
        raise IrregularH("upper bound must be a regular vector")
    sf = h.sf
    hg = (conj(h) @ g).scalar()
    if not sf.leq(hg, sf.one):
        raise error(f"h^- g = {sf.fmt(hg)} exceeds the unit; the box g <= x <= h is empty")


def _check_star(B: Matrix, error=StarDiverges):
    sf = B.sf
    pows = powers(B)
    t = tr_fn(B, pows)
    if not sf.leq(t, sf.one):
        raise error(f"Tr(B) = {sf.fmt(t)} exceeds the unit")
    return pows


# -- general objective x^- A x ----------------------------------------------


def min_rayleigh(A: Matrix) -> OptResult:
    """Unconstrained minimum of ``x^- A x``: the spectral radius ``lam``.

    Minimizers are ``(lam^{-1} A)* u`` over all regular ``u``.
    """
    _square(A)
    sf = A.sf
    pows = powers(A)
    lam = _positive_radius(A, pows)
    star = kleene_star(A.scale(sf.inv(lam)), _scaled_powers(pows, sf.inv(lam)))
    gen = GeneratorSet(star, Matrix.ones(A.nrows, sf), None, scale_free=True)
    return OptResult(lam, gen, Problem(A, name="min x^- A x"))


def min_rayleigh_boxed(A: Matrix, g: Matrix, h: Matrix) -> OptResult:
    """Minimum of ``x^- A x`` over ``g <= x <= h``."""
    _square(A)
    n = A.nrows
    _column(g, n, "lower bound")
    _column(h, n, "upper bound")
    _check_box(g, h)
    sf = A.sf
    pows = powers(A)
    lam = _positive_radius(A, pows)
    hc = conj(h)
    theta = lam
    for m in range(1, n + 1):
        t = (hc @ pows[m] @ g).scalar()
        if t is not ZERO:
            theta = sf.add(theta, sf.root(m, t))
    star = kleene_star(A.scale(sf.inv(theta)), _scaled_powers(pows, sf.inv(theta)))
    u_high = conj(hc @ star)
    gen = GeneratorSet(star, g, u_high)
    return OptResult(theta, gen, Problem(A, lower=g, upper=h, name="min x^- A x, g <= x <= h"))


def composition_trace_sum(A: Matrix, B: Matrix, B_pows=None):
    """Sum over k and ``i_1 + ... + i_k <= n - k`` of ``tr^{1/k}(A B^i1 ... A B^ik)``.

    Evaluated by direct enumeration of the compositions (``2^n - 1`` terms).
    """
    _square(A)
    n = A.nrows
    if n > MAX_ENUMERATION_ORDER:
        raise EnumerationTooLarge(
            f"trace-sum enumeration limited to n <= {MAX_ENUMERATION_ORDER}, got n = {n}"
        )
    sf = A.sf
    B_pows = powers(B) if B_pows is None else B_pows
    AB = [A @ B_pows[i] for i in range(n)]
    theta = ZERO

    def walk(P: Matrix, k: int, used: int):
        nonlocal theta
        if not P.is_nonzero():
            return
        t = trace(P)
        if t is not ZERO:
            theta = sf.add(theta, sf.root(k, t))
        for i in range(n - (k + 1) - used + 1):
            walk(P @ AB[i], k + 1, used + i)

    for i in range(n):
        walk(AB[i], 1, i)
    return theta


def min_rayleigh_linear(A: Matrix, B: Matrix, g: Matrix | None = None) -> OptResult:
    """Minimum of ``x^- A x`` subject to ``B x + g <= x``."""
    _square(A)
    _square(B, "constraint matrix")
    n = A.nrows
    if B.shape != A.shape:
        raise DimensionMismatch(f"constraint matrix {B.shape} does not match {A.shape}")
    if g is not None:
        _column(g, n, "lower bound")
    sf = A.sf
    B_pows = _check_star(B)
    _positive_radius(A)
    theta = composition_trace_sum(A, B, B_pows)
    star = kleene_star(A.scale(sf.inv(theta)) + B)
    if g is None:
        gen = GeneratorSet(star, Matrix.ones(n, sf), None, scale_free=True)
    else:
        gen = GeneratorSet(star, g, None)
    problem = Problem(A, lower=g, closure=B, name="min x^- A x, B x + g <= x")
    return OptResult(theta, gen, problem)


# -- rank-one objective q^- x x^- p ------------------------------------------


def _rank_one_checks(p: Matrix, q: Matrix):
    if p.ncols != 1 or q.ncols != 1 or p.nrows != q.nrows:
        raise DimensionMismatch(f"p {p.shape} and q {q.shape} must be columns of equal length")
    if not p.is_nonzero():
        raise ZeroP("p must be a nonzero vector")
    if not q.is_regular():
        raise IrregularQ("q must be a regular vector")


def rank_one_unconstrained(p: Matrix, qc: Matrix, name: str = "min q^- x x^- p") -> OptResult:
    """Rank-one solver taking the row ``q^-`` directly.

    The box form needs a regular ``q``; it is omitted when ``q^-`` has zero
    entries, in which case the generator form alone is complete.
    """
    sf = p.sf
    n = p.nrows
    delta = (qc @ p).scalar()
    if delta is ZERO:
        raise ZeroSpectralRadius("q^- p is zero")
    A = p @ qc
    star = Matrix.identity(n, sf) + A.scale(sf.inv(delta))
    gen = GeneratorSet(star, Matrix.ones(n, sf), None, scale_free=True)
    box = None
    if qc.is_regular():
        box = BoxSet(p, conj(qc).scale(delta))
    return OptResult(delta, gen, Problem(A, name=name), box)


def rank_one_boxed(p: Matrix, qc: Matrix, g: Matrix, h: Matrix,
                   name: str = "min q^- x x^- p, g <= x <= h") -> OptResult:
    sf = p.sf
    n = p.nrows
    hc = conj(h)
    # q^- (I + g h^-) p
    theta = sf.add((qc @ p).scalar(), sf.mul((qc @ g).scalar(), (hc @ p).scalar()))
    if theta is ZERO:
        raise ZeroSpectralRadius("q^- p is zero")
    A = p @ qc
    star = Matrix.identity(n, sf) + A.scale(sf.inv(theta))
    u_high = conj(hc @ star)
    gen = GeneratorSet(star, g, u_high)
    return OptResult(theta, gen, Problem(A, lower=g, upper=h, name=name))


def rank_one_linear(p: Matrix, qc: Matrix, B: Matrix, g: Matrix | None = None,
                    name: str = "min q^- x x^- p, B x + g <= x", star_error=StarDiverges) -> OptResult:
    sf = p.sf
    n = p.nrows
    B_star = kleene_star(B, _check_star(B, star_error))
    theta = (qc @ B_star @ p).scalar()
    if theta is ZERO:
        raise ZeroSpectralRadius("q^- B* p is zero")
    A = p @ qc
    star = kleene_star(A.scale(sf.inv(theta)) + B)
    if g is None:
        gen = GeneratorSet(star, Matrix.ones(n, sf), None, scale_free=True)
    else:
        gen = GeneratorSet(star, g, None)
    return OptResult(theta, gen, Problem(A, lower=g, closure=B, name=name), extras={"B_star": B_star})


def min_rank_one(p: Matrix, q: Matrix) -> OptResult:
    """Minimum ``q^- p`` of ``q^- x x^- p`` with both solution forms.

    ``result.box`` holds ``a p <= x <= a (q^- p) q``; ``result.solutions``
    holds ``(I + (q^- p)^{-1} p q^-) u``.  The two describe the same set.
    """
    _rank_one_checks(p, q)
    return rank_one_unconstrained(p, conj(q))


def min_rank_one_boxed(p: Matrix, q: Matrix, g: Matrix, h: Matrix) -> OptResult:
    """Minimum of ``q^- x x^- p`` over ``g <= x <= h``: ``q^- (I + g h^-) p``."""
    _rank_one_checks(p, q)
    _column(g, p.nrows, "lower bound")
    _column(h, p.nrows, "upper bound")
    _check_box(g, h)
    return rank_one_boxed(p, conj(q), g, h)


def min_rank_one_linear(p: Matrix, q: Matrix, B: Matrix, g: Matrix | None = None) -> OptResult:
    """Minimum of ``q^- x x^- p`` subject to ``B x + g <= x``: ``q^- B* p``."""
    _rank_one_checks(p, q)
    _square(B, "constraint matrix")
    if B.nrows != p.nrows:
        raise DimensionMismatch(f"constraint matrix {B.shape} does not match n = {p.nrows}")
    if g is not None:
        _column(g, p.nrows, "lower bound")
    return rank_one_linear(p, conj(q), B, g)
