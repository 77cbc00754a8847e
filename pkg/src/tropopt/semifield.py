"""Idempotent semifields: the scalar arithmetic under every other module.

Scalars are plain Python numbers (``Fraction`` for the exact backend,
``float`` for the approximate one) together with the distinguished
:data:`ZERO` object, which stands for the additive zero of whichever
semifield is in use (``-inf`` in max-plus, ``+inf`` in min-plus).  The zero
is never encoded as an infinite float inside the algebra.
"""

from __future__ import annotations

import math
import operator
from fractions import Fraction
from typing import Iterable, Union

from .errors import InversionOfZero, RootOfZero


class _Zero:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"

    def __reduce__(self):
        return "ZERO"

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self


ZERO = _Zero()

Number = Union[Fraction, float]
Scalar = Union[Fraction, float, _Zero]


def is_zero(a) -> bool:
    return a is ZERO


class Semifield:
    """A linearly ordered idempotent semifield over the reals.

    Subclasses fix the direction of the order: ``add`` picks the larger
    element with respect to :meth:`leq`.  With ``exact=False`` finite values
    are floats and comparisons (:meth:`leq`, :meth:`eq`) allow a slack of
    ``eps``; arithmetic itself is never fuzzed.
    """

    name = "semifield"
    zero_float = math.nan
    _better = operator.gt

    def __init__(self, exact: bool = True, eps: float = 1e-9):
        if eps < 0:
            raise ValueError("eps must be non-negative")
        self.exact = exact
        self.eps = 0.0 if exact else float(eps)
        self.one = Fraction(0) if exact else 0.0
        self.zero = ZERO

    def __repr__(self):
        backend = "rational" if self.exact else f"float, eps={self.eps:g}"
        return f"{type(self).__name__}({backend})"

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.exact == other.exact
            and self.eps == other.eps
        )

    def __hash__(self):
        return hash((type(self).__name__, self.exact, self.eps))

    # -- conversion -------------------------------------------------------

    def coerce(self, x) -> Scalar:
        if x is ZERO:
            return ZERO
        if isinstance(x, str):
            s = x.strip()
            if s.lower() == "zero":
                return ZERO
            try:
                x = Fraction(s)
            except ValueError:
                x = float(s)
        if isinstance(x, float):
            if math.isnan(x):
                raise ValueError("NaN is not a semifield element")
            if math.isinf(x):
                if x == self.zero_float:
                    return ZERO
                raise ValueError(f"{x} is not an element of {self.name}")
        if isinstance(x, bool):
            raise TypeError("booleans are not semifield elements")
        if self.exact:
            return Fraction(x)
        return float(x)

    def to_float(self, a) -> float:
        return self.zero_float if a is ZERO else float(a)

    def fmt(self, a) -> str:
        if a is ZERO:
            return "-inf" if self.zero_float < 0 else "+inf"
        if isinstance(a, Fraction):
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return format(a, "g")

    # -- arithmetic -------------------------------------------------------

    def add(self, a, b):
        if a is ZERO:
            return b
        if b is ZERO:
            return a
        return a if self._better(a, b) else b

    def mul(self, a, b):
        if a is ZERO or b is ZERO:
            return ZERO
        return a + b

    def inv(self, a):
        if a is ZERO:
            raise InversionOfZero("the semifield zero has no inverse")
        return -a

    def div(self, a, b):
        """``a * b^{-1}``."""
        return self.mul(a, self.inv(b))

    def power(self, a, m: int):
        if m == 0:
            return self.one
        if a is ZERO:
            if m < 0:
                raise InversionOfZero("negative power of the semifield zero")
            return ZERO
        return a * m

    def root(self, m: int, a):
        if m < 1:
            raise ValueError("root order must be a positive integer")
        if a is ZERO:
            raise RootOfZero("root of the semifield zero")
        if self.exact:
            return Fraction(a) / m
        return a / m

    def sum(self, xs: Iterable):
        acc = ZERO
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def prod(self, xs: Iterable):
        acc = self.one
        for x in xs:
            if x is ZERO:
                return ZERO
            acc = acc + x
        return acc

    def dot(self, xs: Iterable, ys: Iterable):
        """``sum_k xs[k] * ys[k]``; the inner loop of every matrix product."""
        better = self._better
        best = ZERO
        for a, b in zip(xs, ys):
            if a is ZERO or b is ZERO:
                continue
            s = a + b
            if best is ZERO or better(s, best):
                best = s
        return best

    # -- order ------------------------------------------------------------

    def leq(self, a, b) -> bool:
        """``a <= b`` in the order induced by addition (``a + b == b``)."""
        if a is ZERO:
            return True
        if b is ZERO:
            return False
        if self._better(a, b):
            return abs(a - b) <= self.eps
        return True

    def lt(self, a, b) -> bool:
        return self.leq(a, b) and not self.eq(a, b)

    def eq(self, a, b) -> bool:
        if a is ZERO or b is ZERO:
            return a is b
        if self.exact:
            return a == b
        return abs(a - b) <= self.eps


class MaxPlus(Semifield):
    """``(R u {-inf}, max, +)``."""

    name = "max-plus"
    zero_float = -math.inf
    _better = operator.gt


class MinPlus(Semifield):
    """``(R u {+inf}, min, +)``; its order is the reverse of the numeric one."""

    name = "min-plus"
    zero_float = math.inf
    _better = operator.lt


MAXPLUS = MaxPlus()
MINPLUS = MinPlus()


def max_plus(backend: str = "rational", eps: float = 1e-9) -> MaxPlus:
    """Max-plus semifield for a named arithmetic backend."""
    if backend == "rational":
        return MAXPLUS
    if backend == "float":
        return MaxPlus(exact=False, eps=eps)
    raise ValueError(f"unknown backend {backend!r}")
