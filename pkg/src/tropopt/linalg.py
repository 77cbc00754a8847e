"""Dense tropical matrices and vectors.

Vectors are matrices with a single column (or, for conjugate transposes, a
single row), so ``conj(q) @ x`` is an ordinary 1x1 product.  Operators follow
the semiring convention: ``A + B`` is the tropical sum, ``A @ B`` the tropical
product, ``A.scale(c)`` multiplies every entry by the scalar ``c``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotSquare, StarDiverges, ZeroVector
from .semifield import MAXPLUS, ZERO, Semifield


class Matrix:
    __slots__ = ("sf", "rows", "shape")

    def __init__(self, rows: Iterable[Iterable], sf: Semifield = MAXPLUS):
        data = tuple(tuple(sf.coerce(x) for x in r) for r in rows)
        if not data or not data[0]:
            raise DimensionMismatch("matrices must have at least one row and column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise DimensionMismatch("ragged rows")
        self.sf = sf
        self.rows = data
        self.shape = (len(data), width)

    @classmethod
    def _wrap(cls, sf: Semifield, rows: tuple) -> "Matrix":
        m = object.__new__(cls)
        m.sf = sf
        m.rows = rows
        m.shape = (len(rows), len(rows[0]))
        return m

    # -- constructors -----------------------------------------------------

    @classmethod
    def column(cls, entries: Iterable, sf: Semifield = MAXPLUS) -> "Matrix":
        return cls([[x] for x in entries], sf)

    @classmethod
    def row(cls, entries: Iterable, sf: Semifield = MAXPLUS) -> "Matrix":
        return cls([list(entries)], sf)

    @classmethod
    def identity(cls, n: int, sf: Semifield = MAXPLUS) -> "Matrix":
        one = sf.one
        return cls._wrap(sf, tuple(
            tuple(one if i == j else ZERO for j in range(n)) for i in range(n)
        ))

    @classmethod
    def zeros(cls, nrows: int, ncols: int, sf: Semifield = MAXPLUS) -> "Matrix":
        return cls._wrap(sf, tuple((ZERO,) * ncols for _ in range(nrows)))

    @classmethod
    def ones(cls, n: int, sf: Semifield = MAXPLUS) -> "Matrix":
        """The column vector with every entry equal to the unit."""
        return cls._wrap(sf, tuple((sf.one,) for _ in range(n)))

    # -- basic access -----------------------------------------------------

    @property
    def nrows(self) -> int:
        return self.shape[0]

    @property
    def ncols(self) -> int:
        return self.shape[1]

    @property
    def is_square(self) -> bool:
        return self.shape[0] == self.shape[1]

    @property
    def is_vector(self) -> bool:
        return self.shape[0] == 1 or self.shape[1] == 1

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self) -> tuple:
        """Entries in row-major order (for a vector: its components)."""
        return tuple(x for r in self.rows for x in r)

    def __len__(self):
        return self.shape[0] * self.shape[1]

    def scalar(self):
        if self.shape != (1, 1):
            raise DimensionMismatch(f"expected a 1x1 matrix, got {self.shape}")
        return self.rows[0][0]

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(self.sf, tuple(zip(*self.rows)))

    # -- algebra ----------------------------------------------------------

    def _check_same(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.sf != self.sf:
            raise TypeError(f"semifield mismatch: {self.sf} vs {other.sf}")
        return None

    def __add__(self, other: "Matrix") -> "Matrix":
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        add = self.sf.add
        return Matrix._wrap(self.sf, tuple(
            tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)
        ))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        return mat_mul(self, other)

    def __pow__(self, m: int) -> "Matrix":
        return matrix_power(self, m)

    def scale(self, c) -> "Matrix":
        c = self.sf.coerce(c)
        mul = self.sf.mul
        return Matrix._wrap(self.sf, tuple(tuple(mul(c, a) for a in r) for r in self.rows))

    def map(self, fn) -> "Matrix":
        return Matrix._wrap(self.sf, tuple(tuple(fn(a) for a in r) for r in self.rows))

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.sf == other.sf and self.rows == other.rows

    def __hash__(self):
        return hash((self.sf, self.rows))

    def allclose(self, other: "Matrix") -> bool:
        """Entrywise equality under the semifield's comparison tolerance."""
        if self.shape != other.shape:
            return False
        eq = self.sf.eq
        return all(eq(a, b) for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def leq(self, other: "Matrix") -> bool:
        """Entrywise ``self <= other``."""
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot compare {self.shape} and {other.shape}")
        leq = self.sf.leq
        return all(leq(a, b) for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    # -- regularity -------------------------------------------------------

    def is_row_regular(self) -> bool:
        return all(any(a is not ZERO for a in r) for r in self.rows)

    def is_column_regular(self) -> bool:
        return all(any(a is not ZERO for a in c) for c in zip(*self.rows))

    def is_regular(self) -> bool:
        """No zero rows and no zero columns; for a vector, no zero entries."""
        if self.is_vector:
            return all(a is not ZERO for a in self.entries())
        return self.is_row_regular() and self.is_column_regular()

    def is_nonzero(self) -> bool:
        return any(a is not ZERO for r in self.rows for a in r)

    # -- display ----------------------------------------------------------

    def to_lists(self) -> list:
        fmt = self.sf.fmt
        return [[fmt(a) for a in r] for r in self.rows]

    def __repr__(self):
        body = ", ".join("[" + ", ".join(r) + "]" for r in self.to_lists())
        return f"Matrix([{body}])"

    def __str__(self):
        cells = self.to_lists()
        width = max(len(c) for r in cells for c in r)
        return "\n".join("  ".join(c.rjust(width) for c in r) for r in cells)


def vector(entries: Iterable, sf: Semifield = MAXPLUS) -> Matrix:
    """Column vector with the given components."""
    return Matrix.column(entries, sf)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if A.ncols != B.nrows:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    dot = A.sf.dot
    cols = tuple(zip(*B.rows))
    return Matrix._wrap(A.sf, tuple(tuple(dot(r, c) for c in cols) for r in A.rows))


def matrix_power(A: Matrix, m: int) -> Matrix:
    if not A.is_square:
        raise NotSquare(f"power of a {A.shape} matrix")
    if m < 0:
        raise ValueError("negative matrix powers are not defined")
    result = Matrix.identity(A.nrows, A.sf)
    base = A
    while m:
        if m & 1:
            result = result @ base
        m >>= 1
        if m:
            base = base @ base
    return result


def powers(A: Matrix, upto: int | None = None) -> list[Matrix]:
    """``[I, A, A^2, ..., A^upto]``; ``upto`` defaults to the order of A."""
    if not A.is_square:
        raise NotSquare(f"powers of a {A.shape} matrix")
    upto = A.nrows if upto is None else upto
    seq = [Matrix.identity(A.nrows, A.sf)]
    if upto >= 1:
        seq.append(A)
    for _ in range(2, upto + 1):
        seq.append(seq[-1] @ A)
    return seq


def conjugate_transpose(x: Matrix) -> Matrix:
    """Multiplicative conjugate transpose of a vector.

    A column maps to the row of entrywise inverses (zero entries stay zero),
    and vice versa.
    """
    if not x.is_vector:
        raise DimensionMismatch("conjugate transposition is defined for vectors only")
    if not x.is_nonzero():
        raise ZeroVector("conjugate transpose of the zero vector")
    inv = x.sf.inv
    return x.T.map(lambda a: ZERO if a is ZERO else inv(a))


conj = conjugate_transpose


def trace(A: Matrix):
    if not A.is_square:
        raise NotSquare(f"trace of a {A.shape} matrix")
    return A.sf.sum(A.rows[i][i] for i in range(A.nrows))


def norm(A: Matrix):
    return A.sf.sum(a for r in A.rows for a in r)


def spectral_radius(A: Matrix, pows: Sequence[Matrix] | None = None):
    """Largest eigenvalue: the sum over m = 1..n of the m-th roots of tr(A^m)."""
    if not A.is_square:
        raise NotSquare(f"spectral radius of a {A.shape} matrix")
    sf = A.sf
    pows = powers(A) if pows is None else pows
    lam = ZERO
    for m in range(1, A.nrows + 1):
        t = trace(pows[m])
        if t is not ZERO:
            lam = sf.add(lam, sf.root(m, t))
    return lam


def tr_fn(A: Matrix, pows: Sequence[Matrix] | None = None):
    """``Tr(A)``, the sum of tr(A^m) over m = 1..n; the star exists iff it is <= 1."""
    if not A.is_square:
        raise NotSquare(f"Tr of a {A.shape} matrix")
    pows = powers(A) if pows is None else pows
    return A.sf.sum(trace(pows[m]) for m in range(1, A.nrows + 1))


def kleene_star(A: Matrix, pows: Sequence[Matrix] | None = None) -> Matrix:
    """``A* = I + A + ... + A^(n-1)``, defined when ``Tr(A) <= 1``."""
    if not A.is_square:
        raise NotSquare(f"Kleene star of a {A.shape} matrix")
    sf = A.sf
    pows = powers(A) if pows is None else pows
    t = tr_fn(A, pows)
    if not sf.leq(t, sf.one):
        raise StarDiverges(f"Tr(A) = {sf.fmt(t)} exceeds the unit; the star diverges")
    star = pows[0]
    for m in range(1, A.nrows):
        star = star + pows[m]
    return star
