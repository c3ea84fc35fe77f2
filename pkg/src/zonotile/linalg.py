"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`, which is always kept in lowest terms
with a positive denominator. Matrices are immutable row-major grids of
fractions. Elimination is fraction-free (Bareiss) on integer-scaled rows, so
intermediate entries stay bounded by the size of the minors.

No floating point is used anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import NonIntegerInputError, NotSymmetricError, SingularMatrixError

Vector = tuple  # tuple[Fraction, ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass int, Fraction or a 'p/q' string")
    return Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(as_fraction(x) for x in xs)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def scale(c, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def sign(x) -> int:
    return (x > 0) - (x < 0)


def primitive_integer(v: Sequence[Fraction]) -> Vector:
    """Scale a nonzero rational vector to coprime integers, first nonzero entry positive."""
    den = lcm(*(Fraction(a).denominator for a in v))
    ints = [int(a * den) for a in v]
    g = gcd(*ints)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    lead = next(a for a in ints if a != 0)
    if lead < 0:
        g = -g
    return tuple(Fraction(a // g) for a in ints)


class Matrix:
    """Immutable exact rational matrix."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        grid = tuple(vec(row) for row in data)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        if any(len(row) != cols for row in grid):
            raise ValueError("ragged matrix")
        self.rows = len(grid)
        self.cols = cols
        self._data = grid

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        columns = [vec(c) for c in columns]
        if not columns:
            return cls([() for _ in range(rows or 0)], cols=0)
        return cls(zip(*columns))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self._data]

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self._data), cols=self.rows) if self.rows else Matrix([], cols=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(a) for a in row) + "]" for row in self._data)
        return f"Matrix([{body}])"

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix((add(a, b) for a, b in zip(self._data, other._data)), cols=self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix((sub(a, b) for a, b in zip(self._data, other._data)), cols=self.cols)

    def __neg__(self) -> "Matrix":
        return self.scaled(-1)

    def scaled(self, c) -> "Matrix":
        c = as_fraction(c)
        return Matrix((scale(c, row) for row in self._data), cols=self.cols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            cols = other.columns()
            return Matrix(([dot(row, c) for c in cols] for row in self._data), cols=other.cols)
        v = vec(other)
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(dot(row, v) for row in self._data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._data[i][j] == self._data[j][i] for i in range(self.rows) for j in range(i)
        )

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for row in self._data for a in row)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(([self._data[i][j] for j in cols] for i in rows), cols=len(cols))


def outer(u: Sequence[Fraction], v: Sequence[Fraction]) -> Matrix:
    return Matrix(([a * b for b in v] for a in u), cols=len(v))


# -- fraction-free elimination ------------------------------------------------


def _integer_rows(M: Matrix) -> list[list[int]]:
    """Clear denominators row by row; row scaling changes neither rank nor kernel."""
    out = []
    for row in M.tolist():
        den = lcm(*(a.denominator for a in row)) if row else 1
        out.append([int(a * den) for a in row])
    return out


def _bareiss(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Bareiss fraction-free forward elimination, in place.

    Returns the echelon rows and the pivot columns. Every division is exact.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            a = rows[i][c]
            ri, rr = rows[i], rows[r]
            for j in range(c + 1, ncols):
                ri[j] = (piv * ri[j] - a * rr[j]) // prev
            ri[c] = 0
        # rows of a skipped column are already zero below r, so the Bareiss
        # invariant (row r holds (r+1)-minors) survives pivot-column gaps
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(M: Matrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    _, pivots = _bareiss(_integer_rows(M))
    return len(pivots)


def determinant(M: Matrix) -> Fraction:
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return Fraction(1)
    scale_back = Fraction(1)
    rows = []
    for row in M.tolist():
        den = lcm(*(a.denominator for a in row))
        scale_back /= den
        rows.append([int(a * den) for a in row])
    # track swaps to recover the sign
    swaps = 0
    prev = 1
    for c in range(n):
        k = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if k is None:
            return Fraction(0)
        if k != c:
            rows[c], rows[k] = rows[k], rows[c]
            swaps += 1
        piv = rows[c][c]
        for i in range(c + 1, n):
            a = rows[i][c]
            ri, rc = rows[i], rows[c]
            for j in range(c + 1, n):
                ri[j] = (piv * ri[j] - a * rc[j]) // prev
            ri[c] = 0
        prev = piv
    det = rows[n - 1][n - 1] * (-1 if swaps % 2 else 1)
    return det * scale_back


def _rref(M: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form: Bareiss forward pass, then exact back-substitution."""
    rows, pivots = _bareiss(_integer_rows(M))
    rows = [[Fraction(a) for a in row] for row in rows[: len(pivots)]]
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        piv = rows[r][c]
        rows[r] = [a / piv for a in rows[r]]
        for i in range(r):
            f = rows[i][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
    return rows, pivots


def nullspace(M: Matrix) -> list[Vector]:
    """Exact basis of ``{x : M x = 0}``, one vector per free column."""
    n = M.cols
    if M.rows == 0:
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    rows, pivots = _rref(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for r, c in enumerate(pivots):
            x[c] = -rows[r][f]
        basis.append(tuple(x))
    return basis


def inverse(M: Matrix) -> Matrix:
    if not M.is_square():
        raise SingularMatrixError("only square matrices can be inverted")
    n = M.rows
    aug = Matrix((list(M.row(i)) + [int(i == j) for j in range(n)] for i in range(n)), cols=2 * n)
    rows, pivots = _rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError(f"matrix has rank {rank(M)} < {n}")
    return Matrix((row[n:] for row in rows), cols=n)


def solve(M: Matrix, b: Sequence) -> Vector:
    """Unique solution of ``M x = b`` for square nonsingular ``M``."""
    return inverse(M) @ vec(b)


def is_positive_definite(M: Matrix) -> bool:
    """Sylvester's criterion: every leading principal minor is positive."""
    if not M.is_symmetric():
        raise NotSymmetricError("positive definiteness is only decided for symmetric matrices")
    idx = list(range(M.rows))
    return all(determinant(M.submatrix(idx[:k], idx[:k])) > 0 for k in range(1, M.rows + 1))


def maximal_minors(M: Matrix):
    """Yield ``(column_indices, determinant)`` for every ``rows x rows`` column subset."""
    rows = list(range(M.rows))
    for cols in combinations(range(M.cols), M.rows):
        yield cols, determinant(M.submatrix(rows, cols))


# -- Hermite normal form -------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(M: Matrix) -> Matrix:
    """Column-style Hermite normal form of an integer matrix.

    The result spans the same column lattice and is lower echelon: column ``k``
    has its pivot (first nonzero entry) strictly below the pivot of column
    ``k-1``, every pivot is positive, and entries to the left of a pivot lie in
    ``[0, pivot)``. Zero columns are dropped, so the output is ``rows x rank``
    and is unique for a given lattice.
    """
    if not M.is_integral():
        raise NonIntegerInputError("hnf requires integer entries")
    cols = [[int(a) for a in c] for c in M.columns()]
    n = M.rows
    k = 0
    for i in range(n):
        if k == len(cols):
            break
        for j in range(k + 1, len(cols)):
            a, b = cols[k][i], cols[j][i]
            if b == 0:
                continue
            g, s, t = _xgcd(a, b)
            u, v = a // g, b // g
            ck, cj = cols[k], cols[j]
            cols[k] = [s * x + t * y for x, y in zip(ck, cj)]
            cols[j] = [u * y - v * x for x, y in zip(ck, cj)]
        piv = cols[k][i]
        if piv == 0:
            continue
        if piv < 0:
            cols[k] = [-x for x in cols[k]]
            piv = -piv
        for j in range(k):
            q = cols[j][i] // piv
            if q:
                cols[j] = [x - q * y for x, y in zip(cols[j], cols[k])]
        k += 1
    return Matrix.from_columns(cols[:k], rows=n) if k else Matrix([[] for _ in range(n)], cols=0)


def lattice_basis(vectors: Sequence[Sequence]) -> Matrix:
    """Canonical (HNF) basis of the additive group generated by rational vectors."""
    vectors = [vec(v) for v in vectors]
    den = lcm(*(a.denominator for v in vectors for a in v)) if vectors else 1
    scaled = Matrix.from_columns([scale(den, v) for v in vectors])
    return hnf(scaled).scaled(Fraction(1, den))


def lattice_contains(basis: Matrix, v: Sequence) -> bool:
    """Whether ``v`` is an integer combination of the columns of a square basis."""
    coords = solve(basis, v)
    return all(c.denominator == 1 for c in coords)
