"""Exact linear algebra over the rationals.

Everything here is exact: entries are ``fractions.Fraction`` (arbitrary
precision), determinants of integer matrices go through fraction-free
Bareiss elimination, and rational matrices are handled by clearing
denominators row by row.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DimensionError

Rat = Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}: {x!r}")


def bareiss_determinant(rows: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination.

    Intermediate entries stay integral (every division is exact), which keeps
    coefficient growth polynomial instead of exponential.
    """
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _row_to_ints(row) -> tuple[list[int], Fraction]:
    """Scale one rational row to integers; return (row, applied factor)."""
    denom_lcm = 1
    for x in row:
        d = x.denominator
        denom_lcm = denom_lcm * d // gcd(denom_lcm, d)
    scaled = [int(x * denom_lcm) for x in row]
    return scaled, Fraction(denom_lcm)


def _int_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix via exact elimination with content stripping."""
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    rank = 0
    col = 0
    while rank < nrows and col < ncols:
        pivot_row = None
        for i in range(rank, nrows):
            if a[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            col += 1
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        pr = a[rank]
        for i in range(rank + 1, nrows):
            if a[i][col] != 0:
                f1, f2 = pr[col], a[i][col]
                a[i] = [f1 * a[i][j] - f2 * pr[j] for j in range(ncols)]
                g = 0
                for v in a[i]:
                    g = gcd(g, abs(v))
                if g > 1:
                    a[i] = [v // g for v in a[i]]
        rank += 1
        col += 1
    return rank


class Matrix:
    """Immutable exact matrix.  ``data`` is a tuple of row tuples of Fraction."""

    __slots__ = ("data", "nrows", "ncols")

    def __init__(self, rows):
        data = tuple(tuple(_as_fraction(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionError("ragged rows in matrix construction")
        self.data = data
        self.nrows = len(data)
        self.ncols = len(data[0]) if data else 0

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i) -> tuple[Fraction, ...]:
        return self.data[i]

    def column(self, j) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.data)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"Matrix({self.nrows}x{self.ncols}: {body})"

    @property
    def is_integer(self) -> bool:
        return all(x.denominator == 1 for row in self.data for x in row)

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.data)) if self.data else Matrix([])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        cols = other.transpose().data
        return Matrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.data]
        )

    def __neg__(self) -> "Matrix":
        return Matrix([[-x for x in row] for row in self.data])

    def scale(self, c) -> "Matrix":
        c = _as_fraction(c)
        return Matrix([[c * x for x in row] for row in self.data])

    def drop_columns(self, *cols: int) -> "Matrix":
        dropped = set(cols)
        return Matrix([[x for j, x in enumerate(row) if j not in dropped] for row in self.data])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def det(self) -> Fraction:
        """Exact determinant (Bareiss on the integer-cleared matrix)."""
        if self.nrows != self.ncols:
            raise DimensionError(f"determinant of non-square {self.nrows}x{self.ncols} matrix")
        if self.nrows == 0:
            return Fraction(1)
        scale = Fraction(1)
        int_rows = []
        for row in self.data:
            ints, factor = _row_to_ints(row)
            int_rows.append(ints)
            scale *= factor
        return Fraction(bareiss_determinant(int_rows)) / scale

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        int_rows = [_row_to_ints(row)[0] for row in self.data]
        return _int_rank(int_rows)

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot column indices."""
        a = [list(row) for row in self.data]
        nrows, ncols = self.nrows, self.ncols
        pivots = []
        r = 0
        for col in range(ncols):
            pivot_row = None
            for i in range(r, nrows):
                if a[i][col] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            a[r], a[pivot_row] = a[pivot_row], a[r]
            inv = 1 / a[r][col]
            a[r] = [x * inv for x in a[r]]
            for i in range(nrows):
                if i != r and a[i][col] != 0:
                    f = a[i][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(col)
            r += 1
            if r == nrows:
                break
        return Matrix(a), tuple(pivots)

    def right_kernel(self) -> "Matrix":
        """Matrix whose columns form a basis of ``{v : self @ v = 0}``.

        Column count equals ``ncols - rank``; the product with the kernel
        matrix is exactly zero.
        """
        if self.nrows == 0:
            return Matrix.identity(self.ncols)
        red, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis_cols = []
        for f in free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for r, p in enumerate(pivots):
                v[p] = -red[r, f]
            basis_cols.append(v)
        return Matrix(zip(*basis_cols)) if basis_cols else Matrix([[] for _ in range(self.ncols)])


def int_matrix(rows) -> Matrix:
    """Build a Matrix from integer rows, checking integrality."""
    for row in rows:
        for x in row:
            if not isinstance(x, int):
                raise TypeError(f"integer matrix entry expected, got {x!r}")
    return Matrix(rows)


def det_after_dropping(m: Matrix, *cols: int) -> Fraction:
    """Determinant of ``m`` with the listed columns removed (order preserved)."""
    return m.drop_columns(*cols).det()
