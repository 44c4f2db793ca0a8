"""Exact scalars and dense linear algebra over the rationals and Gaussian rationals.

Matrices are plain lists of rows.  A matrix with no rows cannot carry its
column count, so routines that need it take an explicit ``ncols``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction, "GaussianRational"]
Row = list
Matrix = list


class GaussianRational:
    """An element ``re + im*i`` of the field Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0) -> None:
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value: Scalar) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(value, 0)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __add__(self, other: Scalar) -> "GaussianRational":
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "GaussianRational":
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: Scalar) -> "GaussianRational":
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other: Scalar) -> "GaussianRational":
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "GaussianRational":
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * other.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other: Scalar) -> "GaussianRational":
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __pos__(self) -> "GaussianRational":
        return self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self) -> str:
        return format_gaussian(self)


def _gauss_or_none(value: object) -> GaussianRational | None:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value, 0)
    return None


I = GaussianRational(0, 1)


def format_gaussian(z: GaussianRational) -> str:
    """Render ``z`` as ``"p/q+r/s i"``; purely real values print as rationals."""
    if z.im == 0:
        return str(z.re)
    if z.im == 1:
        imag = "i"
    elif z.im == -1:
        imag = "-i"
    else:
        imag = f"{z.im} i"
    if z.re == 0:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"{z.re}{sign}{imag}"


def conj(value: Scalar) -> Scalar:
    if isinstance(value, GaussianRational):
        return value.conjugate()
    return value


def is_gaussian_matrix(rows: Iterable[Sequence[Scalar]]) -> bool:
    return any(isinstance(x, GaussianRational) for row in rows for x in row)


# ---------------------------------------------------------------------------
# Basic matrix plumbing


def fraction_matrix(rows: Iterable[Iterable[int | Fraction | str]]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def zeros(nrows: int, ncols: int) -> Matrix:
    return [[Fraction(0)] * ncols for _ in range(nrows)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def ncols_of(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> int:
    if ncols is not None:
        return ncols
    if not rows:
        raise ValueError("column count of an empty matrix must be given explicitly")
    return len(rows[0])


def transpose(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> Matrix:
    nc = ncols_of(rows, ncols)
    return [[row[j] for row in rows] for j in range(nc)]


def mat_mul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]], bcols: int | None = None) -> Matrix:
    nc = ncols_of(b, bcols) if b else (bcols or 0)
    inner = len(b)
    out = []
    for row in a:
        if len(row) != inner:
            raise ValueError("dimension mismatch in matrix product")
        out.append([sum((row[k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(nc)])
    return out


def mat_vec(a: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> list:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def is_zero_matrix(rows: Iterable[Iterable[Scalar]]) -> bool:
    return all(x == 0 for row in rows for x in row)


# ---------------------------------------------------------------------------
# Fraction-free rank


def _clear_rational_row(row: Sequence[Fraction]) -> list[int]:
    den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
    return [int(Fraction(x) * den) for x in row]


def _clear_gaussian_row(row: Sequence[Scalar]) -> list[tuple[int, int]]:
    zs = [GaussianRational.coerce(x) for x in row]
    den = lcm(*(d for z in zs for d in (z.re.denominator, z.im.denominator))) if zs else 1
    return [(int(z.re * den), int(z.im * den)) for z in zs]


def _integer_rank(rows: list[list[int]]) -> int:
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        p = prow[col]
        for i in range(rank + 1, len(rows)):
            c = rows[i][col]
            if c:
                new = [p * x - c * y for x, y in zip(rows[i], prow)]
                g = gcd(*new)
                rows[i] = [x // g for x in new] if g > 1 else new
        rank += 1
        if rank == len(rows):
            break
    return rank


def _gmul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gaussian_integer_rank(rows: list[list[tuple[int, int]]]) -> int:
    rows = [r[:] for r in rows if any(x != (0, 0) for x in r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != (0, 0)), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        p = prow[col]
        for i in range(rank + 1, len(rows)):
            c = rows[i][col]
            if c != (0, 0):
                new = []
                for x, y in zip(rows[i], prow):
                    px = _gmul(p, x)
                    cy = _gmul(c, y)
                    new.append((px[0] - cy[0], px[1] - cy[1]))
                g = gcd(*(part for z in new for part in z))
                rows[i] = [(a // g, b // g) for a, b in new] if g > 1 else new
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Exact rank over Q, or over Q(i) when any entry is a Gaussian rational.

    Rows are scaled to (Gaussian) integers and eliminated without division,
    dividing each new row by its content to keep the entries small.
    """
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    if is_gaussian_matrix(rows):
        return _gaussian_integer_rank([_clear_gaussian_row(r) for r in rows])
    return _integer_rank([_clear_rational_row(r) for r in rows])


# ---------------------------------------------------------------------------
# Reduced row echelon form and friends (field arithmetic)


def rref(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus the pivot columns."""
    nc = ncols_of(rows, ncols) if rows else (ncols or 0)
    work = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(nc):
        pivot = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = 1 / work[r][col] if isinstance(work[r][col], GaussianRational) else Fraction(1) / work[r][col]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                c = work[i][col]
                work[i] = [x - c * y for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def kernel_basis(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> Matrix:
    """Basis of ``{x : M x = 0}`` read off the reduced row echelon form.

    The basis vector attached to a free column ``f`` has entry 1 at ``f``, zero
    at every other free column, and the negated RREF entries at the pivots.
    This makes the basis canonical for the row space of ``M``.
    """
    nc = ncols_of(rows, ncols) if rows else (ncols or 0)
    reduced, pivots = rref(rows, nc)
    pivot_set = set(pivots)
    zero = Fraction(0)
    one = Fraction(1)
    basis = []
    for f in range(nc):
        if f in pivot_set:
            continue
        vec: list = [zero] * nc
        vec[f] = one
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        basis.append(vec)
    return basis


def solve(rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar], ncols: int | None = None) -> list | None:
    """One solution of ``M x = rhs`` (free variables set to zero), or ``None``."""
    nc = ncols_of(rows, ncols) if rows else (ncols or 0)
    if len(rows) != len(rhs):
        raise ValueError("right-hand side length does not match row count")
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, nc + 1)
    if pivots and pivots[-1] == nc:
        return None
    x: list = [Fraction(0)] * nc
    for r, p in enumerate(pivots):
        x[p] = reduced[r][nc]
    return x


def in_row_space(rows: Sequence[Sequence[Scalar]], vector: Sequence[Scalar]) -> bool:
    if not rows:
        return all(x == 0 for x in vector)
    return rank(list(rows) + [list(vector)]) == rank(rows)


def determinant(rows: Sequence[Sequence[int | Fraction]]) -> Fraction:
    """Determinant of a square rational matrix by Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    scale = Fraction(1)
    work = []
    for r in rows:
        den = lcm(*(Fraction(x).denominator for x in r))
        scale /= den
        work.append([int(Fraction(x) * den) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if work[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if work[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            work[k], work[swap] = work[swap], work[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = (work[i][j] * work[k][k] - work[i][k] * work[k][j]) // prev
        prev = work[k][k]
    return sign * Fraction(work[n - 1][n - 1]) * scale


def inverse(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(rows)
    augmented = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    reduced, pivots = rref(augmented, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in reduced]
