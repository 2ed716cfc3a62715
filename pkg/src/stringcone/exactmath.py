"""Exact rational linear algebra and first-order infinitesimals.

Everything here works over :class:`fractions.Fraction`; there is no floating
point anywhere in the package.  Matrices are plain row lists, wrapped in
:class:`RatMatrix` when a fixed-shape value object is wanted.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import combinations
from math import gcd
from typing import NamedTuple, Sequence

Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, EpsNumber):
        raise TypeError("EpsNumber is not a plain rational")
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@total_ordering
@dataclass(frozen=True)
class EpsNumber:
    """``constant + slope * eps`` for an infinitesimal ``eps > 0``.

    Comparison is lexicographic, which is exactly "for all sufficiently small
    eps".  Products of two infinitesimal parts are dropped (first order).
    """

    constant: Fraction = Fraction(0)
    slope: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "constant", as_rational(self.constant))
        object.__setattr__(self, "slope", as_rational(self.slope))

    @classmethod
    def lift(cls, x) -> "EpsNumber":
        return x if isinstance(x, EpsNumber) else cls(as_rational(x))

    def __add__(self, other):
        o = EpsNumber.lift(other)
        return EpsNumber(self.constant + o.constant, self.slope + o.slope)

    __radd__ = __add__

    def __neg__(self):
        return EpsNumber(-self.constant, -self.slope)

    def __sub__(self, other):
        return self + (-EpsNumber.lift(other))

    def __rsub__(self, other):
        return EpsNumber.lift(other) - self

    def __mul__(self, other):
        if isinstance(other, EpsNumber):
            return EpsNumber(self.constant * other.constant,
                             self.constant * other.slope + self.slope * other.constant)
        k = as_rational(other)
        return EpsNumber(self.constant * k, self.slope * k)

    __rmul__ = __mul__

    def __truediv__(self, other):
        k = as_rational(other)
        return EpsNumber(self.constant / k, self.slope / k)

    def _key(self):
        return (self.constant, self.slope)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, EpsNumber)) and not isinstance(other, bool):
            return self._key() == EpsNumber.lift(other)._key()
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, (int, Fraction, EpsNumber)) and not isinstance(other, bool):
            return self._key() < EpsNumber.lift(other)._key()
        return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def sign(self) -> int:
        if self.constant:
            return 1 if self.constant > 0 else -1
        if self.slope:
            return 1 if self.slope > 0 else -1
        return 0

    def __repr__(self):
        return f"EpsNumber({format_rational(self.constant)}, {format_rational(self.slope)})"


def eps_vector(constant: Sequence, slope: Sequence | None = None) -> tuple[EpsNumber, ...]:
    """Build ``constant + eps * slope`` componentwise."""
    if slope is None:
        slope = [0] * len(constant)
    if len(slope) != len(constant):
        raise ValueError("constant and slope parts have different lengths")
    return tuple(EpsNumber(as_rational(a), as_rational(b)) for a, b in zip(constant, slope))


class RatMatrix:
    """Immutable dense rational matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        grid = tuple(tuple(as_rational(x) for x in row) for row in entries)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        if any(len(row) != cols for row in grid):
            raise ValueError("ragged matrix")
        self.entries = grid
        self.rows = len(grid)
        self.cols = cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (isinstance(other, RatMatrix) and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.cols, self.entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(x) for x in row) + "]"
                         for row in self.entries)
        return f"RatMatrix([{body}])"

    def transpose(self) -> "RatMatrix":
        return RatMatrix([[self.entries[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], cols=self.rows)

    def row_list(self) -> list[list[Fraction]]:
        return [list(row) for row in self.entries]

    def to_strings(self) -> list[list[str]]:
        return [[format_rational(x) for x in row] for row in self.entries]


def _rows(A) -> list[list[Fraction]]:
    if isinstance(A, RatMatrix):
        return A.row_list()
    return [[as_rational(x) for x in row] for row in A]


def _ncols(A, rows) -> int:
    if isinstance(A, RatMatrix):
        return A.cols
    return len(rows[0]) if rows else 0


def rref(A) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Zero rows are dropped from the returned matrix, so its length is the rank.
    """
    m = _rows(A)
    return rref_inplace(m, _ncols(A, m))


def rref_inplace(m: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Row-reduce ``m`` in place; entries may be any exact field elements."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        prow = m[r]
        support = [j for j in range(c, ncols) if prow[j] != 0]
        for i in range(len(m)):
            if i == r:
                continue
            f = m[i][c]
            if f == 0:
                continue
            row = m[i]
            for j in support:
                row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(A) -> int:
    """Exact rank over the rationals (pivoted elimination)."""
    m = _rows(A)
    if not m:
        return 0
    ncols = _ncols(A, m)
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        prow = m[r]
        piv = prow[c]
        support = [j for j in range(c + 1, ncols) if prow[j] != 0]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f == 0:
                continue
            f = f / piv
            row = m[i]
            for j in support:
                row[j] -= f * prow[j]
        r += 1
        if r == len(m):
            break
    return r


class LinearSolution(NamedTuple):
    x: tuple[Fraction, ...]
    unique: bool


def solve_linear(A, b: Sequence) -> LinearSolution | None:
    """Solve ``A x = b`` exactly.

    Returns ``None`` when the system is inconsistent.  Underdetermined systems
    return the solution with all free variables set to zero and
    ``unique=False``.
    """
    m = _rows(A)
    ncols = _ncols(A, m)
    if len(m) != len(b):
        raise ValueError(f"matrix has {len(m)} rows but right-hand side has {len(b)} entries")
    aug = [row + [as_rational(v)] for row, v in zip(m, b)]
    red, pivots = rref(RatMatrix(aug, cols=ncols + 1) if aug else [])
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[ncols]
    return LinearSolution(tuple(x), len(pivots) == ncols)


def nullspace(A) -> list[tuple[Fraction, ...]]:
    """A basis of ``{x : A x = 0}``."""
    m = _rows(A)
    ncols = _ncols(A, m)
    red, pivots = rref(RatMatrix(m, cols=ncols) if m else [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(red, pivots):
            v[c] = -row[f]
        basis.append(tuple(v))
    return basis


def mat_vec(A, v: Sequence) -> list:
    rows = A.entries if isinstance(A, RatMatrix) else A
    return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in rows]


def int_det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by Bareiss fraction-free elimination."""
    a = [list(map(int, row)) for row in M]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def int_adjugate(M: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """Return ``(adj, det)`` with ``M @ adj == det * I`` for a square integer matrix."""
    n = len(M)
    det = int_det(M)
    if n == 1:
        return [[1]], det
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
            cof = int_det(minor) * (-1 if (i + j) % 2 else 1)
            adj[j][i] = cof
    return adj, det


def minors_gcd(vectors: Sequence[Sequence[int]], size: int) -> int:
    """gcd of all ``size x size`` minors of the matrix with the given rows."""
    g = 0
    for rows in combinations(vectors, size):
        for cols in combinations(range(len(vectors[0])), size):
            g = gcd(g, int_det([[row[c] for c in cols] for row in rows]))
            if g == 1:
                return 1
    return g


def nonnegative_combination(vectors: Sequence[Sequence], target: Sequence,
                            ) -> tuple[Fraction, ...] | None:
    """Find ``lam >= 0`` with ``sum lam_i vectors[i] == target``, or ``None``.

    Exhaustive over supports of linearly independent vectors (Carathéodory),
    so it is exact and independent of any triangulation.  Fine for a dozen
    vectors in low dimension.
    """
    n = len(vectors)
    dim = len(target)
    if all(as_rational(t) == 0 for t in target):
        return tuple(Fraction(0) for _ in range(n))
    for size in range(1, min(n, dim) + 1):
        for support in combinations(range(n), size):
            cols = [[as_rational(vectors[i][k]) for i in support] for k in range(dim)]
            sol = solve_linear(cols, target)
            if sol is None or not sol.unique:
                continue
            if all(x >= 0 for x in sol.x):
                lam = [Fraction(0)] * n
                for i, x in zip(support, sol.x):
                    lam[i] = x
                return tuple(lam)
    return None
