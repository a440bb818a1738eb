"""Exact value types: rationals, symmetric matrices, vectors, index sets.

Everything here is immutable.  Rationals are :class:`fractions.Fraction`,
which keeps numerator/denominator reduced with a positive denominator after
every operation, so no separate canonicalisation step is needed.

Indices exposed to users (index sets, error positions) are 1-based.
"""
from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Tuple

Rational = Fraction
RVector = Tuple[Fraction, ...]
IndexSet = Tuple[int, ...]


class DimensionMismatch(ValueError):
    pass


class IndexOutOfBounds(IndexError):
    pass


class NotSquare(ValueError):
    pass


class NotSymmetric(ValueError):
    def __init__(self, i: int, j: int, msg: str | None = None):
        self.i, self.j = i, j
        super().__init__(msg or f"matrix is not symmetric at ({i},{j})")


def to_rational(value) -> Fraction:
    """Convert ``value`` to a Fraction without going through binary floats.

    Strings may be integers, ``p/q`` or finite decimals.  Python floats are
    taken at their shortest decimal repr (``0.1`` means 1/10).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite entry {value!r}")
        return Fraction(repr(value))
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def fmt(r: Fraction) -> str:
    """Render exactly: ``"3"`` or ``"-3/2"``."""
    return str(r)


def vector(values: Iterable) -> RVector:
    return tuple(to_rational(v) for v in values)


def index_set(indices: Iterable[int], n: int) -> IndexSet:
    s = tuple(sorted(indices))
    if not s:
        raise ValueError("index set must be nonempty")
    if len(set(s)) != len(s):
        raise ValueError(f"duplicate indices in {s}")
    if s[0] < 1 or s[-1] > n:
        raise IndexOutOfBounds(f"index set {s} not within 1..{n}")
    return s


class SymMatrix:
    """Immutable n x n symmetric matrix of Fractions."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Sequence[Sequence]):
        grid = tuple(tuple(to_rational(v) for v in row) for row in rows)
        n = len(grid)
        if n == 0:
            raise NotSquare("matrix must have at least one row")
        for k, row in enumerate(grid):
            if len(row) != n:
                raise NotSquare(f"row {k + 1} has {len(row)} entries, expected {n}")
        for i in range(n):
            for j in range(i + 1, n):
                if grid[i][j] != grid[j][i]:
                    raise NotSymmetric(i + 1, j + 1)
        self._rows = grid

    @classmethod
    def _trusted(cls, grid) -> "SymMatrix":
        obj = cls.__new__(cls)
        obj._rows = grid
        return obj

    @classmethod
    def zeros(cls, n: int) -> "SymMatrix":
        z = Fraction(0)
        return cls._trusted(tuple((z,) * n for _ in range(n)))

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, diag: Sequence) -> "SymMatrix":
        d = [to_rational(v) for v in diag]
        n = len(d)
        return cls._trusted(
            tuple(tuple(d[i] if i == j else Fraction(0) for j in range(n)) for i in range(n))
        )

    @classmethod
    def ternary(cls, a, b, c, p, q, r) -> "SymMatrix":
        """Matrix of ``a x^2 + 2b xy + 2p xz + c y^2 + 2q yz + r z^2``."""
        return cls([[a, b, p], [b, c, q], [p, q, r]])

    @property
    def n(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def is_zero(self) -> bool:
        return all(v == 0 for row in self._rows for v in row)

    def __neg__(self) -> "SymMatrix":
        return negate(self)

    def scaled(self, factor) -> "SymMatrix":
        f = to_rational(factor)
        return SymMatrix._trusted(tuple(tuple(f * v for v in row) for row in self._rows))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(fmt(v) for v in row) for row in self._rows)
        return f"SymMatrix({body!r})"

    def tolist(self) -> list:
        return [list(row) for row in self._rows]


def evaluate_form(A: SymMatrix, x: Sequence) -> Fraction:
    """Q(x) = sum_ij a_ij x_i x_j, exactly."""
    xs = vector(x)
    if len(xs) != A.n:
        raise DimensionMismatch(f"vector of length {len(xs)} against {A.n}x{A.n} matrix")
    total = Fraction(0)
    for i, row in enumerate(A.rows):
        xi = xs[i]
        if xi:
            total += xi * sum((a * xj for a, xj in zip(row, xs) if xj), Fraction(0))
    return total


def principal_submatrix(A: SymMatrix, S: Iterable[int]) -> SymMatrix:
    idx = [k - 1 for k in index_set(S, A.n)]
    rows = A.rows
    return SymMatrix._trusted(tuple(tuple(rows[i][j] for j in idx) for i in idx))


def negate(A: SymMatrix) -> SymMatrix:
    return SymMatrix._trusted(tuple(tuple(-v for v in row) for row in A.rows))
