"""Determinants and principal minors, computed exactly."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Dict, Iterator, List

from .core import IndexSet, SymMatrix, principal_submatrix


def _bareiss(M: List[List[int]]) -> int:
    # Fraction-free elimination; every division below is exact (Sylvester's identity).
    n = len(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        row_k = M[k]
        for i in range(k + 1, n):
            row_i = M[i]
            f = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - f * row_k[j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def det_rows(rows) -> Fraction:
    """Exact determinant of a square grid of Fractions."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = 1
    M = []
    for row in rows:
        d = lcm(*(v.denominator for v in row))
        scale *= d
        M.append([int(v * d) for v in row])
    return Fraction(_bareiss(M), scale)


def det(A: SymMatrix) -> Fraction:
    return det_rows(A.rows)


def leading_minors(A: SymMatrix) -> List[Fraction]:
    """``[Δ0, Δ1, ..., Δn]`` with Δ0 = 1 and Δk the top-left k x k determinant."""
    rows = A.rows
    return [Fraction(1)] + [det_rows([r[:k] for r in rows[:k]]) for k in range(1, A.n + 1)]


def index_sets(n: int, size: int | None = None) -> Iterator[IndexSet]:
    """Nonempty subsets of 1..n as sorted tuples, in lexicographic order.

    With ``size`` given, only subsets of that cardinality (still lexicographic).
    """
    if size is not None:
        yield from combinations(range(1, n + 1), size)
        return

    def extend(prefix, start):
        for k in range(start, n + 1):
            s = prefix + (k,)
            yield s
            yield from extend(s, k + 1)

    yield from extend((), 1)


def principal_minor(A: SymMatrix, S) -> Fraction:
    return det(principal_submatrix(A, S))


def all_principal_minors(A: SymMatrix) -> Dict[IndexSet, Fraction]:
    """All 2^n - 1 principal minors keyed by index set, lexicographic order."""
    return {S: principal_minor(A, S) for S in index_sets(A.n)}


def char_poly_sums(A: SymMatrix) -> List[Fraction]:
    """``[c1, ..., cn]`` with ck the sum of all k x k principal minors.

    These are the elementary symmetric functions of the eigenvalues.
    """
    return [
        sum((principal_minor(A, S) for S in index_sets(A.n, k)), Fraction(0))
        for k in range(1, A.n + 1)
    ]
