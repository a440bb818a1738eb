import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import strategies as st

from quadcert import SymMatrix


def cofactor_det(rows):
    """Laplace expansion along the first row; independent of the Bareiss path."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def sym_from_upper(n, values):
    it = iter(values)
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            M[i][j] = M[j][i] = next(it)
    return SymMatrix(M)


def all_integer_matrices(n, lo=-2, hi=2):
    k = n * (n + 1) // 2
    for vals in product(range(lo, hi + 1), repeat=k):
        yield sym_from_upper(n, vals)


def random_rational(rng, num=5, den=4):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_matrix(rng, n, num=5, den=4):
    return sym_from_upper(n, [random_rational(rng, num, den) for _ in range(n * (n + 1) // 2)])


def random_low_rank(rng, n):
    """Sum of a few signed rank-one terms: lands on semidefinite boundaries often."""
    M = [[Fraction(0)] * n for _ in range(n)]
    for _ in range(rng.randint(0, n)):
        v = [rng.randint(-2, 2) for _ in range(n)]
        s = rng.choice([1, 1, -1])
        for i in range(n):
            for j in range(n):
                M[i][j] += s * v[i] * v[j]
    return SymMatrix(M)


def mixed_matrix(rng, n):
    return random_low_rank(rng, n) if rng.random() < 0.5 else random_matrix(rng, n)


@pytest.fixture
def rng():
    return random.Random(20240611)


small_fractions = st.fractions(min_value=-6, max_value=6, max_denominator=6)


@st.composite
def sym_matrices(draw, min_n=1, max_n=4, elements=small_fractions):
    n = draw(st.integers(min_n, max_n))
    vals = draw(st.lists(elements, min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2))
    return sym_from_upper(n, vals)


@st.composite
def rank_deficient(draw, min_n=2, max_n=4):
    n = draw(st.integers(min_n, max_n))
    vecs = draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=0, max_size=n - 1))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=len(vecs), max_size=len(vecs)))
    M = [[Fraction(0)] * n for _ in range(n)]
    for s, v in zip(signs, vecs):
        for i in range(n):
            for j in range(n):
                M[i][j] += s * v[i] * v[j]
    return SymMatrix(M)


@st.composite
def matrix_and_vector(draw, max_n=4):
    A = draw(sym_matrices(max_n=max_n))
    x = draw(st.lists(small_fractions, min_size=A.n, max_size=A.n))
    return A, x


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, title, detail = RESULTS[k]
        line = f"[{'PASS' if ok else 'FAIL'}] {k}. {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
