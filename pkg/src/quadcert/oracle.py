"""Floating-point and sampling oracles used to cross-check the exact classifier.

Nothing here feeds the classification path.  The spectrum oracle abstains
(verdict ``None``, shown as "Unresolved") whenever an eigenvalue is too close
to zero to tell definite from semidefinite.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import List, Optional

from .certificates import NEGATIVE, Witness
from .classifier import INDEFINITE, ND, PD, DefinitenessClass
from .core import SymMatrix, evaluate_form

MAX_SWEEPS = 50
UNRESOLVED = "Unresolved"


class NonConvergence(ArithmeticError):
    pass


def to_float_matrix(A: SymMatrix) -> List[List[float]]:
    n = A.n
    return [[(float(A[i, j]) + float(A[j, i])) / 2 for j in range(n)] for i in range(n)]


def _off_norm(a) -> float:
    n = len(a)
    return math.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j))


def jacobi_eigenvalues(M, sweep_tol: float = 1e-12) -> List[float]:
    """Eigenvalues of a symmetric float matrix by cyclic Jacobi rotations, ascending."""
    if sweep_tol <= 0:
        raise ValueError("sweep_tol must be positive")
    a = [[float(v) for v in row] for row in M]
    n = len(a)
    for _ in range(MAX_SWEEPS + 1):
        if _off_norm(a) < sweep_tol:
            return sorted(a[i][i] for i in range(n))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
    raise NonConvergence(f"off-diagonal norm {_off_norm(a):.3e} after {MAX_SWEEPS} sweeps")


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: List[float]
    zero_threshold: float
    verdict: Optional[DefinitenessClass]

    @property
    def label(self) -> str:
        return UNRESOLVED if self.verdict is None else self.verdict.value


def default_threshold(A: SymMatrix) -> float:
    biggest = max(abs(float(v)) for row in A.rows for v in row)
    return 1e-9 * max(1.0, biggest)


def spectrum_classify(A: SymMatrix, zero_threshold: float | None = None) -> SpectrumReport:
    thr = default_threshold(A) if zero_threshold is None else zero_threshold
    if thr <= 0:
        raise ValueError("zero_threshold must be positive")
    try:
        eig = jacobi_eigenvalues(to_float_matrix(A))
    except NonConvergence:
        return SpectrumReport([], thr, None)
    pos = sum(1 for e in eig if e > thr)
    neg = sum(1 for e in eig if e < -thr)
    if pos == len(eig):
        verdict = PD
    elif neg == len(eig):
        verdict = ND
    elif pos and neg:
        verdict = INDEFINITE
    else:
        verdict = None
    return SpectrumReport(eig, thr, verdict)


def sampling_refute(A: SymMatrix, trials: int = 100, seed: int = 0) -> Witness | None:
    """Look for Q(x) < 0 at seeded random vectors with entries in -3..3.

    A returned witness is exact; None proves nothing.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    for _ in range(trials):
        x = [rng.randint(-3, 3) for _ in range(A.n)]
        val = evaluate_form(A, x)
        if val < 0:
            return Witness(tuple(x), val, NEGATIVE)
    return None
