"""Sum-of-squares certificates and sign witnesses for quadratic forms.

A certificate is an identity ``Q(x) = sum_t w_t * (l_t . x)^2`` with rational
weights and linear forms, checked by comparing coefficient arrays.  A witness
is a vector on which Q is evaluated exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from .core import (
    DimensionMismatch,
    RVector,
    SymMatrix,
    evaluate_form,
    index_set,
    negate,
    vector,
)
from .minors import det_rows, principal_minor

NONNEGATIVE = "nonnegative"
ZERO = "zero"
NEGATIVE = "negative"
POSITIVE = "positive"

Term = Tuple[Fraction, RVector]


class DegeneratePivot(ArithmeticError):
    """A leading minor Δk with k < n vanished, so the triangular decomposition does not exist."""

    def __init__(self, k: int):
        self.k = k
        super().__init__(f"leading principal minor Δ{k} is zero")


class MalformedChain(ValueError):
    pass


class InternalVerificationError(AssertionError):
    """A constructed certificate or witness failed its own exact check."""


@dataclass(frozen=True)
class SosCertificate:
    n: int
    terms: Tuple[Term, ...]
    claim: str = NONNEGATIVE

    def __post_init__(self):
        terms = tuple((Fraction(w), vector(f)) for w, f in self.terms)
        for _, f in terms:
            if len(f) != self.n:
                raise DimensionMismatch(f"linear form of length {len(f)} in a {self.n}-variable certificate")
        object.__setattr__(self, "terms", terms)

    @property
    def weights(self) -> List[Fraction]:
        return [w for w, _ in self.terms]

    @property
    def nonnegative_weights(self) -> bool:
        return all(w >= 0 for w, _ in self.terms)

    def gram(self) -> List[List[Fraction]]:
        """Coefficient matrix of the expanded sum of squares."""
        G = [[Fraction(0)] * self.n for _ in range(self.n)]
        for w, f in self.terms:
            for i, fi in enumerate(f):
                if not fi:
                    continue
                wfi = w * fi
                row = G[i]
                for j, fj in enumerate(f):
                    if fj:
                        row[j] += wfi * fj
        return G

    def evaluate(self, x: Sequence) -> Fraction:
        xs = vector(x)
        return sum((w * sum((a * b for a, b in zip(f, xs)), Fraction(0)) ** 2 for w, f in self.terms), Fraction(0))


@dataclass(frozen=True)
class TriangularSubstitution:
    """Rows ``y_i = x_i + sum_{j>i} b_ij x_j`` stored as full coefficient rows."""

    rows: Tuple[RVector, ...]

    def __post_init__(self):
        rows = tuple(vector(r) for r in self.rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n or r[i] != 1 or any(r[j] for j in range(i)):
                raise ValueError(f"row {i + 1} is not unit upper-triangular")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def apply(self, x: Sequence) -> RVector:
        xs = vector(x)
        return tuple(sum((a * b for a, b in zip(r, xs)), Fraction(0)) for r in self.rows)

    def solve(self, y: Sequence) -> RVector:
        """Back substitution: the unique x with ``apply(x) == y``."""
        ys = vector(y)
        n = self.n
        x = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            r = self.rows[i]
            x[i] = ys[i] - sum((r[j] * x[j] for j in range(i + 1, n)), Fraction(0))
        return tuple(x)


@dataclass(frozen=True)
class Witness:
    x: RVector
    value: Fraction
    sign_claim: str

    def __post_init__(self):
        object.__setattr__(self, "x", vector(self.x))
        object.__setattr__(self, "value", Fraction(self.value))
        if not any(self.x):
            raise ValueError("witness vector must be nonzero")
        if self.sign_claim == NEGATIVE and not self.value < 0:
            raise ValueError(f"negative witness with value {self.value}")
        if self.sign_claim == POSITIVE and not self.value > 0:
            raise ValueError(f"positive witness with value {self.value}")
        if self.sign_claim not in (NEGATIVE, POSITIVE):
            raise ValueError(f"unknown sign claim {self.sign_claim!r}")

    def check(self, A: SymMatrix) -> bool:
        return evaluate_form(A, self.x) == self.value


def verify_certificate(A: SymMatrix, cert: SosCertificate) -> bool:
    """True iff the certificate expands to exactly the coefficients of A.

    Only the polynomial identity is checked; sign of the weights is reported
    separately by ``cert.nonnegative_weights``.
    """
    if cert.n != A.n:
        raise DimensionMismatch(f"{cert.n}-variable certificate against {A.n}x{A.n} matrix")
    return cert.gram() == A.tolist()


def certifies_nonnegative(A: SymMatrix, cert: SosCertificate) -> bool:
    """Identity holds and every weight is >= 0, so Q(x) >= 0 everywhere."""
    if not (cert.nonnegative_weights and verify_certificate(A, cert)):
        return False
    return (cert.claim == ZERO) == (not cert.terms)


# -- Lagrange-Beltrami decomposition -------------------------------------------------


def lb_decompose(A: SymMatrix) -> Tuple[TriangularSubstitution, List[Fraction]]:
    """Unpivoted decomposition ``Q = sum_i w_i y_i^2`` with ``w_i = Δi / Δ(i-1)``.

    Raises DegeneratePivot(k) for the first vanishing Δk with k < n.
    """
    n = A.n
    M = A.tolist()
    rows: List[RVector] = []
    weights: List[Fraction] = []
    for k in range(n):
        pivot = M[k][k]
        if pivot == 0 and k < n - 1:
            raise DegeneratePivot(k + 1)
        if pivot == 0:
            row = tuple(Fraction(int(j == k)) for j in range(n))
        else:
            row = tuple(Fraction(0) if j < k else M[k][j] / pivot for j in range(n))
            for i in range(k + 1, n):
                f = M[i][k]
                if f:
                    for j in range(k + 1, n):
                        M[i][j] -= f * row[j]
        rows.append(row)
        weights.append(pivot)
    return TriangularSubstitution(tuple(rows)), weights


def lb_certificate(A: SymMatrix) -> SosCertificate:
    """The Lagrange-Beltrami identity as a certificate (weights may be negative)."""
    sub, weights = lb_decompose(A)
    terms = tuple((w, r) for w, r in zip(weights, sub.rows) if w)
    return SosCertificate(A.n, terms, ZERO if not terms else NONNEGATIVE)


# -- ternary avatars ---------------------------------------------------------------

# (pivot, partner) pairs as 0-based indices: (a; ac-b^2), (a; ar-p^2), (c; ac-b^2),
# (c; cr-q^2), (r; ar-p^2), (r; cr-q^2).
AVATAR_PAIRS = ((0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1))


@dataclass(frozen=True)
class AvatarIdentity:
    """``scale * Q = sum weight * (form . x)^2`` for one nested minor pair."""

    pivot: int  # 1-based index of the 1x1 minor
    pair: Tuple[int, int]  # 1-based index set of the 2x2 minor
    scale: Fraction
    terms: Tuple[Term, ...]

    def normalized(self) -> SosCertificate:
        return SosCertificate(3, tuple((w / self.scale, f) for w, f in self.terms))

    def expands_to(self, A: SymMatrix) -> bool:
        return verify_certificate(A.scaled(self.scale), SosCertificate(3, self.terms))


@dataclass(frozen=True)
class NotApplicable:
    pivot: int
    pair: Tuple[int, int]
    reason: str = "scale M1*M2 vanishes"


def avatar_identities_ternary(A: SymMatrix) -> List[AvatarIdentity | NotApplicable]:
    """The six scaled sum-of-squares identities of a 3 x 3 form.

    For pivot i, partner j and remaining index k, with M1 = a_ii and
    M2 = a_ii a_jj - a_ij^2::

        M1 M2 Q = M2 (row_i . x)^2 + (M2 x_j + (a_ii a_jk - a_ij a_ik) x_k)^2 + M1 det(A) x_k^2
    """
    if A.n != 3:
        raise DimensionMismatch(f"ternary avatars need a 3x3 matrix, got {A.n}x{A.n}")
    D = det_rows(A.rows)
    out: List[AvatarIdentity | NotApplicable] = []
    for i, j in AVATAR_PAIRS:
        k = 3 - i - j
        pair = tuple(sorted((i + 1, j + 1)))
        m1 = A[i, i]
        m2 = A[i, i] * A[j, j] - A[i, j] ** 2
        if m1 * m2 == 0:
            out.append(NotApplicable(i + 1, pair))
            continue
        second = [Fraction(0)] * 3
        second[j] = m2
        second[k] = A[i, i] * A[j, k] - A[i, j] * A[i, k]
        third = [Fraction(0)] * 3
        third[k] = Fraction(1)
        terms = ((m2, A.rows[i]), (Fraction(1), tuple(second)), (m1 * D, tuple(third)))
        out.append(AvatarIdentity(i + 1, pair, m1 * m2, terms))
    return out


# -- general-n certificate or refutation ------------------------------------------


def _lift(forms: List[RVector], pivots: List[int], v: List[Fraction]) -> RVector:
    # Fill pivot coordinates (latest first) so every emitted linear form vanishes.
    x = list(v)
    for f, k in zip(reversed(forms), reversed(pivots)):
        x[k] = -sum((f[j] * x[j] for j in range(len(x)) if j != k), Fraction(0))
    return tuple(x)


def psd_certificate(A: SymMatrix) -> SosCertificate | Witness:
    """Either a nonnegative sum-of-squares certificate for Q or a vector with Q < 0.

    Symmetric pivoted elimination: pivot on the first positive remaining
    diagonal entry; a negative remaining diagonal entry, or a zero diagonal
    block with a nonzero off-diagonal entry, ends in a witness lifted back
    through the eliminated forms.
    """
    n = A.n
    M = A.tolist()
    active = list(range(n))
    forms: List[RVector] = []
    weights: List[Fraction] = []
    pivots: List[int] = []

    while True:
        k = next((i for i in active if M[i][i] > 0), None)
        if k is None:
            break
        pivot = M[k][k]
        row = tuple(M[k][j] / pivot if j in active else Fraction(0) for j in range(n))
        active.remove(k)
        for i in active:
            f = M[i][k]
            if f:
                for j in active:
                    M[i][j] -= f * row[j]
            M[i][k] = M[k][i] = Fraction(0)
        forms.append(row)
        weights.append(pivot)
        pivots.append(k)

    v = [Fraction(0)] * n
    neg = next((i for i in active if M[i][i] < 0), None)
    if neg is not None:
        v[neg] = Fraction(1)
    else:
        pair = next(((i, j) for i in active for j in active if i < j and M[i][j] != 0), None)
        if pair is None:
            terms = tuple(zip(weights, forms))
            cert = SosCertificate(n, terms, ZERO if not terms else NONNEGATIVE)
            if not certifies_nonnegative(A, cert):
                raise InternalVerificationError(f"certificate failed to verify for {A!r}")
            return cert
        i, j = pair
        v[i] = Fraction(1)
        v[j] = Fraction(-1) if M[i][j] > 0 else Fraction(1)

    x = _lift(forms, pivots, v)
    value = evaluate_form(A, x)
    if not value < 0:
        raise InternalVerificationError(f"lifted witness {x} gives Q = {value} for {A!r}")
    return Witness(x, value, NEGATIVE)


def positive_witness(A: SymMatrix) -> Witness | None:
    """A vector with Q(x) > 0, or None when Q is nonpositive everywhere."""
    res = psd_certificate(negate(A))
    if isinstance(res, Witness):
        return Witness(res.x, -res.value, POSITIVE)
    return None


def _ternary_candidates(A: SymMatrix):
    a, b, p = A.rows[0]
    c, q, r = A[1, 1], A[1, 2], A[2, 2]
    for k in range(3):
        e = [0, 0, 0]
        e[k] = 1
        yield e
    for i, j in ((0, 1), (1, 2), (0, 2)):
        al, be, ga = A[i, i], A[i, j], A[j, j]
        for s, t in ((be, -al), (ga, -be), (1, 1), (1, -1)):
            e = [0, 0, 0]
            e[i], e[j] = s, t
            yield e
    yield [b * q - c * p, b * p - a * q, a * c - b * b]
    yield [c * r - q * q, p * q - b * r, b * q - c * p]
    yield [p * q - b * r, a * r - p * p, b * p - a * q]


def negative_witness_ternary(A: SymMatrix) -> Witness | None:
    """First of the classical substitution vectors on which Q is negative.

    Tried in order: coordinate vectors; for each 2x2 block (xy, yz, xz) the
    vectors (b, -a), (c, -b), (1, 1), (1, -1); then the three adjugate
    columns, where ``Q(adj_k) = adj_kk * det(A)``.  None means the family
    found nothing, not that Q is nonnegative.
    """
    if A.n != 3:
        raise DimensionMismatch(f"ternary witness search needs a 3x3 matrix, got {A.n}x{A.n}")
    for e in _ternary_candidates(A):
        if not any(e):
            continue
        val = evaluate_form(A, e)
        if val < 0:
            return Witness(vector(e), val, NEGATIVE)
    return None


def nested_minor_check(A: SymMatrix, chain: Sequence[Sequence[int]]) -> bool:
    """True iff every minor along a full nested chain S1 < S2 < ... < Sn is > 0."""
    n = A.n
    sets = []
    for S in chain:
        try:
            sets.append(index_set(S, n))
        except (ValueError, IndexError) as exc:
            raise MalformedChain(str(exc)) from exc
    if len(sets) != n:
        raise MalformedChain(f"chain has {len(sets)} sets, expected {n}")
    for k, S in enumerate(sets):
        if len(S) != k + 1:
            raise MalformedChain(f"set {k + 1} of the chain has size {len(S)}")
        if k and not set(sets[k - 1]) < set(S):
            raise MalformedChain(f"{sets[k - 1]} is not contained in {S}")
    return all(principal_minor(A, S) > 0 for S in sets)
