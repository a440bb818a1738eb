"""Definiteness classification by principal-minor criteria."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from .certificates import (
    InternalVerificationError,
    SosCertificate,
    Witness,
    certifies_nonnegative,
    positive_witness,
    psd_certificate,
)
from .core import SymMatrix, negate
from .minors import index_sets, leading_minors, principal_minor


class DefinitenessClass(str, Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    # Nonnegative definite but not positive definite.
    POSITIVE_SEMIDEFINITE = "PositiveSemidefinite"
    NEGATIVE_DEFINITE = "NegativeDefinite"
    NEGATIVE_SEMIDEFINITE = "NegativeSemidefinite"
    INDEFINITE = "Indefinite"
    ZERO = "Zero"

    def mirror(self) -> "DefinitenessClass":
        return _MIRROR.get(self, self)

    @property
    def nonnegative(self) -> bool:
        return self in (PD, PSD, ZERO)

    @property
    def nonpositive(self) -> bool:
        return self in (ND, NSD, ZERO)

    def __str__(self) -> str:
        return self.value


PD = DefinitenessClass.POSITIVE_DEFINITE
PSD = DefinitenessClass.POSITIVE_SEMIDEFINITE
ND = DefinitenessClass.NEGATIVE_DEFINITE
NSD = DefinitenessClass.NEGATIVE_SEMIDEFINITE
INDEFINITE = DefinitenessClass.INDEFINITE
ZERO = DefinitenessClass.ZERO
_MIRROR = {PD: ND, ND: PD, PSD: NSD, NSD: PSD}


class CriticalPointVerdict(str, Enum):
    LOCAL_MIN = "LocalMin"
    LOCAL_MAX = "LocalMax"
    SADDLE = "Saddle"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


def leading_minors_positive(A: SymMatrix) -> bool:
    return all(d > 0 for d in leading_minors(A)[1:])


def principal_minors_nonnegative(A: SymMatrix) -> bool:
    # smallest subsets first: diagonal signs reject most non-PSD inputs immediately
    for size in range(1, A.n + 1):
        for S in index_sets(A.n, size):
            if principal_minor(A, S) < 0:
                return False
    return True


def classify(A: SymMatrix) -> DefinitenessClass:
    if A.is_zero():
        return ZERO
    if leading_minors_positive(A):
        return PD
    if principal_minors_nonnegative(A):
        return PSD
    B = negate(A)
    if leading_minors_positive(B):
        return ND
    if principal_minors_nonnegative(B):
        return NSD
    return INDEFINITE


@dataclass(frozen=True)
class Evidence:
    """What backs a classification.

    ``certificate`` proves Q >= 0 (or -Q >= 0 when ``of_negation``);
    indefinite forms carry one witness of each sign instead.
    """

    certificate: SosCertificate | None = None
    of_negation: bool = False
    positive: Witness | None = None
    negative: Witness | None = None


def classify_with_evidence(A: SymMatrix) -> Tuple[DefinitenessClass, Evidence]:
    cls = classify(A)
    if cls.nonnegative:
        res = psd_certificate(A)
        if not (isinstance(res, SosCertificate) and certifies_nonnegative(A, res)):
            raise InternalVerificationError(f"{cls} matrix {A!r} produced no certificate")
        if cls is PD and not (len(res.terms) == A.n and all(w > 0 for w in res.weights)):
            raise InternalVerificationError(f"positive definite matrix {A!r} has a degenerate certificate")
        return cls, Evidence(certificate=res)
    if cls.nonpositive:
        B = negate(A)
        res = psd_certificate(B)
        if not (isinstance(res, SosCertificate) and certifies_nonnegative(B, res)):
            raise InternalVerificationError(f"{cls} matrix {A!r} produced no certificate for -A")
        return cls, Evidence(certificate=res, of_negation=True)
    neg = psd_certificate(A)
    pos = positive_witness(A)
    if not (isinstance(neg, Witness) and pos is not None and neg.check(A) and pos.check(A)):
        raise InternalVerificationError(f"indefinite matrix {A!r} lacks a witness pair")
    return cls, Evidence(positive=pos, negative=neg)


_VERDICT = {
    PD: CriticalPointVerdict.LOCAL_MIN,
    ND: CriticalPointVerdict.LOCAL_MAX,
    INDEFINITE: CriticalPointVerdict.SADDLE,
}


def classify_critical_point(H: SymMatrix) -> CriticalPointVerdict:
    """Second-derivative test from the Hessian at a critical point."""
    return _VERDICT.get(classify(H), CriticalPointVerdict.INCONCLUSIVE)
