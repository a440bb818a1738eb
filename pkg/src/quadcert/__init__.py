"""Exact definiteness classification of real quadratic forms.

Classification uses principal-minor tests in exact rational arithmetic.
Results come with certificates that anyone can check: sum-of-squares
identities for semidefinite forms and sign witnesses otherwise.
"""
from .certificates import (
    AvatarIdentity,
    DegeneratePivot,
    InternalVerificationError,
    MalformedChain,
    NotApplicable,
    SosCertificate,
    TriangularSubstitution,
    Witness,
    avatar_identities_ternary,
    certifies_nonnegative,
    lb_certificate,
    lb_decompose,
    negative_witness_ternary,
    nested_minor_check,
    positive_witness,
    psd_certificate,
    verify_certificate,
)
from .classifier import (
    CriticalPointVerdict,
    DefinitenessClass,
    Evidence,
    classify,
    classify_critical_point,
    classify_with_evidence,
)
from .core import (
    DimensionMismatch,
    IndexOutOfBounds,
    NotSquare,
    NotSymmetric,
    SymMatrix,
    evaluate_form,
    negate,
    principal_submatrix,
    to_rational,
)
from .minors import all_principal_minors, char_poly_sums, det, leading_minors
from .oracle import jacobi_eigenvalues, sampling_refute, spectrum_classify
from .parsing import (
    NonQuadraticTerm,
    ParseError,
    UnknownVariable,
    parse_form,
    parse_matrix,
    render_form,
)

__version__ = "0.1.0"
