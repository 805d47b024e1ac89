"""Exact computations with symplectic alternating algebras over GF(p)."""

from .field import DivisionByZero, FieldElement, PrimeField, cube_coset_rep, fp_arith, fp_inverse
from .linalg import Subspace, is_isotropic, perp, rref, standard_gram, subspace_intersect, subspace_sum
from .algebra import (
    Algebra,
    NotAnIdealError,
    NotNilpotentError,
    SeriesReport,
    TernaryForm,
    center,
    change_basis,
    check_axioms,
    induced_quotient,
    is_associative,
    is_ideal,
    is_lie,
    lower_central_series,
    multiply,
    nilpotency_class,
    series_report,
    subspace_product,
    upper_central_series,
)
from .presentation import (
    IsotropicChain,
    NilpotentPresentation,
    OutOfRange,
    build_algebra,
    build_isotropic_chain,
    builtin,
    extract_presentation,
    is_maximal_class_presentation,
    maximal_class_family,
)
from .classify import (
    ClassLabel,
    Fingerprint,
    UnsupportedDimension,
    census,
    classify_small,
    enumerate_presentations,
    fingerprint,
)
from .oracle import IsoResult, brute_force_isomorphic, random_symplectic
from .saafile import dumps_saa, load_saa, parse_saa, save_saa

__version__ = "0.1.0"
