"""Exact plane Cremona transformations over the rationals.

Canonical rational maps, quadratic involutions, characteristic vectors
with infinitely near points, the (j, h) quadratic descent, base point
extraction, Jung factorization of polynomial automorphisms, and word
synthesis in linear letters and the standard involution.
"""

from .basepoints import (
    BasePointReport,
    ProjPoint,
    char_vector_partial,
    multiplicity_at,
    rational_proper_base_points,
)
from .bipoly import BPoly, parse_bpoly, proportionality, render_bpoly
from .decompose import (
    FactorKind,
    JungFactor,
    MonomialMap,
    PolyAuto,
    W_SHEAR,
    WordCheck,
    decompose_greedy,
    decompose_polyaut,
    elementary_to_word,
    homogenize,
    jung_factorize,
    monomial_projective,
    monomial_to_word,
    parse_polyauto,
    quadratic_with_base_points,
    render_polyauto,
    verify_word,
)
from .errors import (
    CollinearCentersError,
    CremonaError,
    DegenerateTripleError,
    DegreeMismatchError,
    DegreeTooLargeError,
    DeterminantNotUnitError,
    IncompleteVectorError,
    InsufficientBaseCountError,
    IrrationalBaseLocusError,
    NoetherViolationError,
    NonProperCenterError,
    NonterminationGuardError,
    NotAutomorphismError,
    NotBirationalError,
    NotQuadraticError,
    ParseError,
    ResultantCollapseError,
    SingularMatrixError,
    StuckError,
)
from .exactpoly import HPoly, parse_hpoly, render_hpoly
from .homaloidal import (
    Bounds,
    BoundsReport,
    CharVector,
    DescentStep,
    DescentTrace,
    FRESH_GENERIC,
    JHPair,
    LamyStage,
    LamyTrace,
    bounds,
    check_bounds,
    descent,
    enumerate_homaloidal,
    is_jonquieres,
    jh,
    lamy_trace,
    noether_check,
    quad_transform,
)
from .maps import (
    Letter,
    LinearLetter,
    QuadraticOrbit,
    RationalMap,
    SIGMA,
    SigmaLetter,
    Word,
    classify_quadratic,
    compose,
    f_d,
    identity_map,
    jacobian,
    linear_letter,
    linear_map,
    make_map,
    matrix_of,
    merge_linears,
    parse_map,
    render_map,
    rho,
    sigma,
    tau,
    verify_inverse,
    word,
    word_eval,
    word_from_json,
    word_to_json,
)

__all__ = [name for name in dir() if not name.startswith("_")]
