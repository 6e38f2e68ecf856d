"""Exact centering of toric arrangements whose exponent matrix has full row rank.

Typical use::

    from toricenter import ToricArrangement, ExactScalar, center, verify_diffeo

    a = ToricArrangement.from_rows([[2, 4]], [ExactScalar.from_json("-1")])
    cert = center(a)
    assert cert.target.is_centered()
    assert verify_diffeo(cert).passed
"""

from .arrangement import (
    ToricArrangement,
    TorusEquation,
    associated_matrix,
    dump_arrangement,
    is_centered,
    is_complexified,
    load_arrangement,
    validate_hypothesis,
)
from .centering import (
    CenteringCertificate,
    center,
    centering_step,
    dump_certificate,
    load_certificate,
    step1_triangularize,
    verify_certificate_exact,
)
from .errors import (
    DegenerateEquation,
    EmptyArrangement,
    HypothesisError,
    NonSquare,
    NotUnimodular,
    ParseError,
    PreconditionViolated,
    RankDeficient,
    ShapeMismatch,
    SingularMinor,
    ToricError,
    TooManyEquations,
    ZeroCoordinate,
)
from .intlinalg import (
    IntMatrix,
    column_hnf_triangularize,
    det,
    mat_mul,
    rank,
    select_pivot_columns,
    unimodular_inverse,
)
from .monomial import (
    DiffeoChain,
    MonomialMap,
    Permutation,
    TranslationMap,
    apply_point,
    compose,
    invert,
    monomial_from_block,
    pushforward_arrangement,
    pushforward_equation,
)
from .scalar import ExactScalar, evaluate, one, principal_root, unit
from .verify import VerifyReport, residual, sample_on_subtorus, verify_diffeo

__version__ = "0.1.0"
