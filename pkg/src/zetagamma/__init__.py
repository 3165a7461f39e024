"""zetagamma: exact arithmetic for the exceptional sets of power maps n -> n^gamma.

Subpackages:
    dirichlet  - exact Dirichlet-convolution ring and relation falsification
    lattice    - prime-exponent vectors, integer kernels, independence certificates
    gamma      - exact tagged exponents, canonicalization, rigorous evaluation
    verdicts   - three-valued transcendence verdict engine and reports
    probe      - exact LLL and integer-relation cross-checks
    cli        - batch command line (also `python -m zetagamma`)
    service    - FastAPI application wrapping the same operations
"""

from .errors import (
    ImpreciseInputError,
    InternalInconsistencyError,
    InvalidBasisError,
    InvalidInputError,
    PrecisionExceededError,
    RejectedQueryError,
    RelationArityError,
    TruncationMismatchError,
    ZetaGammaError,
)
from .gamma import (
    AlgebraicGamma,
    Box,
    CanonicalGamma,
    Gamma,
    LogRatioGamma,
    NamedGamma,
    NumericGamma,
    RationalGamma,
    canonicalize,
    evaluate,
    format_gamma,
    parse_gamma,
)
from .verdicts import (
    AssumptionSet,
    BoundCertificate,
    ExceptionalSetReport,
    Prop5Query,
    Prop6Query,
    Prop7Query,
    Status,
    Verdict,
    Witness,
    check_prop3,
    classify_point,
    closure_check,
    exceptional_representant,
    exceptional_set,
    report_from_dict,
    report_to_dict,
    schanuel_bound,
)

__version__ = "0.1.0"
