"""Sign-variation bounds and exact positive-solution counts for sparse
polynomial systems of n equations, n variables, and n+2 monomials.

The public surface mirrors the pipeline: build an exponent configuration
and a coefficient matrix, read off the circuit profile and the Gale-side
ordering, assemble the bounds, and certify them with the exact counting
oracle.
"""

from .bounds import BoundReport, ParityPrediction, assemble_report, finiteness_check, mfrcsd_condition
from .circuit import (
    CircuitProfile,
    ExponentConfig,
    PyramidReduction,
    circuit_profile,
    exponent_config,
    lambda_of,
    reduce_pyramid,
)
from .errors import (
    DimensionError,
    DomainError,
    GenerationError,
    ParseError,
    PreconditionError,
    ZeroPolynomialError,
)
from .forge import (
    Instance,
    config_from_lambda,
    coefficients_from_gale,
    family_prs,
    family_prs_modified,
    random_instance,
    stabilized_modified_count,
)
from .gale import (
    CoefficientMatrix,
    GaleSystem,
    SignSequence,
    coefficient_matrix,
    gale_dual,
    ordering,
    s_alpha,
    verify_ordering_certificate,
)
from .linalg import Matrix, bareiss_determinant, int_matrix
from .oracle import (
    CountResult,
    UnivariateModel,
    count_from_model,
    count_positive_solutions,
    evaluate_g,
    minor_kernel_vector,
    reduce_to_univariate,
)
from .poly import (
    NEG_INF,
    POS_INF,
    Poly,
    count_roots_in_interval,
    poly_gcd,
    sign_variation,
    squarefree_decomposition,
    sturm_chain,
)

__version__ = "0.1.0"
