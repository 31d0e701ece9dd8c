"""Stability and asymptotics of block operator matrix semigroups at finite
dimension.

Dense desk-scale realizations of the triangular semigroup block formula via
convolution quadrature, Dyson-series stability certificates, and the
coupled-domain factorization with Dirichlet and Dirichlet-to-Neumann
operators, validated on two 1-d boundary-value models.
"""

__version__ = "0.1.0"

from .blocks import (
    BlockSystem,
    ConvolutionResult,
    YoungBounds,
    assemble,
    closed_form_R,
    convolve,
    verify_semigroup_blocks,
    young_bounds,
)
from .coupled import (
    AssumptionAudit,
    CoupledSystem,
    FactorizationResult,
    GenerationReport,
    MaximalPair,
    assumption_audit,
    dirichlet_operator,
    dtn_operator,
    factorize,
    generation_report,
    reduced_triangular,
    stabbar_feedthrough_norm,
)
from .dyson import DysonL1Bounds, DysonTerm, dyson_l1_estimates, dyson_reconstruct_error, dyson_terms
from .errors import (
    EigenSolverError,
    OrbitClassificationError,
    QuadratureError,
    SemiblockError,
    SingularMatrixError,
    UnsupportedCaseError,
)
from .linalg import (
    Propagator,
    Spectrum,
    eigendecompose,
    expm,
    operator_norm,
    solve,
    spectral_abscissa,
    spectral_pairing_distance,
)
from .models import (
    ConvergenceStudy,
    Mesh1D,
    build_dynamic_boundary_1d,
    build_wentzell_1d,
    convergence_study,
    wentzell_dtn_lambda_limit,
    wentzell_dtn_limit,
)
from .semigroup import (
    BOUNDED_NONCONVERGENT,
    CONVERGENT_NONZERO,
    DECAYING,
    UNBOUNDED,
    DatkoResult,
    GrowthBound,
    OrbitClass,
    bound_constant_for_rate,
    classify_orbit,
    datko_l1_norm,
    growth_bound,
    sector_angle_estimate,
)
from .stability import (
    Certificate,
    LimitComparison,
    asymptotic_limit_R,
    bpt_certificate,
    bpt_certificate_from_system,
    cascade_certificate,
    complete_certificate,
    complete_certificate_from_system,
    nonresonance_check,
    stabilizability_certificate,
)
