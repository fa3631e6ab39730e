"""Exact GF(p) computations for Lie superalgebras: cohomology and varieties."""

from .algebra import (
    BasisElement,
    LieSuperAlgebra,
    OddPoint,
    ValidationReport,
    Violation,
    bracket,
    clifford_assoc_graded,
    make_gl,
    self_bracket,
    validate_algebra,
)
from .cohomology import (
    Cochain,
    CochainComplex,
    OddPolynomial,
    annihilator_probe,
    build_complex,
    cohomology_dims,
    cup_multiply,
    e1_dominance_check,
    graded_ext_dims,
    identity_cochain,
    is_coboundary,
    phi_embed,
)
from .errors import (
    BudgetError,
    InputError,
    InternalConsistencyError,
    PreconditionError,
    SupervarietyError,
)
from .linalg import FieldElement, MatrixFp, kernel_basis, rank, solve
from .modules import (
    FiltrationData,
    FreeTestResult,
    GradedModule,
    SuperModule,
    assoc_graded_module,
    dual,
    free_test,
    hom,
    lambda_projdim,
    natural_module,
    restrict_to_line,
    standard_filtration,
    tensor,
    trivial_module,
    validate_module,
)
from .varieties import (
    NullconeIdeal,
    PointSet,
    gl_orbit_rep,
    global_dim_probe,
    nullcone_ideal,
    nullcone_points,
    rank_variety_points,
    support_zero_probe,
    tensor_property_check,
)

__version__ = "0.1.0"
