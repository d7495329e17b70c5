"""Generic solvability and numerical solution of multiplicative inverse
eigenvalue problems over affine-linear matrix families."""

from .assignment import (
    AssignmentContext,
    PluckerPoint,
    ProjectivePoly,
    assignment_jacobian,
    assignment_map,
    cofactor_polys,
    compactified_map,
    diagonal_boundary_point,
    interior_point,
    plucker_coords,
    powersum_jacobian,
    powersum_map,
)
from .errors import (
    CapExceededError,
    DegenerateMatrixError,
    DependentBasisError,
    DimensionMismatchError,
    InvalidInputError,
    MiepError,
    SearchExhaustedError,
    SingularMatrixError,
    SmoothPointNotFoundError,
    TraceConditionError,
)
from .family import (
    AffineFamily,
    FamilyPoint,
    NonconstancyResult,
    det_is_nonconstant,
    diagonal_family,
    smooth_point,
)
from .linalg import (
    SymFuncs,
    charpoly,
    charpoly_det,
    complex_gaussian,
    det,
    inverse,
    matmul,
    numerical_rank,
    powsums_to_charpoly,
    powsums_to_charpoly_jacobian,
    powsums_to_sigma,
    principal_minor,
    sigma_to_powsums,
    solve_linear,
    trace,
)
from .solvability import (
    SolvabilityReport,
    WitnessCertificate,
    check_generic_solvability,
    construct_witness,
    diag_projection_rank,
    find_conjugator,
    scaled_vandermonde,
)
from .solver import (
    CountResult,
    NewtonResult,
    NondegeneracyReport,
    Solution,
    SolutionSet,
    SolveConfig,
    count_solutions_diagonal,
    diag_nondegenerate,
    solve,
    solve_once,
)

__version__ = "0.1.0"
