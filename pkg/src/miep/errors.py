"""Exception types shared across the package."""


class MiepError(Exception):
    """Base class for all library errors."""


class InvalidInputError(MiepError):
    """Malformed or out-of-contract input (bad shapes, indices, JSON)."""


class DimensionMismatchError(MiepError):
    """Operands have incompatible dimensions."""


class SingularMatrixError(MiepError):
    """Matrix is singular or too ill-conditioned for the requested operation."""


class DependentBasisError(MiepError):
    """Family basis matrices are linearly dependent."""


class SmoothPointNotFoundError(MiepError):
    """No nonsingular family member was found within the sampling budget."""


class TraceConditionError(MiepError):
    """No tangent element with nonzero trace is reachable."""


class SearchExhaustedError(MiepError):
    """A randomized search ran out of attempts."""


class DegenerateMatrixError(MiepError):
    """Coefficient matrix has a vanishing principal minor."""


class CapExceededError(MiepError):
    """Problem size exceeds the configured cap for an exhaustive operation."""
