"""Exception types shared across the package."""


class SemibandError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(SemibandError):
    """Vector or matrix dimensions do not match the ambient space."""


class IndeterminateComparisonError(SemibandError):
    """A certified enclosure is too wide to decide a comparison."""


class UnachievableSupportError(SemibandError):
    """The requested support is not attained by any range element."""


class BudgetExceededError(SemibandError):
    """Size limits (atom count, degree, piece count) were exceeded."""


class ValidationError(SemibandError):
    """Invalid constructor arguments or malformed input data."""


class InternalConsistencyError(SemibandError):
    """An internal reassembly check failed; indicates a defect."""
