"""Exception hierarchy shared across the package.

The CLI maps these onto its exit-code contract: validation problems
exit 2, domain problems exit 3, convergence failures exit 4.
"""


class HypercatError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ValidationError(HypercatError, ValueError):
    """Bad parameters or configuration (CLI exit 2)."""

    exit_code = 2


class DomainError(HypercatError, ValueError):
    """Argument outside the mathematical domain of an operation (CLI exit 3)."""

    exit_code = 3


class ConvergenceError(HypercatError, ArithmeticError):
    """A series or quadrature failed to reach its tolerance (CLI exit 4)."""

    exit_code = 4


class SeriesOverflowError(HypercatError, OverflowError):
    """A requested value exceeds the double-precision range (CLI exit 3)."""

    exit_code = 3


class UnsupportedCaseError(ValidationError):
    """Requested (p, q) shape has no tabulated closed-form weight."""


class DegenerateStateError(DomainError):
    """Operation undefined for this state (e.g. Mandel Q at <N> = 0)."""
