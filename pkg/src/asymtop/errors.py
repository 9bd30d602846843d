"""Exception hierarchy.

The CLI maps these onto exit codes: parameter errors exit 2, solver
errors exit 3, quadrature errors exit 5.
"""


class AsymTopError(Exception):
    """Base class for all package errors."""


class ParameterError(AsymTopError, ValueError):
    pass


class WeylViolation(ParameterError):
    """Squared frequencies are not strictly increasing and positive."""


class ParityMismatch(ParameterError):
    pass


class DegreeMismatch(ParameterError):
    pass


class SolverError(AsymTopError, ArithmeticError):
    """Numerical breakdown in an eigen- or root-solver."""


class NonSymmetrizable(SolverError):
    pass


class ConvergenceFailure(SolverError):
    pass


class NotAnEigenvalue(SolverError):
    pass


class ComplexRootDetected(SolverError):
    pass


class OnAxisDegeneracy(AsymTopError, ValueError):
    """A sphere point sits on a coordinate plane, so a sphero-conal root hits an axis value."""


class QuadratureNotConverged(AsymTopError, ArithmeticError):
    pass


class Inconclusive(AsymTopError):
    """Neither limit variant explains the empirical density of states."""
