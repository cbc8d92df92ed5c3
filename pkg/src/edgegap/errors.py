"""Exception types raised by the numerical routines."""


class EdgeGapError(Exception):
    """Base class for all library errors."""


class DomainError(EdgeGapError, ValueError):
    """An argument lies outside the domain of the operation."""


class NonConvergence(EdgeGapError, ArithmeticError):
    """A series or iteration hit its cap before meeting its tolerance."""


class ZeroDenominator(EdgeGapError, ZeroDivisionError):
    """A generalized Pochhammer symbol in a denominator vanished."""


class SingularFactorization(EdgeGapError, ArithmeticError):
    """LU factorization of I - M broke down (determinant is numerically zero)."""


class NegativeDeterminant(EdgeGapError, ArithmeticError):
    """A determinant that should be a squared probability came out negative."""


class DivisionUnderflow(EdgeGapError, ArithmeticError):
    """A divisor is too small to be trusted."""


class SizeLimit(EdgeGapError, ValueError):
    """Exhaustive enumeration requested above its size cap."""
