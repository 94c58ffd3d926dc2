"""Error types raised across the package."""


class ParameterError(ValueError):
    """A model or numerical parameter is outside its admissible range."""


class CriticalPointError(ParameterError):
    """e*B*theta == 1: the effective mass vanishes and Theta diverges."""


class TruncationError(RuntimeError):
    """A truncated Fock basis is too small for the requested label."""

    def __init__(self, message, tail=None, required_nmax=None):
        super().__init__(message)
        self.tail = tail
        self.required_nmax = required_nmax


class NumericError(ArithmeticError):
    """A quadrature integrand produced a non-finite value."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class SingularCompositionError(ArithmeticError):
    """Two Gaussian kernels cannot be composed (degenerate denominator)."""
