"""Exception types shared across the package."""


class HermitiaError(Exception):
    """Base class for all package-specific errors."""


class MixedFieldError(HermitiaError, ValueError):
    """Operands belong to different field specs."""


class InvalidMError(HermitiaError, ValueError):
    """No code is labelled by this m (the monomial basis has no element of
    weighted degree m+1, or m is outside [0, n+2g-2])."""


class NotZeroDimensionalError(HermitiaError, ValueError):
    """The initial ideal lacks a pure power of some variable, so the
    staircase is infinite."""


class ParametricLeadingCoefficientError(HermitiaError, RuntimeError):
    """A Groebner basis that was expected to have leading monomials in x, y
    only came out with a parameter variable on top; the counting pipeline
    cannot proceed."""


class NotASupportError(HermitiaError, ValueError):
    """The divisor does not support any nonzero codeword (kernel is 0)."""


class AmbiguousSupportError(HermitiaError, ValueError):
    """The divisor supports a codeword space of dimension > 1, so there is
    no canonical representative."""


class BudgetExceededError(HermitiaError, RuntimeError):
    """A computation hit its enumeration or wall-clock budget.

    ``stage`` names how far the computation got, ``elapsed`` is the wall
    time consumed in seconds.
    """

    def __init__(self, message, *, stage=None, elapsed=None):
        super().__init__(message)
        self.stage = stage
        self.elapsed = elapsed
