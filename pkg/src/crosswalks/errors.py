"""Exception types shared across the package."""


class SizeLimitError(ValueError):
    """An input exceeds a desk-scale guard (partition size, walk length, ...)."""


class WindowOverflowError(ArithmeticError):
    """A Laurent-polynomial result left its exponent window."""


class VerificationError(AssertionError):
    """An identity, recurrence or ODE failed; ``index`` is the first offending position."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class SingularIndexError(ZeroDivisionError):
    """The leading coefficient of a recurrence vanished at an index we had to solve for."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class IntegralityError(ArithmeticError):
    """A value that must be an integer came out fractional."""


class UnderdeterminedError(ValueError):
    """Not enough data to fit the requested ansatz."""
