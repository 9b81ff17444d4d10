"""Exception types shared across the package.

The CLI maps these onto exit codes: validation problems (ValueError
subclasses) exit 2, numerical failures exit 3.
"""


class InvalidModelError(ValueError):
    """A distribution, model, or argument fails validation."""


class PrecisionError(RuntimeError):
    """Truncation or working precision is too coarse to decide safely."""


class NumericalError(RuntimeError):
    """A solve failed: no convergence, oracle breakdown, or similar."""


class SingularSystemError(NumericalError):
    """The difference system at the solve index has a zero determinant."""

    def __init__(self, message, n=None, determinant=None):
        super().__init__(message)
        self.n = n
        self.determinant = determinant
