"""Exception hierarchy."""


class LieBilinearError(Exception):
    """Base class for all errors raised by this package."""


class InputError(LieBilinearError, ValueError):
    """Malformed or inconsistent user input.

    ``path`` names the offending field when the input came from a document.
    """

    def __init__(self, message, path=None):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class NumericalError(LieBilinearError, ArithmeticError):
    """A computation produced non-finite values."""


class SaturationError(LieBilinearError, RuntimeError):
    """Lie closure exceeded its admission cap.

    The partial basis reached before giving up is kept on ``partial``.
    """

    def __init__(self, message, partial=None):
        self.partial = partial
        super().__init__(message)


class SamplingError(LieBilinearError, RuntimeError):
    """Not enough orbit samples to support a local estimate."""


class AssumptionConflict(LieBilinearError, AssertionError):
    """Declared group assertions contradict the generator kind."""
