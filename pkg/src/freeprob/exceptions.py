"""Exception types shared across the package."""


class PoleError(ValueError):
    """Raised when an evaluation point coincides with (or is too close to) a pole."""


class ConvergenceError(RuntimeError):
    """Raised when an iterative or adaptive procedure fails to reach its tolerance.

    The best estimate and its error are attached so callers can decide whether
    the partial result is still usable.
    """

    def __init__(self, message, value=None, error=None):
        super().__init__(message)
        self.value = value
        self.error = error
