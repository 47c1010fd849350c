"""Shared exception types."""


class SingularEvaluationError(ValueError):
    """Evaluation hit (or came too close to) a pole of a thermal factor."""


class QuadratureError(RuntimeError):
    """Numerical integration did not reach the requested accuracy."""

    def __init__(self, message: str, value=None, achieved: float | None = None):
        super().__init__(message)
        self.value = value
        self.achieved = achieved


class DimensionBoundError(ValueError):
    """A truncated Fock space would exceed the configured dimension bound."""
