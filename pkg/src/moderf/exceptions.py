"""Exception hierarchy shared by the solver and CLI layers."""


class ModerfError(Exception):
    """Base class for all errors raised by this package."""


class QuadratureError(ModerfError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class DeltaRangeError(ModerfError, ValueError):
    """Conductivity-slope parameter outside the range a routine supports."""


class ConvergenceError(ModerfError):
    """An iteration (fixed point or root search) exhausted its budget."""


class SingularOdeError(ModerfError):
    """The ODE coefficient 1 + delta*y vanished during integration."""

    def __init__(self, x: float, message: str | None = None):
        self.x = x
        super().__init__(message or f"1 + delta*y reached zero near x = {x:.6g}")


class BracketError(ModerfError):
    """Shooting could not bracket a root of the end-value map."""
