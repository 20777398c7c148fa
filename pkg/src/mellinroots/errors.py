"""Exception types shared across the package."""


class PoleError(ValueError):
    """A gamma-function argument landed on (or within tolerance of) a pole."""


class GammaOverflowError(OverflowError):
    """A gamma ratio exceeds the representable double range."""


class ConvergenceConditionError(ValueError):
    """Transform parameters or contour abscissas violate a convergence condition."""


class DivergentIntegralError(ValueError):
    """Integral parameters make the integral divergent."""


class QuadratureError(RuntimeError):
    """A quadrature did not converge to the requested tolerance."""


class RootConvergenceError(RuntimeError):
    """Root iteration hit its cap; on the valid domain this signals a bug."""


class ContinuationError(RuntimeError):
    """Branch continuation failed (two root branches collided)."""


class StepTooSmallError(RuntimeError):
    """Finite-difference step is dominated by roundoff."""
