"""Exception hierarchy used across the package."""


class OscintError(Exception):
    """Base class for all library errors."""


class SignatureError(OscintError):
    """Quadratic part does not have lambda, mu > 0 in the current frame."""


class DegenerateError(OscintError):
    """Quadratic form is degenerate (lambda*mu + rho^2 = 0)."""


class NoAdmissibleRotation(OscintError):
    """No rotation angle in the admissible interval clears the cone."""

    def __init__(self, cone_halfwidth, interval_width):
        self.cone_halfwidth = cone_halfwidth
        self.interval_width = interval_width
        super().__init__(
            "cone half-width %.6g exceeds admissible interval width %.6g"
            % (cone_halfwidth, interval_width)
        )


class NoConvergence(OscintError):
    """Newton iteration failed to reach the requested residual."""


class DegenerateCriticalPoint(OscintError):
    """A real critical point has (nearly) singular Hessian."""


class ToleranceNotReached(OscintError):
    """Adaptive quadrature exhausted its budget before the tolerance.

    Carries the best estimate so callers may degrade gracefully.
    """

    def __init__(self, best, err_est, message="quadrature tolerance not reached"):
        self.best = best
        self.err_est = err_est
        super().__init__("%s (best=%s, err=%.3g)" % (message, best, err_est))


class OscillationLimit(OscintError):
    """Cell count exceeded max_subdivisions while chasing oscillations."""


class ConeViolation(OscintError):
    """zeta lies inside the forbidden cone around exp(i*pi/4)*R."""


class RegimeViolation(OscintError):
    """Requested formula used outside its regime of validity."""


class BranchAmbiguity(OscintError):
    """Square-root branch for the sector map is ambiguous for this r."""


class OnCriticalLine(OscintError):
    """Branch side undefined: zeta-hat sits on exp(i*pi/4)*R."""


class OverflowRisk(OscintError):
    """Special function requested where it is exponentially large."""


class DerivativeUnavailable(OscintError):
    """Closure-form phase lacks the derivative callbacks an op needs."""


class EvaluationAtOrigin(OscintError):
    """Integrand builder evaluated at its excluded singular point."""


class ParseError(OscintError):
    """Malformed phase/amplitude file."""
