"""oscint: solid Cauchy transforms of rapidly oscillating functions.

Three interoperating evaluation routes for

    I(a chi, phi, zeta; h) = -(1/pi) int a chi e^{i phi/h} / (w - zeta) dA,

brute-force adaptive quadrature, numerical Stokes decomposition on deformed
contours in C^2, and closed-form asymptotic expansions by regime of
eps = |zeta|/sqrt(h), plus the Dawson-type special functions G^{l/r} and a
Davey-Stewartson reflection-coefficient demo.
"""

from .cutoff import CutoffSpec
from .errors import *  # noqa: F401,F403
from .phase import (AmplitudeSpec, PhaseSpec, QuadraticData,
                    antidiagonal_reality_check, critical_manifold,
                    normalize_rotation, psi, stationary_points,
                    taylor_quadratic)
from .quadrature import (QuadratureConfig, QuadratureResult,
                         contour_integral_1d, dbar_residual, solid_cauchy)

__version__ = "0.1.0"
