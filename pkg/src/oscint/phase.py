"""Phases and amplitudes on the polarized plane.

A phase is a holomorphic function of the pair (w, wt) that is real on the
anti-diagonal wt = conj(w).  The default representation is a finite
bivariate polynomial (total degree <= d_max); an escape hatch accepts an
arbitrary holomorphic evaluator closure, optionally with derivative
callbacks and jet support.

The quadratic data (lambda, mu, rho) of the critical point at the origin,
the critical manifold wt_c(w) of the second variable, psi(w) = phi(w,
wt_c(w)) and the rotation normalization that keeps the pole away from the
exp(i*pi/4) line all live here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (DegenerateCriticalPoint, DegenerateError,
                     DerivativeUnavailable, NoAdmissibleRotation,
                     NoConvergence, SignatureError)
from .jets import Jet1

__all__ = [
    "PhaseSpec", "AmplitudeSpec", "QuadraticData",
    "taylor_quadratic", "normalize_rotation", "critical_manifold",
    "psi", "stationary_points", "antidiagonal_reality_check",
    "DEFAULT_CONE_HALFWIDTH",
]

DEFAULT_CONE_HALFWIDTH = math.pi / 12.0
D_MAX_DEFAULT = 12


def _poly_eval(coeffs, w, wt):
    """Evaluate sum c_{jk} w^j wt^k for ndarray or Jet1 arguments."""
    if not coeffs:
        return w * 0
    jmax = max(j for j, _ in coeffs)
    kmax = max(k for _, k in coeffs)
    wp = [1.0]
    for _ in range(jmax):
        wp.append(wp[-1] * w)
    wtp = [1.0]
    for _ in range(kmax):
        wtp.append(wtp[-1] * wt)
    out = None
    for (j, k), c in coeffs.items():
        term = c * wp[j] * wtp[k] if (j or k) else c * (w * 0 + 1.0)
        out = term if out is None else out + term
    return out


def _poly_dw(coeffs):
    return {(j - 1, k): j * c for (j, k), c in coeffs.items() if j > 0}


def _poly_dwt(coeffs):
    return {(j, k - 1): k * c for (j, k), c in coeffs.items() if k > 0}


class PhaseSpec:
    """Holomorphic phase on neigh((0,0); C^2), real on the anti-diagonal.

    Parameters
    ----------
    coeffs : dict
        (j, k) -> complex coefficient of w^j wt^k, total degree <= d_max.
    closure : callable, optional
        Holomorphic evaluator phi(w, wt) overriding the polynomial.  When
        given, ``derivs`` may supply callbacks with keys among
        {"dw", "dwt", "dww", "dwwt", "dwtwt"}; ``jet_safe=True`` promises
        the closure also accepts Jet1 arguments.
    """

    def __init__(self, coeffs=None, closure=None, derivs=None, jet_safe=False,
                 d_max=D_MAX_DEFAULT, domain_radius=None, check=True):
        self.coeffs = {tuple(k): complex(v) for k, v in (coeffs or {}).items()}
        self.closure = closure
        self.derivs = dict(derivs or {})
        self.jet_safe = bool(jet_safe)
        self.d_max = int(d_max)
        self.domain_radius = domain_radius
        if check and closure is None:
            self.validate()

    # -- construction -----------------------------------------------------
    @classmethod
    def from_quadratic(cls, lam, mu, rho=0.0, extra=None):
        """Phase with quadratic part (lam/2) xi^2 - (mu/2) eta^2 + rho xi eta."""
        coeffs = {
            (2, 0): (lam + mu) / 8.0 - 0.25j * rho,
            (0, 2): (lam + mu) / 8.0 + 0.25j * rho,
            (1, 1): (lam - mu) / 4.0 + 0j,
        }
        for key, val in (extra or {}).items():
            coeffs[key] = coeffs.get(key, 0j) + complex(val)
        return cls(coeffs)

    def validate(self):
        for (j, k), c in self.coeffs.items():
            if j + k > self.d_max:
                raise ValueError("coefficient (%d,%d) beyond d_max=%d"
                                 % (j, k, self.d_max))
        if abs(self.coeffs.get((0, 0), 0j)) > 1e-14:
            raise ValueError("phase must vanish at the origin")
        if abs(self.coeffs.get((1, 0), 0j)) > 1e-14 or \
           abs(self.coeffs.get((0, 1), 0j)) > 1e-14:
            raise ValueError("phase gradient must vanish at the origin")
        for (j, k), c in self.coeffs.items():
            mirror = self.coeffs.get((k, j), 0j)
            if abs(c - np.conj(mirror)) > 1e-12 * max(1.0, abs(c)):
                raise ValueError(
                    "reality on the anti-diagonal violated at (%d,%d)" % (j, k))

    @property
    def is_polynomial(self):
        return self.closure is None

    # -- evaluation --------------------------------------------------------
    def eval(self, w, wt):
        if self.closure is not None:
            return self.closure(w, wt)
        return _poly_eval(self.coeffs, w, wt)

    def _need(self, key):
        if key not in self._deriv_cache():
            raise DerivativeUnavailable(
                "closure phase lacks the %r derivative callback" % key)
        return self._deriv_cache()[key]

    def _deriv_cache(self):
        if self.closure is not None:
            return self.derivs
        if not hasattr(self, "_dcache"):
            dw = _poly_dw(self.coeffs)
            dwt = _poly_dwt(self.coeffs)
            self._dcache = {
                "dw": lambda w, wt, c=dw: _poly_eval(c, w, wt),
                "dwt": lambda w, wt, c=dwt: _poly_eval(c, w, wt),
                "dww": lambda w, wt, c=_poly_dw(dw): _poly_eval(c, w, wt),
                "dwwt": lambda w, wt, c=_poly_dwt(dw): _poly_eval(c, w, wt),
                "dwtwt": lambda w, wt, c=_poly_dwt(dwt): _poly_eval(c, w, wt),
            }
        return self._dcache

    def d_w(self, w, wt):
        return self._need("dw")(w, wt)

    def d_wt(self, w, wt):
        return self._need("dwt")(w, wt)

    def d2_ww(self, w, wt):
        return self._need("dww")(w, wt)

    def d2_wwt(self, w, wt):
        return self._need("dwwt")(w, wt)

    def d2_wtwt(self, w, wt):
        return self._need("dwtwt")(w, wt)

    def eval_jet(self, w, wt):
        """Evaluate on Jet1 arguments (polynomials and jet-safe closures)."""
        if self.closure is not None:
            if not self.jet_safe:
                raise DerivativeUnavailable("closure phase is not jet-safe")
            return self.closure(w, wt)
        return _poly_eval(self.coeffs, w, wt)

    def rotate(self, alpha):
        """Phase in rotated coordinates w = e^{i alpha} w_check."""
        if self.closure is not None:
            ea, eam = np.exp(1j * alpha), np.exp(-1j * alpha)
            derivs = {}
            if "dw" in self.derivs:
                derivs["dw"] = lambda w, wt: ea * self.derivs["dw"](ea * w, eam * wt)
            if "dwt" in self.derivs:
                derivs["dwt"] = lambda w, wt: eam * self.derivs["dwt"](ea * w, eam * wt)
            return PhaseSpec(closure=lambda w, wt: self.closure(ea * w, eam * wt),
                             derivs=derivs, jet_safe=self.jet_safe,
                             d_max=self.d_max, domain_radius=self.domain_radius,
                             check=False)
        coeffs = {(j, k): c * np.exp(1j * alpha * (j - k))
                  for (j, k), c in self.coeffs.items()}
        return PhaseSpec(coeffs, d_max=self.d_max,
                         domain_radius=self.domain_radius, check=False)


class AmplitudeSpec:
    """Holomorphic classical symbol a(w, wt; h) ~ sum_j a_j(w, wt) h^j.

    ``terms`` maps the h-power j to the coefficient polynomial of a_j,
    itself a dict (p, q) -> complex for w^p wt^q.
    """

    def __init__(self, terms=None, order=None):
        if terms is None:
            terms = {0: {(0, 0): 1.0 + 0j}}
        self.terms = {int(j): {tuple(k): complex(v) for k, v in poly.items()}
                      for j, poly in terms.items()}
        self.order = order if order is not None else max(self.terms)

    @classmethod
    def const(cls, value=1.0):
        return cls({0: {(0, 0): complex(value)}})

    def eval(self, w, wt, h=0.0):
        out = None
        for j, poly in self.terms.items():
            term = _poly_eval(poly, w, wt) * (h ** j)
            out = term if out is None else out + term
        return out

    def a0(self, w, wt):
        """Leading symbol a_0."""
        return _poly_eval(self.terms.get(0, {}), w, wt)

    @property
    def a00(self):
        """a_0(0, 0), available in O(1)."""
        return self.terms.get(0, {}).get((0, 0), 0j)

    def rotate(self, alpha):
        terms = {j: {(p, q): c * np.exp(1j * alpha * (p - q))
                     for (p, q), c in poly.items()}
                 for j, poly in self.terms.items()}
        return AmplitudeSpec(terms, order=self.order)


@dataclass
class QuadraticData:
    """Quadratic invariants of the phase at the origin."""

    lam: float
    mu: float
    rho: float
    f: complex
    det2: float
    alpha: float = 0.0

    def __post_init__(self):
        # branch sanity: (i/f)^(1/2) lies in the open first quadrant
        root = np.sqrt(1j / self.f)
        if not (root.real > 0 and root.imag > 0):
            raise DegenerateError("(i/f)^(1/2) left the first quadrant")


def _quadratic_coeffs(phase: PhaseSpec):
    if phase.is_polynomial:
        c20 = phase.coeffs.get((2, 0), 0j)
        c02 = phase.coeffs.get((0, 2), 0j)
        c11 = phase.coeffs.get((1, 1), 0j)
        return c20, c02, c11
    try:
        z = 0j
        c20 = 0.5 * phase.d2_ww(z, z)
        c02 = 0.5 * phase.d2_wtwt(z, z)
        c11 = phase.d2_wwt(z, z)
        return complex(c20), complex(c02), complex(c11)
    except DerivativeUnavailable:
        raise


def raw_quadratic(phase: PhaseSpec):
    """(lam, mu, rho) read from second derivatives, sign-unchecked."""
    c20, c02, c11 = _quadratic_coeffs(phase)
    lam = float(np.real(2.0 * (c20 + c02) + 2.0 * c11))
    mu = float(np.real(2.0 * (c20 + c02) - 2.0 * c11))
    rho = float(-4.0 * np.imag(c20))
    return lam, mu, rho


def taylor_quadratic(phase: PhaseSpec) -> QuadraticData:
    """Extract (lambda, mu, rho, f, det2); requires lambda, mu > 0."""
    lam, mu, rho = raw_quadratic(phase)
    if lam <= 0 or mu <= 0:
        raise SignatureError(
            "lambda=%.6g, mu=%.6g not both positive; rotate first" % (lam, mu))
    disc = lam * mu + rho * rho
    if disc <= 1e-300:
        raise DegenerateError("lambda*mu + rho^2 vanishes")
    f = disc / (lam + mu + 2j * rho)
    return QuadraticData(lam, mu, rho, f, -disc)


# -- rotation normalization ----------------------------------------------

def _dist_mod_pi(x):
    """Distance of x to 0 modulo pi."""
    r = math.fmod(x, math.pi)
    if r < 0:
        r += math.pi
    return min(r, math.pi - r)


def _positive_sector(lam, mu, rho):
    """Unwrapped interval (g1, g2), width < pi, where the quadratic form
    (lam/2) cos^2 - (mu/2) sin^2 + rho sin cos is positive."""
    a = (lam - mu) / 4.0
    b = (lam + mu) / 4.0
    c = rho / 2.0
    R = math.hypot(b, c)
    if R == 0 or abs(a) >= R:
        raise SignatureError("quadratic form is not of signature (+,-)")
    phi0 = math.atan2(c, b)
    d = math.acos(-a / R)
    g_a = 0.5 * (phi0 - d)
    g_b = 0.5 * (phi0 + d)

    def p(g):
        return a + b * math.cos(2 * g) + c * math.sin(2 * g)

    mid = 0.5 * (g_a + g_b)
    if p(mid) > 0:
        lo, hi = g_a, g_b
    else:
        lo, hi = g_b, g_a + math.pi
    return lo, hi


def admissible_interval(phase: PhaseSpec):
    """The interval J of rotation angles keeping lambda, mu > 0."""
    lam, mu, rho = raw_quadratic(phase)
    g1, g2 = _positive_sector(lam, mu, rho)
    lo = max(g1, g2 - math.pi / 2.0)
    hi = min(g2, g1 + math.pi / 2.0)
    if hi <= lo:
        raise SignatureError("empty admissible rotation interval")
    return lo, hi


def normalize_rotation(phase: PhaseSpec, zeta,
                       cone_halfwidth=DEFAULT_CONE_HALFWIDTH):
    """Rotate so that lambda, mu > 0 and zeta leaves the forbidden cone.

    Returns (rotated_phase, zeta_check, alpha) with
    zeta_check = exp(-i alpha) * zeta.  alpha = 0 whenever the input
    already qualifies.
    """
    zeta = complex(zeta)
    lam, mu, rho = raw_quadratic(phase)
    argz = np.angle(zeta) if zeta != 0 else 0.0
    ok_cone = zeta != 0 and _dist_mod_pi(argz - math.pi / 4) >= cone_halfwidth
    if lam > 0 and mu > 0 and ok_cone:
        return phase, zeta, 0.0

    lo, hi = admissible_interval(phase)
    width = hi - lo
    # excluded rotation angles put arg(zeta_check) inside the cone:
    # alpha in argz - pi/4 + (-w, w)  (mod pi)
    bad = []
    center = argz - math.pi / 4.0
    k0 = math.floor((lo - center) / math.pi) - 1
    for k in range(k0, k0 + 5):
        c = center + k * math.pi
        if c + cone_halfwidth > lo and c - cone_halfwidth < hi:
            bad.append((c - cone_halfwidth, c + cone_halfwidth))
    pieces = [(lo, hi)]
    for b0, b1 in bad:
        nxt = []
        for p0, p1 in pieces:
            if b1 <= p0 or b0 >= p1:
                nxt.append((p0, p1))
                continue
            if b0 > p0:
                nxt.append((p0, b0))
            if b1 < p1:
                nxt.append((b1, p1))
        pieces = nxt
    pieces = [(p0, p1) for p0, p1 in pieces if p1 - p0 > 1e-12]
    if not pieces:
        raise NoAdmissibleRotation(cone_halfwidth, width)

    def gain(piece):
        p0, p1 = piece
        cands = [p0, p1]
        for k in range(-2, 3):
            peak = center + math.pi / 2.0 + k * math.pi
            if p0 < peak < p1:
                cands.append(peak)
        return max(_dist_mod_pi(argz - a - math.pi / 4.0) for a in cands)

    best = max(pieces, key=gain)
    alpha = 0.5 * (best[0] + best[1])
    rotated = phase.rotate(alpha)
    return rotated, zeta * np.exp(-1j * alpha), alpha


# -- critical manifold and psi ---------------------------------------------

def critical_manifold(phase: PhaseSpec, omega, tol=1e-12, max_iter=50):
    """wt_c(omega): Newton solve of d phi/d wt (omega, .) = 0.

    Seeded at the quadratic-model value ((mu-lambda)/(mu+lambda+2i rho)) w.
    """
    q = taylor_quadratic(phase)
    omega = complex(omega)
    wt = (q.mu - q.lam) / (q.mu + q.lam + 2j * q.rho) * omega
    for _ in range(max_iter):
        g = complex(phase.d_wt(omega, wt))
        if abs(g) <= tol:
            return wt
        gp = complex(phase.d2_wtwt(omega, wt))
        if gp == 0:
            break
        wt = wt - g / gp
    g = complex(phase.d_wt(omega, wt))
    if abs(g) <= tol:
        return wt
    raise NoConvergence("critical manifold Newton stalled at |dphi|=%.3g" % abs(g))


def psi(phase: PhaseSpec, omega, tol=1e-12):
    """psi(w) = phi(w, wt_c(w)); equals f w^2/2 + O(w^3)."""
    omega = complex(omega)
    wt = critical_manifold(phase, omega, tol=tol)
    return complex(phase.eval(omega, wt))


# -- real stationary points ------------------------------------------------

def stationary_points(phase: PhaseSpec, search_box, grid_n=13, tol=1e-10,
                      det_tol=1e-10, max_iter=60):
    """All real critical points of phi(xi, eta) inside the box.

    ``search_box`` is (xi_min, xi_max, eta_min, eta_max).  Multi-start
    Newton from a uniform grid; each root is returned as
    (omega, hessian 2x2 ndarray, signature tuple).
    """
    x0, x1, y0, y1 = search_box

    def grad(x, y):
        w = x + 1j * y
        wt = x - 1j * y
        dw = complex(phase.d_w(w, wt))
        dwt = complex(phase.d_wt(w, wt))
        return np.array([np.real(dw + dwt), np.real(1j * (dw - dwt))])

    def hess(x, y):
        w = x + 1j * y
        wt = x - 1j * y
        dww = complex(phase.d2_ww(w, wt))
        dwwt = complex(phase.d2_wwt(w, wt))
        dwtwt = complex(phase.d2_wtwt(w, wt))
        hxx = np.real(dww + 2 * dwwt + dwtwt)
        hxy = np.real(1j * (dww - dwtwt))
        hyy = np.real(-(dww - 2 * dwwt + dwtwt))
        return np.array([[hxx, hxy], [hxy, hyy]])

    roots = []
    for xs in np.linspace(x0, x1, grid_n):
        for ys in np.linspace(y0, y1, grid_n):
            p = np.array([xs, ys])
            for _ in range(max_iter):
                g = grad(*p)
                if np.linalg.norm(g) <= tol:
                    break
                H = hess(*p)
                try:
                    step = np.linalg.solve(H, g)
                except np.linalg.LinAlgError:
                    break
                p = p - step
                if np.linalg.norm(step) > 10 * max(x1 - x0, y1 - y0):
                    break
            else:
                continue
            if np.linalg.norm(grad(*p)) > tol:
                continue
            if not (x0 - 1e-9 <= p[0] <= x1 + 1e-9
                    and y0 - 1e-9 <= p[1] <= y1 + 1e-9):
                continue
            if any(abs(complex(*p) - complex(r[0].real, r[0].imag)) < 1e-7
                   for r in roots):
                continue
            H = hess(*p)
            det = float(np.linalg.det(H))
            if abs(det) < det_tol:
                raise DegenerateCriticalPoint(
                    "critical point at %s has |det H|=%.3g" % (p, abs(det)))
            evals = np.linalg.eigvalsh(H)
            sig = (int(np.sum(evals > 0)), int(np.sum(evals < 0)))
            roots.append((p[0] + 1j * p[1], H, sig))
    return roots


def antidiagonal_reality_check(phase: PhaseSpec, n_samples=256, radius=0.5):
    """max |Im phi(w, conj w)| over a deterministic disk sample."""
    k = np.arange(1, n_samples + 1, dtype=float)
    r = radius * np.sqrt(k / n_samples)
    th = 2.0 * math.pi * k * 0.6180339887498949
    w = r * np.exp(1j * th)
    vals = phase.eval(w, np.conj(w))
    return float(np.max(np.abs(np.imag(vals))))
