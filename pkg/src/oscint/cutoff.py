"""Compactly supported cutoff on C^2 with almost-holomorphic extension.

The base cutoff is the radial bump

    chi(w, wt) = prof(s),   s = (|w|^2 + |wt|^2)^(1/2),

equal to 1 for s <= r_in and 0 for s >= r_out, with the C-infinity profile
exp(1 - 1/(1 - z^2)) rescaled between the two radii.  Restricted to the
anti-diagonal this is a bump in sqrt(2)|w|.

Away from the real plane the Stokes machinery needs an ambient smooth
extension whose dbar derivative vanishes to a prescribed order M on the
real (xi, eta) plane.  We use the order-M truncated Taylor extension in
the imaginary directions,

    chi_AH(xi_c, eta_c) = sum_{j+k<=M} d^{j,k}chi(x, y)/(j! k!)
                          (i xi'')^j (i eta'')^k,

with xi_c = x + i xi'', eta_c = y + i eta''.  All partial derivatives come
from two-variable jet arithmetic, so they are machine exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .jets import Jet2

__all__ = ["CutoffSpec"]


@dataclass
class CutoffSpec:
    """Radial bump cutoff with almost-holomorphic extension order M."""

    r_in: float = 0.5
    r_out: float = 1.0
    ah_order: int = 4

    def __post_init__(self):
        if not (0 < self.r_in < self.r_out):
            raise ValueError("need 0 < r_in < r_out")
        if self.ah_order < 0:
            raise ValueError("ah_order must be >= 0")

    # -- scalar profile ----------------------------------------------------
    def profile(self, s):
        """Bump in s = (|w|^2 + |wt|^2)^(1/2): 1 below r_in, 0 above r_out."""
        s = np.asarray(s, dtype=float)
        z = (s - self.r_in) / (self.r_out - self.r_in)
        out = np.zeros_like(z)
        out[z <= 0.0] = 1.0
        mid = (z > 0.0) & (z < 1.0)
        zm = z[mid]
        out[mid] = np.exp(1.0 - 1.0 / (1.0 - zm * zm))
        return out

    def support_radius_plane(self):
        """|w| bound of the support restricted to the anti-diagonal."""
        return self.r_out / math.sqrt(2.0)

    def inner_radius_plane(self):
        return self.r_in / math.sqrt(2.0)

    def eval_plane(self, w):
        """chi on the anti-diagonal, as a function of w alone."""
        w = np.asarray(w, dtype=complex)
        return self.profile(math.sqrt(2.0) * np.abs(w))

    # -- jet derivatives of the base cutoff ---------------------------------
    def _deriv_grids(self, x, y, order):
        """dict (j,k) -> d^{j+k} chi/(dx^j dy^k)/(j! k!) at real points."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        s0 = np.sqrt(2.0 * (x * x + y * y))
        eps = 1e-9 * (self.r_out - self.r_in)
        flat = (s0 <= self.r_in + eps) | (s0 >= self.r_out - eps)
        # clamp dead entries into the open middle band before jet algebra
        xs = np.where(flat, 0.5 * (self.r_in + self.r_out) / math.sqrt(2.0), x)
        ys = np.where(flat, 0.0, y)
        X, Y = Jet2.variables(xs, ys, order)
        u = X * X + Y * Y
        s = (u * 2.0).sqrt()
        z = (s - self.r_in) * (1.0 / (self.r_out - self.r_in))
        wjet = 1.0 - z * z
        e = (1.0 - wjet.reciprocal()).exp()
        out = {}
        ones = np.ones_like(s0)
        inner = s0 <= self.r_in + eps
        for key in [(j, k) for j in range(order + 1) for k in range(order + 1)
                    if j + k <= order]:
            arr = e.coeff(*key).copy()
            arr[flat] = 0.0
            if key == (0, 0):
                arr[inner] = 1.0
            out[key] = arr
        return out

    # -- almost-holomorphic extension ---------------------------------------
    @staticmethod
    def _xieta(w, wt):
        xi = 0.5 * (w + wt)
        eta = (w - wt) / 2j
        return xi, eta

    def eval_ambient(self, w, wt):
        """chi_AH at complex (w, wt); restricts to the base cutoff on
        the anti-diagonal."""
        w = np.asarray(w, dtype=complex)
        wt = np.asarray(wt, dtype=complex)
        xi, eta = self._xieta(w, wt)
        x, y = np.real(xi), np.real(eta)
        px = 1j * np.imag(xi)
        py = 1j * np.imag(eta)
        M = self.ah_order
        D = self._deriv_grids(x, y, M)
        out = np.zeros_like(px)
        pxp = [np.ones_like(px)]
        pyp = [np.ones_like(py)]
        for _ in range(M):
            pxp.append(pxp[-1] * px)
            pyp.append(pyp[-1] * py)
        for (j, k), c in D.items():
            out = out + c * pxp[j] * pyp[k]
        return out

    def dbar_ambient(self, w, wt):
        """(d/d conj(xi_c), d/d conj(eta_c)) of chi_AH; both O(|Im|^M)."""
        w = np.asarray(w, dtype=complex)
        wt = np.asarray(wt, dtype=complex)
        xi, eta = self._xieta(w, wt)
        x, y = np.real(xi), np.real(eta)
        px = 1j * np.imag(xi)
        py = 1j * np.imag(eta)
        M = self.ah_order
        D = self._deriv_grids(x, y, M + 1)
        dxi = np.zeros_like(px)
        deta = np.zeros_like(px)
        pxp = [np.ones_like(px)]
        pyp = [np.ones_like(py)]
        for _ in range(M):
            pxp.append(pxp[-1] * px)
            pyp.append(pyp[-1] * py)
        for j in range(M + 1):
            k = M - j
            dxi = dxi + 0.5 * (j + 1) * D[(j + 1, k)] * pxp[j] * pyp[k]
            deta = deta + 0.5 * (k + 1) * D[(j, k + 1)] * pxp[j] * pyp[k]
        return dxi, deta
