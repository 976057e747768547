"""Truncated Taylor (jet) arithmetic for machine-exact derivatives.

``Jet1`` propagates the value and the first ``order`` derivatives of a
scalar function of one (real or complex) variable; ``Jet2`` does the same
for mixed partials of two real variables up to a fixed total degree, with
ndarray coefficients so whole quadrature grids are differentiated at once.

Coefficients are stored Taylor-style, c[k] = f^(k)(x0) / k!, which makes
composition with analytic functions a finite polynomial in the nilpotent
part.  The supported operations (+, -, *, /, integer powers, sqrt, exp)
cover every phase/cutoff composition used in this package.
"""

from __future__ import annotations

from math import factorial

import numpy as np

__all__ = ["Jet1", "Jet2"]


def _binom_half(m: int) -> float:
    """Binomial coefficient C(1/2, m)."""
    out = 1.0
    for i in range(m):
        out *= (0.5 - i) / (i + 1)
    return out


class Jet1:
    """One-variable jet: c[k] = f^(k)(t0)/k!, complex coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = [complex(v) for v in coeffs]

    @classmethod
    def variable(cls, t0, order):
        c = [complex(t0)] + [0j] * order
        if order >= 1:
            c[1] = 1.0 + 0j
        return cls(c)

    @classmethod
    def const(cls, v, order):
        return cls([complex(v)] + [0j] * order)

    @property
    def order(self):
        return len(self.c) - 1

    @property
    def val(self):
        return self.c[0]

    def dk(self, k):
        """k-th derivative value."""
        return self.c[k] * factorial(k)

    def _coerce(self, other):
        if isinstance(other, Jet1):
            return other
        return Jet1.const(other, self.order)

    def __add__(self, other):
        o = self._coerce(other)
        return Jet1([a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Jet1([-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet1):
            return Jet1([a * other for a in self.c])
        n = self.order
        out = [0j] * (n + 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j in range(0, n + 1 - i):
                out[i + j] += a * other.c[j]
        return Jet1(out)

    __rmul__ = __mul__

    def compose(self, dvals):
        """Sum dvals[m] * (self - val)^m for analytic composition.

        ``dvals[m]`` must equal g^(m)(self.val) / m!.
        """
        n = self.order
        t = Jet1([0j] + self.c[1:])
        out = Jet1.const(dvals[0], n)
        power = Jet1.const(1.0, n)
        for m in range(1, min(len(dvals), n + 1)):
            power = power * t
            out = out + power * dvals[m]
        return out

    def reciprocal(self):
        x0 = self.val
        if x0 == 0:
            raise ZeroDivisionError("jet reciprocal at zero value")
        dv = [(-1.0) ** m / x0 ** (m + 1) for m in range(self.order + 1)]
        return self.compose(dv)

    def __truediv__(self, other):
        if isinstance(other, Jet1):
            return self * other.reciprocal()
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def sqrt(self):
        x0 = self.val
        s0 = np.sqrt(x0)
        dv = [_binom_half(m) * s0 / x0 ** m for m in range(self.order + 1)]
        return self.compose(dv)

    def exp(self):
        e0 = np.exp(self.val)
        dv = [e0 / factorial(m) for m in range(self.order + 1)]
        return self.compose(dv)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("Jet1 powers must be non-negative integers")
        out = Jet1.const(1.0, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def deriv(self):
        """Jet of f', one order lower."""
        return Jet1([(k + 1) * self.c[k + 1] for k in range(self.order)])


class Jet2:
    """Two-variable jet with ndarray coefficients, total degree <= n.

    Coefficients live in a dict keyed by (j, k) with j + k <= n and equal
    d^{j+k} f / (dx^j dy^k) / (j! k!), each an ndarray over the evaluation
    points.
    """

    __slots__ = ("n", "c")

    def __init__(self, n, c):
        self.n = n
        self.c = c

    @classmethod
    def variables(cls, x, y, n):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        zeros = np.zeros_like(x)
        cx = {(0, 0): x.copy(), (1, 0): np.ones_like(x)}
        cy = {(0, 0): y.copy(), (0, 1): np.ones_like(y)}
        for key in [(0, 1), (1, 0)]:
            cx.setdefault(key, zeros.copy())
            cy.setdefault(key, zeros.copy())
        return cls(n, cx), cls(n, cy)

    @classmethod
    def const(cls, v, n, like=None):
        arr = np.asarray(v)
        if like is not None:
            arr = np.broadcast_to(arr, like.shape).copy()
        return cls(n, {(0, 0): arr})

    @property
    def val(self):
        return self.c[(0, 0)]

    def coeff(self, j, k):
        key = (j, k)
        if key in self.c:
            return self.c[key]
        return np.zeros_like(self.val)

    def _coerce(self, other):
        if isinstance(other, Jet2):
            return other
        return Jet2.const(other, self.n, like=self.val)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.c)
        for key, arr in o.c.items():
            if key in out:
                out[key] = out[key] + arr
            else:
                out[key] = arr.copy()
        return Jet2(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(self.n, {k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet2):
            return Jet2(self.n, {k: v * other for k, v in self.c.items()})
        out = {}
        n = self.n
        for (j1, k1), a in self.c.items():
            for (j2, k2), b in other.c.items():
                j, k = j1 + j2, k1 + k2
                if j + k > n:
                    continue
                key = (j, k)
                prod = a * b
                if key in out:
                    out[key] = out[key] + prod
                else:
                    out[key] = prod
        return Jet2(n, out)

    __rmul__ = __mul__

    def compose(self, dvals):
        """Sum dvals[m] * (self - val)^m; dvals[m] = g^(m)(val)/m! arrays."""
        t = Jet2(self.n, {k: v for k, v in self.c.items() if k != (0, 0)})
        out = Jet2.const(dvals[0], self.n, like=self.val)
        power = None
        for m in range(1, min(len(dvals), self.n + 1)):
            power = t if power is None else power * t
            out = out + power * dvals[m]
        return out

    def reciprocal(self):
        x0 = self.val
        dv = [(-1.0) ** m / x0 ** (m + 1) for m in range(self.n + 1)]
        return self.compose(dv)

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return self * other.reciprocal()
        return self * (1.0 / other)

    def sqrt(self):
        x0 = self.val
        s0 = np.sqrt(x0)
        dv = [_binom_half(m) * s0 / x0 ** m for m in range(self.n + 1)]
        return self.compose(dv)

    def exp(self):
        e0 = np.exp(self.val)
        dv = [e0 / factorial(m) for m in range(self.n + 1)]
        return self.compose(dv)
