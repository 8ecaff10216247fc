"""Borel transform ``Bf(z) = sum f^(n)(0) / z^(n+1)`` and its transposed form.

For exponential polynomials the transform is rational:
``z^k e^{alpha z} -> k! / (z - alpha)^(k+1)``. Blocks are handled through
their Taylor coefficients; for unshifted blocks a closed form with
logarithmic branch points is available as well.
"""

from dataclasses import dataclass
import json
import math
import warnings

import numpy as np

from ._validation import as_complex, check_int, pair
from .expfun import ExpPolyFunction, FunctionExpr, exact_type, taylor_coefficients
from .geometry import hull


class DivergenceWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class Pole:
    """``sum_j coefs[j-1] / (z - at)^j`` for ``j = 1..order``."""

    at: complex
    coefs: tuple

    @property
    def order(self):
        return len(self.coefs)


@dataclass(frozen=True)
class RationalExpr:
    poles: tuple = ()

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for p in self.poles:
            d = z - p.at
            for j, c in enumerate(p.coefs, start=1):
                out += c / d ** j
        return complex(out) if out.ndim == 0 else out

    def residue(self, at):
        for p in self.poles:
            if p.at == at:
                return p.coefs[0]
        return 0j

    def to_json(self):
        return {"poles": [{"at": pair(p.at), "order": p.order, "coefs": [pair(c) for c in p.coefs]}
                          for p in self.poles]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        poles = []
        for p in data["poles"]:
            coefs = tuple(as_complex(c) for c in p["coefs"])
            if "order" in p and p["order"] != len(coefs):
                raise ValueError("pole order does not match the number of coefficients")
            poles.append(Pole(as_complex(p["at"]), coefs))
        return cls(tuple(poles))


def _as_exppoly(f):
    if isinstance(f, ExpPolyFunction):
        return f
    if isinstance(f, FunctionExpr):
        if f.blocks:
            raise TypeError("closed-form Borel transform needs an exponential polynomial; "
                            "expand blocks with numerator() or use borel_series")
        return f.exppoly
    raise TypeError(f"expected an exponential polynomial, got {type(f).__name__}")


def borel_closed_form(f):
    """Rational Borel transform of an exponential polynomial."""
    f = _as_exppoly(f)
    poles = []
    for t in f.terms:
        # z^k e^{alpha z} -> k! / (z - alpha)^(k+1)
        # so the coefficient of z^k lands on the (k+1)-th power of 1/(z - alpha)
        coefs = tuple(complex(c) * math.factorial(k) for k, c in enumerate(t.poly))
        poles.append(Pole(t.freq, coefs))
    return RationalExpr(tuple(poles))


def singular_hull(b):
    if not b.poles:
        raise ValueError("no poles")
    return hull([p.at for p in b.poles])


def borel_series(f, z, terms=60):
    """Truncated ``sum_{n<terms} f^(n)(0) / z^(n+1)``.

    Returns ``(value, last_term_magnitude)``. Warns with
    :class:`DivergenceWarning` when ``|z|`` does not exceed the exponential type.
    """
    terms = check_int(terms, "terms")
    z = as_complex(z, "z")
    tau = exact_type(f)
    if abs(z) <= tau:
        warnings.warn(f"|z| = {abs(z):.6g} <= type {tau:.6g}: the Borel series diverges",
                      DivergenceWarning, stacklevel=2)
    d = _derivatives_at_zero(f, terms)
    powers = (1.0 / z) ** np.arange(1, terms + 1)
    series = d * powers
    return complex(np.sum(series)), float(abs(series[-1]))


def _derivatives_at_zero(f, count):
    a = taylor_coefficients(f, count)
    fact = np.array([math.factorial(n) for n in range(count)], dtype=float)
    return a * fact


def transposed_borel(f, z, terms=60):
    """Truncated ``sum_{n<terms} f^(n)(0) z^n`` (equal to ``Bf(1/z) / z``)."""
    terms = check_int(terms, "terms")
    z = as_complex(z, "z")
    tau = exact_type(f)
    if tau * abs(z) >= 1:
        warnings.warn(f"|z| = {abs(z):.6g} >= 1/type: the transposed series diverges",
                      DivergenceWarning, stacklevel=2)
    d = _derivatives_at_zero(f, terms)
    series = d * z ** np.arange(terms)
    return complex(np.sum(series)), float(abs(series[-1]))


def _phi(x):
    """``sum_{m>=2} x^m / (m (m-1)) = (1 - x) log(1 - x) + x``."""
    x = np.asarray(x, dtype=complex)
    small = np.abs(x) < 1e-3
    out = np.empty_like(x)
    xs = x[small]
    out[small] = xs ** 2 / 2 + xs ** 3 / 6 + xs ** 4 / 12 + xs ** 5 / 20
    xb = x[~small]
    out[~small] = (1 - xb) * np.log1p(-xb) + xb
    return out


def block_borel(f, zeta):
    """Closed form of the Borel transform for unshifted blocks.

    With ``g = e^{beta z}(e^{alpha z} - 1)^2 = sum_u c_u e^{(u - beta) z} e^{beta z}``,
    ``B[g / z^2](zeta) = sum_u c_u zeta' phi(v_u / zeta')`` where ``zeta' = zeta - beta``,
    ``v_u = u - beta``; branch points sit at the frequencies. Valid for
    ``|zeta - beta| > 2|alpha|`` (principal logarithm).
    """
    zeta = np.asarray(zeta, dtype=complex)
    out = np.zeros(zeta.shape, dtype=complex)
    for c, b in f.blocks:
        if b.shift != 0.0:
            raise ValueError("closed form only for unshifted blocks")
        zp = zeta - b.modulation
        for w, v in ((1.0, 2 * b.alpha), (-2.0, b.alpha)):
            out += c * w * zp * _phi(v / zp)
    if f.exppoly.terms:
        out += borel_closed_form(f.exppoly)(zeta)
    return complex(out) if out.ndim == 0 else out


def residue_by_quadrature(b, at, radius=0.1, nodes=256):
    """``(1 / 2 pi i) \\oint b`` over a circle around ``at`` (trapezoid rule)."""
    t = 2 * np.pi * np.arange(nodes) / nodes
    z = at + radius * np.exp(1j * t)
    dz = 1j * radius * np.exp(1j * t)
    return complex(np.mean(b(z) * dz) / 1j)


__all__ = [
    "DivergenceWarning",
    "Pole",
    "RationalExpr",
    "block_borel",
    "borel_closed_form",
    "borel_series",
    "residue_by_quadrature",
    "singular_hull",
    "transposed_borel",
]
