"""Exponential polynomials and the shifted/modulated building blocks.

A :class:`FunctionExpr` is a finite sum of

* exponential-polynomial terms ``P(z) exp(freq z)`` and
* building blocks ``coef * (exp(alpha (z - s)) - 1)**2 / (z - s)**2 * exp(beta z)``.

Both families are closed under translation ``f -> f(. + k)`` and modulation
``f -> exp(beta .) f``, which is all the universal-function constructions
need. Evaluation is done in a scaled form ``value = mantissa * exp(scale)``
so that moduli far outside the double range still have usable logarithms.
"""

from dataclasses import dataclass, field
from functools import cached_property
import json
import math

import numpy as np
from numpy.polynomial import polynomial as npoly

from ._validation import (
    MAX_EXPONENT,
    RangeError,
    as_complex,
    as_complex_array,
    check_int,
    check_positive,
    pair,
)
from .geometry import hull

#: |alpha (z - s)| below which a block is evaluated from its Taylor series
SERIES_RADIUS = 0.5
SERIES_TERMS = 30

# g(w) = ((e^w - 1) / w)^2 = sum_m c_m w^m with c_m = (2^(m+2) - 2) / (m+2)!
_G_COEF = np.array([(2.0 ** (m + 2) - 2.0) / math.factorial(m + 2) for m in range(SERIES_TERMS)])
_DG_COEF = np.array([m * _G_COEF[m] for m in range(1, SERIES_TERMS)])

# evaluation works on (terms x points) slabs of at most this many entries
_CHUNK = 1 << 21


def _horner(x, coefs):
    acc = np.full(x.shape, coefs[-1], dtype=complex)
    for c in coefs[-2::-1]:
        acc = acc * x + c
    return acc


def _block_parts(w, derivative=False):
    """``g(w) = G exp(E)`` and ``g'(w) = dG exp(E)`` for ``g(w) = ((e^w - 1)/w)^2``.

    ``E`` is ``2w`` where ``Re w > 0`` (so that ``G`` stays bounded) and 0 elsewhere.
    """
    w = np.asarray(w, dtype=complex)
    G = np.empty_like(w)
    E = np.zeros_like(w)
    dG = np.empty_like(w) if derivative else None

    small = np.abs(w) < SERIES_RADIUS
    if small.any():
        ws = w[small]
        G[small] = _horner(ws, _G_COEF)
        if derivative:
            dG[small] = _horner(ws, _DG_COEF)

    grow = ~small & (w.real > 0)
    if grow.any():
        wg = w[grow]
        em = np.expm1(-wg)
        G[grow] = em * em / (wg * wg)
        E[grow] = 2.0 * wg
        if derivative:
            dG[grow] = -2.0 * em / (wg * wg) - 2.0 * em * em / (wg * wg * wg)

    rest = ~small & ~grow
    if rest.any():
        wr = w[rest]
        em = np.expm1(wr)
        G[rest] = em * em / (wr * wr)
        if derivative:
            dG[rest] = 2.0 * em * (em + 1.0) / (wr * wr) - 2.0 * em * em / (wr * wr * wr)
    return G, dG, E


def _trim(coefs):
    coefs = [complex(c) for c in coefs]
    while len(coefs) > 1 and coefs[-1] == 0:
        coefs.pop()
    return tuple(coefs) if coefs else (0j,)


@dataclass(frozen=True)
class ExpPolyTerm:
    """``P(z) exp(freq z)`` with ``poly`` the ascending coefficients of ``P``."""

    poly: tuple
    freq: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "poly", _trim(as_complex(c, "coefficient") for c in self.poly))
        object.__setattr__(self, "freq", as_complex(self.freq, "freq"))

    @property
    def is_zero(self):
        return all(c == 0 for c in self.poly)

    @property
    def degree(self):
        return len(self.poly) - 1


@dataclass(frozen=True)
class ExpPolyFunction:
    """Sum of :class:`ExpPolyTerm` with pairwise distinct frequencies."""

    terms: tuple = ()

    def __post_init__(self):
        merged = {}
        for t in self.terms:
            if not isinstance(t, ExpPolyTerm):
                t = ExpPolyTerm(*t)
            if t.freq in merged:
                a, b = merged[t.freq].poly, t.poly
                n = max(len(a), len(b))
                a = a + (0j,) * (n - len(a))
                b = b + (0j,) * (n - len(b))
                t = ExpPolyTerm(tuple(x + y for x, y in zip(a, b)), t.freq)
            merged[t.freq] = t
        object.__setattr__(self, "terms", tuple(t for t in merged.values() if not t.is_zero))

    def derivative(self):
        out = []
        for t in self.terms:
            p = np.array(t.poly, dtype=complex)
            dp = npoly.polyder(p) if len(p) > 1 else np.zeros(1, dtype=complex)
            q = t.freq * p
            q[: len(dp)] += dp
            out.append(ExpPolyTerm(tuple(q), t.freq))
        return ExpPolyFunction(tuple(out))


@dataclass(frozen=True)
class BuildingBlock:
    """``(exp(alpha (z - shift)) - 1)**2 / (z - shift)**2 * exp(modulation z)``."""

    alpha: complex
    shift: float = 0.0
    modulation: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_complex(self.alpha, "alpha"))
        object.__setattr__(self, "modulation", as_complex(self.modulation, "modulation"))
        shift = float(self.shift)
        if not math.isfinite(shift):
            raise ValueError("shift must be finite")
        object.__setattr__(self, "shift", shift)

    @property
    def frequencies(self):
        """Frequencies of the numerator ``e^{beta z}(e^{2 alpha (z-s)} - 2 e^{alpha (z-s)} + 1)``."""
        b, a = self.modulation, self.alpha
        return (b, b + a, b + 2 * a)

    def numerator(self, coef=1.0):
        """The entire numerator ``coef * e^{beta z}(e^{alpha(z-s)} - 1)^2`` as an exponential sum."""
        a, s, b = self.alpha, self.shift, self.modulation
        return ExpPolyFunction((
            ExpPolyTerm((coef * np.exp(-2 * a * s),), b + 2 * a),
            ExpPolyTerm((-2 * coef * np.exp(-a * s),), b + a),
            ExpPolyTerm((coef,), b),
        ))


@dataclass(frozen=True)
class FunctionExpr:
    """Finite sum of weighted building blocks plus an exponential polynomial."""

    blocks: tuple = ()
    exppoly: ExpPolyFunction = field(default_factory=ExpPolyFunction)

    def __post_init__(self):
        merged = {}
        for coef, blk in self.blocks:
            coef = as_complex(coef, "coef")
            if not isinstance(blk, BuildingBlock):
                raise TypeError("blocks must be (coefficient, BuildingBlock) pairs")
            merged[blk] = merged.get(blk, 0j) + coef
        object.__setattr__(
            self, "blocks", tuple((c, b) for b, c in merged.items() if c != 0 and b.alpha != 0)
        )
        if not isinstance(self.exppoly, ExpPolyFunction):
            object.__setattr__(self, "exppoly", ExpPolyFunction(tuple(self.exppoly)))

    # -- algebra ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, FunctionExpr):
            return NotImplemented
        return FunctionExpr(
            self.blocks + other.blocks,
            ExpPolyFunction(self.exppoly.terms + other.exppoly.terms),
        )

    def __mul__(self, c):
        c = as_complex(c, "scalar")
        return FunctionExpr(
            tuple((c * a, b) for a, b in self.blocks),
            ExpPolyFunction(tuple(ExpPolyTerm(tuple(c * p for p in t.poly), t.freq)
                                  for t in self.exppoly.terms)),
        )

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + (-1.0) * other

    def __call__(self, z):
        return evaluate(self, z)

    @property
    def is_zero(self):
        return not self.blocks and not self.exppoly.terms

    @property
    def n_terms(self):
        return len(self.blocks) + len(self.exppoly.terms)

    # -- vectorised evaluation -------------------------------------------

    @cached_property
    def _arrays(self):
        if self.blocks:
            coef = np.array([c for c, _ in self.blocks], dtype=complex)
            alpha = np.array([b.alpha for _, b in self.blocks], dtype=complex)
            shift = np.array([b.shift for _, b in self.blocks], dtype=float)
            beta = np.array([b.modulation for _, b in self.blocks], dtype=complex)
            return coef * alpha * alpha, alpha, shift, beta
        return None

    def _scaled_terms(self, z, derivative=False):
        """Per-term ``(mantissa, d_mantissa, exponent)`` lists over a 1-D ``z``."""
        parts = []
        arrs = self._arrays
        if arrs is not None:
            amp, alpha, shift, beta = arrs
            u = z[None, :] - shift[:, None]
            w = alpha[:, None] * u
            G, dG, E = _block_parts(w, derivative)
            X = beta[:, None] * z[None, :] + E
            m = amp[:, None] * G
            dm = amp[:, None] * (alpha[:, None] * dG + beta[:, None] * G) if derivative else None
            parts.append((m, dm, X))
        for t in self.exppoly.terms:
            p = np.array(t.poly, dtype=complex)
            m = npoly.polyval(z, p)[None, :]
            dm = None
            if derivative:
                dp = npoly.polyder(p) if len(p) > 1 else np.zeros(1, dtype=complex)
                dm = (npoly.polyval(z, dp) + t.freq * m[0])[None, :]
            parts.append((m, dm, (t.freq * z)[None, :]))
        return parts

    def scaled(self, z, derivative=False):
        """Return ``(mantissa, scale)`` (and the derivative mantissa) with ``f(z) = mantissa * exp(scale)``.

        ``scale`` is real and equals the largest term exponent at each point,
        so the mantissa never overflows.
        """
        z = as_complex_array(z)
        shape = z.shape
        z = z.ravel()
        mant = np.zeros(z.shape, dtype=complex)
        dmant = np.zeros(z.shape, dtype=complex) if derivative else None
        scale = np.zeros(z.shape, dtype=float)
        if self.is_zero or z.size == 0:
            out = (mant.reshape(shape), scale.reshape(shape))
            return out + ((dmant.reshape(shape),) if derivative else ())
        step = max(1, _CHUNK // max(1, self.n_terms))
        for lo in range(0, z.size, step):
            zc = z[lo:lo + step]
            parts = self._scaled_terms(zc, derivative)
            S = np.max(np.concatenate([X.real for _, _, X in parts], axis=0), axis=0)
            acc = np.zeros(zc.shape, dtype=complex)
            dacc = np.zeros(zc.shape, dtype=complex)
            for m, dm, X in parts:
                ex = np.exp(X - S[None, :])
                acc += np.sum(m * ex, axis=0)
                if derivative:
                    dacc += np.sum(dm * ex, axis=0)
            mant[lo:lo + step] = acc
            scale[lo:lo + step] = S
            if derivative:
                dmant[lo:lo + step] = dacc
        out = (mant.reshape(shape), scale.reshape(shape))
        return out + ((dmant.reshape(shape),) if derivative else ())

    # -- serialisation -----------------------------------------------------

    def to_json(self):
        return {
            "blocks": [
                {"coef": pair(c), "alpha": pair(b.alpha), "shift": b.shift, "beta": pair(b.modulation)}
                for c, b in self.blocks
            ],
            "exppoly": [
                {"poly": [pair(p) for p in t.poly], "freq": pair(t.freq)} for t in self.exppoly.terms
            ],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        unknown = set(data) - {"blocks", "exppoly"}
        if unknown:
            raise ValueError(f"unknown function keys: {sorted(unknown)}")
        blocks = []
        for j, b in enumerate(data.get("blocks", [])):
            try:
                blocks.append((
                    as_complex(b.get("coef", [1.0, 0.0]), "coef"),
                    BuildingBlock(
                        as_complex(b["alpha"], "alpha"),
                        float(b.get("shift", 0.0)),
                        as_complex(b.get("beta", [0.0, 0.0]), "beta"),
                    ),
                ))
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"blocks[{j}]: {exc}") from exc
        terms = []
        for j, t in enumerate(data.get("exppoly", [])):
            try:
                terms.append(ExpPolyTerm(
                    tuple(as_complex(p, "poly") for p in t["poly"]),
                    as_complex(t.get("freq", [0.0, 0.0]), "freq"),
                ))
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"exppoly[{j}]: {exc}") from exc
        return cls(tuple(blocks), ExpPolyFunction(tuple(terms)))


# -- constructors -----------------------------------------------------------

def exp_term(freq, coef=1.0):
    """``coef * e_freq``."""
    return FunctionExpr((), ExpPolyFunction((ExpPolyTerm((coef,), freq),)))


def poly_expr(coefs, freq=0.0):
    """``P(z) e_freq`` with ascending coefficients."""
    return FunctionExpr((), ExpPolyFunction((ExpPolyTerm(tuple(coefs), freq),)))


def block(alpha, coef=1.0, shift=0.0, beta=0.0):
    """``coef * f_alpha(z - shift) * e^{beta z}`` with ``f_alpha(z) = (e^{alpha z} - 1)^2 / z^2``."""
    return FunctionExpr(((coef, BuildingBlock(alpha, shift, beta)),))


def sine_expr(scale=math.pi):
    """``sin(scale z) = (e^{i scale z} - e^{-i scale z}) / (2i)``."""
    return exp_term(1j * scale, 1 / 2j) + exp_term(-1j * scale, -1 / 2j)


ZERO = FunctionExpr()


# -- operations ---------------------------------------------------------------

def evaluate(f, z):
    """Value of ``f`` at ``z`` (scalar or array).

    Raises :class:`RangeError` where the result does not fit in a double.
    """
    mant, scale = f.scaled(z)
    if np.any((scale > MAX_EXPONENT) & (mant != 0)):
        bad = np.asarray(z, dtype=complex).ravel()[np.argmax(np.ravel(scale))]
        raise RangeError(f"exponent {np.max(scale):.6g} out of range at z={bad}")
    with np.errstate(over="ignore"):
        val = mant * np.exp(scale)
    return complex(val) if np.ndim(val) == 0 else val


def evaluate_derivative(f, z):
    mant, scale, dmant = f.scaled(z, derivative=True)
    if np.any((scale > MAX_EXPONENT) & (dmant != 0)):
        raise RangeError("derivative out of range")
    val = dmant * np.exp(scale)
    return complex(val) if np.ndim(val) == 0 else val


def log_abs(f, z):
    """``log|f(z)|`` without overflow; ``-inf`` at zeros or underflow."""
    mant, scale = f.scaled(z)
    with np.errstate(divide="ignore"):
        out = np.log(np.abs(mant)) + scale
    return float(out) if np.ndim(out) == 0 else out


def log_derivative(f, z):
    """``f'(z) / f(z)`` from the closed-form derivative."""
    mant, _, dmant = f.scaled(z, derivative=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = dmant / mant
    return complex(out) if np.ndim(out) == 0 else out


def _shift_poly(coefs, k):
    """Coefficients of ``P(z + k)`` (binomial re-expansion)."""
    p = list(coefs)
    n = len(p)
    out = [0j] * n
    for i, c in enumerate(p):
        if c == 0:
            continue
        for j in range(i + 1):
            out[j] += c * math.comb(i, j) * k ** (i - j)
    return out


def translate(f, k):
    """``f(. + k)`` in closed form."""
    k = float(k)
    if k == 0:
        return f
    terms = []
    for t in f.exppoly.terms:
        e = t.freq * k
        if e.real > MAX_EXPONENT:
            raise RangeError(f"translation multiplier exp({e}) out of range")
        terms.append(ExpPolyTerm(tuple(np.exp(e) * c for c in _shift_poly(t.poly, k)), t.freq))
    blocks = []
    for c, b in f.blocks:
        e = b.modulation * k
        if e.real > MAX_EXPONENT:
            raise RangeError(f"translation multiplier exp({e}) out of range")
        blocks.append((c * np.exp(e), BuildingBlock(b.alpha, b.shift - k, b.modulation)))
    return FunctionExpr(tuple(blocks), ExpPolyFunction(tuple(terms)))


def modulate(f, beta):
    """``e^{beta z} f(z)``; the diagram moves by ``beta``."""
    beta = as_complex(beta, "beta")
    if beta == 0:
        return f
    terms = tuple(ExpPolyTerm(t.poly, t.freq + beta) for t in f.exppoly.terms)
    blocks = tuple((c, BuildingBlock(b.alpha, b.shift, b.modulation + beta)) for c, b in f.blocks)
    return FunctionExpr(blocks, ExpPolyFunction(terms))


def frequencies(f):
    """All frequencies occurring in ``f`` (block numerators expanded)."""
    out = [t.freq for t in f.exppoly.terms]
    for _, b in f.blocks:
        out.extend(b.frequencies)
    return out


def frequency_hull(f):
    """Conjugate indicator diagram of ``f``: the hull of its frequencies."""
    freqs = frequencies(f)
    if not freqs:
        raise ValueError("the zero function has no conjugate indicator diagram")
    return hull(freqs)


def exact_type(f):
    """Exponential type read off the diagram: ``max |u|`` over its vertices."""
    return 0.0 if f.is_zero else frequency_hull(f).radius


def _exp_series(freq, count):
    out = np.empty(count, dtype=complex)
    out[0] = 1.0
    for n in range(1, count):
        out[n] = out[n - 1] * freq / n
    return out


def _block_taylor_mp(c, b, count):
    import mpmath

    s = b.shift
    digits = 30 + int(count * max(0.0, -math.log10(abs(s)))) + 2 * count // 3
    with mpmath.workdps(digits):
        a = mpmath.mpc(b.alpha.real, b.alpha.imag)
        beta = mpmath.mpc(b.modulation.real, b.modulation.imag)
        s = mpmath.mpf(s)
        w2, w1 = mpmath.exp(-2 * a * s), -2 * mpmath.exp(-a * s)
        num = []
        p2 = p1 = p0 = mpmath.mpf(1)
        fact = mpmath.mpf(1)
        for n in range(count):
            if n:
                fact *= n
                p2 *= beta + 2 * a
                p1 *= beta + a
                p0 *= beta
            num.append((w2 * p2 + w1 * p1 + p0) / fact)
        out = []
        for n in range(count):
            acc = mpmath.mpf(0)
            for j in range(n + 1):
                acc += num[j] * (n - j + 1) / s ** (n - j + 2)
            out.append(complex(acc) * c)
    return np.array(out, dtype=complex)


def taylor_coefficients(f, count):
    """First ``count`` Taylor coefficients ``f^(n)(0) / n!``.

    Unshifted blocks use the closed-form series of ``((e^w - 1)/w)^2``;
    shifted blocks go through the product ``numerator * (z - s)^-2`` in
    extended precision.
    """
    count = check_int(count, "count")
    out = np.zeros(count, dtype=complex)
    for t in f.exppoly.terms:
        e = _exp_series(t.freq, count)
        for j, p in enumerate(t.poly[:count]):
            out[j:] += p * e[: count - j]
    for c, b in f.blocks:
        if b.shift == 0.0:
            m = np.arange(count)
            gm = np.array([(2.0 ** (k + 2) - 2.0) / math.factorial(k + 2) for k in m])
            series = c * b.alpha ** 2 * gm * b.alpha ** m
            if b.modulation != 0:
                series = np.convolve(series, _exp_series(b.modulation, count))[:count]
            out += series
        else:
            out += _block_taylor_mp(c, b, count)
    return out


def max_modulus(f, r, samples=2048):
    """``max_{|z| = r} |f(z)|``; see :func:`log_max_modulus`."""
    val = log_max_modulus(f, r, samples)
    if val > MAX_EXPONENT:
        raise RangeError(f"maximum modulus exp({val:.6g}) out of range")
    return math.exp(val)


def _golden_max(func, a, b, tol=1e-10, maxiter=200):
    invphi = (math.sqrt(5) - 1) / 2
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = func(c), func(d)
    for _ in range(maxiter):
        if abs(b - a) < tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = func(d)
    x = (a + b) / 2
    return x, func(x)


def log_max_modulus(f, r, samples=2048):
    """``log M_f(r)``: equispaced samples on the circle, then golden-section refinement around the best one."""
    r = check_positive(r, "r")
    samples = check_int(samples, "samples", minimum=8)
    theta = np.linspace(-np.pi, np.pi, samples, endpoint=False)
    vals = log_abs(f, r * np.exp(1j * theta))
    j = int(np.argmax(vals))
    best = float(vals[j])
    if not np.isfinite(best):
        return best
    h = 2 * np.pi / samples
    _, refined = _golden_max(lambda t: float(log_abs(f, r * np.exp(1j * t))),
                             theta[j] - h, theta[j] + h)
    return max(best, refined)


@dataclass(frozen=True)
class IndicatorSample:
    """Estimated growth rate ``value`` along the ray of angle ``theta``."""

    theta: float
    value: float
    stable: bool = True
    spread: float = 0.0


def _slope(r, L):
    r = np.asarray(r, dtype=float)
    L = np.asarray(L, dtype=float)
    ok = np.isfinite(L)
    if ok.sum() < 2:
        return -math.inf if not ok.any() else 0.0
    return float(np.polyfit(r[ok], L[ok], 1)[0])


def _envelope_windows(r_min, r_max, windows, logf, per_unit=4, min_points=64):
    """Upper envelope of ``logf`` over geometric windows: (argmax radius, max) per window."""
    edges = r_min * (r_max / r_min) ** (np.arange(windows + 1) / windows)
    rs, Ls = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        n = max(min_points, int(math.ceil(per_unit * (hi - lo))))
        grid = np.linspace(lo, hi, n)
        vals = logf(grid)
        j = int(np.argmax(vals))
        rs.append(grid[j])
        Ls.append(vals[j])
    return np.array(rs), np.array(Ls)


def indicator_estimate(f, theta, r_min=1.0, r_max=200.0, windows=32, stable_tol=0.05):
    """Estimate ``h_f(theta) = limsup log|f(r e^{i theta})| / r``.

    ``[r_min, r_max]`` is cut into geometric windows and the maximum of
    ``log|f|`` is taken in each one (the maximum steps over zeros). The
    growth rate is the least-squares slope of these window maxima over the
    last quarter of the windows, which removes the ``log r`` contribution of
    polynomial factors. The sample is flagged unstable when the slope over
    the last eighth differs from it by more than ``stable_tol``.
    """
    r_min = check_positive(r_min, "r_min")
    r_max = check_positive(r_max, "r_max")
    if r_min >= r_max:
        raise ValueError("need r_min < r_max")
    windows = check_int(windows, "windows", minimum=4)
    direction = np.exp(1j * float(theta))
    rs, Ls = _envelope_windows(r_min, r_max, windows, lambda r: log_abs(f, r * direction))
    if not np.any(np.isfinite(Ls)):
        return IndicatorSample(float(theta), -math.inf, True, 0.0)
    q = max(2, windows // 4)
    e = max(2, windows // 8)
    value = _slope(rs[-q:], Ls[-q:])
    late = _slope(rs[-e:], Ls[-e:])
    spread = abs(value - late) if math.isfinite(value) and math.isfinite(late) else math.inf
    return IndicatorSample(float(theta), value, spread <= stable_tol, spread)


def type_estimate(f, r_max, windows=24, per_window=6, samples=256):
    """Exponential type: slope of the windowed upper envelope of ``log M_f(r)``."""
    r_max = check_positive(r_max, "r_max")
    if r_max < 10:
        raise ValueError("type_estimate needs r_max >= 10")
    if f.is_zero:
        return 0.0
    edges = (r_max) ** (np.arange(windows + 1) / windows)
    rs, Ls = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        grid = np.linspace(lo, hi, per_window)
        vals = [log_max_modulus(f, r, samples) for r in grid]
        j = int(np.argmax(vals))
        rs.append(grid[j])
        Ls.append(vals[j])
    q = max(2, windows // 4)
    return max(0.0, _slope(rs[-q:], Ls[-q:]))


__all__ = [
    "BuildingBlock",
    "ExpPolyFunction",
    "ExpPolyTerm",
    "FunctionExpr",
    "IndicatorSample",
    "RangeError",
    "ZERO",
    "block",
    "evaluate",
    "evaluate_derivative",
    "exact_type",
    "exp_term",
    "frequencies",
    "frequency_hull",
    "indicator_estimate",
    "log_abs",
    "log_derivative",
    "log_max_modulus",
    "max_modulus",
    "modulate",
    "poly_expr",
    "sine_expr",
    "taylor_coefficients",
    "translate",
    "type_estimate",
]
