"""Weighted sup-norms of ``Exp(K)``, membership, and the convergence checks.

``||f||_{K,n} = sup_z |f(z)| exp(-H_K(z) - |z|/n)``. The supremum over the
plane is estimated on a polar grid (plus the real axis) with local
refinement, and the region beyond the grid is covered by an explicit
per-term exponential tail bound.
"""

from dataclasses import dataclass, field
import csv
import io
import json
import math


import numpy as np
from scipy.optimize import minimize

from ._validation import as_complex, check_int, check_positive
from .expfun import FunctionExpr, frequency_hull, log_abs, translate
from .geometry import ConvexCompact, contains, support_function

#: number of directions used for the tail certificate
TAIL_DIRECTIONS = 720
CERTIFY_BELOW = 1e-12


class UnboundedNormError(ArithmeticError):
    """The weighted norm is infinite: some term outgrows the weight along a direction."""

    def __init__(self, message, theta=None):
        super().__init__(message)
        self.theta = theta


class ConditioningError(np.linalg.LinAlgError):
    """The least-squares system is numerically rank deficient."""


@dataclass(frozen=True)
class ExpKNorm:
    K: ConvexCompact
    n: int = 1

    def __post_init__(self):
        check_int(self.n, "n")


@dataclass(frozen=True)
class SamplingGrid:
    """Polar sampling of ``|z| <= r_max``: geometric radii times equispaced angles, plus the real axis."""

    radii: int = 48
    angles: int = 96
    r_min: float = 1e-2
    real_axis_step: float = 0.25
    refine: int = 2

    def points(self, r_max):
        r = np.geomspace(self.r_min, r_max, self.radii)
        t = np.linspace(-np.pi, np.pi, self.angles, endpoint=False)
        polar = (r[:, None] * np.exp(1j * t)[None, :]).ravel()
        m = max(2001, int(2 * r_max / self.real_axis_step) + 1)
        real = np.linspace(-r_max, r_max, m).astype(complex)
        return np.concatenate([[0j], polar, real])

    @classmethod
    def from_json(cls, data):
        return cls(**data)


DEFAULT_GRID = SamplingGrid()


@dataclass(frozen=True)
class NormEstimate:
    value: float
    certified: bool
    tail_bound: float
    unbounded: bool = False
    witness_theta: float = None
    argmax: complex = None


def log_weighted(f, z, norm):
    """``log(|f(z)| exp(-H_K(z) - |z|/n))``."""
    z = np.asarray(z, dtype=complex)
    return log_abs(f, z) - support_function(norm.K, z) - np.abs(z) / norm.n


def _envelope_terms(f):
    """Pieces ``C |z|^d exp(Re(u z))`` dominating ``|f|`` for ``|z| >= r_valid``.

    Returned as ``(u, d, log C, r_valid)``.
    """
    out = []
    for t in f.exppoly.terms:
        c = sum(abs(p) for p in t.poly)
        out.append((t.freq, t.degree, math.log(c), 1.0))
    for coef, b in f.blocks:
        a, s, beta = b.alpha, b.shift, b.modulation
        r_valid = max(1.0, 2.0 * abs(s))
        # |z - s| >= |z| / 2 there, so the block is at most
        # 4|coef| |z|^-2 (|e^{-2as}| e^{Re((beta+2a)z)} + 2|e^{-as}| e^{Re((beta+a)z)} + e^{Re(beta z)})
        lc = math.log(4 * abs(coef))
        out.append((beta + 2 * a, -2, lc + (-2 * a * s).real, r_valid))
        out.append((beta + a, -2, lc + math.log(2) + (-a * s).real, r_valid))
        out.append((beta, -2, lc, r_valid))
    return out


def _tail(f, norm, r_max):
    """Return ``(unbounded, witness_theta, tail_bound)``."""
    theta = np.linspace(-np.pi, np.pi, TAIL_DIRECTIONS, endpoint=False)
    dirs = np.exp(1j * theta)
    HK = support_function(norm.K, dirs)
    kr = norm.K.radius
    half_step = np.pi / TAIL_DIRECTIONS
    total = 0.0
    for u, d, logc, r_valid in _envelope_terms(f):
        gap = HK + 1.0 / norm.n - np.real(u * dirs)
        j = int(np.argmin(gap))
        if gap[j] < -1e-12 or (gap[j] <= 1e-12 and d > 0):
            return True, float(theta[j]), math.inf
        # gap is Lipschitz in theta with constant |u| + radius(K)
        dist = gap[j] - (abs(u) + kr) * half_step
        if dist <= 0 or r_max < r_valid or r_max < d / dist:
            total = math.inf
            continue
        total += math.exp(logc + d * math.log(r_max) - dist * r_max)
    return False, None, total


def norm_estimate(f, norm, r_max=50.0, grid=DEFAULT_GRID):
    """Estimate ``||f||_{K,n}`` on ``|z| <= r_max`` and certify the rest.

    The grid supremum is refined by Nelder-Mead from the best grid points.
    ``certified`` is true when the analytic tail bound beyond ``r_max`` is
    below ``1e-12``. If some term outgrows the weight along a direction the
    estimate is returned with ``unbounded=True`` and the offending angle.
    """
    r_max = check_positive(r_max, "r_max")
    if r_max < 10:
        raise ValueError("norm_estimate needs r_max >= 10")
    if f.is_zero:
        return NormEstimate(0.0, True, 0.0)
    unbounded, witness, tail = _tail(f, norm, r_max)
    if unbounded:
        return NormEstimate(math.inf, False, math.inf, True, witness)

    z = grid.points(r_max)
    L = log_weighted(f, z, norm)
    best = float(np.max(L))
    arg = complex(z[int(np.argmax(L))])
    if grid.refine:
        order = np.argsort(L)[::-1]
        starts = []
        for j in order:
            if len(starts) >= grid.refine:
                break
            if all(abs(z[j] - s) > 1e-6 for s in starts):
                starts.append(z[j])

        def objective(x):
            w = complex(x[0], x[1])
            if abs(w) > r_max:
                return math.inf
            return -float(log_weighted(f, w, norm))

        for s in starts:
            step = max(1e-3, 0.05 * abs(s))
            simplex = np.array([[s.real, s.imag], [s.real + step, s.imag], [s.real, s.imag + step]])
            res = minimize(objective, [s.real, s.imag], method="Nelder-Mead",
                           options={"initial_simplex": simplex, "xatol": 1e-7, "fatol": 1e-12,
                                    "maxiter": 300})
            if np.isfinite(res.fun) and -res.fun > best:
                best = -float(res.fun)
                arg = complex(res.x[0], res.x[1])
    value = math.exp(best) if best > -745 else 0.0
    return NormEstimate(value, tail < CERTIFY_BELOW, tail, False, None, arg)


def membership(f, K):
    """Whether the diagram of ``f`` lies in ``K``; returns ``(inside, witness_theta)``."""
    if f.is_zero:
        return True, None
    return contains(K, frequency_hull(f))


@dataclass
class SeriesReport:
    """Norms ``a_k`` of the translates ``f(. + k)`` and their partial sums."""

    k: np.ndarray
    a: np.ndarray
    partial_sums: np.ndarray
    exponent: float
    constant: float
    exp_rate: float
    power_residual: float
    exp_residual: float
    converges: bool
    certified: np.ndarray = field(default=None, repr=False)

    def max_increment(self, lo, hi):
        """Largest single step ``S_k - S_{k-1} = a_k`` for ``lo <= k <= hi``."""
        sel = (self.k >= lo) & (self.k <= hi)
        return float(np.max(self.a[sel]))

    def spread(self, lo, hi):
        """``S_hi - S_lo``: how much the partial sums still move over ``[lo, hi]``."""
        sel = (self.k >= lo) & (self.k <= hi)
        s = self.partial_sums[sel]
        return float(s.max() - s.min())

    def records(self):
        return [{"k": int(k), "a_k": float(a), "partial_sum": float(s)}
                for k, a, s in zip(self.k, self.a, self.partial_sums)]

    def to_json(self, digits=17):
        return json.dumps({
            "records": self.records(),
            "exponent": self.exponent,
            "exp_rate": self.exp_rate,
            "converges": self.converges,
        }, default=float)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "a_k", "partial_sum"])
        for rec in self.records():
            w.writerow([rec["k"], f"{rec['a_k']:.9g}", f"{rec['partial_sum']:.9g}"])
        return buf.getvalue()


def _envelope(k, a, width):
    ks, vs = [], []
    for lo in range(0, len(k), width):
        j = lo + int(np.argmax(a[lo:lo + width]))
        ks.append(k[j])
        vs.append(a[j])
    return np.array(ks, dtype=float), np.array(vs, dtype=float)


def criterion_series_check(f, norm, k_max=200, r_max=50.0, grid=DEFAULT_GRID, tail_from=0.25,
                           envelope_width=None):
    """Norms of ``T_1^k f`` for ``k = 1..k_max`` and a fitted decay law.

    The decay exponent ``p`` in ``a_k ~ C k^-p`` is the least-squares slope of
    the upper envelope (maxima over consecutive blocks of ``k``) in log-log
    coordinates over ``k >= tail_from * k_max``; an exponential law
    ``a_k ~ C e^{-rate k}`` is fitted on the same points. The series is
    declared convergent when ``p > 1.5`` or the exponential law fits better
    with a positive rate.
    """
    k_max = check_int(k_max, "k_max", minimum=20)
    ks = np.arange(1, k_max + 1)
    a = np.empty(k_max)
    cert = np.empty(k_max, dtype=bool)
    for j, k in enumerate(ks):
        radius = max(r_max, 2.5 * k + 20.0, 40.0 * norm.n)
        est = norm_estimate(translate(f, float(k)), norm, radius, grid)
        if est.unbounded:
            raise UnboundedNormError(f"||T^{k} f|| is unbounded", est.witness_theta)
        a[j] = est.value
        cert[j] = est.certified
    sums = np.cumsum(a)
    width = envelope_width or max(5, k_max // 20)
    tail = ks >= tail_from * k_max
    ek, ea = _envelope(ks[tail], a[tail], width)
    pos = ea > 0
    if pos.sum() < 3:
        return SeriesReport(ks, a, sums, math.inf, 0.0, math.inf, 0.0, 0.0, True, cert)
    lk, la = np.log(ek[pos]), np.log(ea[pos])
    pp, pres = np.polyfit(lk, la, 1, full=True)[:2]
    ep, eres = np.polyfit(ek[pos], la, 1, full=True)[:2]
    p, rate = -float(pp[0]), -float(ep[0])
    pres = float(pres[0]) if len(pres) else 0.0
    eres = float(eres[0]) if len(eres) else 0.0
    converges = p > 1.5 or (eres < pres and rate > 0)
    return SeriesReport(ks, a, sums, p, float(np.exp(pp[1])), rate, pres, eres, converges, cert)


def weighted_design(functions, target, norm, points):
    """Columns ``f_j(z_i) w_i`` and right side ``target(z_i) w_i`` with the norm weight ``w``."""
    points = np.asarray(points, dtype=complex)
    shift = support_function(norm.K, points) + np.abs(points) / norm.n
    cols = []
    for g in functions:
        m, s = g.scaled(points)
        cols.append(m * np.exp(s - shift))
    m, s = target.scaled(points)
    return np.column_stack(cols), m * np.exp(s - shift)


@dataclass
class DensityFit:
    coefficients: np.ndarray
    residual_l2: float
    residual_max: float
    condition: float


def solve_ridge(A, b, ridge=1e-12):
    """Ridge least squares; solved via the stacked system ``[A; sqrt(ridge) I]``.

    The condition number reported is that of the regularised normal matrix.
    """
    n = A.shape[1]
    stacked = np.vstack([A, math.sqrt(ridge) * np.eye(n)])
    rhs = np.concatenate([b, np.zeros(n, dtype=complex)])
    c, *_ = np.linalg.lstsq(stacked, rhs, rcond=None)
    sv = np.linalg.svd(A, compute_uv=False)
    cond = float((sv[0] ** 2 + ridge) / (sv[-1] ** 2 + ridge)) if len(sv) == n else math.inf
    return c, cond


def van_der_corput_alphas(size, half_width=0.5):
    """First ``size`` points ``i x`` of the base-2 van der Corput sequence on ``[-w, w]``, skipping 0 and ``w/2``.

    Prefixes are nested, so grids of growing size refine each other.
    """
    out, j = [], 1
    while len(out) < size:
        x, denom, m = 0.0, 1.0, j
        while m:
            denom *= 2
            x += (m & 1) / denom
            m >>= 1
        v = (2 * x - 1) * half_width
        if v != 0 and v != half_width / 2:
            out.append(1j * v)
        j += 1
    return out


def density_fit(target, alphas, norm, r_max=30.0, grid=DEFAULT_GRID, ridge=1e-12, max_condition=1e16):
    """Weighted least-squares fit of ``target`` by blocks ``f_alpha``, alpha in ``alphas``.

    Minimises ``sum_i |sum_j c_j f_{alpha_j}(z_i) - target(z_i)|^2 w_i^2`` over the
    sampling grid, with ``w`` the ``(K, n)`` weight. Returns the coefficients and
    the RMS and maximum weighted residuals.
    """
    from .expfun import block

    alphas = [as_complex(a, "alpha") for a in alphas]
    if not alphas:
        raise ValueError("need at least one alpha")
    if len(set(alphas)) != len(alphas):
        raise ValueError("alphas must be pairwise distinct")
    if any(a == 0 for a in alphas):
        raise ValueError("f_0 vanishes identically; alpha = 0 is not allowed")
    for a in alphas:
        inside, _ = membership(block(a), norm.K)
        if not inside:
            raise ValueError(f"f_alpha with alpha={a} is not in Exp(K)")
    if not membership(target, norm.K)[0]:
        raise ValueError("target is not in Exp(K)")
    pts = grid.points(r_max)
    A, b = weighted_design([block(a) for a in alphas], target, norm, pts)
    c, cond = solve_ridge(A, b, ridge)
    if cond > max_condition:
        raise ConditioningError(f"normal matrix condition {cond:.3g} exceeds {max_condition:.1g}")
    r = A @ c - b
    return DensityFit(c, float(np.sqrt(np.mean(np.abs(r) ** 2))), float(np.max(np.abs(r))), cond)


__all__ = [
    "ConditioningError",
    "DEFAULT_GRID",
    "DensityFit",
    "ExpKNorm",
    "NormEstimate",
    "SamplingGrid",
    "SeriesReport",
    "UnboundedNormError",
    "van_der_corput_alphas",
    "criterion_series_check",
    "density_fit",
    "log_weighted",
    "membership",
    "norm_estimate",
    "solve_ridge",
    "weighted_design",
]


