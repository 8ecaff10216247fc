"""Zero counting and location, the Carleman formula, and the zero-density bound.

Boxes are ``(x0, x1, y0, y1)`` tuples. The winding number of ``f`` around a
box is the change of ``log f`` along its boundary: the boundary is sampled
adaptively until the argument moves by less than a fixed step between
neighbors, so the unwrapped phase equals the integral of ``f'/f``.
"""

from dataclasses import dataclass
import csv
import io
import math
import warnings

import numpy as np
from scipy.integrate import quad
from scipy.ndimage import maximum_filter1d

from ._validation import check_positive
from .expfun import evaluate, evaluate_derivative, exact_type, frequency_hull, log_abs
from .fhc import UniversalCandidate, disk_boundary, lattice_values, lower_density
from .geometry import vertical_extent

BOUNDARY_TOL = 1e-9
MAX_JIGGLES = 5
_ARG_STEP = 0.5
_MAX_NODES = 1 << 20


class BoundaryZeroError(ArithmeticError):
    """A zero sits on (or numerically at) a contour and jiggling did not help."""


class QuadratureError(ArithmeticError):
    pass


def _check_box(box):
    x0, x1, y0, y1 = (float(v) for v in box)
    if not (x1 > x0 and y1 > y0) or not all(map(math.isfinite, (x0, x1, y0, y1))):
        raise ValueError(f"invalid box {box!r}")
    return x0, x1, y0, y1


def _corners(box):
    x0, x1, y0, y1 = box
    return [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]


def _phase_and_log(f, z):
    mant, scale = f.scaled(z)
    with np.errstate(divide="ignore"):
        return np.angle(mant), np.log(np.abs(mant)) + scale


def _wrap(d):
    return (d + np.pi) % (2 * np.pi) - np.pi


def _side_nodes(f, a, b, density):
    """Nodes along ``[a, b]`` refined until phase and log-modulus steps are small."""
    n0 = max(16, int(math.ceil(abs(b - a) * density)))
    t = np.linspace(0.0, 1.0, n0 + 1)
    while True:
        z = a + (b - a) * t
        ph, lg = _phase_and_log(f, z)
        if not np.all(np.isfinite(lg)):
            return z, ph, lg
        bad = (np.abs(_wrap(np.diff(ph))) > _ARG_STEP) | (np.abs(np.diff(lg)) > 1.0)
        if not bad.any():
            return z, ph, lg
        if t.size > _MAX_NODES or np.min(np.diff(t)[bad]) < 1e-13:
            raise BoundaryZeroError("boundary refinement did not settle (zero too close to the contour)")
        mids = (t[:-1][bad] + t[1:][bad]) / 2
        t = np.sort(np.concatenate([t, mids]))


def _winding(f, box):
    """Winding number and the smallest ``log(|f| / local max |f|)`` over the boundary nodes.

    The local maximum is taken over about one unit of length scaled by
    ``1 / (1 + type)``, so large boxes where ``|f|`` spans many orders of
    magnitude are judged against nearby values only.
    """
    tau = exact_type(f)
    density = 32 * (1 + tau)
    cs = _corners(box)
    total, dip = 0.0, 0.0
    for a, b in zip(cs, cs[1:] + cs[:1]):
        _, ph, lg = _side_nodes(f, a, b, density)
        if not np.all(np.isfinite(lg)):
            return math.nan, -math.inf
        total += float(np.sum(_wrap(np.diff(ph))))
        dip = min(dip, float(np.min(lg - maximum_filter1d(lg, size=int(2 * density / (1 + tau)) + 1))))
    return total / (2 * np.pi), dip


def count_zeros(f, box, jiggle=True):
    """Number of zeros (with multiplicity) of ``f`` inside ``box``.

    When a zero lies on the boundary (``|f| <= 1e-9`` times the nearby maximum there) the box is
    enlarged by ``1e-3 * j`` of its size, ``j = 1..5``.
    """
    return _settled_count(f, box, jiggle)[1]


def _settled_count(f, box, jiggle=True):
    """``(box actually used, zero count)`` after enlarging ``box`` as needed."""
    box = _check_box(box)
    if f.is_zero:
        raise ValueError("the zero function has no isolated zeros")
    for j in range(MAX_JIGGLES + 1 if jiggle else 1):
        x0, x1, y0, y1 = box
        e = 1e-3 * j
        b = (x0 - e * (x1 - x0), x1 + e * (x1 - x0), y0 - e * (y1 - y0), y1 + e * (y1 - y0))
        try:
            w, dip = _winding(f, b)
        except BoundaryZeroError:
            continue
        if dip > math.log(BOUNDARY_TOL):
            n = int(round(w))
            if abs(w - n) > 0.1:
                raise BoundaryZeroError(f"winding number {w:.4f} is not close to an integer")
            return b, n
    raise BoundaryZeroError(f"zero on the boundary of {box} after {MAX_JIGGLES} jiggles")


@dataclass(frozen=True)
class ZeroList:
    zeros: tuple = ()

    def __post_init__(self):
        z = tuple(sorted(((complex(a), int(m)) for a, m in self.zeros), key=lambda x: (abs(x[0]), np.angle(x[0]))))
        object.__setattr__(self, "zeros", z)

    def __len__(self):
        return len(self.zeros)

    @property
    def locations(self):
        return np.array([a for a, _ in self.zeros], dtype=complex)

    @property
    def multiplicities(self):
        return np.array([m for _, m in self.zeros], dtype=int)

    def moduli(self):
        """``|zero|`` repeated by multiplicity."""
        return np.repeat(np.abs(self.locations), self.multiplicities) if self.zeros else np.zeros(0)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["re", "im", "multiplicity"])
        for a, m in self.zeros:
            w.writerow([f"{a.real:.9g}", f"{a.imag:.9g}", m])
        return buf.getvalue()

    def to_json(self):
        return [{"at": [a.real, a.imag], "multiplicity": m} for a, m in self.zeros]


def _cuts(f, lo, hi, fixed, vertical, scale_log):
    """Cut coordinates near the midpoint of ``[lo, hi]``, those clear of zeros first."""
    a, b = fixed
    s = np.linspace(a, b, 257)
    clear, rest = [], []
    for off in (0.0, 0.0137, -0.0213, 0.0311, -0.0419, 0.0523):
        c = lo + (hi - lo) * (0.5 + off)
        z = c + 1j * s if vertical else s + 1j * c
        lg = log_abs(f, z)
        ok = np.all(np.isfinite(lg)) and lg.min() > math.log(1e-6) + scale_log
        (clear if ok else rest).append(c)
    return clear + rest


def _newton(f, z, m, resolution, box):
    """Modified Newton ``z -= m f/f'``; halves the step when ``|f|`` grows, 20 iterations."""
    fz = evaluate(f, z)
    for _ in range(20):
        d = evaluate_derivative(f, z)
        if d == 0:
            break
        step = m * fz / d
        t = 1.0
        while True:
            zn = z - t * step
            fn = evaluate(f, zn)
            if abs(fn) <= abs(fz) or t < 1e-3:
                break
            t /= 2
        z, fz = zn, fn
        if abs(t * step) < resolution * 1e-2 or fz == 0:
            break
    x0, x1, y0, y1 = box
    pad = max(x1 - x0, y1 - y0)
    if not (x0 - pad <= z.real <= x1 + pad and y0 - pad <= z.imag <= y1 + pad):
        return None
    return z


def locate_zeros(f, region, resolution=1e-6, min_side=1e-3):
    """Zeros inside ``region`` with multiplicities, by recursive subdivision and Newton refinement.

    A zero on the edge of ``region`` enlarges it as in :func:`count_zeros`, so it is reported.
    """
    region = _check_box(region)
    resolution = check_positive(resolution, "resolution")
    found = []

    def visit(box, n):
        x0, x1, y0, y1 = box
        side = max(x1 - x0, y1 - y0)
        if n == 0:
            return
        if n == 1 or side <= min_side:
            z = _newton(f, complex((x0 + x1) / 2, (y0 + y1) / 2), n, resolution, box)
            if z is None:
                if side <= min_side:
                    raise BoundaryZeroError(f"Newton left the neighborhood of box {box}")
            else:
                found.append((z, n))
                return
        scale_log = float(np.max(log_abs(f, np.array(_corners(box)))))
        vertical = x1 - x0 >= y1 - y0
        lo, hi = (x0, x1) if vertical else (y0, y1)
        for c in _cuts(f, lo, hi, (y0, y1) if vertical else (x0, x1), vertical, scale_log):
            if vertical:
                halves = [(x0, c, y0, y1), (c, x1, y0, y1)]
            else:
                halves = [(x0, x1, y0, c), (x0, x1, c, y1)]
            try:
                counts = [count_zeros(f, h, jiggle=False) for h in halves]
            except BoundaryZeroError:
                continue
            if sum(counts) == n:
                break
        else:
            raise BoundaryZeroError(f"could not split box {box} without losing zeros")
        for h, k in zip(halves, counts):
            visit(h, k)

    visit(*_settled_count(f, region))
    return ZeroList(tuple(found))


# -- Carleman formula ----------------------------------------------------------

def carleman_lhs(zeros, R):
    """``sum over |z_n| <= R, Re z_n > 0 of (1/r_n - r_n/R^2) cos(theta_n)``, multiplicities counted."""
    R = check_positive(R, "R")
    total = 0.0
    for a, m in (zeros.zeros if isinstance(zeros, ZeroList) else zeros):
        a = complex(a)
        r = abs(a)
        if a.real <= 0:
            continue
        if abs(r - R) <= 1e-9 * R:
            raise BoundaryZeroError(f"zero {a} lies on |z| = {R}")
        if r <= R:
            total += m * (1 / r - r / R ** 2) * math.cos(math.atan2(a.imag, a.real))
    return total


def _log_minima(x, lg, depth=3.0):
    """Locations where ``lg`` dips sharply: candidate logarithmic singularities."""
    if x.size < 3:
        return []
    fin = np.where(np.isfinite(lg), lg, -1e300)
    inner = (fin[1:-1] <= fin[:-2]) & (fin[1:-1] <= fin[2:])
    idx = np.nonzero(inner)[0] + 1
    med = np.median(lg[np.isfinite(lg)]) if np.isfinite(lg).any() else 0.0
    return [float(x[i]) for i in idx if fin[i] < med - depth]


def _integrate(func, a, b, breaks, pieces=8):
    pts = np.unique(np.concatenate([np.linspace(a, b, pieces + 1), [p for p in breaks if a < p < b]]))
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        for attempt in range(3):
            shift = attempt * 1e-9 * (hi - lo)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                val, _ = quad(func, lo + shift, hi - shift, limit=200)
            if math.isfinite(val):
                break
        else:
            raise QuadratureError(f"non-integrable sample on [{lo}, {hi}]")
        total += val
    return total


@dataclass(frozen=True)
class CarlemanRHS:
    axis: float
    arc: float
    head_bound: float

    @property
    def total(self):
        return self.axis + self.arc


def carleman_rhs_parts(f, R, t_min=1e-3):
    R = check_positive(R, "R")
    t_min = check_positive(t_min, "t_min")
    if t_min >= R:
        raise ValueError("t_min must be below R")
    if f.is_zero:
        raise ValueError("log|f| is undefined for the zero function")
    tau = exact_type(f)

    def axis_log(t):
        t = np.asarray(t, dtype=float)
        return log_abs(f, 1j * t) + log_abs(f, -1j * t)

    L0 = 2 * log_abs(f, 0.0)
    if not math.isfinite(L0):
        warnings.warn("f(0) = 0: the axis integral is cut at t_min and grows like 1/t_min", RuntimeWarning,
                      stacklevel=2)
        head = math.inf
    else:
        ts = np.linspace(t_min / 64, t_min, 64)
        head = float(np.max(np.abs(axis_log(ts) - L0) / ts ** 2)) * t_min / (2 * np.pi)

    ts = np.concatenate([np.geomspace(t_min, R, 2048), np.linspace(t_min, R, int(64 * R * (1 + tau)) + 2)])
    ts = np.unique(ts)
    breaks = _log_minima(ts, axis_log(ts))
    breaks += list(np.geomspace(t_min, R, max(2, int(np.log10(R / t_min)) + 2)))
    axis = _integrate(lambda t: (1 / t ** 2 - 1 / R ** 2) * float(axis_log(t)), t_min, R, breaks) / (2 * np.pi)

    def arc_log(th):
        return log_abs(f, R * np.exp(1j * np.asarray(th, dtype=float)))

    th = np.linspace(-np.pi / 2, np.pi / 2, max(4097, int(64 * R * (1 + tau))))
    breaks = _log_minima(th, arc_log(th)) + [0.0]
    pieces = max(8, int(4 * R * (1 + tau)))
    arc = _integrate(lambda t: float(arc_log(t)) * math.cos(t), -np.pi / 2, np.pi / 2, breaks, pieces) / (np.pi * R)
    return CarlemanRHS(axis, arc, head)


def carleman_rhs(f, R, t_min=1e-3):
    """Axis integral over ``[t_min, R]`` plus the half-circle integral; the bounded remainder is not added."""
    return carleman_rhs_parts(f, R, t_min).total


@dataclass(frozen=True)
class CarlemanRow:
    R: float
    lhs: float
    rhs: float
    head_bound: float

    @property
    def residual(self):
        return self.lhs - self.rhs


def carleman_table(f, radii, t_min=1e-3, zeros=None, strip=None):
    """LHS, RHS and residual per radius. ``R`` is scaled by ``1 + 1e-4 j`` when a zero sits on ``|z| = R``.

    Zeros are located once in ``[t_min, R_max + 1] x [-h, h]`` where ``h`` is
    ``strip`` (default ``R_max + 1``), unless given.
    """
    radii = [check_positive(r, "R") for r in radii]
    R_top = max(radii) * (1 + 1e-4 * MAX_JIGGLES) + 1
    if zeros is None:
        h = strip if strip is not None else R_top
        zeros = locate_zeros(f, (t_min, R_top, -h, h), resolution=1e-10)
    rows = []
    for R in radii:
        for j in range(MAX_JIGGLES + 1):
            Rj = R * (1 + 1e-4 * j)
            mods = np.abs(zeros.locations) if len(zeros) else np.zeros(0)
            if not np.any(np.abs(mods - Rj) <= 1e-6 * Rj):
                break
        else:
            raise BoundaryZeroError(f"zero on |z| = {R} after {MAX_JIGGLES} jiggles")
        parts = carleman_rhs_parts(f, Rj, t_min)
        rows.append(CarlemanRow(Rj, carleman_lhs(zeros, Rj), parts.total, parts.head_bound))
    return rows


def residual_summary(rows):
    """``(range, slope)`` of the residual against ``log R``."""
    res = np.array([r.residual for r in rows])
    if len(rows) < 2:
        return 0.0, 0.0
    slope = float(np.polyfit(np.log([r.R for r in rows]), res, 1)[0])
    return float(res.max() - res.min()), slope


# -- density bound and obstruction --------------------------------------------

def density_bound(K, gamma=0.0):
    """``c / (pi cos gamma)`` with ``c`` half the vertical extent of ``K``."""
    gamma = float(gamma)
    if not 0 <= gamma < np.pi / 2:
        raise ValueError("gamma must lie in [0, pi/2)")
    return vertical_extent(K) / 2 / (np.pi * math.cos(gamma))


def zero_density(f, r, half_width=1.0, x_min=0.5, resolution=1e-8):
    """Lower density (at ``r``) of the zeros located in ``[x_min, r] x [-half_width, half_width]``."""
    zeros = locate_zeros(f, (x_min, r, -half_width, half_width), resolution)
    return lower_density(zeros.moduli(), r), zeros


@dataclass
class ObstructionReport:
    passing_slots: list
    zeros: ZeroList
    measured_density: float
    bound: float
    gamma: float

    @property
    def verdict(self):
        return "OBSTRUCTED" if self.measured_density > self.bound else "CONSISTENT"

    def to_json(self):
        return {
            "measured_density": self.measured_density,
            "bound": self.bound,
            "gamma": self.gamma,
            "verdict": self.verdict,
            "passing_slots": len(self.passing_slots),
            "zeros": len(self.zeros),
        }


def obstruction_check(f, horizon, radius=0.5, epsilon=0.5, points=200):
    """Slots ``n`` with ``sup_{|z| <= radius} |f(z + n) - z| < epsilon``, zeros near them, and the density bound.

    ``f`` may be a :class:`UniversalCandidate`, whose slot sweep then uses the
    convolution evaluator.
    """
    horizon = int(horizon)
    z = disk_boundary(radius, points)
    if isinstance(f, UniversalCandidate):
        vals = lattice_values(f, z, 1, horizon)
        f = f.expr
    else:
        n = np.arange(1, horizon + 1)
        vals = evaluate(f, z[:, None] + n[None, :]) if not f.is_zero else np.zeros((points, horizon))
    err = np.max(np.abs(vals - z[:, None]), axis=0)
    passing = [int(n) for n in np.nonzero(err < epsilon)[0] + 1]
    found = []
    for n in passing:
        box = (n - radius, n + radius, -radius, radius)
        if count_zeros(f, box) > 0:
            found.extend(locate_zeros(f, box, resolution=1e-8).zeros)
    zeros = ZeroList(tuple(found))
    if len(zeros):
        gamma = min(float(np.max(np.abs(np.angle(zeros.locations)))) + 0.05, np.pi / 2 - 1e-9)
    else:
        gamma = 0.0
    bound = 0.0 if f.is_zero else density_bound(frequency_hull(f), gamma)
    measured = lower_density(zeros.moduli(), horizon) if len(zeros) else 0.0
    return ObstructionReport(passing, zeros, measured, bound, gamma)


__all__ = [
    "BoundaryZeroError",
    "CarlemanRHS",
    "CarlemanRow",
    "ObstructionReport",
    "QuadratureError",
    "ZeroList",
    "carleman_lhs",
    "carleman_rhs",
    "carleman_rhs_parts",
    "carleman_table",
    "count_zeros",
    "density_bound",
    "locate_zeros",
    "obstruction_check",
    "residual_summary",
    "zero_density",
]
