"""Truncated frequently universal candidates built from translated targets.

A candidate is ``F = sum over (slot n, target p) of y_p(. - n)``. Recurrence
(``F(. + n)`` close to ``y_p`` on a disk) and growth on the real line are
measured directly. Because all slots are integers, ``F(z + n)`` for a fixed
``z`` and every integer ``n`` is a discrete convolution of the slot
indicators with ``y_p(z + d)``, which is how the sweeps are evaluated.
"""

from dataclasses import dataclass
from fractions import Fraction
import csv
import io
import json
import math

import numpy as np
from scipy.signal import fftconvolve

from ._validation import check_int, check_positive
from .expfun import ZERO, FunctionExpr, block, evaluate, translate
from .expk import membership
from .geometry import ConvexCompact, segment_on_imaginary_axis


@dataclass(frozen=True)
class DiscreteSet:
    elements: tuple

    def __post_init__(self):
        el = tuple(float(x) for x in self.elements)
        if any(x <= 0 or not math.isfinite(x) for x in el):
            raise ValueError("elements must be positive and finite")
        if any(b <= a for a, b in zip(el, el[1:])):
            raise ValueError("elements must be strictly increasing")
        object.__setattr__(self, "elements", el)


def lower_density(s, r, points=64):
    """Finite surrogate of ``liminf #{x in s : |x| <= r'} / r'``: the minimum over ``r'`` in ``[r/4, r]``."""
    r = check_positive(r, "r")
    el = np.sort(np.abs(np.asarray(s.elements if isinstance(s, DiscreteSet) else s, dtype=float)))
    if el.size == 0:
        return 0.0
    grid = np.geomspace(r / 4, r, points)
    # also test just below every element in the window, where the ratio dips
    inner = el[(el > r / 4) & (el <= r)]
    grid = np.concatenate([grid, np.nextafter(inner, 0)])
    counts = np.searchsorted(el, grid, side="right")
    return float(np.min(counts / grid))


@dataclass(frozen=True)
class Schedule:
    """Placement of target ``p`` (1-based) at integer slot ``n``."""

    assignments: tuple
    horizon: int

    def __post_init__(self):
        a = tuple((int(n), int(p)) for n, p in self.assignments)
        if any(n < 1 or p < 1 for n, p in a):
            raise ValueError("slots and target indices must be positive")
        if any(b[0] <= x[0] for x, b in zip(a, a[1:])):
            raise ValueError("slots must be strictly increasing")
        if a and a[-1][0] > self.horizon:
            raise ValueError("slot beyond the horizon")
        object.__setattr__(self, "assignments", a)

    def slots(self, target=None):
        return [n for n, p in self.assignments if target is None or p == target]

    @property
    def num_targets(self):
        return max((p for _, p in self.assignments), default=0)

    def to_json(self):
        return {"horizon": self.horizon, "assignments": [list(x) for x in self.assignments]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(tuple(x) for x in data["assignments"]), int(data["horizon"]))


def dyadic_schedule(num_targets, horizon=4096, gap=8):
    """Target ``p`` sits at slots ``gap * n`` with ``n = 2^(p-1) mod 2^p``; density ``2^-p / gap``."""
    num_targets = check_int(num_targets, "num_targets", minimum=0)
    horizon = check_int(horizon, "horizon")
    gap = check_int(gap, "gap")
    if horizon < max(1, num_targets) * gap * 4:
        raise ValueError(f"horizon {horizon} < 4 * num_targets * gap")
    out = []
    for n in range(1, horizon // gap + 1):
        p = (n & -n).bit_length()  # 2-adic valuation + 1
        if p <= num_targets:
            out.append((n * gap, p))
    return Schedule(tuple(out), horizon)


def sparse_slots(q, count, c=1.5, delta=0.1, r_cap=1e7):
    """Smallest increasing slots ``k_l`` with ``q(r) >= l^c`` on ``[(1-delta) k_l, (1+delta) k_l]``.

    ``q`` must be nondecreasing, so the condition only needs checking at the
    left end. Consecutive intervals are kept disjoint.
    """
    count = check_int(count, "count")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    out = []
    prev_right = 0.0
    for l in range(1, count + 1):
        need = l ** c
        lo, hi = 0.0, 1.0
        while q(hi) < need:
            hi *= 2
            if hi > r_cap:
                raise ValueError(f"q does not reach {need:.6g} below {r_cap:g}")
        if q(lo) >= need:
            r = 0.0
        else:
            for _ in range(200):
                mid = (lo + hi) / 2
                lo, hi = (lo, mid) if q(mid) >= need else (mid, hi)
            r = hi
        k = max(1, math.ceil(r / (1 - delta)))
        while (1 - delta) * k <= prev_right or (out and k <= out[-1]):
            k += 1
        out.append(k)
        prev_right = (1 + delta) * k
    return out


def sparse_schedule(q, count, num_targets=1, c=1.5, delta=0.1, horizon=None):
    slots = sparse_slots(q, count, c, delta)
    horizon = horizon or slots[-1]
    return Schedule(tuple((k, 1 + (l % num_targets)) for l, k in enumerate(slots)), horizon)


@dataclass(frozen=True)
class UniversalCandidate:
    expr: FunctionExpr
    schedule: Schedule
    targets: tuple
    K: ConvexCompact
    q_exponent: float = 2.0

    def to_json(self):
        return {
            "targets": [t.to_json() for t in self.targets],
            "schedule": self.schedule.to_json(),
            "K": self.K.to_json(),
            "q_exponent": self.q_exponent,
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        targets = [FunctionExpr.from_json(t) for t in data["targets"]]
        return build_candidate(targets, Schedule.from_json(data["schedule"]),
                               ConvexCompact.from_json(data["K"]), data.get("q_exponent", 2.0))


class MembershipError(ValueError):
    pass


def build_candidate(targets, schedule, K, q_exponent=2.0):
    """``sum_(n, p) targets[p](. - n)``; every target must lie in ``Exp(K)``."""
    targets = tuple(targets)
    for j, t in enumerate(targets, start=1):
        if not membership(t, K)[0]:
            raise MembershipError(f"target {j} ({_describe(t)}) is not in Exp(K)")
    if schedule.num_targets > len(targets):
        raise ValueError(f"schedule uses target {schedule.num_targets} but only {len(targets)} given")
    expr = ZERO
    pieces = [translate(targets[p - 1], -n) for n, p in schedule.assignments]
    if pieces:
        expr = FunctionExpr(
            tuple(b for piece in pieces for b in piece.blocks),
            tuple(t for piece in pieces for t in piece.exppoly.terms),
        )
    return UniversalCandidate(expr, schedule, targets, K, float(q_exponent))


def _describe(f):
    if f.blocks and not f.exppoly.terms and len(f.blocks) == 1:
        return f"block alpha={f.blocks[0][1].alpha}"
    freqs = [t.freq for t in f.exppoly.terms] + [b.alpha for _, b in f.blocks]
    return "frequencies " + ", ".join(f"{complex(v)}" for v in freqs[:4])


def lattice_values(c, base, n_lo, n_hi):
    """``F(base[j] + n)`` for integers ``n_lo <= n <= n_hi``, shape ``(len(base), n_hi - n_lo + 1)``.

    Computed as slot-indicator * kernel convolutions, exact up to FFT round-off.
    """
    base = np.atleast_1d(np.asarray(base, dtype=complex))
    out = np.zeros((base.size, n_hi - n_lo + 1), dtype=complex)
    slots = c.schedule.slots()
    if not slots:
        return out
    s_min, s_max = slots[0], slots[-1]
    d = np.arange(n_lo - s_max, n_hi - s_min + 1)
    for p, y in enumerate(c.targets, start=1):
        sp = c.schedule.slots(p)
        if not sp or y.is_zero:
            continue
        ind = np.zeros(s_max - s_min + 1)
        ind[np.asarray(sp) - s_min] = 1.0
        kern = evaluate(y, base[:, None] + d[None, :])
        full = fftconvolve(ind[None, :], kern, axes=1)
        off = s_max - s_min
        out += full[:, off:off + out.shape[1]]
    return out


def disk_boundary(radius, points=200):
    # the sup of an analytic function over a disk is attained on its boundary
    return radius * np.exp(2j * np.pi * np.arange(points) / points)


@dataclass
class RecurrenceReport:
    target_index: int
    slots: np.ndarray
    sup_error: np.ndarray
    epsilon: float
    density: float

    @property
    def passing(self):
        return self.slots[self.sup_error < self.epsilon]

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["slot", "pass", "sup_error"])
        for n, e in zip(self.slots, self.sup_error):
            w.writerow([int(n), int(e < self.epsilon), f"{e:.9g}"])
        return buf.getvalue()


def recurrence_report(c, target_index, radius=0.5, epsilon=0.5, points=200):
    target_index = check_int(target_index, "target_index")
    radius = check_positive(radius, "radius")
    epsilon = check_positive(epsilon, "epsilon")
    if radius > 1:
        raise ValueError("radius must be <= 1")
    H = c.schedule.horizon
    z = disk_boundary(radius, points)
    vals = lattice_values(c, z, 1, H)
    if target_index <= len(c.targets):
        y = evaluate(c.targets[target_index - 1], z)
    else:
        y = np.zeros_like(z)
    err = np.max(np.abs(vals - y[:, None]), axis=0)
    slots = np.arange(1, H + 1)
    ok = slots[err < epsilon]
    return RecurrenceReport(target_index, slots, err, epsilon, lower_density(ok, H))


def recurrence_density(c, target_index, radius=0.5, epsilon=0.5, points=200):
    return recurrence_report(c, target_index, radius, epsilon, points).density


@dataclass(frozen=True)
class GrowthSpec:
    """Comparison function ``q``: ``1 + r^c`` (power), ``log(e + r)`` (log) or a tabulated nondecreasing profile."""

    kind: str = "power"
    c: float = 2.0
    table: tuple = ()

    def __post_init__(self):
        if self.kind not in ("power", "log", "table"):
            raise ValueError(f"unknown growth kind {self.kind!r}")
        if self.kind == "table":
            r, q = np.asarray(self.table, dtype=float).T
            if np.any(np.diff(r) <= 0) or np.any(np.diff(q) < 0) or np.any(q < 1):
                raise ValueError("table must have increasing r and nondecreasing q >= 1")

    def __call__(self, r):
        r = np.abs(np.asarray(r, dtype=float))
        if self.kind == "power":
            out = 1 + r ** self.c
        elif self.kind == "log":
            out = np.log(np.e + r)
        else:
            rr, qq = np.asarray(self.table, dtype=float).T
            out = np.interp(r, rr, qq)
        return float(out) if out.ndim == 0 else out

    @classmethod
    def parse(cls, text):
        """``"power:2"``, ``"log"`` or ``"table:r1=q1,r2=q2,..."``."""
        kind, _, arg = text.partition(":")
        if kind == "power":
            return cls("power", float(arg or 2.0))
        if kind == "log":
            return cls("log")
        if kind == "table":
            rows = [tuple(float(v) for v in item.split("=")) for item in arg.split(",")]
            return cls("table", table=tuple(rows))
        raise ValueError(f"cannot parse growth spec {text!r}")


@dataclass
class GrowthReport:
    cells: np.ndarray   # left end of each unit cell
    argmax: np.ndarray
    value: np.ndarray   # |F| at argmax
    ratio: np.ndarray

    @property
    def sup_ratio(self):
        return float(self.ratio.max()) if self.ratio.size else 0.0

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["cell", "x", "abs_f", "ratio"])
        for row in zip(self.cells, self.argmax, self.value, self.ratio):
            w.writerow([int(row[0])] + [f"{v:.9g}" for v in row[1:]])
        return buf.getvalue()


def growth_report(c, x_max, q, step=0.01):
    """``|F(x)| / q(|x|)`` on ``[-x_max, x_max]`` with a uniform grid of the given step.

    The default step 0.01 is finer everywhere than a 0.05 grid with refined
    slot neighborhoods.
    """
    x_max = check_positive(x_max, "x_max")
    per = int(round(1 / step))
    if per < 1 or abs(per * step - 1) > 1e-12:
        raise ValueError("step must divide 1")
    n_lo, n_hi = -math.ceil(x_max), math.ceil(x_max) - 1
    u = np.arange(per) / per
    vals = np.abs(lattice_values(c, u, n_lo, n_hi))          # (per, cells)
    x = u[:, None] + np.arange(n_lo, n_hi + 1)[None, :]
    ratio = vals / q(x)
    ratio[np.abs(x) > x_max] = 0.0
    j = np.argmax(ratio, axis=0)
    cols = np.arange(ratio.shape[1])
    return GrowthReport(np.arange(n_lo, n_hi + 1), x[j, cols], vals[j, cols], ratio[j, cols])


def growth_check(c, x_max, q, step=0.01):
    return growth_report(c, x_max, q, step).sup_ratio


def placement_series(c, x_max, q, step=0.01):
    """``sum over placements of sup_x |y_p(x - n)| / q(|x|)`` on ``[-x_max, x_max]``.

    This is the series whose finiteness the growth estimate needs; unlike the
    sup of the sum it does not benefit from cancellation between placements.
    """
    x = np.arange(-x_max, x_max + step / 2, step)
    qx = q(x)
    total = 0.0
    cache = {}
    for n, p in c.schedule.assignments:
        y = c.targets[p - 1]
        if p not in cache:
            # |y(x - n)| on the grid, for integer n, is a shift of |y| on an extended grid
            ext = np.arange(-x_max - c.schedule.horizon, x_max + step / 2, step)
            cache[p] = (ext, np.abs(evaluate(y, ext)))
        ext, ay = cache[p]
        i0 = int(round((x[0] - n - ext[0]) / step))
        total += float(np.max(ay[i0:i0 + x.size] / qx))
    return total


def enumerate_targets(d=1.0, count=3):
    """Deterministic list of blocks ``f_alpha``, ``alpha = i d j / (2m)`` with ``0 < |j| < m``, ``gcd(j, m) = 1``.

    Level ``m = 2, 3, ...`` lists ``j = 1, -1, 2, -2, ...``; from level 3 on,
    each level ends with the combination ``f_a + f_b / 2`` of its first two
    blocks.
    """
    d = check_positive(d, "d")
    count = check_int(count, "count", minimum=0)
    out = []
    m = 2
    while len(out) < count:
        level = []
        for j in range(1, m):
            if math.gcd(j, m) == 1:
                level.extend([Fraction(j, m), Fraction(-j, m)])
        singles = [block(1j * d * float(f) / 2) for f in level]
        out.extend(singles)
        if m >= 3:
            out.append(singles[0] + 0.5 * singles[1])
        m += 1
    return out[:count]


def identity_target(d=1.0):
    """Combination of ``f_(i d/2)`` and ``f_(-i d/2)`` equal to ``z + O(z^3)`` near 0."""
    a = 0.5j * d
    c = 1 / (2 * a ** 3)
    return c * block(a) - c * block(-a)


def default_candidate(d=1.0, num_targets=3, horizon=4096, gap=8):
    K = segment_on_imaginary_axis(d, 0.0)
    return build_candidate(enumerate_targets(d, num_targets), dyadic_schedule(num_targets, horizon, gap), K)


__all__ = [
    "DiscreteSet",
    "GrowthReport",
    "GrowthSpec",
    "MembershipError",
    "RecurrenceReport",
    "Schedule",
    "UniversalCandidate",
    "build_candidate",
    "default_candidate",
    "dyadic_schedule",
    "enumerate_targets",
    "growth_check",
    "growth_report",
    "identity_target",
    "lattice_values",
    "lower_density",
    "placement_series",
    "recurrence_density",
    "recurrence_report",
    "sparse_schedule",
    "sparse_slots",
]
