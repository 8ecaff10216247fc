"""End-to-end acceptance checks, one marker per criterion.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import math
import time
import warnings

import numpy as np
import pytest

from exptype.borel import block_borel, borel_closed_form, borel_series, singular_hull
from exptype.carleman import (
    ZeroList,
    carleman_lhs,
    carleman_table,
    density_bound,
    obstruction_check,
    residual_summary,
    zero_density,
)
from exptype.expfun import (
    block,
    exact_type,
    exp_term,
    frequency_hull,
    indicator_estimate,
    modulate,
    poly_expr,
    sine_expr,
    taylor_coefficients,
)
from exptype.expk import ExpKNorm, criterion_series_check, density_fit, norm_estimate, van_der_corput_alphas
from exptype.fhc import (
    GrowthSpec,
    build_candidate,
    default_candidate,
    dyadic_schedule,
    enumerate_targets,
    growth_check,
    placement_series,
    recurrence_density,
    sparse_schedule,
)
from exptype.geometry import hull, indicator_of_set, segment_on_imaginary_axis, translate_set

K1 = segment_on_imaginary_axis(1, 0)


class Clock:
    def __init__(self):
        self.start = time.perf_counter()

    def check(self, limit):
        elapsed = time.perf_counter() - self.start
        assert elapsed < limit, f"took {elapsed:.1f} s, limit {limit} s"


# -- 1 ---------------------------------------------------------------------------

@pytest.mark.criterion(1)
def test_segment_indicator_closed_form():
    clock = Clock()
    rng = np.random.default_rng(1)
    worst = 0.0
    for a, b, t in zip(rng.uniform(0, 5, 1000), rng.uniform(-5, 5, 1000), rng.uniform(-np.pi, np.pi, 1000)):
        K = segment_on_imaginary_axis(a, b)
        worst = max(worst, abs(indicator_of_set(K, t) - (-b * math.sin(t) + a * abs(math.sin(t)))))
    assert worst <= 1e-12
    clock.check(1.0)


# -- 2 ---------------------------------------------------------------------------

INDICATOR_CORPUS = (
    [exp_term(a) for a in (1.0, 1j, -0.5 + 0.5j, 2 - 1j, -1.5j)]
    + [block(a) for a in (1j, 0.5j, -0.75j, 0.3 - 0.4j, 1 + 1j)]
    + [exp_term(0.5j, 2.0) + exp_term(-1.0, 0.5) + exp_term(1 + 1j, -1.0),
       exp_term(1.0) + exp_term(-0.5j, 3.0) + exp_term(-1 + 0.5j, 1j)]
)


@pytest.mark.criterion(2)
def test_indicator_recovery():
    clock = Clock()
    thetas = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    worst, unstable = 0.0, 0
    for f in INDICATOR_CORPUS:
        K = frequency_hull(f)
        for t in thetas:
            s = indicator_estimate(f, t, r_max=200.0)
            if not s.stable:
                unstable += 1
                continue
            worst = max(worst, abs(s.value - indicator_of_set(K, t)))
    print(f"indicator recovery: max error {worst:.3g}, {unstable} unstable angles excluded "
          f"of {64 * len(INDICATOR_CORPUS)}")
    assert worst <= 0.05
    assert unstable < 64 * len(INDICATOR_CORPUS) // 10
    clock.check(30.0)


# -- 3 ---------------------------------------------------------------------------

@pytest.mark.criterion(3)
def test_hull_translation_identity():
    rng = np.random.default_rng(3)
    for f in INDICATOR_CORPUS:
        alpha = complex(*rng.uniform(-2, 2, 2))
        assert frequency_hull(modulate(f, alpha)).vertices == translate_set(frequency_hull(f), alpha).vertices


@pytest.mark.criterion(3)
def test_norm_isometry():
    clock = Clock()
    rng = np.random.default_rng(33)
    fs = [block(0.5j), block(-0.25j, coef=2 - 1j), exp_term(0.5j) + exp_term(-0.5j, 0.3),
          poly_expr([1, 0.5]), block(0.3j, shift=2.0)]
    worst = 0.0
    for i in range(50):
        f = fs[i % len(fs)]
        alpha = complex(*rng.uniform(-2, 2, 2))
        n = int(rng.integers(1, 4))
        a = norm_estimate(f, ExpKNorm(K1, n), 30).value
        b = norm_estimate(modulate(f, -alpha), ExpKNorm(translate_set(K1, -alpha), n), 30).value
        worst = max(worst, abs(a - b) / a)
    assert worst <= 1e-9
    clock.check(10.0)


# -- 4 ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def series_reports():
    start = time.perf_counter()
    reports = {n: criterion_series_check(block(0.5j), ExpKNorm(K1, n), k_max=200) for n in (1, 2, 3, 5)}
    return reports, time.perf_counter() - start


@pytest.mark.criterion(4)
def test_series_decay_exponent(series_reports):
    reports, elapsed = series_reports
    for n, rep in reports.items():
        print(f"n={n}: exponent {rep.exponent:.3f}, S_200 - S_100 = {rep.spread(100, 200):.3g}, "
              f"max a_k on [100, 200] = {rep.max_increment(100, 200):.3g}")
    assert all(rep.exponent >= 1.8 for rep in reports.values())
    assert elapsed < 60


@pytest.mark.criterion(4)
def test_series_partial_sums_cauchy(series_reports):
    reports, _ = series_reports
    assert all(rep.spread(100, 200) <= 1e-3 for rep in reports.values())


# -- 5 ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def candidate():
    return default_candidate(d=1.0, num_targets=3, horizon=4096, gap=8)


@pytest.mark.criterion(5)
def test_recurrence_density(candidate):
    clock = Clock()
    for p in (1, 2, 3):
        scheduled = 2.0 ** -p / 8
        measured = recurrence_density(candidate, p, 0.5, 0.5)
        print(f"target {p}: scheduled {scheduled:.4f}, measured {measured:.4f}")
        assert measured >= 0.5 * scheduled
    clock.check(300.0)


@pytest.mark.criterion(5)
def test_growth_power_two(candidate):
    clock = Clock()
    ratio = growth_check(candidate, 2000, GrowthSpec("power", 2))
    print(f"growth ratio against 1 + x^2: {ratio:.4g}")
    assert ratio <= 10
    clock.check(300.0)


# -- 6 ---------------------------------------------------------------------------

Q_LOG = GrowthSpec("log")


@pytest.mark.criterion(6)
def test_sparse_schedule_grows_slowly():
    clock = Clock()
    c = build_candidate(enumerate_targets(1.0, 3), sparse_schedule(Q_LOG, 4, 3), K1)
    ratio = growth_check(c, 5000, Q_LOG)
    print(f"sparse schedule: slots {c.schedule.slots()}, ratio {ratio:.4g}")
    assert ratio <= 10
    clock.check(300.0)


@pytest.mark.criterion(6)
def test_dense_schedule_outgrows_log():
    clock = Clock()
    c = build_candidate(enumerate_targets(1.0, 3), dyadic_schedule(3, 5000, 8), K1)
    ratio = growth_check(c, 5000, Q_LOG)
    placements = placement_series(c, 5000, Q_LOG)
    print(f"dense schedule: ratio {ratio:.4g}, summed placement sizes / q {placements:.4g}")
    clock.check(300.0)
    assert ratio > 100


# -- 7 ---------------------------------------------------------------------------

@pytest.mark.criterion(7)
def test_carleman_residual_bounded():
    clock = Clock()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rows = carleman_table(sine_expr(), [10, 20, 40, 80, 160], strip=2.0)
    spread, slope = residual_summary(rows)
    for r in rows:
        print(f"R={r.R:.4f} lhs={r.lhs:.6f} rhs={r.rhs:.6f} residual={r.residual:.6f}")
    assert spread <= 1.5
    assert abs(slope) <= 0.1
    clock.check(120.0)


@pytest.mark.criterion(7)
def test_carleman_lhs_direct_sum():
    zeros = ZeroList(tuple((float(k), 1) for k in range(1, 11)))
    assert carleman_lhs(zeros, 10.5) == pytest.approx(2.43010, abs=1e-5)


# -- 8 ---------------------------------------------------------------------------

@pytest.mark.criterion(8)
def test_density_bound_attained_by_sine():
    clock = Clock()
    bound = density_bound(segment_on_imaginary_axis(math.pi, 0), 0.0)
    assert bound == pytest.approx(1.0, abs=1e-15)
    measured, zeros = zero_density(sine_expr(), 400.5)
    print(f"sine: {len(zeros)} zeros, lower density {measured:.4f}, bound {bound}")
    assert measured == pytest.approx(1.0, abs=0.02)
    clock.check(120.0)


@pytest.mark.criterion(8)
def test_horizontal_hull_is_obstructed():
    clock = Clock()
    f = poly_expr([-1.0, 1.0]) + exp_term(0.01, 1e-3)
    assert density_bound(hull([-1, 1]), 0.7) == 0
    rep = obstruction_check(f, 200)
    print(f"horizontal hull: {len(rep.passing_slots)} passing slots, measured {rep.measured_density:.4g}")
    assert rep.bound == 0
    assert rep.measured_density > 0
    assert rep.verdict == "OBSTRUCTED"
    clock.check(120.0)


# -- 9 ---------------------------------------------------------------------------

BOREL_CORPUS = (
    [exp_term(a) for a in (1.0, 1j, -0.5 + 0.5j, 2 - 1j, -1.5j)]
    + [exp_term(1.0) + exp_term(-1.0), sine_expr(),
       exp_term(0.5j, 2.0) + exp_term(-1.0, 0.5) + exp_term(1 + 1j, -1.0),
       poly_expr([1.0, -2.0, 0.5], freq=0.25) + exp_term(-0.5j)]
)


@pytest.mark.criterion(9)
def test_borel_closed_form_vs_series():
    clock = Clock()
    rng = np.random.default_rng(9)
    worst = 0.0
    for f in BOREL_CORPUS:
        tau = exact_type(f)
        z = tau * rng.uniform(2, 4, 100) * np.exp(1j * rng.uniform(0, 2 * np.pi, 100))
        closed = borel_closed_form(f)(z)
        for zi, ci in zip(z, closed):
            worst = max(worst, abs(borel_series(f, zi, 60)[0] - ci))
    for f in (block(1j), block(0.5j, coef=2.0), block(0.3 - 0.4j)):
        z = 2 * exact_type(f) * rng.uniform(1, 2, 100) * np.exp(1j * rng.uniform(0, 2 * np.pi, 100))
        for zi in z:
            worst = max(worst, abs(borel_series(f, zi, 60)[0] - block_borel(f, zi)))
    print(f"Borel closed form vs 60-term series: max difference {worst:.3g}")
    assert worst <= 1e-10
    clock.check(5.0)


@pytest.mark.criterion(9)
def test_singular_hull_equals_frequency_hull():
    for f in BOREL_CORPUS:
        assert singular_hull(borel_closed_form(f)) == frequency_hull(f)


# -- 10 --------------------------------------------------------------------------

@pytest.mark.criterion(10)
def test_nested_grid_residuals_decrease():
    clock = Clock()
    norm = ExpKNorm(K1, 1)
    res = [density_fit(block(0.25j), van_der_corput_alphas(m, 0.5), norm).residual_l2 for m in (6, 12, 24)]
    print(f"residuals on nested grids 6, 12, 24: {res}")
    assert res[0] > res[1] > res[2]
    clock.check(30.0)


@pytest.mark.criterion(10)
def test_block_taylor_coefficients_nonzero():
    for alpha in (1j, 0.25j, -0.5j, 0.3 - 0.4j, 2.0, 1e-2j):
        a = taylor_coefficients(block(alpha), 50)
        assert np.all(a != 0)
