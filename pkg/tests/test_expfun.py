import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exptype._validation import RangeError
from exptype.expfun import (
    FunctionExpr,
    block,
    evaluate,
    evaluate_derivative,
    exact_type,
    exp_term,
    frequency_hull,
    indicator_estimate,
    max_modulus,
    modulate,
    poly_expr,
    taylor_coefficients,
    translate,
    type_estimate,
)
from exptype.geometry import hull, indicator_of_set, translate_set

# mpmath (50 digits) values of (e^{a z} - 1)^2 / z^2, frozen
ORACLE_BLOCK = [
    (0.3 + 0.7j, 1.7 - 0.4j, -1.1280821161334298147707327995 - 0.4799837239349718783253335404j),
    (1j, 0.1 + 0.05j, -0.9459646738053317704213364907 - 0.0941167824288307584864313913j),
    (1j, 0.49, -0.8648195354186825975393337565 - 0.4612844891726180862748859370j),
    (1j, 0.51, -0.8539910189921297772012654252 - 0.4776873195557557372639383781j),
]
# mpmath.taylor of f_a, a = 0.5 - 0.25i
ORACLE_TAYLOR = [0.1875 - 0.25j, 0.03125 - 0.171875j, -0.01595052083333333333 - 0.0546875j,
                 -0.00927734375 - 0.010009765625j, -0.002459716796875 - 0.00092502170138888889j,
                 -0.0004241943359375 + 0.00004425048828125j]
# mpmath.taylor of f_i(z - 2) e^{i z / 2}
ORACLE_SHIFTED = [0.2946625130576682148389921 + 0.6438493372398229105411697j,
                  -0.8603121166290482138159223 + 0.6724322016104222541398658j,
                  -0.6886512616515360518999523 - 0.5912618847482983735405621j,
                  0.2748766266832147670382208 - 0.4560703339300403931587195j,
                  0.22561270022167144931277 + 0.09559132391928393444650868j]


def test_block_at_origin_is_alpha_squared():
    assert evaluate(block(1j), 0) == pytest.approx(-1, abs=1e-15)


def test_block_at_pi():
    assert evaluate(block(1j), math.pi) == pytest.approx(4 / math.pi ** 2, rel=1e-14)


def test_constant():
    assert evaluate(exp_term(0), 3 - 7j) == 1


@pytest.mark.parametrize("alpha, z, expected", ORACLE_BLOCK)
def test_block_against_high_precision(alpha, z, expected):
    assert abs(evaluate(block(alpha), z) - expected) <= 1e-13 * abs(expected)


def test_overflow_is_a_range_error():
    with pytest.raises(RangeError):
        evaluate(exp_term(1.0), 800.0)


def test_translate_examples():
    f = translate(exp_term(1j * math.pi), 2)
    assert f.exppoly.terms[0].poly[0] == pytest.approx(1, abs=1e-15)
    g = poly_expr([0, 1])
    assert translate(g, 0) is g
    assert translate(g, 1).exppoly.terms[0].poly == pytest.approx((1, 1))


def test_modulate_examples(corpus):
    assert modulate(exp_term(0), 1j).exppoly.terms[0].freq == 1j
    f = corpus["f_i"]
    assert modulate(f, 0) is f
    beta = 0.3 - 0.2j
    assert set(frequency_hull(modulate(f, beta)).vertices) == set(translate_set(frequency_hull(f), beta).vertices)


def test_taylor_examples():
    assert taylor_coefficients(exp_term(1.0), 4)[3] == pytest.approx(1 / 6)
    assert taylor_coefficients(block(1j), 3) == pytest.approx([-1, -1j, 7 / 12])
    assert taylor_coefficients(poly_expr([0, 1]), 4) == pytest.approx([0, 1, 0, 0])


def test_taylor_against_high_precision():
    got = taylor_coefficients(block(0.5 - 0.25j), 6)
    assert np.max(np.abs(got - np.array(ORACLE_TAYLOR))) < 1e-15


def test_taylor_of_shifted_modulated_block():
    got = taylor_coefficients(block(1j, shift=2.0, beta=0.5j), 5)
    assert np.max(np.abs(got - np.array(ORACLE_SHIFTED))) < 1e-14


def test_taylor_of_blocks_never_vanish():
    for alpha in (1j, 0.25j, -0.5j, 0.3 + 0.1j):
        assert np.all(np.abs(taylor_coefficients(block(alpha), 50)) > 0)


def test_frequency_hull_examples(corpus):
    assert frequency_hull(poly_expr([1, 2, 3], freq=0.5 + 1j)).vertices == (0.5 + 1j,)
    assert set(frequency_hull(corpus["f_i"]).vertices) == {0j, 2j}
    assert set(frequency_hull(corpus["cosh"]).vertices) == {-1 + 0j, 1 + 0j}
    with pytest.raises(ValueError):
        frequency_hull(FunctionExpr())


def test_max_modulus_examples(corpus):
    assert max_modulus(corpus["e1"], 1.0) == pytest.approx(math.e, rel=1e-12)
    assert max_modulus(exp_term(0), 5.0) == pytest.approx(1)
    # 2 cosh 2, mpmath
    assert max_modulus(corpus["cosh"], 2.0) == pytest.approx(7.5243913821672629191, rel=1e-12)


def test_indicator_examples(corpus):
    assert indicator_estimate(corpus["e1"], 0.0).value == pytest.approx(1, abs=1e-6)
    assert indicator_estimate(corpus["f_i"], -math.pi / 2, r_max=200).value == pytest.approx(2, abs=0.05)
    assert indicator_estimate(corpus["f_i"], 0.0, r_max=200).value == pytest.approx(0, abs=0.05)


def test_indicator_dominated_by_support(corpus):
    for name in ("e1", "cosh", "f_i", "f_mixed", "sum3", "sine"):
        f = corpus[name]
        K = frequency_hull(f)
        for t in np.linspace(-math.pi, math.pi, 16, endpoint=False):
            assert indicator_estimate(f, t).value <= indicator_of_set(K, t) + 0.05, (name, t)


def test_type_examples(corpus):
    assert type_estimate(corpus["e1"], 200) == pytest.approx(1, abs=1e-3)
    assert type_estimate(corpus["f_i"], 200) == pytest.approx(2, abs=0.05)
    assert type_estimate(exp_term(0), 50) == pytest.approx(0, abs=1e-12)
    assert exact_type(corpus["f_i"]) == 2


def test_block_branch_switch_is_continuous():
    alpha = 0.8 + 0.6j  # |alpha| = 1
    inner = 0.5 * (1 - 1e-9)
    outer = 0.5 * (1 + 1e-9)
    for t in np.linspace(0, 2 * np.pi, 24, endpoint=False):
        d = np.exp(1j * t) / alpha
        a, b = evaluate(block(alpha), inner * d), evaluate(block(alpha), outer * d)
        assert abs(a - b) <= 1e-8 * abs(b)


def test_block_matches_quotient_off_the_series_disk():
    rng = np.random.default_rng(3)
    alpha = 0.4 - 0.9j
    z = (0.6 + 3 * rng.random(200)) * np.exp(2j * np.pi * rng.random(200)) / abs(alpha)
    direct = (np.exp(alpha * z) - 1) ** 2 / z ** 2
    assert np.max(np.abs(evaluate(block(alpha), z) - direct) / np.abs(direct)) < 1e-12


def test_derivative_by_finite_difference(corpus):
    h = 1e-6
    for name in ("f_i", "sum3", "poly", "shifted"):
        f = corpus[name]
        z = 0.7 - 0.3j
        fd = (evaluate(f, z + h) - evaluate(f, z - h)) / (2 * h)
        assert abs(evaluate_derivative(f, z) - fd) < 1e-7 * max(1, abs(fd))


def test_json_roundtrip(corpus):
    for f in corpus.values():
        assert FunctionExpr.from_json(f.to_json()) == f


def test_json_errors_are_indexed():
    with pytest.raises(ValueError, match=r"blocks\[1\]"):
        FunctionExpr.from_json({"blocks": [{"alpha": [0, 1]}, {"coef": [1, 0]}]})


reals = st.floats(-50, 50, allow_nan=False)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["f_i", "f_mixed", "sum3", "poly", "shifted", "cosh"]), reals,
       st.floats(-3, 3), st.floats(-3, 3))
def test_translation_identity(corpus, name, k, x, y):
    f = corpus[name]
    z = complex(x, y)
    want = evaluate(f, z + k)
    assert abs(evaluate(translate(f, k), z) - want) <= 1e-10 * (1 + abs(want))


@settings(max_examples=50, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-3, 3), st.floats(-3, 3))
def test_modulation_is_multiplication(br, bi, x, y):
    f = block(0.5j, shift=1.0) + poly_expr([1, 1j])
    beta, z = complex(br, bi), complex(x, y)
    assert abs(evaluate(modulate(f, beta), z) - np.exp(beta * z) * evaluate(f, z)) <= 1e-12 * (
        1 + abs(np.exp(beta * z) * evaluate(f, z)))
