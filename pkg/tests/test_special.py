import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from mpplab.special import (
    MLParams,
    SeriesError,
    TermVanishes,
    log_gamma_ratio,
    mittag_leffler,
    ml,
    ml_pochhammer_log_term,
)

# high-precision references computed once with mpmath at 40 digits
E_HALF_MINUS_ONE = 0.42758357615580700441
LOG_GAMMA_RATIO_13_M07 = -1.5606477482646682869
POCH_LOG_TERM_06_1_2_X5_K40 = 13.306359165956003598


def test_ml_exp_special_case():
    assert ml(1, 1, 1.0) == pytest.approx(math.e, rel=1e-14)
    for x in np.linspace(-20, 20, 81):
        assert ml(1, 1, x) == pytest.approx(math.exp(x), rel=1e-12)


def test_ml_at_zero():
    for beta in (0.5, 1.0, 2.5):
        assert ml(0.7, beta, 0.0) == pytest.approx(1 / math.gamma(beta), rel=1e-15)


def test_ml_half_against_erfc():
    assert ml(0.5, 1.0, -1.0) == pytest.approx(E_HALF_MINUS_ONE, abs=1e-14)
    assert ml(0.5, 1.0, -1.0) == pytest.approx(math.e * math.erfc(1.0), abs=1e-10)


def test_ml_alpha_two_is_cosh():
    assert ml(2.0, 1.0, 4.0) == pytest.approx(math.cosh(2.0), rel=1e-13)
    assert ml(2.0, 1.0, -4.0) == pytest.approx(math.cos(2.0), rel=1e-12)


def test_ml_three_parameter_gamma_one_matches_two_parameter():
    for x in (-3.0, 0.5, 2.0):
        assert mittag_leffler(MLParams(0.6, 1.5, 1.0), x) == ml(0.6, 1.5, x)


def test_ml_three_parameter_against_mpmath():
    p = MLParams(0.7, 1.3, 2.5)
    x = -4.0
    with mpmath.workdps(50):
        ref = mpmath.nsum(lambda k: mpmath.rf(2.5, k) * mpmath.mpf(x) ** k
                          / (mpmath.gamma(0.7 * k + 1.3) * mpmath.factorial(k)), [0, mpmath.inf])
    assert mittag_leffler(p, x) == pytest.approx(float(ref), rel=1e-11)


def test_ml_reports_tolerance():
    value, rel = mittag_leffler(MLParams(0.5), -3.0, full_output=True)
    assert rel <= 1e-12
    assert value == pytest.approx(math.exp(9) * math.erfc(3), rel=1e-10)


def test_ml_severe_cancellation_falls_back_to_high_precision():
    # alpha=0.3 at x=-5 loses about 93 digits to cancellation
    assert ml(0.3, 1.0, -5.0) == pytest.approx(ml(0.3, 1.3, -5.0) * -5.0 + 1.0, rel=1e-10)
    assert 0 < ml(0.3, 1.0, -5.0) < 1


def test_ml_partial_sums_beyond_double_range():
    # terms stay below the double limit but their absolute sum does not;
    # reference from a 1000-digit direct summation
    v = mittag_leffler(MLParams(0.2, 15.4, 73.0), -3.4291236241827536)
    assert v == pytest.approx(6.2380762781359513234e-49, rel=1e-12)


def test_ml_result_below_double_range():
    assert mittag_leffler(MLParams(0.9665609657590848, 200 * 0.9665609657590848 + 1, 201.0), -2.0) >= 0.0


def test_ml_positive_overflow_raises():
    with pytest.raises(SeriesError):
        ml(0.2, 1.0, 10.0)


def test_ml_budget_exhaustion_raises():
    with pytest.raises(SeriesError) as exc:
        mittag_leffler(MLParams(1.0), 50.0, max_terms=10)
    assert exc.value.value is not None


def test_mlparams_validation():
    with pytest.raises(ValueError):
        MLParams(0.0)
    with pytest.raises(ValueError):
        MLParams(0.5, beta=-1.0)


@given(st.sampled_from([0.3, 0.5, 0.8]), st.sampled_from([0.5, 1.0, 2.0]), st.floats(-5, 5))
def test_ml_recurrence(alpha, beta, x):
    lhs = ml(alpha, beta, x)
    rhs = x * ml(alpha, alpha + beta, x) + 1 / math.gamma(beta)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


@given(st.sampled_from([0.2, 0.5, 0.9, 1.0]), st.floats(0, 2), st.floats(0.01, 1.5))
def test_ml_increasing_for_positive_argument(alpha, x, dx):
    assert ml(alpha, 1.0, x + dx) > ml(alpha, 1.0, x)


@given(st.sampled_from([0.25, 0.5, 0.75, 1.0]), st.floats(-20, 0))
def test_ml_envelope_for_negative_argument(alpha, x):
    # keep the largest series term below about e^60 so the sum stays at desk scale
    assume(abs(x) ** (1 / alpha) <= 60)
    v = ml(alpha, 1.0, x)
    assert 0 < v <= 1


def test_log_gamma_ratio_examples():
    assert log_gamma_ratio(5, 3) == (1, pytest.approx(math.log(12)))
    with pytest.raises(TermVanishes):
        log_gamma_ratio(2.0, 0.0)
    with pytest.raises(TermVanishes):
        log_gamma_ratio(2.0, -3.0)
    sign, val = log_gamma_ratio(1.3, -0.7)
    assert sign == -1
    assert val == pytest.approx(LOG_GAMMA_RATIO_13_M07, rel=1e-14)


@given(st.floats(0.1, 20), st.floats(-9.9, 20).filter(lambda b: abs(b - round(b)) > 1e-3 or b > 0))
def test_log_gamma_ratio_matches_gamma(a, b):
    sign, val = log_gamma_ratio(a, b)
    ref = mpmath.gamma(a) / mpmath.gamma(b)
    assert sign == (1 if ref > 0 else -1)
    assert val == pytest.approx(float(mpmath.log(abs(ref))), abs=1e-10)


def test_pochhammer_log_term_examples():
    assert ml_pochhammer_log_term(MLParams(1, 1, 1), 0, 3.0) == (1, 0.0)
    sign, val = ml_pochhammer_log_term(MLParams(1, 1, 1), 3, -2.0)
    assert sign == -1 and val == pytest.approx(math.log(8 / 6), rel=1e-14)
    sign, val = ml_pochhammer_log_term(MLParams(0.6, 1, 2), 40, 5.0)
    assert sign == 1 and val == pytest.approx(POCH_LOG_TERM_06_1_2_X5_K40, rel=1e-13)


@given(st.integers(0, 300), st.floats(-10, 10).filter(lambda x: x != 0))
def test_pochhammer_terms_reproduce_series_terms(k, x):
    p = MLParams(0.6, 1.2, 1.7)
    sign, val = ml_pochhammer_log_term(p, k, x)
    with mpmath.workdps(40):
        ref = mpmath.rf(p.gamma, k) * mpmath.mpf(x) ** k / (mpmath.gamma(k * p.alpha + p.beta) * mpmath.factorial(k))
    assert sign == (1 if ref > 0 else -1)
    assert val == pytest.approx(float(mpmath.log(abs(ref))), abs=1e-13 * max(1.0, abs(val)))
