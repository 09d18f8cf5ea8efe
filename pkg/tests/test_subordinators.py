import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats
from scipy.integrate import trapezoid

from mpplab.subordinators import (
    PathBudgetError,
    QuadratureError,
    covariance_inverse_stable,
    governing_equation_residual,
    inverse_stable_density_half,
    inverse_stable_laplace,
    inverse_stable_mean,
    inverse_stable_variance,
    sample_inverse_stable_marginal,
    sample_inverse_stable_path,
    sample_inverse_stable_paths,
    sample_stable_increment,
    sample_stable_path,
    stable_laplace,
)

# Cov(L(1), L(2)) at alpha=1/2 from an independent 40-digit quadrature of
# E[L(s)L(t)] = int_0^s ((t-u)^a + (s-u)^a) u^(a-1) du / (Gamma(a) Gamma(1+a))
COV_HALF_1_2 = 0.83598714005336920396


def test_stable_increment_validation(rng):
    with pytest.raises(ValueError):
        sample_stable_increment(1.0, 1.0, rng)
    with pytest.raises(ValueError):
        sample_stable_increment(0.5, 0.0, rng)


def test_stable_half_median(rng):
    # at alpha=1/2, S(1) = 1 / (2 Z^2) with Z standard normal
    x = sample_stable_increment(0.5, 1.0, rng, 200_000)
    assert np.median(x) == pytest.approx(1 / (2 * stats.norm.ppf(0.75) ** 2), rel=0.02)


@pytest.mark.parametrize("alpha,w", [(0.3, 1.0), (0.6, 0.5), (0.9, 2.0)])
def test_stable_laplace_transform(rng, alpha, w):
    x = np.exp(-w * sample_stable_increment(alpha, 1.0, rng, 200_000))
    se = x.std() / math.sqrt(x.size)
    assert abs(x.mean() - stable_laplace(alpha, 1.0, w)) < 4 * se


def test_inverse_marginal_degenerate_cases(rng):
    assert sample_inverse_stable_marginal(0.5, 0.0, rng) == 0.0
    assert sample_inverse_stable_marginal(1.0, 2.5, rng) == 2.5
    np.testing.assert_array_equal(sample_inverse_stable_marginal(1.0, 2.0, rng, 3), [2.0, 2.0, 2.0])


def test_inverse_marginal_mean(rng):
    x = sample_inverse_stable_marginal(0.5, 1.0, rng, 1_000_000)
    assert abs(x.mean() - 2 / math.sqrt(math.pi)) < 4 * x.std() / 1000


def test_inverse_half_is_half_normal(rng):
    x = sample_inverse_stable_marginal(0.5, 2.0, rng, 50_000)
    _, p = stats.kstest(x, stats.halfnorm(scale=2.0).cdf)
    assert p > 0.001


def test_moments_formulas():
    assert inverse_stable_mean(0.5, 1.0) == pytest.approx(2 / math.sqrt(math.pi))
    assert inverse_stable_mean(1.0, 3.0) == 3.0
    assert inverse_stable_mean(0.7, 0.0) == 0.0
    assert inverse_stable_variance(0.5, 1.0) == pytest.approx(2 - 4 / math.pi)
    assert inverse_stable_variance(1.0, 2.0) == 0.0


def test_covariance_examples():
    assert covariance_inverse_stable(0.5, 1.0, 1.0) == pytest.approx(2 - 4 / math.pi, abs=1e-10)
    assert covariance_inverse_stable(0.5, 1.0, 2.0) == pytest.approx(COV_HALF_1_2, abs=1e-10)
    assert covariance_inverse_stable(1.0, 1.0, 2.0) == 0.0
    assert covariance_inverse_stable(0.5, 0.0, 2.0) == 0.0


@given(st.floats(0.1, 0.95), st.floats(0.05, 5), st.floats(0.05, 5))
def test_covariance_symmetric_and_consistent(alpha, s, t):
    c1 = covariance_inverse_stable(alpha, s, t)
    c2 = covariance_inverse_stable(alpha, t, s)
    assert c1 == pytest.approx(c2, abs=1e-10)
    # Cauchy-Schwarz
    assert c1 <= math.sqrt(inverse_stable_variance(alpha, s) * inverse_stable_variance(alpha, t)) + 1e-9


@given(st.floats(0.1, 0.95), st.floats(0.05, 5))
def test_covariance_diagonal_is_variance(alpha, t):
    assert covariance_inverse_stable(alpha, t, t) == pytest.approx(inverse_stable_variance(alpha, t), abs=1e-9)


def test_covariance_error_budget():
    with pytest.raises(QuadratureError):
        covariance_inverse_stable(0.5, 1.0, 2.0, tol=1e-30)


def test_laplace_of_inverse():
    assert inverse_stable_laplace(1.0, 2.0, 1.5) == pytest.approx(math.exp(-3.0))
    assert inverse_stable_laplace(0.5, 1.0, 1.0) == pytest.approx(math.e * math.erfc(1.0))


def test_stable_path_monotone(rng):
    path = sample_stable_path(0.6, np.linspace(0, 1, 101), rng)
    assert path.values[0] == 0 and np.all(np.diff(path.values) > 0)
    with pytest.raises(ValueError):
        sample_stable_path(0.6, [0.1, 0.2], rng)


def test_inverse_paths_properties(rng):
    grid = np.linspace(0, 2, 9)
    paths = sample_inverse_stable_paths(0.7, grid, 1e-3, rng, 500)
    assert paths.shape == (500, 9)
    assert np.all(paths[:, 0] == 0)
    assert np.all(np.diff(paths, axis=1) >= 0)
    # grid-aligned values
    assert np.allclose(np.round(paths / 1e-3), paths / 1e-3)


def test_inverse_path_interpolation(rng):
    path = sample_inverse_stable_path(0.5, [0.0, 1.0, 2.0], 1e-2, rng)
    assert path(1.5) == path.values[1]
    assert path(2.0) == path.values[2]


def test_inverse_path_alpha_one(rng):
    np.testing.assert_array_equal(sample_inverse_stable_paths(1.0, [0.5, 1.0], 1e-3, rng, 2),
                                  [[0.5, 1.0], [0.5, 1.0]])


def test_path_budget(rng):
    with pytest.raises(PathBudgetError):
        sample_inverse_stable_paths(0.5, [50.0], 1e-3, rng, 10, max_steps=100)


def test_path_sampler_matches_marginal(rng):
    a = sample_inverse_stable_paths(0.6, [1.5], 1e-3, rng, 20_000)[:, 0]
    b = sample_inverse_stable_marginal(0.6, 1.5, rng, 20_000)
    _, p = stats.ks_2samp(a, b)
    assert p > 0.001


def test_half_density_normalised():
    x = np.linspace(0, 40, 400_001)
    assert trapezoid(inverse_stable_density_half(x, 3.0), x) == pytest.approx(1.0, abs=1e-6)


def test_governing_equation_residual_small_and_shrinking():
    coarse = governing_equation_residual([0.5, 1.0], [1.0], h=4e-4)
    fine = governing_equation_residual([0.5, 1.0], [1.0], h=1e-4)
    assert fine < 1e-3
    assert fine < coarse
