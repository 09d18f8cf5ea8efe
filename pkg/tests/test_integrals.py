import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from mpplab.integrals import (
    FracIntegralSpec,
    cell_weights,
    gaussian_asymptotic_check,
    gaussian_stated_moments,
    integral_conditional_mean,
    integral_mean,
    integral_variance,
    integrate_path,
    integrate_path_exact,
    sample_integral_compound,
    sample_integral_quadrature,
)
from mpplab.mpp import CountingPath, MppModel, MppPath, mpp_pmf, sample_mpp_path

SPEC = FracIntegralSpec((1.0, 2.0), (1.0, 1.0), (1.0, 1.0))


def _path(*jumps, horizon=10.0):
    return MppPath(tuple(CountingPath(np.asarray(j, dtype=float), horizon) for j in jumps))


def test_closed_form_examples():
    assert integral_mean(SPEC) == pytest.approx(1.5)
    assert integral_variance(SPEC) == pytest.approx(1.0)


@given(st.floats(0.1, 5), st.floats(0.05, 3))
def test_one_dimensional_reductions(lam, t):
    spec = FracIntegralSpec((lam,), (1.0,), (t,))
    assert integral_mean(spec) == pytest.approx(lam * t * t / 2)
    assert integral_variance(spec) == pytest.approx(lam * t ** 3 / 3)


@given(st.floats(0.2, 3), st.floats(0.1, 3), st.floats(0.1, 3))
def test_variance_homogeneity(rho, lam, c):
    base = FracIntegralSpec((lam, 1.0), (rho, 1.0), (1.0, 1.0))
    scaled = base.at((c, 1.0))
    # only axis 1 moves: its own term scales as c^(2 rho + 1), the other as c^(2 rho)
    own = lam / ((2 * rho + 1) * math.gamma(rho + 1) ** 2)
    other = (1 / 3) * (1 / math.gamma(rho + 1)) ** 2
    assert integral_variance(scaled) == pytest.approx(own * c ** (2 * rho + 1) + other * c ** (2 * rho), rel=1e-10)
    assert integral_variance(base) == pytest.approx(own + other, rel=1e-10)


def test_small_corner_gives_small_moments():
    tiny = SPEC.at((1e-8, 1e-8))
    assert integral_mean(tiny) < 1e-15 and integral_variance(tiny) < 1e-20


def test_spec_validation():
    with pytest.raises(ValueError):
        FracIntegralSpec((1.0,), (0.0,), (1.0,))
    with pytest.raises(ValueError):
        FracIntegralSpec((1.0,), (1.0,), (0.0,))
    with pytest.raises(ValueError):
        FracIntegralSpec((1.0, 2.0), (1.0,), (1.0, 1.0))
    # orders above 1 are allowed for integrals
    assert FracIntegralSpec((1.0,), (2.5,), (1.0,)).rho[0] == 2.5


def test_conditional_mean():
    spec = FracIntegralSpec((1.0,), (1.0,), (2.0,))
    assert integral_conditional_mean(spec, 3) == pytest.approx(3.0)
    assert integral_conditional_mean(spec, 0) == 0.0
    with pytest.raises(ValueError):
        integral_conditional_mean(spec, -1)


def test_conditional_mean_tower_property():
    spec = FracIntegralSpec((1.0, 2.0), (0.5, 1.5), (1.0, 0.7))
    total = sum(mpp_pmf(spec.model, spec.t, m) * integral_conditional_mean(spec, m) for m in range(80))
    assert total == pytest.approx(integral_mean(spec), abs=1e-10)


def test_stated_gaussian_moments_match_closed_forms():
    for t in [(1.0, 1.0), (0.3, 0.07), (2.0, 0.5)]:
        spec = SPEC.at(t)
        mean, var = gaussian_stated_moments(spec)
        assert mean == pytest.approx(integral_mean(spec), abs=1e-12)
        assert var == pytest.approx(integral_variance(spec), abs=1e-12)


def test_compound_requires_riemann(rng):
    with pytest.raises(ValueError):
        sample_integral_compound(FracIntegralSpec((1.0,), (0.5,), (1.0,)), rng)


def test_compound_moments(rng):
    x = sample_integral_compound(SPEC, rng, 1_000_000)
    assert abs(x.mean() - 1.5) < 3 * x.std() / 1000
    assert x.var() == pytest.approx(1.0, rel=0.01)
    assert isinstance(sample_integral_compound(SPEC, rng), float)


def test_cell_weights_are_exact_kernel_masses():
    for rho in (0.3, 1.0, 2.0):
        mids, w = cell_weights(2.0, rho, 64)
        assert w.sum() == pytest.approx(2.0 ** rho / math.gamma(rho + 1), rel=1e-13)
        assert np.all(w > 0) and mids[0] > 0 and mids[-1] < 2.0


def test_zero_path_integrates_to_zero():
    p = _path([], [])
    assert integrate_path(p, (1.0, 0.5), (1.0, 1.0)) == 0.0
    assert integrate_path_exact(p, (1.0, 0.5), (1.0, 1.0)) == 0.0


def test_single_jump_converges_at_first_order():
    tau, t = 0.3141, 1.0
    p = _path([tau])
    errs = [abs(integrate_path(p, (1.0,), (t,), n) - (t - tau)) for n in (64, 256, 1024)]
    assert integrate_path_exact(p, (1.0,), (t,)) == pytest.approx(t - tau)
    assert errs[-1] <= 1 / 1024
    assert errs[0] <= 1 / 64


def test_quadrature_matches_exact_on_sampled_paths(rng):
    model = MppModel((1.0, 2.0))
    for rho in [(1.0, 1.0), (0.5, 1.0), (0.3, 2.0)]:
        for _ in range(20):
            p = sample_mpp_path(model, (1.0, 1.0), rng)
            exact = integrate_path_exact(p, rho, (1.0, 1.0))
            grid = integrate_path(p, rho, (1.0, 1.0), 4096)
            assert grid == pytest.approx(exact, abs=5e-3 * (1 + exact))


def test_subdivisions_validated(rng):
    with pytest.raises(ValueError):
        sample_integral_quadrature(SPEC, 1, rng)


def test_monotone_in_corner_on_shared_paths(rng):
    model = MppModel((1.0, 2.0))
    corners = [(0.2, 0.2), (0.5, 0.2), (0.5, 0.8), (1.0, 1.0)]
    for _ in range(50):
        p = sample_mpp_path(model, (1.0, 1.0), rng)
        for rho in [(1.0, 1.0), (0.5, 1.5)]:
            vals = [integrate_path_exact(p, rho, c) for c in corners]
            assert vals[0] >= 0 and all(b >= a for a, b in zip(vals, vals[1:]))
        grid = [integrate_path(p, (1.0, 1.0), c, 128) for c in corners]
        assert all(b >= a - 1e-12 for a, b in zip(grid, grid[1:]))


def test_quadrature_mean_for_fractional_order(rng):
    spec = FracIntegralSpec((1.0, 2.0), (0.5, 1.0), (1.0, 1.0))
    x = sample_integral_quadrature(spec, 128, rng, 20_000)
    assert abs(x.mean() - integral_mean(spec)) < 4 * x.std() / math.sqrt(x.size)


def test_compound_and_quadrature_agree_in_law(rng):
    a = sample_integral_compound(SPEC, rng, 5_000)
    b = sample_integral_quadrature(SPEC, 512, rng, 5_000)
    assert stats.ks_2samp(a, b).pvalue > 0.001


def test_gaussian_check_validation(rng):
    with pytest.raises(ValueError):
        gaussian_asymptotic_check(SPEC, scales=(0.5,), n=100, rng=rng)
    with pytest.raises(ValueError):
        gaussian_asymptotic_check(FracIntegralSpec((1.0,), (0.5,), (1.0,)), n=100, rng=rng)


def test_gaussian_check_report_shape(rng):
    rep = gaussian_asymptotic_check(SPEC, n=2_000, rng=rng)
    assert [r.scale for r in rep.rungs] == [0.1, 0.05, 0.025]
    assert all(0 <= r.ks <= 1 for r in rep.rungs)
    assert rep.passed == rep.ks_decreasing
