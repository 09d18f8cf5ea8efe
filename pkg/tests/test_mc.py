import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from mpplab.mc import (
    GofError,
    McConfig,
    McEstimate,
    ReplicaError,
    chi_square_gof,
    ks_two_sample,
    pool_cells,
    run_replicas,
    sample_replicas,
    stream,
)


def test_constant_kernel():
    est = run_replicas(McConfig(1000), lambda rng, n: np.ones(n))
    assert est.mean == 1.0 and est.standard_error == 0.0 and est.n == 1000


def test_poisson_kernel_mean():
    est = run_replicas(McConfig(1_000_000, 5), lambda rng, n: rng.poisson(3.0, n))
    assert abs(est.z(3.0)) < 4


@pytest.mark.parametrize("workers", [1, 4, 16, "auto"])
def test_worker_invariance(workers):
    ref = run_replicas(McConfig(100_000, 9, 1, block_size=7_000), lambda rng, n: rng.standard_normal(n))
    est = run_replicas(McConfig(100_000, 9, workers, block_size=7_000), lambda rng, n: rng.standard_normal(n))
    assert est.mean == ref.mean and est.m2 == ref.m2


def test_sample_replicas_ordered_and_deterministic():
    a = sample_replicas(McConfig(10_000, 3, 1, block_size=1000), lambda rng, n: rng.random(n))
    b = sample_replicas(McConfig(10_000, 3, 4, block_size=1000), lambda rng, n: rng.random(n))
    np.testing.assert_array_equal(a, b)
    assert a.shape == (10_000,)


def test_histogram():
    est, counts = run_replicas(McConfig(50_000, 1), lambda rng, n: rng.poisson(2.0, n), histogram=True)
    assert counts.sum() == 50_000
    assert est.mean == pytest.approx(np.dot(np.arange(len(counts)), counts) / 50_000)


def test_kernel_error_carries_replica_index():
    def bad(rng, n):
        raise RuntimeError("boom")

    with pytest.raises(ReplicaError) as exc:
        run_replicas(McConfig(10, 0, 1, block_size=5), bad)
    assert exc.value.replica == 0


def test_config_validation():
    with pytest.raises(ValueError):
        McConfig(0)
    with pytest.raises(ValueError):
        McConfig(10, workers=0)


@given(st.lists(st.floats(-100, 100), min_size=1, max_size=40), st.lists(st.floats(-100, 100), min_size=1,
                                                                          max_size=40),
       st.lists(st.floats(-100, 100), min_size=1, max_size=40))
def test_merge_associative(a, b, c):
    ea, eb, ec = (McEstimate.from_samples(v) for v in (a, b, c))
    left = ea.merge(eb).merge(ec)
    right = ea.merge(eb.merge(ec))
    whole = McEstimate.from_samples(a + b + c)
    for e in (left, right):
        assert e.n == whole.n
        assert e.mean == pytest.approx(whole.mean, rel=1e-12, abs=1e-9)
        assert e.m2 == pytest.approx(whole.m2, rel=1e-10, abs=1e-7)


def test_standard_error_definition():
    e = McEstimate.from_samples([1.0, 2.0, 3.0, 4.0])
    assert e.standard_error == pytest.approx(np.sqrt(e.variance / 4))


def test_streams_uncorrelated():
    draws = np.stack([stream(11, i).random(1000) for i in range(1000)])
    r = np.corrcoef(draws)
    off = r[np.triu_indices(1000, 1)]
    assert np.max(np.abs(np.arctanh(off))) * np.sqrt(997) < 6


def test_gof_null_and_power():
    rng = np.random.default_rng(0)
    obs = np.bincount(rng.poisson(3.0, 100_000))
    assert chi_square_gof(obs, stats.poisson(3.0).pmf).pvalue > 0.001
    assert chi_square_gof(obs, stats.poisson(4.0).pmf).pvalue < 1e-6


def test_gof_pooling():
    rng = np.random.default_rng(1)
    obs = np.bincount(rng.poisson(3.0, 1000))
    res = chi_square_gof(obs, stats.poisson(3.0).pmf)
    assert np.all(res.expected >= 5)
    assert res.observed.sum() == 1000
    o, e = pool_cells([1, 2, 3, 4], [1.0, 4.0, 6.0, 1.0])
    np.testing.assert_array_equal(e, [5.0, 7.0])
    np.testing.assert_array_equal(o, [3, 7])


def test_gof_too_few_cells():
    with pytest.raises(GofError):
        chi_square_gof([10], [1.0])


def test_ks_two_sample():
    rng = np.random.default_rng(2)
    a = rng.random(10_000)
    assert ks_two_sample(a, a)[0] == 0.0
    assert ks_two_sample(a, rng.random(10_000))[1] > 0.001
    assert ks_two_sample(a, rng.exponential(size=10_000))[1] < 1e-10
    with pytest.raises(ValueError):
        ks_two_sample(a[:50], a)
