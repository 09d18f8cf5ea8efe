import numpy as np
import pytest

from mpplab.martingales import (
    MartingaleTestSpec,
    broken_sampler,
    check_chain,
    increment_independence_test,
    run_martingale_test,
)
from mpplab.mpp import MppModel, OrderingError

CHAIN = ((0.5, 0.5), (1.0, 0.5), (1.0, 1.0))


def test_chain_checks():
    assert len(check_chain(CHAIN)) == 3
    with pytest.raises(OrderingError):
        check_chain([(0.5, 0.5), (1.0, 0.2)])
    with pytest.raises(OrderingError):
        MartingaleTestSpec("compensated_mpp", (1.0, 2.0), [(0.5, 0.5), (0.5, 0.5)], replicas=10_000)


def test_origin_prepended():
    spec = MartingaleTestSpec("compensated_mpp", (1.0, 2.0), CHAIN, replicas=10_000)
    assert spec.chain[0] == (0.0, 0.0) and len(spec.chain) == 4
    again = MartingaleTestSpec("compensated_mpp", (1.0, 2.0), spec.chain, replicas=10_000)
    assert again.chain == spec.chain


@pytest.mark.parametrize("kwargs", [
    dict(family="nope"),
    dict(replicas=100),
    dict(family="exponential_mpp", c=-1.0),
    dict(family="exponential_mpp"),
    dict(family="compensated_mfpp"),
    dict(family="compensated_mfpp", orders=(0.5, 1.5)),
    dict(chain=((1.0,), (2.0,))),
])
def test_spec_validation(kwargs):
    base = dict(family="compensated_mpp", rates=(1.0, 2.0), chain=CHAIN, replicas=10_000)
    base.update(kwargs)
    with pytest.raises(ValueError):
        MartingaleTestSpec(**base)


@pytest.mark.parametrize("family,extra", [
    ("compensated_mpp", {}),
    ("exponential_mpp", {"c": -0.5}),
    ("exponential_mpp", {"c": 1.0}),
])
def test_true_mpp_families_pass(family, extra):
    rep = run_martingale_test(MartingaleTestSpec(family, (1.0, 2.0), CHAIN, replicas=100_000, seed=3, **extra))
    assert rep.passed, rep
    assert len(rep.pairs) == 3 and rep.replicas == 100_000


def test_true_mfpp_passes():
    spec = MartingaleTestSpec("compensated_mfpp", (1.0,), ((0.25,), (0.5,), (1.0,)), orders=(0.5,),
                              replicas=20_000, seed=4, resolution=2e-2)
    assert run_martingale_test(spec).passed


@pytest.mark.parametrize("family,extra", [("compensated_mpp", {}), ("exponential_mpp", {"c": -0.5})])
def test_wrong_compensator_is_detected(family, extra):
    spec = MartingaleTestSpec(family, (1.0, 2.0), CHAIN, replicas=100_000, seed=5, compensator_scale=1.2, **extra)
    rep = run_martingale_test(spec)
    assert not rep.passed
    assert rep.max_abs_z_mean > 10


def test_wrong_mfpp_compensator_is_detected():
    spec = MartingaleTestSpec("compensated_mfpp", (1.0,), ((0.25,), (0.5,), (1.0,)), orders=(0.5,),
                              replicas=20_000, seed=6, resolution=2e-2, compensator_scale=1.2)
    assert not run_martingale_test(spec).passed


def test_worker_count_does_not_change_report():
    a = run_martingale_test(MartingaleTestSpec("compensated_mpp", (1.0, 2.0), CHAIN, replicas=50_000, seed=8))
    b = run_martingale_test(MartingaleTestSpec("compensated_mpp", (1.0, 2.0), CHAIN, replicas=50_000, seed=8,
                                               workers=3))
    assert [p.z_mean for p in a.pairs] == [p.z_mean for p in b.pairs]


def test_independent_increments_pass():
    rep = increment_independence_test(MppModel((1.0, 2.0)), [(0.0, 0.0)] + list(CHAIN), replicas=50_000, seed=1)
    assert rep.passed
    assert len(rep.pairs) == 3
    assert rep.threshold == pytest.approx(0.01 / 6)


def test_broken_sampler_is_detected():
    rep = increment_independence_test(MppModel((1.0, 2.0)), [(0.0, 0.0)] + list(CHAIN), replicas=50_000, seed=1,
                                      sampler=broken_sampler)
    assert not rep.passed


def test_broken_sampler_is_still_monotone(rng):
    x = broken_sampler(MppModel((1.0, 2.0)), list(CHAIN), rng, 1000)
    assert np.all(np.diff(x, axis=1) >= 0)


def test_independence_needs_three_points():
    with pytest.raises(ValueError):
        increment_independence_test(MppModel((1.0,)), [(0.0,), (1.0,)], replicas=1000)
