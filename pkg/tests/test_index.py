import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mpplab.index import (
    DimensionError,
    FracOrders,
    IndexPoint,
    RateVector,
    compositions,
    lambda_dot,
    n_compositions,
    partial_le,
    partial_lt,
)

coords = st.lists(st.floats(0, 10, allow_nan=False), min_size=1, max_size=4)


def test_index_point_rejects_negative_and_nan():
    with pytest.raises(ValueError):
        IndexPoint([1.0, -0.5])
    with pytest.raises(ValueError):
        IndexPoint([math.nan])


def test_rates_and_orders_validation():
    with pytest.raises(ValueError):
        RateVector([1.0, 0.0])
    with pytest.raises(ValueError):
        FracOrders([0.5, 1.2])
    assert FracOrders([0.5, 1.2], relaxed=True).d == 2
    with pytest.raises(ValueError):
        FracOrders([0.0], relaxed=True)


def test_partial_order_examples():
    assert partial_le((1, 2), (1, 3))
    assert not partial_le((1, 2), (2, 1)) and not partial_le((2, 1), (1, 2))
    assert partial_lt((0, 0), (0, 1))
    assert not partial_lt((1, 1), (1, 1))
    with pytest.raises(DimensionError):
        partial_le((1,), (1, 2))


@given(coords)
def test_partial_le_reflexive(c):
    assert partial_le(c, c)
    assert not partial_lt(c, c)


@given(coords, coords, coords)
def test_partial_le_transitive(a, b, c):
    d = min(len(a), len(b), len(c))
    a, b, c = a[:d], b[:d], c[:d]
    if partial_le(a, b) and partial_le(b, c):
        assert partial_le(a, c)


def test_lambda_dot():
    assert lambda_dot(RateVector([1, 2]), IndexPoint([1, 1])) == 3.0
    with pytest.raises(DimensionError):
        lambda_dot(RateVector([1, 2]), IndexPoint([1]))


def test_compositions_order_and_count():
    assert [c.parts for c in compositions(2, 2)] == [(2, 0), (1, 1), (0, 2)]
    assert [c.parts for c in compositions(0, 3)] == [(0, 0, 0)]
    assert list(c.parts for c in compositions(3, 1)) == [(3,)]


@given(st.integers(0, 9), st.integers(1, 4))
def test_compositions_enumerate_theta(n, d):
    comps = [c.parts for c in compositions(n, d)]
    assert len(comps) == n_compositions(n, d) == math.comb(n + d - 1, d - 1)
    assert len(set(comps)) == len(comps)
    assert all(sum(p) == n and len(p) == d and min(p) >= 0 for p in comps)
