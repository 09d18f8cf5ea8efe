"""The multiparameter Poisson process (MPP).

The field is represented additively: N(t) = N_1(t_1) + ... + N_d(t_d) with
independent one-parameter Poisson processes N_i of rate lambda_i.  Paths
are stored as exact per-axis jump times; grids are only views.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .index import (
    DimensionError,
    IndexPoint,
    RateVector,
    as_point,
    lambda_dot,
    partial_le,
)


class OrderingError(ValueError):
    """Index points violate the ordering an operation requires."""


@dataclass(frozen=True)
class MppModel:
    rates: RateVector

    def __init__(self, rates):
        object.__setattr__(self, "rates", rates if isinstance(rates, RateVector) else RateVector(rates))

    @property
    def d(self) -> int:
        return self.rates.d

    def point(self, t) -> IndexPoint:
        t = as_point(t)
        if t.d != self.d:
            raise DimensionError(f"index point has dimension {t.d}, model has {self.d}")
        return t

    def mean(self, t) -> float:
        return lambda_dot(self.rates, self.point(t))


@dataclass(frozen=True)
class CountingPath:
    jump_times: np.ndarray
    horizon: float

    def count(self, t: float) -> int:
        return int(np.searchsorted(self.jump_times, t, side="right"))


@dataclass(frozen=True)
class MppPath:
    axes: tuple[CountingPath, ...]

    def __call__(self, t) -> int:
        t = as_point(t)
        if t.d != len(self.axes):
            raise DimensionError("index point and path dimensions differ")
        for ax, c in zip(self.axes, t.coords):
            if c > ax.horizon:
                raise ValueError(f"t={t.coords} exceeds the sampled horizon")
        return sum(ax.count(c) for ax, c in zip(self.axes, t.coords))


@dataclass(frozen=True)
class MvMppSample:
    counts: tuple[int, ...]


def _poisson_process_times(rate: float, horizon: float, rng: np.random.Generator) -> np.ndarray:
    times = []
    s = rng.exponential(1.0 / rate)
    while s <= horizon:
        times.append(s)
        s += rng.exponential(1.0 / rate)
    return np.asarray(times)


def sample_mpp_path(model: MppModel, horizon, rng: np.random.Generator) -> MppPath:
    """Exact path on [0, horizon]: exponential inter-arrivals on every axis."""
    horizon = model.point(horizon)
    axes = tuple(
        CountingPath(_poisson_process_times(lam, h, rng), h)
        for lam, h in zip(model.rates.rates, horizon.coords)
    )
    return MppPath(axes)


def sample_axis_counts(model: MppModel, points, rng: np.random.Generator, size: int) -> np.ndarray:
    """Per-axis counts N_i(t_i) at several index points for ``size`` independent fields.

    Each axis is one-dimensional, so the finite-dimensional law of N_i at
    the coordinates it meets is sampled exactly by independent Poisson
    increments between the sorted distinct coordinates.

    Returns an integer array of shape (size, len(points), d).
    """
    pts = np.atleast_2d(np.asarray([model.point(p).coords for p in points], dtype=float))
    k, d = pts.shape
    out = np.zeros((size, k, d), dtype=np.int64)
    for j, lam in enumerate(model.rates.rates):
        coords, inverse = np.unique(pts[:, j], return_inverse=True)
        widths = np.diff(np.concatenate([[0.0], coords]))
        inc = rng.poisson(lam * widths, size=(size, coords.size))
        out[:, :, j] = np.cumsum(inc, axis=1)[:, inverse]
    return out


def sample_mpp_counts(model: MppModel, points, rng: np.random.Generator, size: int) -> np.ndarray:
    """Field values N(t) at several index points, shape (size, len(points))."""
    return sample_axis_counts(model, points, rng, size).sum(axis=2)


def mpp_log_pmf(model: MppModel, t, n: int) -> float:
    mu = model.mean(t)
    if mu == 0:
        return 0.0 if n == 0 else -math.inf
    return n * math.log(mu) - mu - float(gammaln(n + 1))


def mpp_pmf(model: MppModel, t, n: int) -> float:
    """P(N(t) = n) = (Lambda.t)^n exp(-Lambda.t) / n!, evaluated in log space."""
    if n < 0:
        return 0.0
    return math.exp(mpp_log_pmf(model, t, n))


def mpp_pgf(model: MppModel, t, u: float) -> float:
    if abs(u) > 1:
        raise ValueError("u: expected |u| <= 1")
    return math.exp(model.mean(t) * (u - 1.0))


def mpp_covariance(model: MppModel, s, t) -> float:
    """Cov(N(s), N(t)) = sum_i lambda_i min(s_i, t_i)."""
    s, t = model.point(s), model.point(t)
    return float(sum(lam * min(a, b) for lam, a, b in zip(model.rates.rates, s.coords, t.coords)))


def _conditional_p(model: MppModel, s, t) -> float:
    s, t = model.point(s), model.point(t)
    if not partial_le(s, t):
        raise OrderingError(f"expected s <= t componentwise, got s={s.coords}, t={t.coords}")
    mt = model.mean(t)
    if mt == 0:
        raise OrderingError("Lambda.t = 0: conditioning event has no mass spread")
    return model.mean(s) / mt


def mpp_conditional_pmf(model: MppModel, s, t, n: int, m: int) -> float:
    """P(N(s) = n | N(t) = m): Binomial(m, Lambda.s / Lambda.t)."""
    p = _conditional_p(model, s, t)
    if m < 0:
        raise ValueError("m: expected m >= 0")
    if n < 0 or n > m:
        return 0.0
    if p == 1.0:
        return 1.0 if n == m else 0.0
    if p == 0.0:
        return 1.0 if n == 0 else 0.0
    log = (gammaln(m + 1) - gammaln(n + 1) - gammaln(m - n + 1)
           + n * math.log(p) + (m - n) * math.log1p(-p))
    return math.exp(log)


def mpp_conditional_moments(model: MppModel, s, t, m: int) -> tuple[float, float]:
    p = _conditional_p(model, s, t)
    return m * p, m * p * (1 - p)


def mpp_bivariate_conditional_mean(model: MppModel, r, s, t, m: int) -> float:
    """E[N(r) N(s) | N(t) = m] for 0 < r <= s <= t."""
    r, s, t = model.point(r), model.point(s), model.point(t)
    if not (partial_le(r, s) and partial_le(s, t)):
        raise OrderingError("expected r <= s <= t componentwise")
    if not all(c > 0 for c in r.coords):
        raise OrderingError("expected r strictly positive")
    if m < 1:
        raise ValueError("m: expected m >= 1")
    lr, ls, lt = model.mean(r), model.mean(s), model.mean(t)
    return m * lr / lt + m * (m - 1) * lr * ls / lt ** 2


def bivariate_conditional_mean_bruteforce(model: MppModel, r, s, t, m: int) -> float:
    """Same quantity by summing n k over the trinomial joint conditional law."""
    r, s, t = model.point(r), model.point(s), model.point(t)
    a = model.mean(r)
    b = model.mean(s) - a
    c = model.mean(t) - model.mean(s)
    tot = a + b + c
    pa, pb, pc = a / tot, b / tot, c / tot
    acc = 0.0
    for k in range(m + 1):
        for n in range(k, m + 1):
            coef = math.factorial(m) // (math.factorial(k) * math.factorial(n - k) * math.factorial(m - n))
            acc += n * k * coef * pa ** k * pb ** (n - k) * pc ** (m - n)
    return acc


def sample_mvmpp(model: MppModel, t, rng: np.random.Generator, size=None):
    """Multivariate sample (N_1(t_1), ..., N_d(t_d)).

    Without ``size`` returns an :class:`MvMppSample`; otherwise an integer
    array of shape (size, d).
    """
    t = model.point(t)
    lam = model.rates.asarray() * t.asarray()
    if size is None:
        return MvMppSample(tuple(int(v) for v in rng.poisson(lam)))
    return rng.poisson(lam, size=(size, model.d))
