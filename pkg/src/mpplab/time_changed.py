"""Time-changed multiparameter Poisson processes.

* SFPP: the field run along independent stable subordinators,
  N(S_1(t), ..., S_d(t)), a one-parameter process with heavy tails
  (no finite moments of any order when some alpha_i < 1).
* MFPP: the field run on independent inverse stable subordinators,
  N(L_1(t_1), ..., L_d(t_d)), a sum of independent fractional Poisson
  processes.
* A fractional variant of the MPP law normalised by E_{alpha,1}.

All d-dimensional pmfs are d successive one-dimensional convolutions of
the per-axis marginals; summing over weak compositions gives the same
numbers and is kept as a small-case oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from scipy.special import gammaln

from .index import (
    DimensionError,
    FracOrders,
    IndexPoint,
    RateVector,
    as_point,
    compositions,
    lambda_dot,
)
from .special import EPS, MLParams, SeriesError, TermVanishes, log_gamma_ratio, mittag_leffler, ml
from .subordinators import _stable_standard, covariance_inverse_stable, sample_inverse_stable_marginal

SFPP_MAX_ARGUMENT = 30.0


def _rates(r) -> RateVector:
    return r if isinstance(r, RateVector) else RateVector(r)


def _orders(a) -> FracOrders:
    return a if isinstance(a, FracOrders) else FracOrders(a)


@dataclass(frozen=True)
class SfppModel:
    rates: RateVector
    orders: FracOrders

    def __init__(self, rates, orders):
        rates, orders = _rates(rates), _orders(orders)
        if rates.d != orders.d:
            raise DimensionError(f"rates have dimension {rates.d}, orders {orders.d}")
        object.__setattr__(self, "rates", rates)
        object.__setattr__(self, "orders", orders)

    @property
    def d(self) -> int:
        return self.rates.d

    def scale(self) -> np.ndarray:
        """lambda_i^alpha_i, the per-axis Laplace-exponent coefficients."""
        return self.rates.asarray() ** self.orders.asarray()


@dataclass(frozen=True)
class MfppModel:
    rates: RateVector
    orders: FracOrders

    def __init__(self, rates, orders):
        rates, orders = _rates(rates), _orders(orders)
        if rates.d != orders.d:
            raise DimensionError(f"rates have dimension {rates.d}, orders {orders.d}")
        object.__setattr__(self, "rates", rates)
        object.__setattr__(self, "orders", orders)

    @property
    def d(self) -> int:
        return self.rates.d

    def point(self, t) -> IndexPoint:
        t = as_point(t)
        if t.d != self.d:
            raise DimensionError(f"index point has dimension {t.d}, model has {self.d}")
        return t


def convolve_all(vectors, n_max: int) -> np.ndarray:
    out = np.zeros(n_max + 1)
    out[0] = 1.0
    for v in vectors:
        out = np.convolve(out, v[: n_max + 1])[: n_max + 1]
    return out


def enumerate_compositions(vectors, n: int) -> float:
    """sum over weak compositions (n_1..n_d) of n of prod_i v_i[n_i]."""
    total = 0.0
    for comp in compositions(n, len(vectors)):
        prod = 1.0
        for v, k in zip(vectors, comp.parts):
            prod *= v[k]
        total += prod
    return total


def poisson_mixed(rng: np.random.Generator, lam) -> np.ndarray:
    """Poisson draws for arbitrary nonnegative means.

    numpy's sampler rejects means beyond ~1e19; means above 1e15 use the
    normal approximation, whose error there is far below one count in 10^7.
    """
    lam = np.asarray(lam, dtype=float)
    big = lam > 1e15
    if not big.any():
        return rng.poisson(lam)
    out = np.empty(lam.shape, dtype=np.float64)
    out[~big] = rng.poisson(lam[~big])
    out[big] = np.round(lam[big] + np.sqrt(lam[big]) * rng.standard_normal(int(big.sum())))
    return out


# --------------------------------------------------------------------------- SFPP


def _sfpp_series(x: float, alpha: float, n: int, max_terms: int = 5000):
    """((-1)^n / n!) sum_r (-x)^r Gamma(alpha r + 1) / (r! Gamma(alpha r + 1 - n)).

    Returns (value, error estimate).
    """
    total = 0.0
    comp = 0.0
    abs_total = 0.0
    small_run = 0
    prev = math.inf
    lx = math.log(x)
    lnf = float(gammaln(n + 1))
    for r in range(max_terms):
        try:
            sgn, lratio = log_gamma_ratio(alpha * r + 1.0, alpha * r + 1.0 - n)
        except TermVanishes:
            continue
        mag = math.exp(r * lx - float(gammaln(r + 1)) + lratio - lnf)
        term = mag if (n + r) % 2 == 0 else -mag
        term *= sgn
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        abs_total += mag
        if total != 0 and mag < 1e-16 * abs(total) and mag <= prev:
            small_run += 1
            if small_run >= 5:
                break
        else:
            small_run = 0
        prev = mag
    else:
        raise SeriesError(f"no convergence within {max_terms} terms", total, prev)
    return total, prev + 4 * EPS * abs_total


@lru_cache(maxsize=4096)
def _sfpp_marginal_cached(lam: float, alpha: float, n: int, t: float):
    if t == 0:
        return (1.0 if n == 0 else 0.0), 0.0
    x = lam ** alpha * t
    if x > SFPP_MAX_ARGUMENT:
        raise ValueError(f"lambda^alpha t = {x:.4g} exceeds the supported maximum {SFPP_MAX_ARGUMENT}")
    return _sfpp_series(x, alpha, n)


def sfpp_marginal_pmf(lam: float, alpha: float, n: int, t: float, *, full_output: bool = False,
                      max_error: float = 1e-8):
    """P(N(S(t)) = n) for one axis from the alternating series.

    Gamma-pole terms are exactly zero and skipped.  Raises
    :class:`SeriesError` when the error estimate exceeds ``max_error``.
    """
    if n < 0:
        return (0.0, 0.0) if full_output else 0.0
    if t < 0:
        raise ValueError("t: expected t >= 0")
    if not 0 < alpha <= 1:
        raise ValueError("alpha: expected a value in (0, 1]")
    value, err = _sfpp_marginal_cached(float(lam), float(alpha), int(n), float(t))
    if err > max_error:
        raise SeriesError(f"series error estimate {err:.3g} exceeds {max_error:.3g}", value, err)
    value = min(max(value, 0.0), 1.0)
    return (value, err) if full_output else value


def sfpp_marginal_vector(lam: float, alpha: float, n_max: int, t: float) -> np.ndarray:
    return np.array([sfpp_marginal_pmf(lam, alpha, n, t) for n in range(n_max + 1)])


def sfpp_pmf_vector(model: SfppModel, n_max: int, t: float) -> np.ndarray:
    vecs = [sfpp_marginal_vector(lam, a, n_max, t) for lam, a in zip(model.rates, model.orders)]
    return convolve_all(vecs, n_max)


def sfpp_pmf(model: SfppModel, n: int, t: float) -> float:
    """P(N^alpha(t) = n) as a d-fold convolution of the marginal pmfs."""
    if n < 0:
        return 0.0
    return float(sfpp_pmf_vector(model, n, t)[n])


def sfpp_pmf_enumeration(model: SfppModel, n: int, t: float) -> float:
    vecs = [sfpp_marginal_vector(lam, a, n, t) for lam, a in zip(model.rates, model.orders)]
    return enumerate_compositions(vecs, n)


def sfpp_pgf(model: SfppModel, u: float, t: float) -> float:
    """E u^N = exp(-t sum_j lambda_j^alpha_j (1 - u)^alpha_j)."""
    if abs(u) > 1:
        raise ValueError("u: expected |u| <= 1")
    a = model.orders.asarray()
    return math.exp(-t * float(np.sum(model.scale() * (1.0 - u) ** a)))


def difference_coefficients(alpha: float, n: int) -> np.ndarray:
    """c_r = (-1)^r Gamma(alpha + 1) / (r! Gamma(alpha + 1 - r)), r = 0..n: coefficients of (I - B)^alpha."""
    out = np.zeros(n + 1)
    for r in range(n + 1):
        try:
            sgn, lr = log_gamma_ratio(alpha + 1.0, alpha + 1.0 - r)
        except TermVanishes:
            continue
        out[r] = (-1) ** r * sgn * math.exp(lr - float(gammaln(r + 1)))
    return out


@dataclass
class OdeResidualReport:
    t: float
    dt: float
    residuals: np.ndarray

    @property
    def max_residual(self) -> float:
        return float(np.max(np.abs(self.residuals)))


def sfpp_ode_residual(model: SfppModel, n_max: int, t: float, dt: float) -> OdeResidualReport:
    """Central-difference d/dt pmf minus the right-hand side of the forward system.

    d/dt p(n, t) = -sum_j lambda_j^alpha_j sum_r c_j(r) p(n - r, t).
    """
    if not 0 < dt < t:
        raise ValueError("dt: expected 0 < dt < t")
    p_plus = sfpp_pmf_vector(model, n_max, t + dt)
    p_minus = sfpp_pmf_vector(model, n_max, t - dt)
    p_mid = sfpp_pmf_vector(model, n_max, t)
    lhs = (p_plus - p_minus) / (2 * dt)
    rhs = np.zeros(n_max + 1)
    for scale, a in zip(model.scale(), model.orders):
        c = difference_coefficients(a, n_max)
        rhs -= scale * np.convolve(c, p_mid)[: n_max + 1]
    return OdeResidualReport(t, dt, lhs - rhs)


def sample_sfpp(model: SfppModel, t: float, rng: np.random.Generator, size: int) -> np.ndarray:
    """Draws of N^alpha(t) = sum_j N_j(S_j(t))."""
    total = np.zeros(size)
    for lam, a in zip(model.rates, model.orders):
        if t == 0:
            continue
        if a == 1:
            clock = np.full(size, float(t))
        else:
            clock = t ** (1.0 / a) * _stable_standard(a, rng, size)
        total += poisson_mixed(rng, lam * clock)
    return total.astype(np.int64) if np.all(total < 2 ** 62) else total


# --------------------------------------------------------------------------- MFPP


@lru_cache(maxsize=4096)
def _fpp_marginal_cached(lam: float, alpha: float, t: float, n_max: int) -> tuple:
    if t == 0:
        return tuple([1.0] + [0.0] * n_max)
    x = lam * t ** alpha
    out = []
    for n in range(n_max + 1):
        e = mittag_leffler(MLParams(alpha, n * alpha + 1.0, n + 1.0), -x)
        out.append(math.exp(n * math.log(x)) * e if n else e)
    return tuple(out)


def fpp_marginal_vector(lam: float, alpha: float, t: float, n_max: int) -> np.ndarray:
    """One-axis fractional Poisson pmf p(n) = x^n E^{n+1}_{alpha, n alpha + 1}(-x), x = lam t^alpha."""
    if t < 0:
        raise ValueError("t: expected t >= 0")
    return np.clip(np.array(_fpp_marginal_cached(float(lam), float(alpha), float(t), int(n_max))), 0.0, 1.0)


def fpp_marginal_series(lam: float, alpha: float, t: float, n: int, dps: int = 40) -> float:
    """Same pmf from the renewal-series form (x^n / n!) sum_r (n+r)!/r! (-x)^r / Gamma(alpha (n+r) + 1)."""
    with mpmath.workdps(dps):
        x = mpmath.mpf(lam) * mpmath.mpf(t) ** mpmath.mpf(alpha)
        a = mpmath.mpf(alpha)
        total = mpmath.mpf(0)
        r = 0
        while True:
            term = mpmath.factorial(n + r) / mpmath.factorial(r) * (-x) ** r * mpmath.rgamma(a * (n + r) + 1)
            total += term
            if r > 10 and abs(term) < mpmath.mpf(10) ** (-dps + 5) * abs(total):
                break
            r += 1
        return float(x ** n / mpmath.factorial(n) * total)


def mfpp_pmf_vector(model: MfppModel, n_max: int, t) -> np.ndarray:
    t = model.point(t)
    vecs = [fpp_marginal_vector(lam, a, ti, n_max) for lam, a, ti in zip(model.rates, model.orders, t.coords)]
    return convolve_all(vecs, n_max)


def mfpp_pmf(model: MfppModel, n: int, t) -> float:
    """P(N_alpha(t) = n): convolution of the per-axis fractional Poisson pmfs."""
    if n < 0:
        return 0.0
    return float(mfpp_pmf_vector(model, n, t)[n])


def mfpp_pmf_enumeration(model: MfppModel, n: int, t) -> float:
    t = model.point(t)
    vecs = [fpp_marginal_vector(lam, a, ti, n) for lam, a, ti in zip(model.rates, model.orders, t.coords)]
    return enumerate_compositions(vecs, n)


def mfpp_pgf(model: MfppModel, u: float, t) -> float:
    """prod_i E_{alpha_i,1}(lambda_i (u - 1) t_i^alpha_i)."""
    t = model.point(t)
    out = 1.0
    for lam, a, ti in zip(model.rates, model.orders, t.coords):
        out *= ml(a, 1.0, lam * (u - 1.0) * ti ** a)
    return out


def sample_mfpp(model: MfppModel, t, rng: np.random.Generator, size=None):
    """Draws of sum_i N_i(L_i(t_i)) using the inverse-stable marginal identity per axis."""
    t = model.point(t)
    n = 1 if size is None else size
    total = np.zeros(n, dtype=np.int64)
    for lam, a, ti in zip(model.rates, model.orders, t.coords):
        if ti == 0:
            continue
        clock = sample_inverse_stable_marginal(a, ti, rng, n)
        total += rng.poisson(lam * clock)
    return int(total[0]) if size is None else total


def mfpp_mean(model: MfppModel, t) -> float:
    t = model.point(t)
    return float(sum(lam * ti ** a / math.gamma(a + 1) for lam, a, ti in zip(model.rates, model.orders, t.coords)))


def mfpp_moments(model: MfppModel, t) -> tuple[float, float]:
    """Mean and variance, summed over independent fractional Poisson axes."""
    t = model.point(t)
    mean = 0.0
    var = 0.0
    for lam, a, ti in zip(model.rates, model.orders, t.coords):
        x = lam * ti ** a
        m = x / math.gamma(a + 1)
        mean += m
        var += m + x * x / a * (1 / math.gamma(2 * a) - 1 / (a * math.gamma(a) ** 2))
    return mean, var


def mfpp_factorial_moment(model: MfppModel, n: int, t) -> float:
    """E N(N-1)...(N-n+1) = sum over compositions of n! prod_i x_i^n_i / Gamma(alpha_i n_i + 1)."""
    if n < 1:
        raise ValueError("n: expected n >= 1")
    t = model.point(t)
    xs = [lam * ti ** a for lam, a, ti in zip(model.rates, model.orders, t.coords)]
    log_nf = float(gammaln(n + 1))
    total = 0.0
    for comp in compositions(n, model.d):
        log_term = log_nf
        zero = False
        for x, a, k in zip(xs, model.orders, comp.parts):
            if k == 0:
                continue
            if x == 0:
                zero = True
                break
            log_term += k * math.log(x) - float(gammaln(a * k + 1))
        if not zero:
            total += math.exp(log_term)
    return total


def mfpp_covariance(model: MfppModel, s, t) -> float:
    """sum_i [lambda_i min(s_i, t_i)^alpha_i / Gamma(alpha_i + 1) + lambda_i^2 Cov(L_i(s_i), L_i(t_i))].

    Axes are independent, so cross-axis terms vanish.
    """
    s, t = model.point(s), model.point(t)
    total = 0.0
    for lam, a, si, ti in zip(model.rates, model.orders, s.coords, t.coords):
        total += lam * min(si, ti) ** a / math.gamma(a + 1)
        total += lam * lam * covariance_inverse_stable(a, si, ti)
    return total


def mfpp_autocorrelation(model: MfppModel, s, t) -> float:
    _, vs = mfpp_moments(model, s)
    _, vt = mfpp_moments(model, t)
    return mfpp_covariance(model, s, t) / math.sqrt(vs * vt)


# --------------------------------------------------------------------------- fractional variant


def fractional_variant_pmf(rates, alpha: float, n: int, t) -> float:
    """P(N = n) = (Lambda.t)^n / (Gamma(n alpha + 1) E_{alpha,1}(Lambda.t))."""
    rates = _rates(rates)
    if not 0 < alpha <= 1:
        raise ValueError("alpha: expected a value in (0, 1]")
    if n < 0:
        return 0.0
    x = lambda_dot(rates, as_point(t))
    if x == 0:
        return 1.0 if n == 0 else 0.0
    log_num = n * math.log(x) - float(gammaln(n * alpha + 1))
    return math.exp(log_num - math.log(ml(alpha, 1.0, x)))


def fractional_variant_mean(rates, alpha: float, t) -> float:
    """x E_{alpha,alpha}(x) / (alpha E_{alpha,1}(x)), x = Lambda.t."""
    x = lambda_dot(_rates(rates), as_point(t))
    if x == 0:
        return 0.0
    return x * ml(alpha, alpha, x) / (alpha * ml(alpha, 1.0, x))


def fractional_variant_pmf_vector(rates, alpha: float, n_max: int, t) -> np.ndarray:
    return np.array([fractional_variant_pmf(rates, alpha, n, t) for n in range(n_max + 1)])
