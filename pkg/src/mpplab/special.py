"""Mittag-Leffler functions and log-gamma helpers.

The three-parameter function is summed directly from its power series.
Terms are generated in log space (so the Pochhammer symbol and the gamma
in the denominator never overflow) and accumulated with Kahan
compensation.  When the series alternates hard enough that double
precision cannot deliver the requested relative accuracy, the same series
is re-summed with mpmath at a working precision sized from the observed
cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from scipy.special import gammaln, gammasgn

EPS = np.finfo(float).eps


class SeriesError(ArithmeticError):
    """A series failed to reach its tolerance.

    Carries the partial value and the error estimate reached so callers
    can decide whether the result is still usable.
    """

    def __init__(self, message, value=None, error=None):
        super().__init__(message)
        self.value = value
        self.error = error


class TermVanishes(ArithmeticError):
    """A gamma pole in a denominator: the term is exactly zero."""


@dataclass(frozen=True)
class MLParams:
    """Parameters (alpha, beta, gamma) of the three-parameter Mittag-Leffler function."""

    alpha: float
    beta: float = 1.0
    gamma: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name}: expected a positive finite value, got {v}")


def _is_nonpositive_int(b: float) -> bool:
    return b <= 0 and float(b).is_integer()


def log_gamma_ratio(a: float, b: float) -> tuple[int, float]:
    """Sign and log-magnitude of Gamma(a) / Gamma(b).

    ``a`` must be positive.  ``b`` may be negative (the reflection formula
    fixes the sign); a nonpositive integer ``b`` raises :class:`TermVanishes`
    because 1/Gamma(b) is zero there.
    """
    if not a > 0:
        raise ValueError(f"a: expected a > 0, got {a}")
    if _is_nonpositive_int(b):
        raise TermVanishes(f"Gamma pole at b={b}")
    sign = int(gammasgn(b))
    # math.lgamma stays finite for subnormal b, where scipy's gammaln returns inf
    return sign, math.lgamma(a) - math.lgamma(b)


def ml_pochhammer_log_term(p: MLParams, k: int, x: float) -> tuple[int, float]:
    """Sign and log-magnitude of the k-th series term (gamma)_k x^k / (Gamma(k alpha + beta) k!)."""
    if k < 0:
        raise ValueError("k: expected k >= 0")
    if k == 0:
        return 1, float(-gammaln(p.beta))
    if x == 0:
        return 0, -math.inf
    # (gamma)_k = Gamma(gamma + k) / Gamma(gamma)
    log_mag = (
        gammaln(p.gamma + k) - gammaln(p.gamma)
        + k * math.log(abs(x))
        - gammaln(k * p.alpha + p.beta)
        - gammaln(k + 1.0)
    )
    if not math.isfinite(log_mag):
        raise OverflowError(f"log-magnitude of term {k} is not finite")
    sign = -1 if (x < 0 and k % 2) else 1
    return sign, float(log_mag)


def _ml_double(p: MLParams, x: float, tol: float, max_terms: int):
    """Kahan-compensated series in double precision.

    Returns (value, sum of |terms|, error estimate, terms used).
    """
    total = 0.0
    comp = 0.0
    abs_total = 0.0
    small_run = 0
    prev_mag = math.inf
    prev_log = math.inf
    logx = math.log(abs(x)) if x != 0 else -math.inf
    lg_gamma0 = gammaln(p.gamma)
    for k in range(max_terms):
        if k == 0:
            log_mag = -gammaln(p.beta)
        elif x == 0:
            break
        else:
            log_mag = (gammaln(p.gamma + k) - lg_gamma0 + k * logx
                       - gammaln(k * p.alpha + p.beta) - gammaln(k + 1.0))
        if log_mag >= 709.0:
            raise _DoubleOverflow(_peak_log_term(p, x, k, max_terms))
        mag = math.exp(log_mag)
        term = -mag if (x < 0 and k % 2) else mag
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        abs_total += mag
        if math.isinf(abs_total):
            raise _DoubleOverflow(_peak_log_term(p, x, k, max_terms))
        # second clause: past the peak and below the subnormal range, so the
        # remaining tail cannot change a double
        if (total != 0 and mag < tol * abs(total) and mag <= prev_mag) or (log_mag < -745.0 and log_mag < prev_log):
            small_run += 1
            if small_run >= 3:
                break
        else:
            small_run = 0
        prev_mag = mag
        prev_log = log_mag
    else:
        raise SeriesError(f"no convergence within {max_terms} terms", total, abs(prev_mag))
    err = prev_mag + 4 * EPS * abs_total
    return total, abs_total, err, k + 1


def _rational_alpha(alpha: float, max_den: int = 100):
    """(num, den) when alpha is a small-denominator rational to double precision, else None."""
    f = Fraction(alpha).limit_denominator(max_den)
    if f.numerator <= 4 * max_den and abs(float(f) - alpha) <= 2 * EPS * alpha:
        return f.numerator, f.denominator
    return None


class _GammaTable:
    """Gamma(k alpha + beta) for k = 0, 1, ... at the current mpmath precision.

    For alpha = num/den the values are tied together by
    Gamma(z + num) = z (z + 1) ... (z + num - 1) Gamma(z) with z = k alpha + beta,
    so only the first ``den`` entries need a gamma evaluation.
    """

    def __init__(self, alpha: float, beta):
        self.beta = beta
        rat = _rational_alpha(alpha)
        if rat is None:
            self.alpha = mpmath.mpf(alpha)
            self.step = None
        else:
            self.alpha = mpmath.mpf(rat[0]) / rat[1]
            self.step = rat
        self.values = []

    def rgamma(self, k: int):
        if self.step is None:
            return mpmath.rgamma(k * self.alpha + self.beta)
        num, den = self.step
        while len(self.values) <= k:
            j = len(self.values)
            if j < den:
                self.values.append(mpmath.gamma(j * self.alpha + self.beta))
            else:
                z = (j - den) * self.alpha + self.beta
                v = self.values[j - den]
                for i in range(num):
                    v *= z + i
                self.values.append(v)
        return 1 / self.values[k]


class _DoubleOverflow(ArithmeticError):
    def __init__(self, peak_log):
        super().__init__("series terms overflow double precision")
        self.peak_log = peak_log


def _peak_log_term(p: MLParams, x: float, start: int, max_terms: int) -> float:
    """Largest natural-log term magnitude, scanning from ``start`` until terms fall away."""
    logx = math.log(abs(x))
    lg0 = gammaln(p.gamma)
    peak = -math.inf
    for k in range(start, max_terms):
        lm = float(gammaln(p.gamma + k) - lg0 + k * logx - gammaln(k * p.alpha + p.beta) - gammaln(k + 1.0))
        peak = max(peak, lm)
        if lm < peak - 50:
            break
    return peak


def _ml_mp_sum(p: MLParams, x: float, tol: float, max_terms: int, dps: int):
    with mpmath.workdps(dps):
        xm = mpmath.mpf(x)
        b = mpmath.mpf(p.beta)
        g = mpmath.mpf(p.gamma)
        table = _GammaTable(p.alpha, b)
        total = mpmath.mpf(0)
        abs_total = mpmath.mpf(0)
        poch = mpmath.mpf(1)
        power = mpmath.mpf(1)
        fact = mpmath.mpf(1)
        small_run = 0
        prev = mpmath.inf
        for k in range(max_terms):
            if k > 0:
                if x == 0:
                    break
                poch *= g + k - 1
                power *= xm
                fact *= k
            term = poch * power * table.rgamma(k) / fact
            total += term
            mag = abs(term)
            abs_total += mag
            if total != 0 and mag < tol * 1e-3 * abs(total) and mag <= prev:
                small_run += 1
                if small_run >= 3:
                    break
            else:
                small_run = 0
            prev = mag
        else:
            raise SeriesError(f"no convergence within {max_terms} terms", float(total), float(prev))
        return total, abs_total, prev


def _ml_mp(p: MLParams, x: float, tol: float, max_terms: int, log10_abs_total: float, approx: float):
    wanted = max(-math.log10(tol), 15.0) + 5
    # a garbage double-precision value can be far too large; never trust it above 1
    ref = min(abs(approx), 1.0) if approx != 0 else 1e-20
    lost = max(log10_abs_total, 0.0) - math.log10(ref)
    dps = int(max(lost, 0.0) + wanted + 5)
    for _ in range(6):
        total, abs_mp, last = _ml_mp_sum(p, x, tol, max_terms, dps)
        if total == 0:
            dps *= 2
            continue
        lost = float(mpmath.log10(abs_mp / abs(total)))
        if lost + wanted <= dps:
            return float(total), float(last / abs(total)) + 10.0 ** (lost - dps)
        dps = int(lost + wanted + 10)
    raise SeriesError("cancellation exceeds the working-precision budget", float(total), math.inf)


def mittag_leffler(p: MLParams, x: float, *, tol: float = 1e-12, max_terms: int = 10_000,
                   full_output: bool = False):
    """Evaluate the three-parameter Mittag-Leffler function E^gamma_{alpha,beta}(x).

    Parameters
    ----------
    p : MLParams
    x : float
        Real argument.  Desk-scale use keeps |x| <= 30; beyond that the
        alternating regime needs very high working precision.
    tol : float
        Target relative accuracy.
    max_terms : int
        Series budget; exhausting it raises :class:`SeriesError`.
    full_output : bool
        Also return the achieved relative error estimate.
    """
    value, rel = _ml_cached(p, float(x), float(tol), int(max_terms))
    if full_output:
        return value, rel
    return value


@lru_cache(maxsize=65536)
def _ml_cached(p: MLParams, x: float, tol: float, max_terms: int):
    try:
        value, abs_total, err, _ = _ml_double(p, x, tol, max_terms)
    except _DoubleOverflow as exc:
        if x > 0:
            # all terms positive: the value itself is beyond double range
            raise SeriesError("value overflows double precision", math.inf, math.inf) from None
        return _ml_mp(p, x, tol, max_terms, exc.peak_log / math.log(10) + 1, 1.0)
    rel = err / abs(value) if value != 0 else err
    if rel > tol:
        value, rel = _ml_mp(p, x, tol, max_terms, math.log10(max(abs_total, 1.0)), value)
    return value, rel


def ml(alpha: float, beta: float = 1.0, x: float = 0.0, gamma: float = 1.0, **kw) -> float:
    """Shorthand: ml(alpha, beta, x) = E^gamma_{alpha,beta}(x)."""
    return mittag_leffler(MLParams(alpha, beta, gamma), x, **kw)
