"""Positive stable subordinators and their inverses.

Convention: S(t) has Laplace transform E exp(-w S(t)) = exp(-t w^alpha),
no drift.  The inverse L(t) = inf{u > 0 : S(u) > t} is the first-passage
time of S above level t.  alpha = 1 is the degenerate case S(t) = L(t) = t
and is handled by explicit branches, never by the stable sampler.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .special import ml


class QuadratureError(ArithmeticError):
    def __init__(self, message, value=None, error=None):
        super().__init__(message)
        self.value = value
        self.error = error


class PathBudgetError(RuntimeError):
    """Path construction exceeded its step budget."""


def _check_alpha(alpha, allow_one=False):
    hi_ok = alpha <= 1 if allow_one else alpha < 1
    if not (alpha > 0 and hi_ok):
        bound = "(0, 1]" if allow_one else "(0, 1)"
        raise ValueError(f"alpha: expected a value in {bound}, got {alpha}")


def _stable_standard(alpha: float, rng: np.random.Generator, size=None):
    """Draws of S(1) from one uniform and one exponential variate each (Kanter)."""
    u = rng.uniform(0.0, np.pi, size)
    e = rng.standard_exponential(size)
    return (np.sin(alpha * u) / np.sin(u) ** (1.0 / alpha)
            * (np.sin((1.0 - alpha) * u) / e) ** ((1.0 - alpha) / alpha))


def sample_stable_increment(alpha: float, dt: float, rng: np.random.Generator, size=None):
    """Draw S(dt) for the alpha-stable subordinator, 0 < alpha < 1.

    Uses self-similarity, S(dt) = dt^(1/alpha) S(1), with S(1) from
    Kanter's representation
    ``sin(a U) / sin(U)^(1/a) * (sin((1-a) U) / E)^((1-a)/a)``,
    U ~ Uniform(0, pi), E ~ Exp(1).
    """
    _check_alpha(alpha)
    if not dt > 0:
        raise ValueError(f"dt: expected dt > 0, got {dt}")
    return dt ** (1.0 / alpha) * _stable_standard(alpha, rng, size)


def sample_inverse_stable_marginal(alpha: float, t: float, rng: np.random.Generator, size=None):
    """Draw L(t) through the marginal identity L(t) = (t / S(1))^alpha in law."""
    _check_alpha(alpha, allow_one=True)
    if t < 0:
        raise ValueError(f"t: expected t >= 0, got {t}")
    if t == 0:
        return np.zeros(size) if size is not None else 0.0
    if alpha == 1:
        return np.full(size, float(t)) if size is not None else float(t)
    return (t / _stable_standard(alpha, rng, size)) ** alpha


@dataclass(frozen=True)
class StablePathGrid:
    alpha: float
    grid: np.ndarray
    values: np.ndarray


@dataclass(frozen=True)
class InversePathGrid:
    alpha: float
    grid: np.ndarray
    values: np.ndarray

    def __call__(self, t):
        """Step interpolation L(t) on the stored grid (right-continuous)."""
        idx = np.searchsorted(self.grid, t, side="right") - 1
        return self.values[np.clip(idx, 0, None)]


def sample_stable_path(alpha: float, grid, rng: np.random.Generator) -> StablePathGrid:
    """S on an increasing operational-time grid starting at 0."""
    _check_alpha(alpha)
    grid = np.asarray(grid, dtype=float)
    if grid[0] != 0 or np.any(np.diff(grid) <= 0):
        raise ValueError("grid: expected an increasing grid starting at 0")
    inc = np.diff(grid) ** (1.0 / alpha) * _stable_standard(alpha, rng, grid.size - 1)
    return StablePathGrid(alpha, grid, np.concatenate([[0.0], np.cumsum(inc)]))


def sample_inverse_stable_paths(alpha: float, calendar_grid, resolution: float = 1e-3,
                                rng: np.random.Generator | None = None, size: int = 1,
                                max_steps: int = 10_000_000) -> np.ndarray:
    """Jointly sample L at the points of ``calendar_grid`` for ``size`` independent paths.

    The stable path is built at operational step ``resolution`` until it
    passes the last calendar point; L(t) is read off as the first
    operational grid point u with S(u) > t, so each value overshoots the
    exact first-passage time by less than one step.

    Returns an array of shape (size, len(calendar_grid)).
    """
    _check_alpha(alpha, allow_one=True)
    grid = np.atleast_1d(np.asarray(calendar_grid, dtype=float))
    if np.any(grid < 0) or np.any(np.diff(grid) < 0):
        raise ValueError("calendar_grid: expected nondecreasing nonnegative points")
    if not resolution > 0:
        raise ValueError("resolution: expected a positive step")
    m_pts = grid.size
    out = np.zeros((size, m_pts))
    if alpha == 1:
        out[:] = grid
        return out
    rng = rng if rng is not None else np.random.default_rng()
    step_scale = resolution ** (1.0 / alpha)
    expected_steps = grid[-1] ** alpha / math.gamma(1 + alpha) / resolution
    chunk = int(np.clip(expected_steps / 2, 16, 4096))

    level = np.zeros(size)
    nxt = np.full(size, np.searchsorted(grid, 0.0, side="right"))
    active = np.flatnonzero(nxt < m_pts)
    steps = 0
    while active.size:
        if steps >= max_steps:
            raise PathBudgetError(f"step budget exhausted after {steps} steps")
        path = level[active, None] + np.cumsum(
            step_scale * _stable_standard(alpha, rng, (active.size, chunk)), axis=1)
        for m in range(m_pts):
            rows = np.flatnonzero(nxt[active] == m)
            if rows.size == 0:
                continue
            crossed = path[rows] > grid[m]
            hit = crossed.any(axis=1)
            rows = rows[hit]
            first = crossed[hit].argmax(axis=1)
            out[active[rows], m] = (steps + first + 1) * resolution
            nxt[active[rows]] += 1
        level[active] = path[:, -1]
        steps += chunk
        active = active[nxt[active] < m_pts]
    return out


def sample_inverse_stable_path(alpha: float, calendar_grid, resolution: float = 1e-3,
                               rng: np.random.Generator | None = None,
                               max_steps: int = 10_000_000) -> InversePathGrid:
    grid = np.atleast_1d(np.asarray(calendar_grid, dtype=float))
    values = sample_inverse_stable_paths(alpha, grid, resolution, rng, 1, max_steps)[0]
    return InversePathGrid(alpha, grid, values)


def inverse_stable_mean(alpha: float, t: float) -> float:
    """E L(t) = t^alpha / Gamma(1 + alpha)."""
    _check_alpha(alpha, allow_one=True)
    if t < 0:
        raise ValueError("t: expected t >= 0")
    return t ** alpha / math.gamma(1 + alpha)


def inverse_stable_variance(alpha: float, t: float) -> float:
    """Var L(t) = t^(2 alpha) (2 / Gamma(2 alpha + 1) - 1 / Gamma(1 + alpha)^2)."""
    _check_alpha(alpha, allow_one=True)
    if alpha == 1:
        return 0.0
    return t ** (2 * alpha) * (2 / math.gamma(2 * alpha + 1) - 1 / math.gamma(1 + alpha) ** 2)


def covariance_inverse_stable(alpha: float, s: float, t: float, *, tol: float = 1e-10) -> float:
    """Cov(L(s), L(t)) by adaptive quadrature.

    With m = min(s, t), M = max(s, t) the covariance equals

        [ int_0^m ((M - x)^a - M^a) x^(a-1) dx + int_0^m (m - x)^a x^(a-1) dx ] / (a Gamma(a)^2)

    which is the textbook double-integral form with the (st)^a term cancelled
    analytically.  Both integrals are taken in v = x^a, where the x^(a-1)
    endpoint singularity disappears.
    """
    _check_alpha(alpha, allow_one=True)
    if s < 0 or t < 0:
        raise ValueError("s, t: expected nonnegative times")
    if alpha == 1:
        return 0.0
    m, big = (s, t) if s <= t else (t, s)
    if m == 0:
        return 0.0
    a = alpha
    inv = 1.0 / a
    vmax = m ** a

    def far(v):
        return (big - v ** inv) ** a - big ** a

    def near(v):
        return max(m - v ** inv, 0.0) ** a

    q1, e1 = integrate.quad(far, 0.0, vmax, epsabs=1e-13, epsrel=1e-13, limit=200)
    q2, e2 = integrate.quad(near, 0.0, vmax, epsabs=1e-13, epsrel=1e-13, limit=200)
    err = (e1 + e2) / (a * a * math.gamma(a) ** 2)
    value = (q1 + q2) / (a * a * math.gamma(a) ** 2)
    if err > tol:
        raise QuadratureError(f"quadrature error {err:.3g} exceeds {tol:.3g}", value, err)
    return value


def inverse_stable_laplace(alpha: float, t: float, lam: float) -> float:
    """E exp(-lam L(t)) = E_{alpha,1}(-lam t^alpha)."""
    _check_alpha(alpha, allow_one=True)
    return ml(alpha, 1.0, -lam * t ** alpha)


def stable_laplace(alpha: float, t: float, w: float) -> float:
    return math.exp(-t * w ** alpha)


def inverse_stable_density_half(x, t):
    """Density of L(t) at alpha = 1/2: half-normal (pi t)^(-1/2) exp(-x^2 / (4 t))."""
    x = np.asarray(x, dtype=float)
    return np.where(x >= 0, np.exp(-x * x / (4 * t)) / np.sqrt(np.pi * t), 0.0)


def grunwald_letnikov(f, t: float, order: float, h: float) -> float:
    """Riemann-Liouville derivative of order ``order`` at t, Grunwald-Letnikov sum with step h.

    First-order accurate in h.  ``f`` must accept arrays and vanish at 0
    smoothly enough for the lower terminal to contribute nothing.
    """
    n = int(round(t / h))
    k = np.arange(n + 1)
    w = np.empty(n + 1)
    w[0] = 1.0
    w[1:] = np.cumprod(1.0 - (order + 1.0) / k[1:])
    return float(h ** (-order) * np.dot(w, f(t - k * h)))


def governing_equation_residual(xs, ts, h: float = 1e-4) -> float:
    """Max |D_t^(1/2) l(x, t) + d/dx l(x, t)| over an (x, t) grid for the alpha = 1/2 density."""
    worst = 0.0
    for t in ts:
        for x in xs:
            lhs = grunwald_letnikov(lambda tau: _half_density_t(x, tau), t, 0.5, h)
            # -d/dx l = x l / (2 t)
            rhs = x / (2 * t) * float(inverse_stable_density_half(x, t))
            worst = max(worst, abs(lhs - rhs))
    return worst


def _half_density_t(x, tau):
    tau = np.asarray(tau, dtype=float)
    out = np.zeros_like(tau)
    pos = tau > 0
    out[pos] = np.exp(-x * x / (4 * tau[pos])) / np.sqrt(np.pi * tau[pos])
    return out
