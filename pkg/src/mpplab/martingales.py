"""Moment-level checks of the martingale property on simulated fields.

E(M(t) | F(s)) = M(s) cannot be estimated nonparametrically at desk
scale, so two implied conditions are tested along a chain
t(0) = 0 < t(1) < ... < t(k):

(a) E M(t(j)) = M(0) at every chain point;
(b) the increment M(t(j)) - M(t(j-1)) is uncorrelated with a bounded
    F(t(j-1))-measurable functional (the capped count there; for the MFPP
    the capped clock value L(t(j-1))).

Both are reported as z-scores; the verdict uses |z| < 4 throughout.  The
orthogonality z divides the sample covariance by its own moment-based
standard error, since the exponential family can be far from Gaussian and
the Fisher-z variance of a correlation would then be too optimistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import stats

from .index import as_point, partial_lt
from .mc import McConfig, run_replicas, sample_replicas
from .mpp import MppModel, OrderingError, sample_mpp_counts
from .subordinators import sample_inverse_stable_paths

FAMILIES = ("compensated_mpp", "exponential_mpp", "compensated_mfpp")
Z_LIMIT = 4.0
FUNCTIONAL_CAP = 20.0


def check_chain(points) -> list:
    pts = [as_point(p) for p in points]
    for a, b in zip(pts, pts[1:]):
        if not partial_lt(a, b):
            raise OrderingError(f"grid is not a chain: {a.coords} is not strictly below {b.coords}")
    return pts


@dataclass(frozen=True)
class MartingaleTestSpec:
    """One martingale experiment.

    ``chain`` lists the points after the origin (the origin is prepended
    when missing).  ``compensator_scale`` multiplies Lambda in the
    compensator; 1.0 is the true model, anything else is a negative control.
    """

    family: str
    rates: tuple
    chain: tuple
    orders: tuple | None = None
    c: float | None = None
    replicas: int = 1_000_000
    seed: int = 0
    compensator_scale: float = 1.0
    resolution: float = 1e-2
    workers: int | str = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family: expected one of {FAMILIES}, got {self.family!r}")
        if self.replicas < 10_000:
            raise ValueError("replicas: expected at least 10^4")
        d = len(self.rates)
        pts = [as_point(p) for p in self.chain]
        if any(p.d != d for p in pts):
            raise ValueError(f"chain: expected points with d={d} entries")
        if pts and any(pts[0].coords):
            pts = [as_point([0.0] * d)] + pts
        if len(pts) < 2:
            raise ValueError("chain: expected at least one point after the origin")
        object.__setattr__(self, "chain", tuple(p.coords for p in check_chain(pts)))
        if self.family == "exponential_mpp":
            if self.c is None or not self.c > -1:
                raise ValueError("c: expected a real number > -1")
        if self.family == "compensated_mfpp":
            if self.orders is None or len(self.orders) != d:
                raise ValueError(f"alpha: expected d={d} entries")
            if any(not 0 < a <= 1 for a in self.orders):
                raise ValueError("alpha: expected values in (0, 1]")


@dataclass
class PairResult:
    s: tuple
    t: tuple
    mean: float
    expected: float
    z_mean: float
    correlation: float
    z_orthogonal: float


@dataclass
class MartingaleReport:
    family: str
    replicas: int
    pairs: list[PairResult] = field(default_factory=list)

    @property
    def max_abs_z_mean(self) -> float:
        return max(abs(p.z_mean) for p in self.pairs)

    @property
    def max_abs_z_orthogonal(self) -> float:
        return max(abs(p.z_orthogonal) for p in self.pairs)

    @property
    def passed(self) -> bool:
        return self.max_abs_z_mean < Z_LIMIT and self.max_abs_z_orthogonal < Z_LIMIT


def _mpp_kernel(spec: MartingaleTestSpec):
    model = MppModel(spec.rates)
    rates = np.asarray(spec.rates, dtype=float) * spec.compensator_scale
    pts = np.asarray(spec.chain, dtype=float)
    comp = pts @ rates
    if spec.family == "exponential_mpp":
        log1c = math.log1p(spec.c)

    def kernel(rng, n):
        counts = sample_mpp_counts(model, list(pts), rng, n).astype(float)
        if spec.family == "compensated_mpp":
            m = counts - comp
        else:
            m = np.exp(counts * log1c - spec.c * comp)
        functional = np.minimum(counts, FUNCTIONAL_CAP)
        return m, functional

    return kernel


def _mfpp_kernel(spec: MartingaleTestSpec):
    pts = np.asarray(spec.chain, dtype=float)

    def kernel(rng, n):
        k = pts.shape[0]
        m = np.zeros((n, k))
        functional = np.zeros((n, k))
        for j, (lam, a) in enumerate(zip(spec.rates, spec.orders)):
            coords = pts[:, j]
            clock = sample_inverse_stable_paths(a, coords, spec.resolution, rng, n)
            # N_j(L(t)) along the chain: Poisson increments over clock increments
            dl = np.diff(np.concatenate([np.zeros((n, 1)), clock], axis=1), axis=1)
            counts = np.cumsum(rng.poisson(lam * dl), axis=1)
            m += counts - spec.compensator_scale * lam * clock
            functional += np.minimum(clock, FUNCTIONAL_CAP)
        return m, functional

    return kernel


def _columns(kernel):
    """Pack M, increments, functionals and two product moments into one matrix per block."""

    def packed(rng, n):
        m, f = kernel(rng, n)
        inc = np.diff(m, axis=1)
        fs = f[:, :-1]
        prod = inc * fs
        return np.hstack([m, inc, fs, prod, prod * inc])

    return packed


def _fisher_z(r: float, n: int) -> float:
    r = min(max(r, -0.999999), 0.999999)
    return math.atanh(r) * math.sqrt(n - 3)


def run_martingale_test(spec: MartingaleTestSpec) -> MartingaleReport:
    kernel = _mfpp_kernel(spec) if spec.family == "compensated_mfpp" else _mpp_kernel(spec)
    config = McConfig(spec.replicas, spec.seed, spec.workers)
    est = run_replicas(config, _columns(kernel))
    k = len(spec.chain)
    mean = np.asarray(est.mean)
    var = np.asarray(est.variance)
    se = np.asarray(est.standard_error)
    m0 = 1.0 if spec.family == "exponential_mpp" else 0.0
    report = MartingaleReport(spec.family, est.n)
    for j in range(1, k):
        mu, s = mean[j], se[j]
        z_mean = (mu - m0) / s if s > 0 else (0.0 if mu == m0 else math.inf)
        i_inc, i_f = k + j - 1, 2 * k - 1 + j - 1
        i_p, i_q = 3 * k - 2 + j - 1, 4 * k - 3 + j - 1
        cov = (mean[i_p] - mean[i_inc] * mean[i_f]) * est.n / (est.n - 1)
        denom = math.sqrt(var[i_inc] * var[i_f])
        if denom > 0:
            r = cov / denom
            # Var(inc (f - fbar)) from per-column moments; E[inc^2 f] gives Cov(inc f, inc)
            fbar = mean[i_f]
            cross = mean[i_q] - mean[i_p] * mean[i_inc]
            v = var[i_p] - 2 * fbar * cross + fbar * fbar * var[i_inc]
            z_orth = cov / math.sqrt(v / est.n) if v > 0 else 0.0
        else:
            # the functional is constant (first pair starts at the origin)
            r, z_orth = 0.0, 0.0
        report.pairs.append(PairResult(spec.chain[j - 1], spec.chain[j], float(mu), m0,
                                       float(z_mean), float(r), float(z_orth)))
    return report


# --------------------------------------------------------------------------- increment independence

Sampler = Callable[[MppModel, list, np.random.Generator, int], np.ndarray]


def broken_sampler(model: MppModel, points, rng: np.random.Generator, size: int) -> np.ndarray:
    """Deliberately wrong: every increment after the first reuses part of the previous increment's jumps."""
    honest = sample_mpp_counts(model, points, rng, size)
    inc = np.diff(np.concatenate([np.zeros((size, 1), dtype=honest.dtype), honest], axis=1), axis=1)
    for j in range(2, inc.shape[1]):
        shared = rng.binomial(inc[:, j - 1], 0.5)
        inc[:, j] = inc[:, j] + shared
    return np.cumsum(inc, axis=1)


@dataclass
class IndependencePair:
    i: int
    j: int
    correlation: float
    z: float
    chi2: float
    dof: int
    pvalue: float


@dataclass
class IndependenceReport:
    pairs: list[IndependencePair]
    significance: float

    @property
    def threshold(self) -> float:
        # Bonferroni over both tests of every pair
        return self.significance / (2 * len(self.pairs))

    @property
    def passed(self) -> bool:
        thr = self.threshold
        for p in self.pairs:
            p_corr = 2 * stats.norm.sf(abs(p.z))
            if p_corr < thr or p.pvalue < thr:
                return False
        return True


def _discretise(x: np.ndarray, min_count: int = 50) -> np.ndarray:
    """Integer categories, with the upper tail pooled so every category is populated."""
    x = x.astype(np.int64)
    counts = np.bincount(x - x.min())
    cap = x.min() + len(counts) - 1
    tail = 0
    for v in range(len(counts) - 1, -1, -1):
        tail += counts[v]
        if tail >= min_count:
            cap = x.min() + v
            break
    return np.minimum(x, cap) - x.min()


def increment_independence_test(model: MppModel, chain, replicas: int = 100_000, seed: int = 0,
                                sampler: Sampler | None = None, significance: float = 0.01,
                                workers: int | str = 1) -> IndependenceReport:
    pts = check_chain(chain)
    if len(pts) < 3:
        raise ValueError("chain: expected at least 3 points")
    sampler = sampler if sampler is not None else sample_mpp_counts
    coords = [p.coords for p in pts]
    config = McConfig(replicas, seed, workers)
    counts = sample_replicas(config, lambda rng, n: sampler(model, coords, rng, n))
    inc = np.diff(counts, axis=1).astype(float)
    pairs = []
    for i in range(inc.shape[1]):
        for j in range(i + 1, inc.shape[1]):
            a, b = inc[:, i], inc[:, j]
            if a.std() == 0 or b.std() == 0:
                r = 0.0
            else:
                r = float(np.corrcoef(a, b)[0, 1])
            z = _fisher_z(r, len(a))
            da, db = _discretise(a), _discretise(b)
            table = np.zeros((da.max() + 1, db.max() + 1))
            np.add.at(table, (da, db), 1)
            table = table[table.sum(axis=1) > 0][:, table.sum(axis=0) > 0]
            if min(table.shape) < 2:
                chi2, dof, p = 0.0, 0, 1.0
            else:
                chi2, p, dof, _ = stats.chi2_contingency(table, correction=False)
            pairs.append(IndependencePair(i, j, r, z, float(chi2), int(dof), float(p)))
    return IndependenceReport(pairs, significance)
