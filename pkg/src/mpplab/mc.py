"""Reproducible Monte Carlo: seeded streams, replica fan-out, mergeable moments, comparators.

Replicas are grouped in fixed-size blocks.  Block ``b`` always draws from
the counter-based stream ``stream(master_seed, b)`` (Philox keyed by a
SeedSequence hash of the pair), so which worker runs which block has no
influence on the numbers.  Block results are merged in block order, which
makes every reduction bit-identical for any worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import stats

DEFAULT_BLOCK = 1 << 16

Kernel = Callable[[np.random.Generator, int], np.ndarray]


def stream(master_seed: int, index: int) -> np.random.Generator:
    """Independent generator for (master_seed, index)."""
    ss = np.random.SeedSequence([int(master_seed) & 0xFFFFFFFFFFFFFFFF, int(index)])
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class McConfig:
    replicas: int
    master_seed: int = 0
    workers: int | str = 1
    block_size: int = DEFAULT_BLOCK

    def __post_init__(self):
        if self.replicas < 1:
            raise ValueError("replicas: expected >= 1")
        if self.block_size < 1:
            raise ValueError("block_size: expected >= 1")
        if not (self.workers == "auto" or (isinstance(self.workers, int) and self.workers >= 1)):
            raise ValueError(f"workers: expected a positive integer or 'auto', got {self.workers!r}")

    @property
    def n_workers(self) -> int:
        if self.workers == "auto":
            return os.cpu_count() or 1
        return int(self.workers)

    def blocks(self) -> list[tuple[int, int]]:
        out = []
        start = 0
        b = 0
        while start < self.replicas:
            n = min(self.block_size, self.replicas - start)
            out.append((b, n))
            start += n
            b += 1
        return out


@dataclass
class McEstimate:
    """Streaming mean/variance (Welford; merged with Chan's pairwise update).

    ``mean`` and ``m2`` may be arrays when a kernel returns several columns.
    """

    n: int = 0
    mean: np.ndarray | float = 0.0
    m2: np.ndarray | float = 0.0

    @classmethod
    def from_samples(cls, x) -> "McEstimate":
        x = np.asarray(x, dtype=float)
        n = x.shape[0]
        if n == 0:
            return cls()
        mean = x.mean(axis=0)
        m2 = ((x - mean) ** 2).sum(axis=0)
        return cls(n, mean, m2)

    def merge(self, other: "McEstimate") -> "McEstimate":
        if other.n == 0:
            return McEstimate(self.n, self.mean, self.m2)
        if self.n == 0:
            return McEstimate(other.n, other.mean, other.m2)
        n = self.n + other.n
        delta = other.mean - self.mean
        mean = self.mean + delta * (other.n / n)
        m2 = self.m2 + other.m2 + delta * delta * (self.n * other.n / n)
        return McEstimate(n, mean, m2)

    @property
    def variance(self):
        if self.n < 2:
            return np.zeros_like(np.asarray(self.mean, dtype=float))
        return self.m2 / (self.n - 1)

    @property
    def standard_error(self):
        if self.n == 0:
            return np.inf
        return np.sqrt(self.variance / self.n)

    def z(self, expected):
        """(mean - expected) / SE; zero when both the gap and the SE vanish."""
        se = np.asarray(self.standard_error, dtype=float)
        gap = np.asarray(self.mean - np.asarray(expected), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            z = np.where(se > 0, gap / np.where(se > 0, se, 1.0),
                         np.where(gap == 0, 0.0, np.inf * np.sign(gap)))
        return z if z.ndim else float(z)


class ReplicaError(RuntimeError):
    def __init__(self, message, replica):
        super().__init__(message)
        self.replica = replica


def _run_blocks(config: McConfig, fn):
    blocks = config.blocks()
    offsets = np.cumsum([0] + [n for _, n in blocks[:-1]])

    def task(i):
        b, n = blocks[i]
        try:
            return fn(stream(config.master_seed, b), n)
        except Exception as exc:  # noqa: BLE001 - re-raised with the replica index
            raise ReplicaError(f"kernel failed in replicas starting at {offsets[i]}: {exc}",
                               int(offsets[i])) from exc

    if config.n_workers == 1 or len(blocks) == 1:
        return [task(i) for i in range(len(blocks))]
    with ThreadPoolExecutor(max_workers=config.n_workers) as pool:
        return list(pool.map(task, range(len(blocks))))


def sample_replicas(config: McConfig, kernel: Kernel) -> np.ndarray:
    """All replica outputs, concatenated in replica order."""
    parts = _run_blocks(config, lambda rng, n: np.asarray(kernel(rng, n)))
    return np.concatenate(parts, axis=0)


def run_replicas(config: McConfig, kernel: Kernel, histogram: bool = False):
    """Mean/variance of ``kernel`` over ``config.replicas`` replicas.

    ``kernel(rng, n)`` must return n samples (shape (n,) or (n, k)) and be
    pure given its generator.  With ``histogram=True`` the kernel must return
    nonnegative integers and the call returns ``(estimate, counts)`` where
    ``counts[v]`` is the number of replicas that produced ``v``.
    """

    def block(rng, n):
        x = np.asarray(kernel(rng, n))
        est = McEstimate.from_samples(x)
        hist = np.bincount(x.astype(np.int64)) if histogram else None
        return est, hist

    results = _run_blocks(config, block)
    est = McEstimate()
    for r, _ in results:
        est = est.merge(r)
    if not histogram:
        return est
    width = max(len(h) for _, h in results)
    counts = np.zeros(width, dtype=np.int64)
    for _, h in results:
        counts[: len(h)] += h
    return est, counts


# --------------------------------------------------------------------------- comparators


class GofError(ValueError):
    pass


@dataclass
class GofResult:
    statistic: float
    dof: int
    pvalue: float
    observed: np.ndarray = field(repr=False)
    expected: np.ndarray = field(repr=False)


def pool_cells(observed, expected, min_cell: float = 5.0):
    """Merge adjacent cells left to right until every expected count reaches ``min_cell``.

    A short remainder at the right end is folded into the last full cell.
    """
    obs_out, exp_out = [], []
    acc_o = acc_e = 0.0
    for o, e in zip(observed, expected):
        acc_o += o
        acc_e += e
        if acc_e >= min_cell:
            obs_out.append(acc_o)
            exp_out.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0 or acc_o > 0:
        if exp_out:
            obs_out[-1] += acc_o
            exp_out[-1] += acc_e
        else:
            obs_out.append(acc_o)
            exp_out.append(acc_e)
    return np.asarray(obs_out), np.asarray(exp_out)


def chi_square_gof(observed, expected, min_cell: float = 5.0, n_cells: int | None = None) -> GofResult:
    """Pearson goodness of fit of an integer histogram against a pmf.

    Parameters
    ----------
    observed : array_like
        ``observed[v]`` = number of samples equal to v.
    expected : callable or array_like
        pmf evaluator ``expected(v)`` or an array of probabilities for
        v = 0, 1, ...  Mass not covered by the evaluated cells goes into an
        upper tail cell.
    min_cell : float
        Minimum expected count per cell after pooling.
    n_cells : int, optional
        Number of explicit cells before the tail cell; defaults to the
        observed support, extended until the expected tail is negligible.
    """
    observed = np.asarray(observed, dtype=float)
    total = observed.sum()
    if total <= 0:
        raise GofError("observed: empty histogram")
    if callable(expected):
        k = n_cells if n_cells is not None else len(observed)
        probs = np.array([expected(v) for v in range(k)], dtype=float)
        if n_cells is None:
            # keep adding cells while the unexplained tail is still material
            while 1.0 - probs.sum() > 1e-12 and probs.size < 100_000 and probs[-1] * total >= 1e-6:
                probs = np.append(probs, expected(probs.size))
    else:
        probs = np.asarray(expected, dtype=float)
        if n_cells is not None:
            probs = probs[:n_cells]
    k = probs.size
    obs = np.zeros(k + 1)
    m = min(k, len(observed))
    obs[:m] = observed[:m]
    obs[k] = observed[k:].sum() if len(observed) > k else 0.0
    tail = max(1.0 - probs.sum(), 0.0)
    exp = np.append(probs, tail) * total
    obs_p, exp_p = pool_cells(obs, exp, min_cell)
    if obs_p.size < 2:
        raise GofError("fewer than 2 cells after pooling")
    stat = float(((obs_p - exp_p) ** 2 / exp_p).sum())
    dof = obs_p.size - 1
    return GofResult(stat, dof, float(stats.chi2.sf(stat, dof)), obs_p, exp_p)


def ks_two_sample(a, b) -> tuple[float, float]:
    """Two-sample Kolmogorov-Smirnov statistic with its asymptotic p-value."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size < 100 or b.size < 100:
        raise ValueError("ks_two_sample: both samples need at least 100 points")
    res = stats.ks_2samp(a, b, method="asymp")
    return float(res.statistic), float(res.pvalue)


def ks_one_sample(x, cdf) -> tuple[float, float]:
    res = stats.kstest(np.asarray(x, dtype=float), cdf)
    return float(res.statistic), float(res.pvalue)
