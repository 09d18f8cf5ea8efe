"""Validation suites: every analytic formula paired with an independent check.

Each check returns :class:`Check` records (name, statistic, threshold,
verdict).  Acceptance criteria group checks with a runtime budget.  The
same functions back ``mpplab validate`` and ``tests/test_acceptance.py``.

Nothing in the check records depends on wall-clock time or worker count,
so a suite rerun with the same seed serialises to identical bytes.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special as sps
from scipy import stats

from .integrals import (
    FracIntegralSpec,
    gaussian_asymptotic_check,
    integral_mean,
    integral_variance,
    sample_integral_compound,
    sample_integral_quadrature,
)
from .martingales import (
    MartingaleTestSpec,
    broken_sampler,
    increment_independence_test,
    run_martingale_test,
)
from .mc import (
    McConfig,
    McEstimate,
    chi_square_gof,
    ks_one_sample,
    ks_two_sample,
    run_replicas,
    sample_replicas,
    stream,
)
from .mpp import (
    MppModel,
    bivariate_conditional_mean_bruteforce,
    mpp_bivariate_conditional_mean,
    mpp_conditional_pmf,
    mpp_covariance,
    mpp_pgf,
    mpp_pmf,
    sample_mpp_counts,
)
from .special import _ml_cached, ml
from .subordinators import (
    covariance_inverse_stable,
    governing_equation_residual,
    inverse_stable_laplace,
    inverse_stable_mean,
    sample_inverse_stable_marginal,
    sample_inverse_stable_paths,
)
from .time_changed import (
    SFPP_MAX_ARGUMENT,
    MfppModel,
    SfppModel,
    mfpp_autocorrelation,
    mfpp_factorial_moment,
    mfpp_moments,
    mfpp_pgf,
    mfpp_pmf_enumeration,
    mfpp_pmf_vector,
    sample_mfpp,
    sample_sfpp,
    sfpp_ode_residual,
    sfpp_pgf,
    sfpp_pmf_enumeration,
    sfpp_pmf_vector,
)

DEFAULT_SEED = 20240601
Z_LIMIT = 4.0
P_LIMIT = 0.01


@dataclass
class Check:
    name: str
    statistic: float
    threshold: float
    relation: str
    passed: bool
    expected_fail: bool = False

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "statistic": float(self.statistic),
            "threshold": float(self.threshold),
            "relation": self.relation,
            "pass": bool(self.passed),
        }


def p_above(name, p, limit=P_LIMIT) -> Check:
    return Check(name, p, limit, "p >", bool(p > limit))


def z_within(name, z, limit=Z_LIMIT) -> Check:
    return Check(name, abs(z), limit, "|z| <", bool(abs(z) < limit))


def below(name, value, limit) -> Check:
    return Check(name, value, limit, "<", bool(value < limit))


def expected_failure(check: Check, name: str) -> Check:
    """A negative control: the wrapped check must fail for this one to pass."""
    return Check(name, check.statistic, check.threshold, "fails: " + check.relation,
                 not check.passed, expected_fail=True)


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list[Check]
    seconds: float
    limit: float | None

    @property
    def passed(self) -> bool:
        in_time = self.limit is None or self.seconds < self.limit
        return in_time and all(c.passed for c in self.checks)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        budget = f"{self.seconds:.1f}s" + (f" / {self.limit:g}s" if self.limit else "")
        parts = [f"{c.name}: {c.statistic:.4g} {c.relation} {c.threshold:.4g}"
                 f"{'' if c.passed else ' (failed)'}" for c in self.checks]
        return f"criterion {self.number:2d} {verdict} {self.title} [{budget}] " + "; ".join(parts)


def _z_var(samples, expected_var) -> float:
    """z of a sample variance using the fourth-moment standard error."""
    x = np.asarray(samples, dtype=float)
    n = x.size
    c = x - x.mean()
    v = c.dot(c) / (n - 1)
    m4 = np.mean(c ** 4)
    se = math.sqrt(max(m4 - v * v, 0.0) / n)
    return (v - expected_var) / se if se > 0 else 0.0


def _mean_z(samples, expected) -> float:
    return McEstimate.from_samples(samples).z(expected)


# --------------------------------------------------------------------------- criteria


def mpp_law(seed=DEFAULT_SEED, workers=1, replicas=1_000_000) -> list[Check]:
    model = MppModel([1.0, 2.0])
    t = (1.0, 1.0)
    cfg = McConfig(replicas, seed, workers)
    _, counts = run_replicas(cfg, lambda rng, n: sample_mpp_counts(model, [t], rng, n)[:, 0], histogram=True)
    gof = chi_square_gof(counts, lambda v: mpp_pmf(model, t, v))
    return [p_above("mpp counts vs Poisson(3) chi-square", gof.pvalue)]


def conditional_binomial(seed=DEFAULT_SEED, workers=1, replicas=1_000_000) -> list[Check]:
    model = MppModel([1.0, 2.0])
    s, t = (0.5, 0.25), (1.0, 1.0)  # Lambda.s / Lambda.t = 1/3
    cfg = McConfig(replicas, seed + 1, workers)
    pairs = sample_replicas(cfg, lambda rng, n: sample_mpp_counts(model, [s, t], rng, n))
    out = []
    for m in (2, 5):
        sel = pairs[pairs[:, 1] == m, 0]
        hist = np.bincount(sel, minlength=m + 1)
        probs = np.array([mpp_conditional_pmf(model, s, t, k, m) for k in range(m + 1)])
        gof = chi_square_gof(hist, probs)
        out.append(p_above(f"N(s) | N(t)={m} vs Binomial({m}, 1/3)", gof.pvalue))
    return out


BIVARIATE_CASES = (
    ((1.0, 2.0), (0.2, 0.3), (0.5, 0.5), (1.0, 1.0)),
    ((1.0, 2.0), (0.1, 0.1), (0.1, 0.6), (0.9, 0.7)),
    ((0.5, 1.0, 2.0), (0.1, 0.2, 0.3), (0.4, 0.2, 0.5), (1.0, 1.0, 1.0)),
)


def bivariate_conditional(seed=DEFAULT_SEED, workers=1) -> list[Check]:
    worst = 0.0
    for rates, r, s, t in BIVARIATE_CASES:
        model = MppModel(rates)
        for m in range(1, 7):
            a = mpp_bivariate_conditional_mean(model, r, s, t, m)
            b = bivariate_conditional_mean_bruteforce(model, r, s, t, m)
            worst = max(worst, abs(a - b))
    return [below("bivariate conditional mean: closed form vs trinomial sum", worst, 1e-12)]


def inverse_subordinator(seed=DEFAULT_SEED, workers=1, replicas=1_000_000,
                         ks_n=100_000, path_replicas=1_000_000, resolution=1e-2) -> list[Check]:
    a = 0.5
    est = run_replicas(McConfig(replicas, seed + 2, workers),
                       lambda rng, n: sample_inverse_stable_marginal(a, 1.0, rng, n))
    out = [z_within("mean L(1), alpha=1/2, vs 2/sqrt(pi)", est.z(2 / math.sqrt(math.pi)))]
    x = sample_replicas(McConfig(ks_n, seed + 3, workers),
                        lambda rng, n: sample_inverse_stable_marginal(a, 1.0, rng, n))
    _, p = ks_one_sample(x, stats.halfnorm(scale=math.sqrt(2.0)).cdf)
    out.append(p_above("L(1), alpha=1/2, vs half-normal KS", p))
    paths = sample_replicas(McConfig(path_replicas, seed + 4, workers),
                            lambda rng, n: sample_inverse_stable_paths(a, [1.0, 2.0], resolution, rng, n))
    c = paths - paths.mean(axis=0)
    out.append(z_within("Cov(L(1), L(2)) quadrature vs path MC",
                        _mean_z(c[:, 0] * c[:, 1] * len(c) / (len(c) - 1),
                                covariance_inverse_stable(a, 1.0, 2.0))))
    return out


def mfpp_pmf_check(seed=DEFAULT_SEED, workers=1, replicas=1_000_000) -> list[Check]:
    model = MfppModel([1.0, 1.0], [0.5, 0.5])
    t = (1.0, 1.0)
    _, counts = run_replicas(McConfig(replicas, seed + 5, workers),
                             lambda rng, n: sample_mfpp(model, t, rng, n), histogram=True)
    probs = mfpp_pmf_vector(model, 60, t)
    gof = chi_square_gof(counts, probs)
    out = [p_above("MFPP pmf vs MC chi-square", gof.pvalue)]
    worst = 0.0
    cases = [(model, t), (MfppModel([1.0, 2.0, 0.5], [0.5, 0.7, 1.0]), (1.0, 0.5, 2.0))]
    for mdl, pt in cases:
        vec = mfpp_pmf_vector(mdl, 8, pt)
        for n in range(9):
            worst = max(worst, abs(vec[n] - mfpp_pmf_enumeration(mdl, n, pt)))
    out.append(below("MFPP convolution vs composition enumeration, n <= 8", worst, 1e-12))
    return out


def sfpp_check(seed=DEFAULT_SEED, workers=1, replicas=1_000_000, lam=1.0, alpha=0.6, t=1.0,
               ode_t=0.5) -> list[Check]:
    model = SfppModel([lam], [alpha])
    if lam ** alpha * t > SFPP_MAX_ARGUMENT:
        raise ValueError(f"lambda^alpha t = {lam ** alpha * t:.4g} exceeds {SFPP_MAX_ARGUMENT}")
    res = sfpp_ode_residual(model, 10, ode_t, 1e-4)
    out = [below("SFPP forward-equation residual, n <= 10", res.max_residual, 1e-5)]
    us = np.array([0.2, 0.5, 0.8])
    samples = sample_replicas(McConfig(replicas, seed + 6, workers),
                              lambda rng, n: sample_sfpp(model, t, rng, n))
    counts = np.bincount(np.minimum(samples, 10_000).astype(np.int64))
    gof = chi_square_gof(counts, sfpp_pmf_vector(model, 40, t))
    out.append(p_above("SFPP pmf vs MC of N(S(t)) chi-square", gof.pvalue))
    for u in us:
        z = _mean_z(np.power(u, samples.astype(float)), sfpp_pgf(model, u, t))
        out.append(z_within(f"SFPP pgf at u={u:g}", z))
    return out


INTEGRAL_SPEC = ((1.0, 2.0), (1.0, 1.0), (1.0, 1.0))


def integral_representation(seed=DEFAULT_SEED, workers=1, n=10_000, subdivisions=512) -> list[Check]:
    spec = FracIntegralSpec(*INTEGRAL_SPEC)
    a = sample_replicas(McConfig(n, seed + 7, workers), lambda rng, k: sample_integral_compound(spec, rng, k))
    b = sample_replicas(McConfig(n, seed + 8, workers),
                        lambda rng, k: sample_integral_quadrature(spec, subdivisions, rng, k))
    _, p = ks_two_sample(a, b)
    out = [p_above("compound representation vs path quadrature KS", p)]
    mean, var = integral_mean(spec), integral_variance(spec)
    for label, x in (("compound", a), ("quadrature", b)):
        out.append(z_within(f"{label} sample mean vs closed form", _mean_z(x, mean)))
        out.append(z_within(f"{label} sample variance vs closed form", _z_var(x, var)))
    return out


def gaussian_ladder(seed=DEFAULT_SEED, workers=1, n=100_000) -> list[Check]:
    spec = FracIntegralSpec(*INTEGRAL_SPEC)
    report = gaussian_asymptotic_check(spec, (0.1, 0.05, 0.025), n, stream(seed + 9, 0))
    out = []
    for prev, cur in zip(report.rungs, report.rungs[1:]):
        out.append(Check(f"KS(scale={cur.scale:g}) - KS(scale={prev.scale:g})", cur.ks - prev.ks, 0.0, "<",
                         bool(cur.ks < prev.ks)))
    return out


MARTINGALE_CHAIN = ((0.5, 0.5), (1.0, 0.5), (1.0, 1.0))
MFPP_CHAIN = ((0.25,), (0.5,), (1.0,))


def _martingale_specs(seed, workers, replicas, scale=1.0):
    return [
        MartingaleTestSpec("compensated_mpp", (1.0, 2.0), MARTINGALE_CHAIN, replicas=replicas,
                           seed=seed + 10, compensator_scale=scale, workers=workers),
        MartingaleTestSpec("exponential_mpp", (1.0, 2.0), MARTINGALE_CHAIN, c=-0.5, replicas=replicas,
                           seed=seed + 11, compensator_scale=scale, workers=workers),
        MartingaleTestSpec("compensated_mfpp", (1.0,), MFPP_CHAIN, orders=(0.5,), replicas=replicas,
                           seed=seed + 12, compensator_scale=scale, workers=workers),
    ]


def martingale_true(seed=DEFAULT_SEED, workers=1, replicas=1_000_000) -> list[Check]:
    out = []
    for spec in _martingale_specs(seed, workers, replicas):
        rep = run_martingale_test(spec)
        out.append(z_within(f"{spec.family}: constant mean", rep.max_abs_z_mean))
        out.append(z_within(f"{spec.family}: increment orthogonal to past", rep.max_abs_z_orthogonal))
    return out


def martingale_negative(seed=DEFAULT_SEED, workers=1, replicas=1_000_000) -> list[Check]:
    out = []
    for spec in _martingale_specs(seed, workers, replicas, scale=1.2):
        rep = run_martingale_test(spec)
        out.append(Check(f"{spec.family} with compensator 1.2 Lambda: mean z", rep.max_abs_z_mean, 6.0,
                         "|z| >", bool(rep.max_abs_z_mean > 6.0), expected_fail=True))
    return out


def special_functions(seed=DEFAULT_SEED, workers=1) -> list[Check]:
    _ml_cached.cache_clear()
    xs = np.linspace(-20.0, 20.0, 401)
    worst = max(abs(ml(1.0, 1.0, x) / math.exp(x) - 1.0) for x in xs)
    out = [below("E_{1,1}(x) vs exp(x), relative, x in [-20, 20]", worst, 1e-12)]
    worst = 0.0
    for a in (0.3, 0.5, 0.8):
        for b in (0.5, 1.0, 2.0):
            for x in np.linspace(-5.0, 5.0, 21):
                lhs = ml(a, b, x)
                rhs = x * ml(a, a + b, x) + 1.0 / math.gamma(b)
                worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    out.append(below("E_{a,b}(x) = x E_{a,a+b}(x) + 1/Gamma(b) on the grid", worst, 1e-10))
    v = ml(0.5, 1.0, -1.0)
    out.append(below("E_{1/2,1}(-1) vs e erfc(1)", abs(v - math.e * sps.erfc(1.0)), 1e-10))
    return out


def determinism(seed=DEFAULT_SEED, workers=(1, 4)) -> list[Check]:
    from .cli import determinism_outputs  # cli imports this module

    outputs = {w: determinism_outputs(seed, w) for w in workers}
    ref = outputs[workers[0]]
    out = []
    for name in ref:
        same = all(outputs[w][name] == ref[name] for w in workers)
        out.append(Check(f"{name}: identical bytes for workers {list(workers)}", 0.0 if same else 1.0, 0.5,
                         "<", same))
    return out


# --------------------------------------------------------------------------- extra suite checks


def mpp_extras(seed=DEFAULT_SEED, workers=1) -> list[Check]:
    model = MppModel([1.0, 2.0])
    s, t = (0.5, 1.0), (1.0, 0.5)
    x = sample_replicas(McConfig(200_000, seed + 20, workers),
                        lambda rng, n: sample_mpp_counts(model, [s, t], rng, n)).astype(float)
    c = x - x.mean(axis=0)
    out = [z_within("Cov(N(s), N(t)) vs sum lambda_i min(s_i, t_i)",
                    _mean_z(c[:, 0] * c[:, 1], mpp_covariance(model, s, t)))]
    for u in (0.2, 0.5, 0.8):
        out.append(z_within(f"MPP pgf at u={u:g}", _mean_z(u ** x[:, 1], mpp_pgf(model, t, u))))
    return out


def subordinator_extras(seed=DEFAULT_SEED, workers=1) -> list[Check]:
    res = governing_equation_residual([0.5, 1.0, 2.0], [0.5, 1.0], h=1e-4)
    out = [below("alpha=1/2 density: fractional governing equation residual", res, 1e-3)]
    x = sample_replicas(McConfig(20_000, seed + 21, workers),
                        lambda rng, n: sample_inverse_stable_paths(0.5, [1.0], 1e-3, rng, n)[:, 0])
    _, p = ks_one_sample(x, stats.halfnorm(scale=math.sqrt(2.0)).cdf)
    out.append(p_above("path sampler L(1) vs half-normal KS", p))
    for a, lam in ((0.3, 1.0), (0.7, 2.0)):
        y = sample_replicas(McConfig(200_000, seed + 22, workers),
                            lambda rng, n, a=a: sample_inverse_stable_marginal(a, 1.0, rng, n))
        out.append(z_within(f"E exp(-{lam:g} L(1)), alpha={a:g}, vs Mittag-Leffler",
                            _mean_z(np.exp(-lam * y), inverse_stable_laplace(a, 1.0, lam))))
        out.append(z_within(f"E L(1), alpha={a:g}", _mean_z(y, inverse_stable_mean(a, 1.0))))
    return out


def mfpp_extras(seed=DEFAULT_SEED, workers=1) -> list[Check]:
    model = MfppModel([1.0], [0.5])
    x = sample_replicas(McConfig(200_000, seed + 23, workers),
                        lambda rng, n: sample_mfpp(model, (1.0,), rng, n)).astype(float)
    mean, var = mfpp_moments(model, (1.0,))
    out = [z_within("MFPP mean, alpha=1/2", _mean_z(x, mean)),
           z_within("MFPP variance, alpha=1/2", _z_var(x, var))]
    m2 = MfppModel([1.0, 2.0], [0.6, 0.8])
    t2 = (1.0, 0.7)
    y = sample_replicas(McConfig(200_000, seed + 24, workers),
                        lambda rng, n: sample_mfpp(m2, t2, rng, n)).astype(float)
    for u in (0.2, 0.5, 0.8):
        out.append(z_within(f"MFPP pgf at u={u:g}", _mean_z(u ** y, mfpp_pgf(m2, u, t2))))
    pmf = mfpp_pmf_vector(m2, 150, t2)
    n = np.arange(pmf.size)
    out.append(below("factorial moment 2 vs pmf sum",
                     abs(mfpp_factorial_moment(m2, 2, t2) - float(np.sum(n * (n - 1) * pmf))), 1e-6))
    scaled = [mfpp_autocorrelation(MfppModel([1.0, 1.0], [0.5, 0.5]), (1.0, 1.0), (c, c)) * c ** 0.5
              for c in (10.0, 20.0, 40.0, 80.0)]
    steps = np.abs(np.diff(scaled))
    out.append(Check("autocorrelation x t^alpha: successive changes shrink",
                     float(np.max(steps[1:] / steps[:-1])), 1.0, "<", bool(np.all(steps[1:] < steps[:-1]))))
    return out


def sfpp_extras(seed=DEFAULT_SEED, workers=1) -> list[Check]:
    model = SfppModel([1.0, 1.0], [0.5, 0.7])
    vec = sfpp_pmf_vector(model, 8, 1.0)
    worst = max(abs(vec[n] - sfpp_pmf_enumeration(model, n, 1.0)) for n in range(9))
    out = [below("SFPP convolution vs composition enumeration, n <= 8", worst, 1e-12)]
    ones = SfppModel([2.0], [1.0])
    out.append(below("SFPP at alpha=1: forward-equation residual", sfpp_ode_residual(ones, 10, 1.0, 1e-4).max_residual,
                     1e-6))
    return out


def mc_engine_checks(seed=DEFAULT_SEED, workers=1) -> list[Check]:
    est = run_replicas(McConfig(1000, seed, workers), lambda rng, n: np.ones(n))
    out = [Check("constant kernel: SE", float(est.standard_error), 0.0, "==",
                 bool(est.mean == 1.0 and est.standard_error == 0.0))]
    pois = run_replicas(McConfig(1_000_000, seed + 30, workers), lambda rng, n: rng.poisson(3.0, n))
    out.append(z_within("Poisson(3) kernel mean", pois.z(3.0)))
    means = {w: run_replicas(McConfig(300_000, seed + 31, w, block_size=10_000),
                             lambda rng, n: rng.standard_normal(n)).mean for w in (1, 4, 16)}
    same = len({float(v).hex() for v in means.values()}) == 1
    out.append(Check("identical mean for workers 1, 4, 16", 0.0 if same else 1.0, 0.5, "<", same))
    draws = np.stack([stream(seed + 32, i).random(1000) for i in range(1000)])
    r = np.array([np.corrcoef(draws[i], draws[i + 1])[0, 1] for i in range(999)])
    zmax = float(np.max(np.abs(np.arctanh(r)) * math.sqrt(997)))
    out.append(below("adjacent replica streams: max |z| of correlation", zmax, 5.0))
    return out


def negative_controls(seed=DEFAULT_SEED, workers=1) -> list[Check]:
    out = martingale_negative(seed, workers, replicas=200_000)
    model = MppModel([1.0, 2.0])
    chain = [(0.0, 0.0), (1.0, 1.0), (2.0, 1.0), (2.0, 2.0)]
    rep = increment_independence_test(model, chain, 100_000, seed + 40, sampler=broken_sampler, workers=workers)
    raw = Check("increment independence", rep.pairs[-1].pvalue if rep.pairs else 1.0, rep.threshold, "p >",
                rep.passed)
    out.append(expected_failure(raw, "broken sampler fails the increment independence test"))
    rng = stream(seed + 41, 0)
    counts = np.bincount(rng.poisson(3.0, 100_000))
    gof = chi_square_gof(counts, stats.poisson(4.0).pmf)
    out.append(Check("Poisson(3) data vs Poisson(4) pmf chi-square", gof.pvalue, 1e-6, "p <",
                     bool(gof.pvalue < 1e-6), expected_fail=True))
    _, p = ks_two_sample(rng.uniform(size=10_000), rng.exponential(size=10_000))
    out.append(Check("uniform vs exponential two-sample KS", p, 1e-10, "p <", bool(p < 1e-10), expected_fail=True))
    return out


def independence_checks(seed=DEFAULT_SEED, workers=1) -> list[Check]:
    out = []
    cases = [(MppModel([1.0]), [(0.0,), (1.0,), (2.0,), (3.0,)]),
             (MppModel([1.0, 2.0]), [(0.0, 0.0), (1.0, 1.0), (2.0, 1.0), (2.0, 2.0)])]
    for k, (model, chain) in enumerate(cases):
        rep = increment_independence_test(model, chain, 100_000, seed + 42 + k, workers=workers)
        worst_p = min(min(p.pvalue, 2 * stats.norm.sf(abs(p.z))) for p in rep.pairs)
        out.append(Check(f"increment independence, d={model.d}", worst_p, rep.threshold, "p >", rep.passed))
    return out


# --------------------------------------------------------------------------- registry


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    run: Callable[..., list[Check]]
    limit: float | None


CRITERIA = (
    Criterion(1, "MPP law", mpp_law, 20.0),
    Criterion(2, "conditional binomial", conditional_binomial, 60.0),
    Criterion(3, "bivariate conditional mean", bivariate_conditional, 1.0),
    Criterion(4, "inverse-subordinator marginals", inverse_subordinator, 120.0),
    Criterion(5, "MFPP pmf", mfpp_pmf_check, 120.0),
    Criterion(6, "SFPP series", sfpp_check, 90.0),
    Criterion(7, "integral representation", integral_representation, 180.0),
    Criterion(8, "Gaussian asymptotic", gaussian_ladder, 60.0),
    Criterion(9, "martingale suite", lambda seed=DEFAULT_SEED, workers=1:
              martingale_true(seed, workers) + martingale_negative(seed, workers), 120.0),
    Criterion(10, "special functions", special_functions, 5.0),
    Criterion(11, "determinism", lambda seed=DEFAULT_SEED, workers=1: determinism(seed), None),
)


def run_criterion(number: int, seed: int = DEFAULT_SEED, workers=1) -> CriterionResult:
    crit = CRITERIA[number - 1]
    t0 = time.perf_counter()
    checks = crit.run(seed=seed, workers=workers)
    return CriterionResult(crit.number, crit.title, checks, time.perf_counter() - t0, crit.limit)


def _criteria_checks(*numbers):
    def run(seed=DEFAULT_SEED, workers=1, **_):
        out = []
        for k in numbers:
            out += CRITERIA[k - 1].run(seed=seed, workers=workers)
        return out

    return run


def _sfpp_suite(seed=DEFAULT_SEED, workers=1, params=None):
    params = params or {}
    return sfpp_check(seed, workers, **params) + sfpp_extras(seed, workers)


SUITES: dict[str, Callable[..., list[Check]]] = {
    "mpp-core": lambda seed=DEFAULT_SEED, workers=1, **_: (
        _criteria_checks(1, 2, 3)(seed, workers) + mpp_extras(seed, workers)),
    "special-fn": _criteria_checks(10),
    "subordinators": lambda seed=DEFAULT_SEED, workers=1, **_: (
        _criteria_checks(4)(seed, workers) + subordinator_extras(seed, workers)),
    "sfpp": _sfpp_suite,
    "mfpp": lambda seed=DEFAULT_SEED, workers=1, **_: (
        _criteria_checks(5)(seed, workers) + mfpp_extras(seed, workers)),
    "integrals": _criteria_checks(7, 8),
    "martingale": lambda seed=DEFAULT_SEED, workers=1, **_: (
        martingale_true(seed, workers) + independence_checks(seed, workers)),
    "negative-controls": lambda seed=DEFAULT_SEED, workers=1, **_: negative_controls(seed, workers),
    "mc-engine": lambda seed=DEFAULT_SEED, workers=1, **_: mc_engine_checks(seed, workers),
    "acceptance": _criteria_checks(*range(1, 12)),
}


def run_suite(name: str, seed: int = DEFAULT_SEED, workers=1, params: dict | None = None) -> list[Check]:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](seed=seed, workers=workers, params=params)
