"""Command-line driver: ``mpplab {pmf,moments,simulate,validate}``.

Experiments are described by a JSON config; flags only override the seed,
replica count, worker count and output.  Exit codes: 0 pass, 1 statistical
failure, 2 config error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__
from .index import DimensionError
from .integrals import (
    DEFAULT_SUBDIVISIONS,
    FracIntegralSpec,
    integral_conditional_mean,
    integral_mean,
    integral_variance,
    sample_integral_compound,
    sample_integral_quadrature,
)
from .martingales import MartingaleTestSpec, _mfpp_kernel, _mpp_kernel
from .mc import GofError, McConfig, chi_square_gof, run_replicas, sample_replicas
from .mpp import (
    MppModel,
    OrderingError,
    mpp_bivariate_conditional_mean,
    mpp_conditional_moments,
    mpp_covariance,
    mpp_pmf,
    sample_mpp_counts,
    sample_mvmpp,
)
from .special import SeriesError
from .subordinators import QuadratureError
from .time_changed import (
    SFPP_MAX_ARGUMENT,
    MfppModel,
    SfppModel,
    fractional_variant_mean,
    fractional_variant_pmf_vector,
    mfpp_covariance,
    mfpp_factorial_moment,
    mfpp_moments,
    mfpp_pgf,
    mfpp_pmf_vector,
    sample_mfpp,
    sample_sfpp,
    sfpp_pgf,
    sfpp_pmf_vector,
)

EXIT_OK, EXIT_STAT, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3
SEED_ENV = "MPP_LAB_SEED"
PROCESSES = ("mpp", "mvmpp", "sfpp", "mfpp", "fractional_variant", "integral", "martingale")
TOP_FIELDS = {"process", "d", "lambda", "alpha", "rho", "t", "s", "r", "chain", "c", "m", "family",
              "n_max", "subdivisions", "resolution", "mc", "output"}
MC_FIELDS = {"replicas", "seed", "workers"}
OUTPUT_FIELDS = {"path", "format"}
PGF_POINTS = (0.2, 0.5, 0.8)


class ConfigError(ValueError):
    pass


# --------------------------------------------------------------------------- config


def _real_list(raw, name, d):
    if isinstance(raw, (int, float)) and not isinstance(raw, bool) and d == 1:
        raw = [raw]
    if not isinstance(raw, list) or len(raw) != d:
        raise ConfigError(f"{name}: expected d={d} entries")
    out = []
    for v in raw:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ConfigError(f"{name}: expected finite numbers")
        out.append(float(v))
    return tuple(out)


def _count(raw, name, minimum=0):
    if isinstance(raw, bool) or not isinstance(raw, int) or raw < minimum:
        raise ConfigError(f"{name}: expected an integer >= {minimum}")
    return raw


@dataclass(frozen=True)
class ExperimentConfig:
    process: str
    d: int
    lam: tuple
    alpha: tuple | None = None
    rho: tuple | None = None
    t: tuple | None = None
    s: tuple | None = None
    r: tuple | None = None
    chain: tuple | None = None
    c: float | None = None
    m: int | None = None
    family: str | None = None
    n_max: int = 20
    subdivisions: int = DEFAULT_SUBDIVISIONS
    resolution: float = 1e-2
    replicas: int = 100_000
    seed: int = 0
    workers: int | str = 1
    output_path: str | None = None
    output_format: str = "csv"

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config: expected a JSON object")
        unknown = sorted(set(raw) - TOP_FIELDS)
        if unknown:
            raise ConfigError(f"{unknown[0]}: unknown field")
        process = raw.get("process")
        if process not in PROCESSES:
            raise ConfigError(f"process: expected one of {', '.join(PROCESSES)}")
        if "lambda" not in raw:
            raise ConfigError("lambda: required field missing")
        d = raw.get("d", len(raw["lambda"]) if isinstance(raw["lambda"], list) else 1)
        d = _count(d, "d", 1)
        lam = _real_list(raw["lambda"], "lambda", d)
        if any(v <= 0 for v in lam):
            raise ConfigError("lambda: expected positive rates")
        kw: dict = {"process": process, "d": d, "lam": lam}
        for key in ("alpha", "rho", "t", "s", "r"):
            if key in raw:
                dim = 1 if (process == "sfpp" and key == "t") or (process == "fractional_variant"
                                                                   and key == "alpha") else d
                kw[key] = _real_list(raw[key], key, dim)
        if "chain" in raw:
            if not isinstance(raw["chain"], list) or not raw["chain"]:
                raise ConfigError("chain: expected a list of points")
            kw["chain"] = tuple(_real_list(p, "chain", d) for p in raw["chain"])
        if "c" in raw:
            if isinstance(raw["c"], bool) or not isinstance(raw["c"], (int, float)) or not raw["c"] > -1:
                raise ConfigError("c: expected a real number > -1")
            kw["c"] = float(raw["c"])
        if "m" in raw:
            kw["m"] = _count(raw["m"], "m")
        if "family" in raw:
            kw["family"] = raw["family"]
        if "n_max" in raw:
            kw["n_max"] = _count(raw["n_max"], "n_max")
        if "subdivisions" in raw:
            kw["subdivisions"] = _count(raw["subdivisions"], "subdivisions", 2)
        if "resolution" in raw:
            res = raw["resolution"]
            if isinstance(res, bool) or not isinstance(res, (int, float)) or not res > 0:
                raise ConfigError("resolution: expected a positive number")
            kw["resolution"] = float(res)
        mc = raw.get("mc", {})
        if not isinstance(mc, dict):
            raise ConfigError("mc: expected an object")
        bad = sorted(set(mc) - MC_FIELDS)
        if bad:
            raise ConfigError(f"mc.{bad[0]}: unknown field")
        if "replicas" in mc:
            kw["replicas"] = _count(mc["replicas"], "mc.replicas")
        if "seed" in mc:
            kw["seed"] = _count(mc["seed"], "mc.seed")
        if "workers" in mc:
            w = mc["workers"]
            if w != "auto":
                _count(w, "mc.workers", 1)
            kw["workers"] = w
        out = raw.get("output", {})
        if not isinstance(out, dict):
            raise ConfigError("output: expected an object")
        bad = sorted(set(out) - OUTPUT_FIELDS)
        if bad:
            raise ConfigError(f"output.{bad[0]}: unknown field")
        if "path" in out:
            if not isinstance(out["path"], str):
                raise ConfigError("output.path: expected a string")
            kw["output_path"] = out["path"]
        if "format" in out:
            if out["format"] not in ("csv", "json"):
                raise ConfigError("output.format: expected csv or json")
            kw["output_format"] = out["format"]
        cfg = cls(**kw)
        cfg.check()
        return cfg

    def check(self):
        """Process-specific required fields and parameter ranges."""
        p = self.process
        if p in ("sfpp", "mfpp", "fractional_variant") and self.alpha is None:
            raise ConfigError("alpha: required for process " + p)
        if self.alpha is not None and any(not 0 < a <= 1 for a in self.alpha):
            raise ConfigError("alpha: expected values in (0, 1]")
        if self.rho is not None and any(v <= 0 for v in self.rho):
            raise ConfigError("rho: expected positive orders")
        if p == "integral" and self.rho is None:
            raise ConfigError("rho: required for process integral")
        if p != "martingale" and self.t is None:
            raise ConfigError("t: required field missing")
        for key in ("t", "s", "r"):
            v = getattr(self, key)
            if v is not None and any(x < 0 for x in v):
                raise ConfigError(f"{key}: expected nonnegative coordinates")
        if p == "sfpp":
            x = max(lam ** a for lam, a in zip(self.lam, self.alpha)) * self.t[0]
            if x > SFPP_MAX_ARGUMENT:
                raise ConfigError(f"t: lambda^alpha t = {x:.4g} exceeds the supported maximum {SFPP_MAX_ARGUMENT}")
        if p == "martingale":
            if self.family is None:
                raise ConfigError("family: required for process martingale")
            if self.chain is None:
                raise ConfigError("chain: required for process martingale")
        if p == "integral" and self.t is not None and any(x <= 0 for x in self.t):
            raise ConfigError("t: expected every coordinate > 0")

    def experiment_dict(self) -> dict:
        """The config as JSON fields, without execution-only settings (workers, output)."""
        out: dict = {"process": self.process, "d": self.d, "lambda": list(self.lam)}
        for key in ("alpha", "rho", "t", "s", "r"):
            v = getattr(self, key)
            if v is not None:
                out[key] = list(v)
        if self.chain is not None:
            out["chain"] = [list(p) for p in self.chain]
        for key in ("c", "m", "family"):
            v = getattr(self, key)
            if v is not None:
                out[key] = v
        out["n_max"] = self.n_max
        out["subdivisions"] = self.subdivisions
        out["resolution"] = self.resolution
        out["mc"] = {"replicas": self.replicas, "seed": self.seed}
        return out

    def execution_free(self) -> "ExperimentConfig":
        return replace(self, workers=1, output_path=None, output_format="csv")

    def mc_config(self) -> McConfig:
        return McConfig(max(self.replicas, 1), self.seed, self.workers)


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return ExperimentConfig.from_dict(raw)


def resolve_seed(flag: int | None, config_seed: int, env=None) -> int:
    """Precedence: --seed flag, then MPP_LAB_SEED, then the config."""
    env = os.environ if env is None else env
    if flag is not None:
        return flag
    if env.get(SEED_ENV):
        try:
            return int(env[SEED_ENV])
        except ValueError as exc:
            raise ConfigError(f"{SEED_ENV}: expected an integer") from exc
    return config_seed


# --------------------------------------------------------------------------- output


def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return "" if v is None else str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else fmt(v)
    return v


@dataclass
class Table:
    columns: list[str]
    rows: list[list] = field(default_factory=list)


def provenance(command: str, cfg: ExperimentConfig | None, extra: dict | None = None) -> dict:
    info = {"artifact": f"mpplab {__version__}", "command": command}
    if cfg is not None:
        text = json.dumps(cfg.experiment_dict(), sort_keys=True, separators=(",", ":"))
        info["seed"] = cfg.seed
        info["config"] = text
        info["config_sha256"] = hashlib.sha256(text.encode()).hexdigest()
    if extra:
        info.update(extra)
    return info


def render(table: Table, prov: dict, fmt_name: str) -> str:
    buf = io.StringIO()
    if fmt_name == "json":
        buf.write(json.dumps({"provenance": prov}, sort_keys=True) + "\n")
        for row in table.rows:
            buf.write(json.dumps({c: _json_value(v) for c, v in zip(table.columns, row)}) + "\n")
        return buf.getvalue()
    for key in sorted(prov):
        buf.write(f"# {key}: {prov[key]}\r\n")
    writer = csv.writer(buf)
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_output(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOError(f"output: cannot write {path}: {exc.strerror}") from exc


def parse_provenance_config(text: str) -> ExperimentConfig:
    """Recover the experiment config from an emitted CSV or JSON-lines file."""
    first = text.splitlines()[0] if text else ""
    if first.startswith("{"):
        return ExperimentConfig.from_dict(json.loads(json.loads(first)["provenance"]["config"]))
    for line in text.splitlines():
        if line.startswith("# config: "):
            return ExperimentConfig.from_dict(json.loads(line[len("# config: "):]))
    raise ConfigError("provenance: no config line found")


# --------------------------------------------------------------------------- commands


def _z(mc_p, p, n):
    se = math.sqrt(p * (1 - p) / n) if 0 < p < 1 else 0.0
    if se == 0:
        return 0.0 if mc_p == p else math.inf
    return (mc_p - p) / se


def _count_sampler(cfg: ExperimentConfig):
    """Kernel drawing integer counts for the pmf comparator, or None."""
    p = cfg.process
    if p in ("mpp", "mvmpp"):
        model = MppModel(cfg.lam)
        if p == "mpp":
            return lambda rng, n: sample_mpp_counts(model, [cfg.t], rng, n)[:, 0]
        return lambda rng, n: sample_mvmpp(model, cfg.t, rng, n).sum(axis=1)
    if p == "sfpp":
        model = SfppModel(cfg.lam, cfg.alpha)
        return lambda rng, n: np.minimum(sample_sfpp(model, cfg.t[0], rng, n), 10 ** 9).astype(np.int64)
    if p == "mfpp":
        model = MfppModel(cfg.lam, cfg.alpha)
        return lambda rng, n: sample_mfpp(model, cfg.t, rng, n)
    return None


def analytic_pmf(cfg: ExperimentConfig) -> np.ndarray:
    p = cfg.process
    if p in ("mpp", "mvmpp"):
        model = MppModel(cfg.lam)
        return np.array([mpp_pmf(model, cfg.t, n) for n in range(cfg.n_max + 1)])
    if p == "sfpp":
        return sfpp_pmf_vector(SfppModel(cfg.lam, cfg.alpha), cfg.n_max, cfg.t[0])
    if p == "mfpp":
        return mfpp_pmf_vector(MfppModel(cfg.lam, cfg.alpha), cfg.n_max, cfg.t)
    if p == "fractional_variant":
        return fractional_variant_pmf_vector(cfg.lam, cfg.alpha[0], cfg.n_max, cfg.t)
    raise ConfigError(f"process: pmf is not defined for {p}")


def cmd_pmf(cfg: ExperimentConfig) -> tuple[Table, bool, dict]:
    probs = analytic_pmf(cfg)
    kernel = _count_sampler(cfg) if cfg.replicas > 0 else None
    table = Table(["n", "analytic_p", "mc_p", "z"])
    summary: dict = {}
    ok = True
    if kernel is None:
        for n, p in enumerate(probs):
            table.rows.append([n, p, None, None])
        return table, ok, summary
    _, counts = run_replicas(cfg.mc_config(), kernel, histogram=True)
    total = counts.sum()
    for n, p in enumerate(probs):
        mc_p = counts[n] / total if n < len(counts) else 0.0
        table.rows.append([n, p, mc_p, _z(mc_p, p, total)])
    try:
        gof = chi_square_gof(counts, probs)
        summary = {"chi2": gof.statistic, "dof": gof.dof, "pvalue": gof.pvalue}
        ok = gof.pvalue > 0.01
    except GofError as exc:
        summary = {"chi2": None, "note": str(exc)}
    return table, ok, summary


def _mc_rows(table, name, analytic, samples, var=False):
    x = np.asarray(samples, dtype=float)
    n = x.size
    if var:
        c = x - x.mean()
        est = c.dot(c) / (n - 1)
        se = math.sqrt(max(np.mean(c ** 4) - est * est, 0.0) / n)
    else:
        est = float(x.mean())
        se = float(x.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    z = (est - analytic) / se if se > 0 else (0.0 if est == analytic else math.inf)
    table.rows.append([name, analytic, est, se, z])
    return abs(z) < 4


def cmd_moments(cfg: ExperimentConfig) -> tuple[Table, bool, dict]:
    table = Table(["quantity", "analytic", "mc", "se", "z"])
    p = cfg.process
    mc = cfg.replicas > 0
    ok = True

    def add(name, value):
        table.rows.append([name, value, None, None, None])

    if p in ("mpp", "mvmpp"):
        model = MppModel(cfg.lam)
        mean = model.mean(cfg.t)
        x = sample_replicas(cfg.mc_config(), _count_sampler(cfg)) if mc else None
        if mc:
            ok &= _mc_rows(table, "mean", mean, x)
            ok &= _mc_rows(table, "variance", mean, x, var=True)
        else:
            add("mean", mean)
            add("variance", mean)
        if cfg.s is not None:
            add("covariance", mpp_covariance(model, cfg.s, cfg.t))
            if cfg.m is not None:
                try:
                    cm, cv = mpp_conditional_moments(model, cfg.s, cfg.t, cfg.m)
                except OrderingError as exc:
                    raise ConfigError(f"s: {exc}") from exc
                add("conditional_mean", cm)
                add("conditional_variance", cv)
                if cfg.r is not None:
                    try:
                        add("bivariate_conditional_mean",
                            mpp_bivariate_conditional_mean(model, cfg.r, cfg.s, cfg.t, cfg.m))
                    except (OrderingError, ValueError) as exc:
                        raise ConfigError(f"r: {exc}") from exc
    elif p == "sfpp":
        model = SfppModel(cfg.lam, cfg.alpha)
        infinite = any(a < 1 for a in cfg.alpha)
        add("mean", math.inf if infinite else sum(cfg.lam) * cfg.t[0])
        add("variance", math.inf if infinite else sum(cfg.lam) * cfg.t[0])
        x = sample_replicas(cfg.mc_config(), _count_sampler(cfg)).astype(float) if mc else None
        for u in PGF_POINTS:
            g = sfpp_pgf(model, u, cfg.t[0])
            if mc:
                ok &= _mc_rows(table, f"pgf(u={u:g})", g, u ** x)
            else:
                add(f"pgf(u={u:g})", g)
    elif p == "mfpp":
        model = MfppModel(cfg.lam, cfg.alpha)
        mean, var = mfpp_moments(model, cfg.t)
        x = sample_replicas(cfg.mc_config(), _count_sampler(cfg)).astype(float) if mc else None
        if mc:
            ok &= _mc_rows(table, "mean", mean, x)
            ok &= _mc_rows(table, "variance", var, x, var=True)
        else:
            add("mean", mean)
            add("variance", var)
        for k in (2, 3):
            add(f"factorial_moment_{k}", mfpp_factorial_moment(model, k, cfg.t))
        for u in PGF_POINTS:
            g = mfpp_pgf(model, u, cfg.t)
            if mc:
                ok &= _mc_rows(table, f"pgf(u={u:g})", g, u ** x)
            else:
                add(f"pgf(u={u:g})", g)
        if cfg.s is not None:
            add("covariance", mfpp_covariance(model, cfg.s, cfg.t))
    elif p == "fractional_variant":
        probs = fractional_variant_pmf_vector(cfg.lam, cfg.alpha[0], max(cfg.n_max, 200), cfg.t)
        n = np.arange(probs.size)
        add("mean", fractional_variant_mean(cfg.lam, cfg.alpha[0], cfg.t))
        add("mean_pmf_sum", float(np.dot(n, probs)))
        add("variance_pmf_sum", float(np.dot(n * n, probs) - np.dot(n, probs) ** 2))
    elif p == "integral":
        spec = FracIntegralSpec(MppModel(cfg.lam), cfg.rho, cfg.t)
        mean, var = integral_mean(spec), integral_variance(spec)
        if mc:
            if spec.is_riemann():
                kernel = lambda rng, n: sample_integral_compound(spec, rng, n)  # noqa: E731
            else:
                kernel = lambda rng, n: sample_integral_quadrature(spec, cfg.subdivisions, rng, n)  # noqa: E731
            x = sample_replicas(cfg.mc_config(), kernel)
            ok &= _mc_rows(table, "mean", mean, x)
            ok &= _mc_rows(table, "variance", var, x, var=True)
        else:
            add("mean", mean)
            add("variance", var)
        if cfg.m is not None:
            add("conditional_mean", integral_conditional_mean(spec, cfg.m))
    else:
        raise ConfigError(f"process: moments is not defined for {p}")
    return table, ok, {}


def _martingale_spec(cfg: ExperimentConfig) -> MartingaleTestSpec:
    try:
        return MartingaleTestSpec(cfg.family, cfg.lam, cfg.chain, orders=cfg.alpha, c=cfg.c,
                                  replicas=max(cfg.replicas, 10_000), seed=cfg.seed,
                                  resolution=cfg.resolution, workers=cfg.workers)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_simulate(cfg: ExperimentConfig) -> tuple[Table, bool, dict]:
    p = cfg.process
    if cfg.replicas < 1:
        raise ConfigError("mc.replicas: expected an integer >= 1")
    if p == "mvmpp":
        model = MppModel(cfg.lam)
        x = sample_replicas(cfg.mc_config(), lambda rng, n: sample_mvmpp(model, cfg.t, rng, n))
        cols = [f"n{i + 1}" for i in range(cfg.d)]
    elif p in ("mpp", "sfpp", "mfpp"):
        x = sample_replicas(cfg.mc_config(), _count_sampler(cfg))[:, None]
        cols = ["count"]
    elif p == "integral":
        spec = FracIntegralSpec(MppModel(cfg.lam), cfg.rho, cfg.t)
        if spec.is_riemann():
            x = sample_replicas(cfg.mc_config(), lambda rng, n: sample_integral_compound(spec, rng, n))
        else:
            x = sample_replicas(cfg.mc_config(),
                                lambda rng, n: sample_integral_quadrature(spec, cfg.subdivisions, rng, n))
        x = x[:, None]
        cols = ["value"]
    elif p == "martingale":
        spec = _martingale_spec(cfg)
        kernel = _mfpp_kernel(spec) if spec.family == "compensated_mfpp" else _mpp_kernel(spec)
        x = sample_replicas(cfg.mc_config(), lambda rng, n: kernel(rng, n)[0])
        cols = [f"M{k}" for k in range(x.shape[1])]
    else:
        raise ConfigError(f"process: no sampler for {p}")
    table = Table(["replica"] + cols)
    for i, row in enumerate(x):
        table.rows.append([i] + [v.item() for v in row])
    return table, True, {}


def cmd_validate(suite: str, cfg: ExperimentConfig | None, seed: int, workers) -> tuple[Table, bool, dict]:
    from .validation import SUITES, run_suite

    if suite not in SUITES:
        raise ConfigError(f"suite: unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    params = None
    if cfg is not None and suite == "sfpp":
        if cfg.process != "sfpp" or cfg.d != 1:
            raise ConfigError("process: the sfpp suite takes a d=1 sfpp config")
        params = {"lam": cfg.lam[0], "alpha": cfg.alpha[0], "t": cfg.t[0]}
    checks = run_suite(suite, seed=seed, workers=workers, params=params)
    table = Table(["name", "statistic", "threshold", "relation", "pass", "expected_fail"])
    for c in checks:
        table.rows.append([c.name, c.statistic, c.threshold, c.relation, c.passed, c.expected_fail])
    return table, all(c.passed for c in checks), {}


# --------------------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mpplab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"mpplab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, help=f"master seed (overrides {SEED_ENV} and the config)")
        p.add_argument("--replicas", type=int, help="Monte Carlo replicas (0 = analytic only)")
        p.add_argument("--workers", help="worker threads: a positive integer or 'auto'")
        p.add_argument("--output", "-o", help="output path ('-' for stdout)")
        p.add_argument("--format", choices=("csv", "json"), help="csv or json lines")

    for name, helptext in (("pmf", "analytic pmf with a Monte Carlo comparator"),
                           ("moments", "closed-form moments with Monte Carlo estimates"),
                           ("simulate", "write one sample per row")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("config", help="JSON experiment config")
        common(p)
    p = sub.add_parser("validate", help="run a named validation suite")
    p.add_argument("suite")
    p.add_argument("config", nargs="?", help="optional JSON config (parameters for the sfpp suite)")
    common(p)
    return parser


def _workers(raw):
    if raw is None:
        return None
    if raw == "auto":
        return "auto"
    try:
        w = int(raw)
    except ValueError as exc:
        raise ConfigError("--workers: expected a positive integer or 'auto'") from exc
    if w < 1:
        raise ConfigError("--workers: expected a positive integer or 'auto'")
    return w


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        workers = _workers(args.workers)
        cfg = load_config(args.config) if getattr(args, "config", None) else None
        seed = resolve_seed(args.seed, cfg.seed if cfg else 0)
        if cfg is not None:
            cfg = replace(cfg, seed=seed)
            if args.replicas is not None:
                if args.replicas < 0:
                    raise ConfigError("--replicas: expected an integer >= 0")
                cfg = replace(cfg, replicas=args.replicas)
            if workers is not None:
                cfg = replace(cfg, workers=workers)
            if args.output is not None:
                cfg = replace(cfg, output_path=args.output)
            if args.format is not None:
                cfg = replace(cfg, output_format=args.format)
        out_path = args.output if args.output is not None else (cfg.output_path if cfg else None)
        out_fmt = args.format or (cfg.output_format if cfg else ("json" if args.command == "validate" else "csv"))
        started = time.perf_counter()
        if args.command == "validate":
            from .validation import DEFAULT_SEED

            vseed = seed if (args.seed is not None or os.environ.get(SEED_ENV) or cfg) else DEFAULT_SEED
            table, ok, summary = cmd_validate(args.suite, cfg, vseed, workers or 1)
            prov = provenance("validate", cfg, {"suite": args.suite, "seed": vseed})
        else:
            handler = {"pmf": cmd_pmf, "moments": cmd_moments, "simulate": cmd_simulate}[args.command]
            table, ok, summary = handler(cfg)
            prov = provenance(args.command, cfg)
        text = render(table, prov, out_fmt)
        write_output(text, out_path)
        verdict = {"command": args.command, "pass": ok, **summary,
                   "seconds": round(time.perf_counter() - started, 3)}
        print(json.dumps({k: _json_value(v) for k, v in verdict.items()}), file=sys.stderr)
        return EXIT_OK if ok else EXIT_STAT
    except (ConfigError, DimensionError, OrderingError) as exc:
        print(f"mpplab: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"mpplab: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SeriesError, QuadratureError) as exc:
        print(f"mpplab: numerical failure: {exc}", file=sys.stderr)
        return EXIT_STAT
    except OSError as exc:
        print(f"mpplab: {exc}", file=sys.stderr)
        return EXIT_IO


def main(argv=None):
    sys.exit(run(argv))


# --------------------------------------------------------------------------- determinism probe


DETERMINISM_CONFIGS = {
    "simulate-mfpp": ("simulate", {"process": "mfpp", "lambda": [1.0, 2.0], "alpha": [0.5, 0.7],
                                   "t": [1.0, 1.0], "mc": {"replicas": 200_000}}),
    "pmf-mpp": ("pmf", {"process": "mpp", "lambda": [1.0, 2.0], "t": [1.0, 1.0], "n_max": 20,
                        "mc": {"replicas": 300_000}}),
    "moments-integral": ("moments", {"process": "integral", "lambda": [1.0, 2.0], "rho": [1.0, 1.0],
                                     "t": [1.0, 1.0], "mc": {"replicas": 200_000}}),
    "validate-mc-engine": ("validate", None),
}


def determinism_outputs(seed: int, workers: int) -> dict[str, bytes]:
    """Run the CLI on fixed experiments with a given worker count; return the output bytes."""
    out = {}
    with tempfile.TemporaryDirectory() as tmp:
        for name, (command, raw) in DETERMINISM_CONFIGS.items():
            target = os.path.join(tmp, name + ".csv")
            argv = [command]
            if raw is None:
                argv += ["mc-engine"]
            else:
                cfg_path = os.path.join(tmp, name + ".json")
                with open(cfg_path, "w", encoding="utf-8") as fh:
                    json.dump(raw, fh)
                argv += [cfg_path]
            argv += ["--seed", str(seed), "--workers", str(workers), "--output", target, "--format", "csv"]
            with open(os.devnull, "w") as devnull:
                saved, sys.stderr = sys.stderr, devnull
                try:
                    code = run(argv)
                finally:
                    sys.stderr = saved
            with open(target, "rb") as fh:
                out[name] = fh.read() + f"\nexit={code}".encode()
    return out


if __name__ == "__main__":
    main()
