# -*- coding: utf-8 -*-

"""Run the experiments of a suite and write their reports.

Every experiment produces rows with the columns of
``metadata["results"]``: the bracketed quantity ``value_lhs``, the quantity
it is compared to ``value_rhs``, the absolute bounds ``lower`` and
``upper`` (empty when the row is only reported) and ``pass``.
"""

from dataclasses import dataclass, field
from datetime import datetime, timezone
import functools
import json
import logging
import math
from pathlib import Path
import platform
from typing import Optional

from cpuinfo import get_cpu_info
import numpy as np
import pandas
from tabulate import tabulate

from seamm_util import CompactJSONEncoder
import seamm_util.printing as printing
from seamm_util.printing import FormattedText as __

from .combinatorics import SamplingMode, ave_max_matrix, ave_max_tensor
from .combinatorics import ave_quadratic, b_norm, c_n, lemma6_bracket, outer_tensor
from .combinatorics import MAX_COMPOSITIONS
from .construction import ConcaveProfile, WeightSequence
from .construction import f_from_profile, knot_corridor, knots_from_weights
from .construction import lemma8_limits, orlicz_from_knots, product_knots
from .construction import reconstruct_H_check, sqrt_prefix_b, theorem2_corridor
from .construction import total_mass, weights_from_orlicz
from .errors import ConfigError, OrliczError
from .experiment_parameters import parse_suite
from .metadata import experiments, metadata
from .orlicz_core import conjugate_dual, orlicz_norm
from .specs import build_weights, parse_orlicz, parse_profile

logger = logging.getLogger("OrliczEmbedding")
job = printing.getPrinter()
printer = printing.getPrinter("orlicz")

#: The CSV columns, in order
COLUMNS = list(metadata["results"])
#: Slack on the total mass ∫₀¹ f = √H(1)
TOTAL_MASS_TOL = 1.0e-9
#: Slack on Σa_l = n·√H(1)
SUM_TOL = 1.0e-8

__all__ = [
    "ExperimentResult",
    "SandwichReport",
    "TrialRow",
    "c_n",
    "run_experiment",
    "run_suite",
    "trial_vectors",
    "verify_theorem1",
    "verify_theorem2",
]


@dataclass(frozen=True)
class TrialRow:
    """One row of a report."""

    experiment: str
    n: int
    trial: int
    value_lhs: float
    value_rhs: Optional[float] = None
    lower: Optional[float] = None
    upper: Optional[float] = None
    passed: Optional[bool] = None

    def as_record(self):
        return {
            "experiment": self.experiment,
            "n": self.n,
            "trial": self.trial,
            "value_lhs": self.value_lhs,
            "value_rhs": self.value_rhs,
            "lower": self.lower,
            "upper": self.upper,
            "pass": self.passed,
        }


def bracket_row(tag, n, trial, lhs, rhs=None, lower=None, upper=None, slack=0.0):
    """A row whose pass is lower − slack ≤ lhs ≤ upper + slack.

    A missing bound is unbounded; with both missing the row is only
    reported.
    """
    lhs = float(lhs)
    rhs = None if rhs is None else float(rhs)
    if lower is None and upper is None:
        return TrialRow(tag, n, trial, lhs, rhs)
    ok = True
    if lower is not None:
        lower = float(lower)
        ok = ok and lower - slack <= lhs
    if upper is not None:
        upper = float(upper)
        ok = ok and lhs <= upper + slack
    return TrialRow(tag, n, trial, lhs, rhs, lower, upper, bool(ok))


@dataclass
class SandwichReport:
    """Ratios r = Ave/‖x‖_M for one dimension against the theoretical bounds.

    When ``asserted`` is False the bounds are not checked and ``passed`` is
    None; the ratios are evidence only.
    """

    n: int
    theoretical_lower: Optional[float]
    theoretical_upper: Optional[float]
    tol: float
    asserted: bool = True
    vacuous: bool = False
    weights: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)
    ratios: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    @property
    def min_ratio(self):
        return min(self.ratios) if self.ratios else math.nan

    @property
    def max_ratio(self):
        return max(self.ratios) if self.ratios else math.nan

    @property
    def passed(self):
        if not self.asserted:
            return None
        return (
            self.theoretical_lower - self.tol <= self.min_ratio
            and self.max_ratio <= self.theoretical_upper + self.tol
        )

    def add(self, tag, trial, x, ave, norm, spread=0.0):
        """Record one trial vector with its average and Orlicz norm.

        ``spread`` widens the bracket by a Monte Carlo half-width.
        """
        ratio = ave / norm
        self.ratios.append(ratio)
        if self.asserted:
            row = bracket_row(
                tag,
                self.n,
                trial,
                ave,
                norm,
                self.theoretical_lower * norm,
                self.theoretical_upper * norm,
                self.tol * norm + spread,
            )
            if not row.passed:
                self.failures.append({"trial": trial, "x": list(x), "ratio": ratio})
        else:
            row = bracket_row(tag, self.n, trial, ave, norm)
        self.rows.append(row)
        return row

    def to_dict(self):
        return {
            "n": self.n,
            "weights": self.weights,
            "min_ratio": self.min_ratio,
            "max_ratio": self.max_ratio,
            "theoretical_lower": self.theoretical_lower,
            "theoretical_upper": self.theoretical_upper,
            "tolerance": self.tol,
            "asserted": self.asserted,
            "vacuous": self.vacuous,
            "pass": self.passed,
            "failures": self.failures,
            "provenance": self.provenance,
        }


@dataclass
class ExperimentResult:
    """Everything one experiment produced."""

    config: object
    seed: object
    rows: list = field(default_factory=list)
    reports: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    error: Optional[str] = None

    @property
    def failed_rows(self):
        return sum(1 for row in self.rows if row.passed is False)

    @property
    def passed(self):
        return self.error is None and self.failed_rows == 0

    def dataframe(self):
        return pandas.DataFrame(
            [row.as_record() for row in self.rows], columns=COLUMNS
        )


def trial_vectors(n, trials, rng):
    """Edge vectors eᵢ, all-ones and 2⁻ⁱ, then ``trials`` standard normal ones."""
    vectors = [np.eye(n)[i] for i in range(n)]
    vectors.append(np.ones(n))
    if n > 1:
        vectors.append(2.0 ** -np.arange(n, dtype=float))
    vectors.extend(rng.standard_normal(n) for _ in range(trials))
    return vectors


def theorem1_constants(n):
    """The lower and upper constants of the sandwich for dimension n."""
    lower = (n - 1) ** 2 / (n * n + (n - 1) ** 2) / (2.0 * math.sqrt(5.0))
    upper = 2.0 * math.sqrt(2.0) / c_n(n)
    return lower, upper


def _mode(cfg, rng):
    """The sampling mode of one average; Monte Carlo seeds come from rng."""
    if cfg.mode == "exact":
        return SamplingMode.exact()
    return SamplingMode.mc(cfg.samples, int(rng.integers(2**63)))


def _tag(cfg, check):
    if len(experiments[cfg.kind]["checks"]) == 1:
        return cfg.name
    return f"{cfg.name}/{check}"


def _spread(report):
    """The 99% half-width of a Monte Carlo bracket, 0 when exact."""
    return 0.0 if report.estimate is None else report.estimate.half_width_99


def _provenance(cfg, modes):
    """The sampling mode of a report, with the Monte Carlo seed of each trial."""
    result = {"mode": cfg.mode}
    if cfg.mode != "exact":
        result["samples"] = cfg.samples
        result["seeds"] = [mode.seed for mode in modes]
    return result


def verify_theorem1(cfg, rng=None):
    """Ave_π(Σ|xᵢa_π(i)|²)^{1/2} against ‖x‖_M for M built from the weights.

    One SandwichReport per dimension and weight set. At n = 1 the lower
    constant is 0 and the report is flagged vacuous.
    """
    rng = np.random.default_rng(cfg.seed) if rng is None else rng
    tag = _tag(cfg, "sandwich")
    reports = []
    for n in cfg.n:
        lower, upper = theorem1_constants(n)
        if n == 1:
            logger.warning(f"{cfg.name}: the lower bound is vacuous at n = 1")
        trial = 0
        for spec in cfg.weights:
            a = build_weights(spec, n, rng)
            dual = orlicz_from_knots(knots_from_weights(a))
            report = SandwichReport(
                n, lower, upper, cfg.tolerance, vacuous=n == 1, weights=a.tolist()
            )
            modes = []
            for x in trial_vectors(n, cfg.trials, rng):
                mode = _mode(cfg, rng)
                modes.append(mode)
                estimate = ave_quadratic(x, a, mode, cfg.n_max_exact)
                spread = getattr(estimate, "half_width_99", 0.0)
                norm = orlicz_norm(x, dual)
                report.add(tag, trial, x, float(estimate), norm, spread)
                trial += 1
            report.provenance = _provenance(cfg, modes)
            reports.append(report)
            logger.debug(
                f"{cfg.name}: n = {n}, ratios in [{report.min_ratio:.6g}, "
                f"{report.max_ratio:.6g}] against [{lower:.6g}, {upper:.6g}]"
            )
    return reports


def verify_theorem2(cfg, rng=None):
    """Weights from a strictly 2-concave, normalized M, and the evidence.

    Per dimension: the ratios Ave/‖x‖_M (reported, not asserted), the sum
    Σa_l = n·√H(1), the sandwich f(l/n) ≤ a_l ≤ f((l−1)/n) and the corridor
    on M*⁻¹(l/n) (all three asserted).

    Returns
    -------
    list of SandwichReport, list of TrialRow
        The ratio reports and the asserted rows.
    """
    rng = np.random.default_rng(cfg.seed) if rng is None else rng
    spec = parse_orlicz(cfg.orlicz)
    M = spec.orlicz()
    dual = conjugate_dual(M, t_max=2.0)
    profile = ConcaveProfile.from_dual(dual)

    reports = []
    checks = []
    for n in cfg.n:
        a = weights_from_orlicz(M, n)
        report = SandwichReport(n, None, None, cfg.tolerance, asserted=False)
        report.weights = a.tolist()
        modes = []
        for trial, x in enumerate(trial_vectors(n, cfg.trials, rng)):
            mode = _mode(cfg, rng)
            modes.append(mode)
            ave = float(ave_quadratic(x, a, mode, cfg.n_max_exact))
            report.add(_tag(cfg, "ratio"), trial, x, ave, orlicz_norm(x, dual))
        report.provenance = _provenance(cfg, modes)
        reports.append(report)

        mass = n * math.sqrt(profile.H(1.0))
        lower, upper = mass - SUM_TOL, mass + SUM_TOL
        checks.append(
            bracket_row(_tag(cfg, "sum"), n, 0, math.fsum(a), mass, lower, upper)
        )

        slack = cfg.tolerance
        for l in range(1, n + 1):
            upper = None if l == 1 else f_from_profile(profile, (l - 1) / n)
            lower = f_from_profile(profile, l / n)
            checks.append(
                bracket_row(
                    _tag(cfg, "weights"), n, l, a[l - 1], None, lower, upper, slack
                )
            )
        tag = _tag(cfg, "corridor")
        for row in theorem2_corridor(a, dual):
            checks.append(_corridor_row(tag, n, row.l, row, None, slack))
    return reports, checks


def _report_row(tag, n, trial, report, rhs, slack):
    return bracket_row(
        tag, n, trial, report.value, rhs, report.lower, report.upper, slack
    )


def _corridor_row(tag, n, trial, row, rhs, slack):
    return bracket_row(tag, n, trial, row.value, rhs, row.lower, row.upper, slack)


def _run_theorem1(cfg, rng):
    reports = verify_theorem1(cfg, rng)
    rows = [row for report in reports for row in report.rows]
    summary = {
        "min_ratio": min(r.min_ratio for r in reports) if reports else None,
        "max_ratio": max(r.max_ratio for r in reports) if reports else None,
        "vacuous_n": sorted({r.n for r in reports if r.vacuous}),
    }
    return rows, [r.to_dict() for r in reports], summary


def _run_theorem2(cfg, rng):
    reports, checks = verify_theorem2(cfg, rng)
    rows = [row for report in reports for row in report.rows] + checks
    band = {
        str(r.n): {"min_ratio": r.min_ratio, "max_ratio": r.max_ratio} for r in reports
    }
    lows = [r.min_ratio for r in reports]
    highs = [r.max_ratio for r in reports]
    summary = {
        "band": band,
        "min_ratio": min(lows) if lows else None,
        "max_ratio": max(highs) if highs else None,
        "empirical_constant": max(highs) / min(lows) if lows else None,
    }
    return rows, [r.to_dict() for r in reports], summary


def _run_lemma4(cfg, rng):
    rows = []
    tag = _tag(cfg, "bracket")
    for n in cfg.n:
        matrices = [np.eye(n), np.ones((n, n))]
        matrices.extend(rng.random((n, n)) for _ in range(cfg.trials))
        for trial, A in enumerate(matrices):
            report = ave_max_matrix(A, _mode(cfg, rng), cfg.n_max_exact)
            slack = cfg.tolerance * max(1.0, report.upper) + _spread(report)
            rows.append(_report_row(tag, n, trial, report, report.upper, slack))
    return rows, [], {"c_n": {str(n): c_n(n) for n in cfg.n}}


def _run_lemma5(cfg, rng):
    rows = []
    tag = _tag(cfg, "bracket")
    for n in cfg.n:
        tensors = [np.ones((n, n, n))]
        tensors.extend(rng.random((n, n, n)) for _ in range(cfg.trials))
        for trial, T in enumerate(tensors):
            report = ave_max_tensor(T, _mode(cfg, rng), cfg.n_max_pairs)
            slack = cfg.tolerance * max(1.0, report.upper) + _spread(report)
            rows.append(_report_row(tag, n, trial, report, report.upper, slack))
    return rows, [], {}


def _run_lemma6(cfg, rng):
    rows = []
    greedy_tag = _tag(cfg, "greedy")
    bracket_tag = _tag(cfg, "bracket")
    for n in cfg.n:
        for position, s in enumerate(cfg.s):
            exhaustive = math.comb(s - 1 + n, n - 1) <= MAX_COMPOSITIONS
            for trial in range(cfg.trials):
                b = WeightSequence(np.sort(rng.uniform(0.05, 1.0, s))[::-1])
                x = np.eye(n)[0] if trial == 0 else rng.standard_normal(n)
                # Trials are numbered per n across all s
                index = position * cfg.trials + trial
                if exhaustive:
                    greedy = b_norm(x, b, s, "greedy")
                    oracle = b_norm(x, b, s, "exhaustive")
                    rows.append(
                        bracket_row(
                            greedy_tag, n, index, greedy, oracle, oracle, oracle
                        )
                    )
                report = lemma6_bracket(x, b, s)
                slack = cfg.tolerance * report.lower
                rows.append(
                    _report_row(bracket_tag, n, index, report, report.lower, slack)
                )
    return rows, [], {}


def _run_lemma7(cfg, rng):
    profile = parse_profile(cfg.profile)
    tol = cfg.tolerance
    grid = np.arange(1, cfg.grid + 1) / cfg.grid
    rows = []

    reconstruction = reconstruct_H_check(profile, grid, tol)
    tag = _tag(cfg, "reconstruction")
    for i, (value, H) in enumerate(
        zip(reconstruction.reconstructed, reconstruction.expected)
    ):
        rows.append(bracket_row(tag, cfg.grid, i, value, H, H - tol, H + tol))

    # ∫₀¹ f by quadrature, independent of the closed form of F
    total = total_mass(profile)
    mass = math.sqrt(profile.H(1.0))
    lower = mass - TOTAL_MASS_TOL
    upper = mass + TOTAL_MASS_TOL
    rows.append(
        bracket_row(_tag(cfg, "total"), cfg.grid, 0, total, mass, lower, upper)
    )

    tag = _tag(cfg, "density")
    previous = None
    for i, t in enumerate(grid):
        f = f_from_profile(profile, t)
        rows.append(bracket_row(tag, cfg.grid, i, f, None, 0.0, previous))
        previous = f

    # Both limit terms decrease in k and end below the threshold
    table = lemma8_limits(profile, cfg.k_max)
    tag = _tag(cfg, "limits")
    last = len(table.k) - 1
    for offset, values in ((0, table.tail_term), (cfg.k_max, table.density_term)):
        for i, k in enumerate(table.k):
            upper = values[i - 1] if i > 0 else None
            if i == last:
                upper = min(upper, table.threshold)
            trial = offset + int(k)
            rows.append(bracket_row(tag, cfg.grid, trial, values[i], None, 0.0, upper))

    summary = {
        "profile": profile.parameters,
        "max_deviation": reconstruction.max_deviation,
        "total": total,
        "sqrt_H1": mass,
        "threshold": table.threshold,
        "tail_at_k_max": float(table.tail_term[-1]),
        "density_at_k_max": float(table.density_term[-1]),
    }
    return rows, [], summary


def _run_corridor(cfg, rng):
    rows = []
    knots_tag = _tag(cfg, "knots")
    for n in cfg.n:
        b = sqrt_prefix_b(n)
        for trial in range(cfg.trials):
            a = WeightSequence(np.sort(rng.uniform(0.05, 1.0, n))[::-1])
            for row in knot_corridor(a, b):
                N = row.lower * math.sqrt(2.0)
                index = trial * n + row.l - 1
                rows.append(_corridor_row(knots_tag, n, index, row, N, cfg.tolerance))

            # Between knots the norms may leave the corridor; reported only
            x = rng.standard_normal(n)
            norm_M = orlicz_norm(x, orlicz_from_knots(knots_from_weights(a)))
            norm_N = orlicz_norm(x, orlicz_from_knots(product_knots(a, b)))
            rows.append(bracket_row(_tag(cfg, "norms"), n, trial, norm_M, norm_N))

            if n <= cfg.n_max_pairs:
                mode = _mode(cfg, rng)
                estimate = ave_quadratic(x, a, mode, cfg.n_max_exact)
                quadratic = float(estimate)
                tensor = ave_max_tensor(outer_tensor(x, a, b), mode, cfg.n_max_pairs)
                spread = _spread(tensor) + getattr(estimate, "half_width_99", 0.0)
                rows.append(
                    bracket_row(
                        _tag(cfg, "chain"),
                        n,
                        trial,
                        tensor.value,
                        quadratic,
                        0.5 * c_n(n) * quadratic,
                        quadratic,
                        cfg.tolerance * quadratic + spread,
                    )
                )
    return rows, [], {}


RUNNERS = {
    "theorem1": _run_theorem1,
    "theorem2": _run_theorem2,
    "lemma4": _run_lemma4,
    "lemma5": _run_lemma5,
    "lemma6": _run_lemma6,
    "lemma7": _run_lemma7,
    "corridor": _run_corridor,
}


def run_experiment(cfg, master_seed=None):
    """Run one experiment.

    The random stream is seeded with the experiment's own seed when given,
    otherwise with (master seed, index in the suite). Numerical errors are
    recorded in the result, not raised.
    """
    if cfg.seed is not None:
        seed = cfg.seed
    else:
        if master_seed is None:
            master_seed = np.random.SeedSequence().entropy
        seed = [int(master_seed), cfg.index]
    rng = np.random.default_rng(seed)
    result = ExperimentResult(cfg, seed)
    logger.info(f"Running {cfg.name} ({cfg.kind}) with seed {seed}")
    try:
        result.rows, result.reports, result.summary = RUNNERS[cfg.kind](cfg, rng)
    except (OrliczError, ArithmeticError, ValueError) as e:
        logger.error(f"{cfg.name} failed: {e}")
        result.error = f"{type(e).__name__}: {e}"
    return result


@functools.lru_cache(maxsize=1)
def _host():
    info = get_cpu_info()
    return {
        "host": platform.node(),
        "platform": platform.platform(),
        "cpu": info.get("brand_raw", ""),
        "arch": info.get("arch", ""),
        "cpu_count": info.get("count", 0),
    }


def provenance():
    """Version, host and time stamp for the JSON reports."""
    import orlicz_embedding

    return {
        "version": orlicz_embedding.__version__,
        **_host(),
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _jsonable(value):
    """Plain JSON values, with non-finite floats as null."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def write_reports(result, out_dir, stamp=None):
    """Write <name>.csv and <name>.json for one experiment."""
    out_dir = Path(out_dir)
    name = result.config.name
    result.dataframe().to_csv(
        out_dir / f"{name}.csv", index=False, lineterminator="\n", encoding="utf-8"
    )
    data = {
        "name": name,
        "config": result.config.to_dict(),
        "seed": result.seed,
        "pass": result.passed,
        "error": result.error,
        "rows": len(result.rows),
        "failed_rows": result.failed_rows,
        "summary": result.summary,
        "reports": result.reports,
        "provenance": provenance() if stamp is None else stamp,
    }
    with (out_dir / f"{name}.json").open("w", encoding="utf-8") as fd:
        json.dump(
            _jsonable(data), fd, indent=4, sort_keys=True, cls=CompactJSONEncoder
        )


def load_suite(config):
    """The suite document from a path, a JSON string or an already parsed object.

    Raises
    ------
    ConfigError
        With line and column for JSON syntax errors.
    """
    if isinstance(config, (dict, list)):
        return config
    path = Path(config)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read the configuration: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(e.msg, line=e.lineno, column=e.colno) from e


def summary_table(results):
    table = {"Experiment": [], "Kind": [], "Rows": [], "Failed": [], "Result": []}
    for result in results:
        table["Experiment"].append(result.config.name)
        table["Kind"].append(result.config.kind)
        table["Rows"].append(len(result.rows))
        table["Failed"].append(result.failed_rows)
        table["Result"].append(
            "pass" if result.passed else ("error" if result.error else "FAIL")
        )
    return tabulate(
        table,
        headers="keys",
        tablefmt="rounded_outline",
        colalign=("left", "left", "right", "right", "center"),
        disable_numparse=True,
    )


def run_suite(config, out_dir="orlicz_reports", seed=None, overrides=None):
    """Run every experiment of a suite and write the reports.

    Parameters
    ----------
    config : str, pathlib.Path, dict or list
        The suite configuration file or document.
    out_dir : str or pathlib.Path
        Where to write <name>.csv, <name>.json, suite.json and summary.txt.
    seed : int, optional
        Master seed; takes precedence over the seed in the document.
    overrides : dict, optional
        Values such as mode, samples or tolerance applied to every
        experiment.

    Returns
    -------
    int
        0 if every asserted bracket holds, 1 otherwise.

    Raises
    ------
    ConfigError
        If the configuration is malformed; nothing is run.
    """
    document = load_suite(config)
    document_seed, configs = parse_suite(document, overrides)
    master_seed = seed if seed is not None else document_seed
    if master_seed is None:
        master_seed = np.random.SeedSequence().entropy
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    stamp = provenance()
    results = []
    for cfg in configs:
        printer.important(
            __(
                "Experiment {name} ({kind}): {description}",
                name=cfg.name,
                kind=cfg.kind,
                description=experiments[cfg.kind]["description"],
                indent=4 * " ",
            )
        )
        result = run_experiment(cfg, master_seed)
        write_reports(result, out_dir, stamp)
        verdict = "passed" if result.passed else "FAILED"
        text = f"{len(result.rows)} rows, {result.failed_rows} failing: {verdict}"
        if result.error:
            text += f" ({result.error})"
        text = text.replace("{", "{{").replace("}", "}}")
        printer.normal(__(text, indent=8 * " "))
        results.append(result)

    passed = all(result.passed for result in results)
    suite = {
        "seed": master_seed,
        "pass": passed,
        "experiments": [
            {
                "name": result.config.name,
                "kind": result.config.kind,
                "pass": result.passed,
                "rows": len(result.rows),
                "failed_rows": result.failed_rows,
                "error": result.error,
            }
            for result in results
        ],
        "provenance": stamp,
    }
    with (out_dir / "suite.json").open("w", encoding="utf-8") as fd:
        json.dump(
            _jsonable(suite), fd, indent=4, sort_keys=True, cls=CompactJSONEncoder
        )

    table = summary_table(results)
    (out_dir / "summary.txt").write_text(table + "\n", encoding="utf-8")
    printer.normal("")
    printer.normal(table)
    job.important(
        f"{len(results)} experiments, "
        f"{sum(not r.passed for r in results)} failed; seed {master_seed}"
    )
    return 0 if passed else 1
