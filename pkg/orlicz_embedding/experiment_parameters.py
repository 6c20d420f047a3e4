# -*- coding: utf-8 -*-
"""Control parameters for one experiment of a suite
"""

from dataclasses import dataclass, field
import logging
from typing import Optional

from .errors import ConfigError
from .metadata import experiments
from .specs import is_number, check_weights, parse_orlicz, parse_profile

logger = logging.getLogger("OrliczEmbedding")


@dataclass(frozen=True)
class ExperimentConfig:
    """One validated experiment. Unset fields take the per-kind defaults."""

    name: str
    kind: str
    n: tuple
    s: tuple = ()
    weights: tuple = ("sqrt_prefix",)
    orlicz: Optional[dict] = None
    profile: Optional[dict] = None
    grid: int = 64
    k_max: int = 40
    trials: int = 10
    seed: Optional[int] = None
    mode: str = "exact"
    samples: int = 10000
    tolerance: float = 1.0e-6
    n_max_exact: int = 10
    n_max_pairs: int = 6
    index: int = 0
    source: dict = field(default_factory=dict, compare=False)

    @property
    def path(self):
        """The JSON path of this experiment in its suite."""
        return f"experiments[{self.index}]"

    def to_dict(self):
        result = {
            "name": self.name,
            "kind": self.kind,
            "n": list(self.n),
            "trials": self.trials,
            "seed": self.seed,
            "mode": self.mode,
            "tolerance": self.tolerance,
        }
        if self.mode == "mc":
            result["samples"] = self.samples
        if self.kind == "theorem1":
            result["weights"] = list(self.weights)
        if self.kind == "lemma6":
            result["s"] = list(self.s)
        if self.orlicz is not None:
            result["orlicz"] = self.orlicz
        if self.profile is not None:
            result["profile"] = self.profile
        if self.kind == "lemma7":
            result["grid"] = self.grid
            result["k_max"] = self.k_max
        return result


class ExperimentParameters:
    """The control parameters of an experiment.

    ``parameters`` describes every key an experiment record may have, with
    the same fields as the other parameter dictionaries of the package.
    ``from_dict`` validates a record against it.
    """

    parameters = {
        "name": {
            "default": "",
            "kind": "string",
            "format_string": "s",
            "description": "Name:",
            "help_text": (
                "The name of the experiment, used for the report files. Defaults "
                "to the kind; names must be unique within a suite."
            ),
        },
        "kind": {
            "default": "theorem1",
            "kind": "enumeration",
            "enumeration": tuple(experiments),
            "format_string": "s",
            "description": "Experiment:",
            "help_text": "Which inequality or construction to verify.",
        },
        "n": {
            "default": None,
            "kind": "integer list",
            "format_string": "d",
            "description": "Dimensions:",
            "help_text": "A dimension n >= 1 or a list of them.",
        },
        "s": {
            "default": None,
            "kind": "integer list",
            "format_string": "d",
            "description": "Units:",
            "help_text": "For lemma6, the number s >= n of units to allocate.",
        },
        "weights": {
            "default": "sqrt_prefix",
            "kind": "weights",
            "format_string": "s",
            "description": "Weights:",
            "help_text": (
                "For theorem1: 'sqrt_prefix', 'random', 'ones', an explicit "
                "nonincreasing list, or a list of these."
            ),
        },
        "orlicz": {
            "default": None,
            "kind": "orlicz",
            "format_string": "s",
            "description": "Orlicz function:",
            "help_text": "{'power': p}, {'power_normalized': p} or {'dual_knots': ...}",
        },
        "profile": {
            "default": None,
            "kind": "profile",
            "format_string": "s",
            "description": "Profile:",
            "help_text": (
                "{'profile': 'power', 'alpha': a} or "
                "{'profile': 'orlicz', 'orlicz': {...}}"
            ),
        },
        "grid": {
            "default": 64,
            "kind": "integer",
            "minimum": 1,
            "format_string": "d",
            "description": "Grid points:",
            "help_text": "For lemma7, the number of points t = i/grid, i = 1..grid.",
        },
        "k_max": {
            "default": 40,
            "kind": "integer",
            "minimum": 2,
            "format_string": "d",
            "description": "Depth:",
            "help_text": "For lemma7, the limits at 0 are tabulated on t = 2^-k.",
        },
        "trials": {
            "default": None,
            "kind": "integer",
            "minimum": 1,
            "format_string": "d",
            "description": "Trials:",
            "help_text": "The number of random trials for each dimension.",
        },
        "seed": {
            "default": None,
            "kind": "integer",
            "minimum": 0,
            "format_string": "d",
            "description": "Seed:",
            "help_text": (
                "Seed for this experiment; derived from the suite seed if unset."
            ),
        },
        "mode": {
            "default": "exact",
            "kind": "enumeration",
            "enumeration": ("exact", "mc"),
            "format_string": "s",
            "description": "Averages:",
            "help_text": "Exact enumeration of permutations or Monte Carlo sampling.",
        },
        "samples": {
            "default": 10000,
            "kind": "integer",
            "minimum": 2,
            "format_string": "d",
            "description": "Samples:",
            "help_text": "The number of Monte Carlo samples per average.",
        },
        "tolerance": {
            "default": None,
            "kind": "float",
            "minimum": 0.0,
            "format_string": ".3g",
            "description": "Tolerance:",
            "help_text": "Slack allowed on asserted brackets.",
        },
        "n_max_exact": {
            "default": 10,
            "kind": "integer",
            "minimum": 1,
            "format_string": "d",
            "description": "Exact cutoff:",
            "help_text": "Largest n for exact enumeration over one permutation.",
        },
        "n_max_pairs": {
            "default": 6,
            "kind": "integer",
            "minimum": 1,
            "format_string": "d",
            "description": "Exact cutoff, pairs:",
            "help_text": "Largest n for exact enumeration over pairs of permutations.",
        },
    }

    @classmethod
    def from_dict(cls, data, index=0, overrides=None):
        """Validate an experiment record and return an ExperimentConfig.

        Parameters
        ----------
        data : dict
            The record from the configuration file.
        index : int
            Position in the suite, used in error messages and seeds.
        overrides : dict, optional
            Values that replace those in the record, e.g. from the command line.

        Raises
        ------
        ConfigError
            With the JSON path of the offending field.
        """
        where = f"experiments[{index}]"
        if not isinstance(data, dict):
            raise ConfigError("An experiment must be a JSON object", field=where)
        unknown = sorted(set(data) - set(cls.parameters))
        if unknown:
            raise ConfigError(
                f"Unknown keys {unknown}; expected some of {sorted(cls.parameters)}",
                field=where,
            )
        if "kind" not in data:
            raise ConfigError("Every experiment needs a 'kind'", field=f"{where}.kind")

        values = {}
        for key, parameter in cls.parameters.items():
            value = data.get(key, parameter["default"])
            values[key] = cls._check(key, parameter, value, f"{where}.{key}")
        for key, value in (overrides or {}).items():
            if value is not None:
                values[key] = cls._check(
                    key, cls.parameters[key], value, f"{where}.{key}"
                )

        kind = values["kind"]
        defaults = experiments[kind]
        for key in defaults["requires"]:
            if values[key] is None:
                raise ConfigError(
                    f"A {kind} experiment needs '{key}'", field=f"{where}.{key}"
                )

        n = values["n"] if values["n"] is not None else defaults["n"]
        s = values["s"] if values["s"] is not None else defaults.get("s", [])
        trials = values["trials"]
        if trials is None:
            trials = defaults["trials"]
        tolerance = values["tolerance"]
        if tolerance is None:
            tolerance = defaults["tolerance"]

        if kind == "theorem2" and not parse_orlicz(values["orlicz"]).smooth:
            raise ConfigError(
                "theorem2 needs a smooth Orlicz function", field=f"{where}.orlicz"
            )
        if kind == "lemma6" and any(k < max(n) for k in s):
            raise ConfigError(
                f"Every s must be at least the largest n = {max(n)}", field=f"{where}.s"
            )
        weights = values["weights"]
        for spec in weights:
            if isinstance(spec, list) and any(len(spec) != k for k in n):
                raise ConfigError(
                    f"Explicit weights of length {len(spec)} do not match n = {n}",
                    field=f"{where}.weights",
                )

        return ExperimentConfig(
            name=values["name"] or kind,
            kind=kind,
            n=tuple(n),
            s=tuple(s),
            weights=weights,
            orlicz=values["orlicz"],
            profile=values["profile"],
            grid=values["grid"],
            k_max=values["k_max"],
            trials=trials,
            seed=values["seed"],
            mode=values["mode"],
            samples=values["samples"],
            tolerance=tolerance,
            n_max_exact=values["n_max_exact"],
            n_max_pairs=values["n_max_pairs"],
            index=index,
            source=dict(data),
        )

    @staticmethod
    def _check(key, parameter, value, where):
        """Validate one value against its parameter description."""
        if value is None:
            return None
        kind = parameter["kind"]
        if kind == "string":
            if not isinstance(value, str):
                raise ConfigError(f"'{key}' must be a string", field=where)
        elif kind == "enumeration":
            if value not in parameter["enumeration"]:
                raise ConfigError(
                    f"'{value}' is not one of {', '.join(parameter['enumeration'])}",
                    field=where,
                )
        elif kind == "integer":
            if not is_number(value) or int(value) != value:
                raise ConfigError(f"'{key}' must be an integer", field=where)
            value = int(value)
            if value < parameter.get("minimum", value):
                raise ConfigError(
                    f"'{key}' must be at least {parameter['minimum']}", field=where
                )
        elif kind == "float":
            if not is_number(value):
                raise ConfigError(f"'{key}' must be a number", field=where)
            value = float(value)
            if value < parameter.get("minimum", value):
                raise ConfigError(
                    f"'{key}' must be at least {parameter['minimum']}", field=where
                )
        elif kind == "integer list":
            items = value if isinstance(value, list) else [value]
            if not items:
                raise ConfigError(f"'{key}' must not be empty", field=where)
            for i, item in enumerate(items):
                if not is_number(item) or int(item) != item or item < 1:
                    raise ConfigError(
                        f"'{key}' must hold integers >= 1", field=f"{where}[{i}]"
                    )
            value = [int(item) for item in items]
        elif kind == "weights":
            nested = isinstance(value, list) and any(
                isinstance(v, (str, list)) for v in value
            )
            if nested:
                value = tuple(
                    check_weights(v, f"{where}[{i}]") for i, v in enumerate(value)
                )
            else:
                value = (check_weights(value, where),)
        elif kind == "orlicz":
            parse_orlicz(value, field=where)
        elif kind == "profile":
            parse_profile(value, field=where)
        return value


def parse_suite(document, overrides=None):
    """Validate a suite document and return (seed, list of ExperimentConfig).

    The document is ``{"seed": int, "experiments": [...]}`` or a bare list of
    experiments.
    """
    if isinstance(document, list):
        document = {"experiments": document}
    if not isinstance(document, dict):
        raise ConfigError("A suite is a JSON object or a list of experiments")
    unknown = sorted(set(document) - {"seed", "experiments"})
    if unknown:
        raise ConfigError(f"Unknown keys {unknown}; expected 'seed' and 'experiments'")
    seed = document.get("seed")
    if seed is not None and (not is_number(seed) or int(seed) != seed or seed < 0):
        raise ConfigError("The seed must be a nonnegative integer", field="seed")
    records = document.get("experiments", [])
    if not isinstance(records, list):
        raise ConfigError("'experiments' must be a list", field="experiments")

    configs = []
    names = set()
    for index, record in enumerate(records):
        cfg = ExperimentParameters.from_dict(record, index, overrides)
        if cfg.name in names:
            raise ConfigError(
                f"Duplicate experiment name '{cfg.name}'", field=f"{cfg.path}.name"
            )
        names.add(cfg.name)
        configs.append(cfg)
    return (None if seed is None else int(seed)), configs
