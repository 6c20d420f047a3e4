# -*- coding: utf-8 -*-

"""Turn the JSON records of an experiment configuration into objects.

Orlicz functions are tagged records, one of ``{"power": p}``,
``{"power_normalized": p}`` or ``{"dual_knots": [[t, v], ...]}``. Profiles
are ``{"profile": "power", "alpha": a}`` or
``{"profile": "orlicz", "orlicz": {...}}``. Weights are one of the names in
``metadata.weight_specs`` or an explicit list of numbers.
"""

from dataclasses import dataclass
import logging
import numbers

import numpy as np

from .construction import ConcaveProfile, WeightSequence, orlicz_from_knots
from .construction import sqrt_prefix_b
from .errors import ConfigError, NotDecreasing, NotStrictlyIncreasing
from .metadata import orlicz_specs, profiles, weight_specs
from .orlicz_core import OrliczFunction, conjugate_dual, normalize_dual_at_one
from .piecewise import PiecewiseAffine

logger = logging.getLogger("OrliczEmbedding")


def is_number(value):
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


@dataclass(frozen=True)
class OrliczSpec:
    """A validated Orlicz function record."""

    tag: str
    value: object
    field: str = "orlicz"

    @property
    def smooth(self):
        return orlicz_specs[self.tag]["smooth"]

    def orlicz(self):
        """The Orlicz function M.

        Raises
        ------
        ConfigError
            For ``dual_knots``, which only define M*.
        """
        if self.tag == "power":
            return OrliczFunction.power(self.value)
        if self.tag == "power_normalized":
            return normalize_dual_at_one(OrliczFunction.power(self.value))
        raise ConfigError(
            "A piecewise-affine M* has no smooth Orlicz function; use 'power' or "
            "'power_normalized' here",
            field=self.field,
        )

    def dual(self, t_max=10.0):
        """The dual function M*."""
        if self.tag == "dual_knots":
            Mstar = PiecewiseAffine.from_pairs(self.value)
            return orlicz_from_knots(Mstar.inverse())
        return conjugate_dual(self.orlicz(), t_max=t_max)

    def to_dict(self):
        return {self.tag: self.value}


def parse_orlicz(spec, field="orlicz"):
    """Validate an Orlicz function record."""
    if not isinstance(spec, dict) or len(spec) != 1:
        raise ConfigError(
            f"An Orlicz function is a record with one of the keys "
            f"{', '.join(orlicz_specs)}",
            field=field,
        )
    ((tag, value),) = spec.items()
    if tag not in orlicz_specs:
        raise ConfigError(
            f"Unknown Orlicz function '{tag}'; expected one of "
            f"{', '.join(orlicz_specs)}",
            field=field,
        )
    where = f"{field}.{tag}"
    if tag in ("power", "power_normalized"):
        if not is_number(value):
            raise ConfigError("The exponent p must be a number", field=where)
        low_ok = value >= 1.0 if tag == "power" else value > 1.0
        if not (low_ok and value <= 2.0):
            raise ConfigError(
                f"The exponent must satisfy {orlicz_specs[tag]['value']}, "
                f"not {value}",
                field=where,
            )
        return OrliczSpec(tag, float(value), field)

    if not isinstance(value, list) or len(value) < 1:
        raise ConfigError("dual_knots must be a nonempty list of [t, v]", field=where)
    pairs = []
    for i, pair in enumerate(value):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(is_number(x) for x in pair)
        ):
            raise ConfigError("Each knot must be a pair [t, v]", field=f"{where}[{i}]")
        pairs.append((float(pair[0]), float(pair[1])))
    try:
        Mstar = PiecewiseAffine.from_pairs(pairs)
        Mstar.inverse()
    except NotStrictlyIncreasing as e:
        raise ConfigError(str(e), field=where) from e
    except ValueError as e:
        raise ConfigError(f"Invalid knots: {e}", field=where) from e
    if not Mstar.is_convex():
        raise ConfigError(
            "The knots of M* must describe a convex function", field=where
        )
    return OrliczSpec(tag, [list(p) for p in pairs], field)


def parse_profile(spec, field="profile"):
    """Validate a profile record and build the ConcaveProfile."""
    if not isinstance(spec, dict) or spec.get("profile") not in profiles:
        raise ConfigError(
            f"A profile is a record with 'profile' one of {', '.join(profiles)}",
            field=field,
        )
    kind = spec["profile"]
    extra = set(spec) - {"profile"} - set(profiles[kind]["parameters"])
    if extra:
        raise ConfigError(
            f"Unknown keys {sorted(extra)} for a '{kind}' profile", field=field
        )
    if kind == "power":
        alpha = spec.get("alpha")
        if not is_number(alpha) or not 0.0 < alpha <= 1.0:
            raise ConfigError(
                "alpha must be a number in (0, 1]", field=f"{field}.alpha"
            )
        return ConcaveProfile.power(alpha)

    if "orlicz" not in spec:
        raise ConfigError("An 'orlicz' profile needs an 'orlicz' record", field=field)
    orlicz = parse_orlicz(spec["orlicz"], field=f"{field}.orlicz")
    dual = conjugate_dual(orlicz.orlicz(), t_max=2.0)
    profile = ConcaveProfile.from_dual(dual)
    profile.parameters["orlicz"] = orlicz.to_dict()
    return profile


def check_weights(spec, field="weights"):
    """Validate a single weights spec without building it."""
    if isinstance(spec, str):
        if spec not in weight_specs:
            raise ConfigError(
                f"Unknown weights '{spec}'; expected one of {', '.join(weight_specs)} "
                "or a list of numbers",
                field=field,
            )
        return spec
    if isinstance(spec, list) and spec and all(is_number(x) for x in spec):
        try:
            WeightSequence(spec)
        except NotDecreasing as e:
            raise ConfigError(
                f"Weights must be positive and nonincreasing: {e}", field=field
            ) from e
        return [float(x) for x in spec]
    raise ConfigError(
        "Weights are a name or a nonempty list of numbers", field=field
    )


def build_weights(spec, n, rng):
    """A WeightSequence of length n from a checked spec."""
    if isinstance(spec, list):
        if len(spec) != n:
            raise ConfigError(f"Explicit weights have length {len(spec)}, not n = {n}")
        return WeightSequence(spec)
    if spec == "sqrt_prefix":
        return sqrt_prefix_b(n)
    if spec == "ones":
        return WeightSequence(np.ones(n))
    return WeightSequence(np.sort(rng.uniform(0.05, 1.0, n))[::-1])
