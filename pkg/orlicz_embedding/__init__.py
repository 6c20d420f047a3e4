# -*- coding: utf-8 -*-

"""
orlicz_embedding
Orlicz norms, their dual functions, and the permutation averages that
embed them in L1.
"""

from importlib.metadata import version, PackageNotFoundError

# Bring up the main functions and classes so that they appear to be
# directly in the orlicz_embedding package.

from .metadata import metadata, experiments, orlicz_specs, profiles  # noqa: F401
from .metadata import weight_specs  # noqa: F401

from .errors import OrliczError, ConfigError  # noqa: F401
from .errors import NotConvex, NotStrictlyConvex, DomainExceeded  # noqa: F401
from .errors import ZeroVector, NotTwoConcave, NotNormalized  # noqa: F401
from .errors import DegenerateProfile, NotDecreasing, NotConcave  # noqa: F401
from .errors import NotStrictlyIncreasing, LengthMismatch  # noqa: F401
from .errors import TooLargeForExact  # noqa: F401

from .piecewise import PiecewiseAffine  # noqa: F401

from .orlicz_core import OrliczFunction, DualFunction, ConcavityReport  # noqa: F401
from .orlicz_core import conjugate_dual, dual_by_quadrature  # noqa: F401
from .orlicz_core import orlicz_norm, luxemburg_norm  # noqa: F401
from .orlicz_core import normalize_dual_at_one, two_concavity_check  # noqa: F401

from .construction import WeightSequence, ConcaveProfile, DensityF  # noqa: F401
from .construction import knots_from_weights, orlicz_from_knots  # noqa: F401
from .construction import f_from_profile, cumulative_f, total_mass  # noqa: F401
from .construction import weights_from_profile, weights_from_orlicz  # noqa: F401
from .construction import weights_by_quadrature, reconstruct_H_check  # noqa: F401
from .construction import lemma8_limits, sqrt_prefix_b, product_knots  # noqa: F401
from .construction import knot_corridor, theorem2_corridor  # noqa: F401

from .combinatorics import c_n, c_n_exact, SamplingMode, McEstimate  # noqa: F401
from .combinatorics import rearrange, ave_quadratic  # noqa: F401
from .combinatorics import ave_max_matrix, ave_max_tensor, outer_tensor  # noqa: F401
from .combinatorics import b_norm, dual_from_b, lemma6_bracket  # noqa: F401

from .experiment_parameters import ExperimentConfig  # noqa: F401
from .experiment_parameters import ExperimentParameters, parse_suite  # noqa: F401

from .harness import TrialRow, SandwichReport, ExperimentResult  # noqa: F401
from .harness import verify_theorem1, verify_theorem2  # noqa: F401
from .harness import run_experiment, run_suite  # noqa: F401

__author__ = "The orlicz_embedding developers"
try:
    __version__ = version("orlicz_embedding")
except PackageNotFoundError:
    __version__ = "0.0.0+unknown"
del version, PackageNotFoundError
