"""This file contains metadata describing the Orlicz functions, profiles and
experiments that orlicz_embedding understands, and the results it writes.
"""

metadata = {}

"""Orlicz function records.

Each key is the tag of a JSON record ``{tag: value}``. Fields
______

description : str
    A human-readable description.
value : str
    What the value of the record is.
smooth : bool
    Whether M has first and second derivatives, which the construction of
    weights from M needs.
"""
orlicz_specs = {
    "power": {
        "description": "M(t) = |t|^p / p",
        "value": "p in [1, 2]",
        "smooth": True,
    },
    "power_normalized": {
        "description": "M(t) = |t|^p / p rescaled so that M*(1) = 1",
        "value": "p in (1, 2]",
        "smooth": True,
    },
    "dual_knots": {
        "description": "piecewise-affine convex M* through the given (t, M*(t)); "
        "API only: OrliczSpec.dual() and the norms, not the experiments",
        "value": "list of [t, v] pairs",
        "smooth": False,
    },
}

"""Concave profiles H for the density construction."""
profiles = {
    "power": {
        "description": "H(t) = t^alpha",
        "parameters": {"alpha": "exponent in (0, 1]"},
    },
    "orlicz": {
        "description": "H = ((M*)^-1)^2 for an Orlicz function M",
        "parameters": {"orlicz": "an Orlicz function record"},
    },
}

"""Named weight sequences."""
weight_specs = {
    "sqrt_prefix": "b_k = sqrt(nk) - sqrt(n(k-1)), prefix sums sqrt(nk)",
    "random": "n uniform numbers in [0.05, 1] sorted nonincreasing",
    "ones": "a = (1, ..., 1)",
}

"""The kinds of experiment.

Fields
______

description : str
    A human-readable description.
n : [int]
    The default list of dimensions.
trials : int
    The default number of random trials per dimension.
tolerance : float
    The default slack allowed on asserted brackets.
requires : [str]
    Configuration fields that must be present.
checks : [str]
    The checks the experiment performs; with more than one check, the
    ``experiment`` column of the CSV holds ``<name>/<check>``.
asserted : bool
    Whether the main bracket is asserted or only reported.
"""
experiments = {
    "theorem1": {
        "description": "Permutation-averaged weighted l2 norm against the Orlicz norm "
        "built from the weights",
        "n": [2, 3, 4, 5],
        "trials": 20,
        "tolerance": 1.0e-6,
        "requires": [],
        "checks": ["sandwich"],
        "asserted": True,
    },
    "theorem2": {
        "description": "Weights built from an Orlicz function: empirical constant, "
        "weight sum, weight sandwich and knot corridor",
        "n": [1, 2, 4, 8],
        "trials": 10,
        "tolerance": 1.0e-8,
        "requires": ["orlicz"],
        "checks": ["ratio", "sum", "weights", "corridor"],
        "asserted": False,
    },
    "lemma4": {
        "description": "Average over one permutation of the maximum of a matrix",
        "n": [2, 3, 4, 5, 6, 7],
        "trials": 200,
        "tolerance": 1.0e-12,
        "requires": [],
        "checks": ["bracket"],
        "asserted": True,
    },
    "lemma5": {
        "description": "Average over two permutations of the maximum of a tensor",
        "n": [2, 3, 4, 5],
        "trials": 50,
        "tolerance": 1.0e-12,
        "requires": [],
        "checks": ["bracket"],
        "asserted": True,
    },
    "lemma6": {
        "description": "The b-norm: greedy against exhaustive, and against the "
        "Orlicz norm it induces",
        "n": [1, 2, 3, 4],
        "s": [4, 6, 8],
        "trials": 100,
        "tolerance": 1.0e-6,
        "requires": [],
        "checks": ["greedy", "bracket"],
        "asserted": True,
    },
    "lemma7": {
        "description": "Density of a concave profile: reconstruction of H, total "
        "mass, monotonicity and the limits at 0",
        "n": [],
        "trials": 0,
        "tolerance": 1.0e-6,
        "requires": ["profile"],
        "checks": ["reconstruction", "total", "density", "limits"],
        "asserted": True,
    },
    "corridor": {
        "description": "Knots of M*^-1 against the product rearrangement, and the "
        "two-permutation chain",
        "n": [2, 3, 4, 5, 6, 7],
        "trials": 5,
        "tolerance": 1.0e-9,
        "requires": [],
        "checks": ["knots", "norms", "chain"],
        "asserted": True,
    },
}

"""The columns of the per-trial CSV reports.

Fields
______

description : str
    A human-readable description of the column.
type : str
    The type of the data: string, integer, float or boolean.
"""
metadata["results"] = {
    "experiment": {
        "description": "experiment name, or <name>/<check>",
        "type": "string",
    },
    "n": {"description": "the dimension", "type": "integer"},
    "trial": {"description": "trial index within (experiment, n)", "type": "integer"},
    "value_lhs": {"description": "the bracketed quantity", "type": "float"},
    "value_rhs": {"description": "the quantity it is compared to", "type": "float"},
    "lower": {"description": "lower bound, empty if not asserted", "type": "float"},
    "upper": {"description": "upper bound, empty if not asserted", "type": "float"},
    "pass": {"description": "whether the bracket holds", "type": "boolean"},
}
