# -*- coding: utf-8 -*-

"""The orlicz-embedding command.

::

    orlicz-embedding [options] run CONFIG   run a suite of experiments
    orlicz-embedding [options] check CONFIG validate a suite without running it
    orlicz-embedding [options] demo         run the small suite shipped with the package

Options may also come from ``~/.orlicz-embedding.ini`` or
``./orlicz-embedding.ini``, and the seed from ``ORLICZ_EMBEDDING_SEED``.
The exit code is 0 when every asserted bracket holds, 1 when one fails or
an experiment errors, and 2 for configuration errors.
"""

import logging
from pathlib import Path
import sys

import configargparse

import seamm_util.printing as printing

from .errors import ConfigError
from .experiment_parameters import ExperimentParameters, parse_suite
from .harness import load_suite, run_suite

logger = logging.getLogger("OrliczEmbedding")
job = printing.getPrinter()

SEED_VARIABLE = "ORLICZ_EMBEDDING_SEED"
CONFIG_FILES = ["~/.orlicz-embedding.ini", "./orlicz-embedding.ini"]


def demo_path():
    """The demonstration suite installed with the package."""
    return Path(__file__).parent / "data" / "demo.json"


def create_parser():
    """Setup the command-line / config file parser"""
    parser = configargparse.ArgumentParser(
        prog="orlicz-embedding",
        description="Numerical experiments on Orlicz norms and permutation averages",
        default_config_files=CONFIG_FILES,
    )
    parser.add_argument(
        "--config-file", is_config_file=True, help="An additional options file"
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        env_var=SEED_VARIABLE,
        help="The master seed, overriding the one in the configuration",
    )
    parser.add_argument(
        "--mode",
        choices=ExperimentParameters.parameters["mode"]["enumeration"],
        default=None,
        help="Use exact enumeration or Monte Carlo for every experiment",
    )
    parser.add_argument(
        "--samples",
        type=int,
        default=None,
        help="The number of Monte Carlo samples per average",
    )
    parser.add_argument(
        "--tol",
        type=float,
        default=None,
        help="The slack on asserted brackets, for every experiment",
    )
    parser.add_argument(
        "--out-dir",
        default="orlicz_reports",
        help="The directory for the reports. Default: orlicz_reports",
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"],
        type=str.upper,
        help="The level of informational output, defaults to '%(default)s'",
    )

    commands = parser.add_subparsers(dest="command", required=True)
    run = commands.add_parser("run", help="Run the experiments in a suite")
    run.add_argument("config", help="The JSON configuration of the suite")
    check = commands.add_parser("check", help="Validate a suite without running it")
    check.add_argument("config", help="The JSON configuration of the suite")
    commands.add_parser("demo", help="Run the small suite shipped with the package")
    return parser


def overrides(options):
    """The per-experiment values given on the command line."""
    return {
        "mode": options.mode,
        "samples": options.samples,
        "tolerance": options.tol,
    }


def main(argv=None):
    """Run the command and return its exit code."""
    parser = create_parser()
    options = parser.parse_args(sys.argv[1:] if argv is None else argv)

    logging.basicConfig(level=options.log_level)
    logger.setLevel(options.log_level)

    config = demo_path() if options.command == "demo" else options.config
    try:
        if options.command == "check":
            seed, configs = parse_suite(load_suite(config), overrides(options))
            for cfg in configs:
                job.important(f"    {cfg.path}: {cfg.name} ({cfg.kind}) n = {cfg.n}")
            job.important(f"{len(configs)} experiments are valid.")
            return 0
        return run_suite(config, options.out_dir, options.seed, overrides(options))
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        print(f"orlicz-embedding: configuration error: {e}", file=sys.stderr)
        return 2
