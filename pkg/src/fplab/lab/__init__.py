"""Experiment harness: set families, sweeps, the verification suite, the CLI."""

from fplab.lab.families import Family, family_to_str, generate, parse_family, structure_suite
from fplab.lab.sweep import parse_config, run_experiment
from fplab.lab.verify import verify_suite

__all__ = [
    "Family",
    "parse_family",
    "family_to_str",
    "generate",
    "structure_suite",
    "parse_config",
    "run_experiment",
    "verify_suite",
]
