"""Python access to the topological Markov shift laboratory."""

import json

from ._core import (
    SchemaError,
    TmsError,
    check_maltese,
    conformality_check_1d,
    count_patterns,
    driver_sample,
    entropy_scan,
    frontier_sizes,
    gibbs_markov,
    list_models,
    parry,
    run_cli,
    uniform_specification_check,
)
from . import _core


def model(name, dim=0):
    """Model definition as a dict, in the model-file format."""
    return json.loads(_core.model_json(name, dim))


def check_mho(name, dim=0, window=2, l1=-1, samples=100, seed=7):
    return json.loads(_core.check_mho(name, dim, window, l1, samples, seed))


def cli(*args):
    """Run a subcommand and return the parsed JSON output; raises on nonzero exit."""
    code, out, err = run_cli([str(a) for a in args])
    if code != 0:
        raise TmsError(f"exit {code}: {err.strip()}")
    return json.loads(out)


__all__ = [
    "SchemaError",
    "TmsError",
    "check_maltese",
    "check_mho",
    "cli",
    "conformality_check_1d",
    "count_patterns",
    "driver_sample",
    "entropy_scan",
    "frontier_sizes",
    "gibbs_markov",
    "list_models",
    "model",
    "parry",
    "run_cli",
    "uniform_specification_check",
]
