"""Python bindings for the holmc samplers."""

import json as _json

from ._core import (  # noqa: F401
    ChainAborted,
    Marginal,
    Potential,
    constants_json,
    generate_logistic_data,
    logistic_potential,
    marginal,
    potential,
    run_chain,
    select_hyperparams,
    taming_factor,
    w1_vs_marginal,
    write_density_grid,
)
from ._core import run_experiment as _run_experiment


def constants(potential_name, d, beta=1.0, m1=1.0):
    """Constants report as a dict."""
    return _json.loads(constants_json(potential_name, d, beta, m1))


def run_experiment(*args, **kwargs):
    """Run an experiment; returns the summary as a dict."""
    return _json.loads(_run_experiment(*args, **kwargs))
