"""Finite-dimensional measurement-problem laboratory."""

import json

from ._measurelab import (
    SCHEMA_VERSION,
    ConfigError,
    DimensionError,
    Error,
    NumericError,
    PreconditionError,
    ZeroProbabilityError,
    adjoint,
    born_mixed,
    born_pure,
    commutator,
    complete_to_unitary,
    eig_hermitian,
    tensor,
    trace,
)
from ._measurelab import run_scenario as _run_scenario


def run_scenario(config):
    """Run one scenario config (dict) or a batch (list); returns the parsed report."""
    return json.loads(_run_scenario(json.dumps(config)))


__all__ = [
    "SCHEMA_VERSION",
    "ConfigError",
    "DimensionError",
    "Error",
    "NumericError",
    "PreconditionError",
    "ZeroProbabilityError",
    "adjoint",
    "born_mixed",
    "born_pure",
    "commutator",
    "complete_to_unitary",
    "eig_hermitian",
    "run_scenario",
    "tensor",
    "trace",
]
