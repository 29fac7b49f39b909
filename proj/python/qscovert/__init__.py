"""Covert-communication benchmarks for quasi-static MIMO fading channels."""

import json as _json

from . import _core
from ._core import (
    QscovertError,
    __version__,
    delta_n,
    first_order_rate,
    gsvd,
    kl_output_vs_noise,
    logdet_psd,
    orthonormalize,
    pinsker_floor,
    power_ach,
    power_con,
    principal_angles,
    singular_values,
    spectral_norm,
    subspace_sin_sq,
)


def _model(model):
    return model if isinstance(model, str) else _json.dumps(model)


def kappa_epsilon(model, lambda0, epsilon, trials, seed=1, workers=1, gain="singular_value", rows=2, cols=2):
    return _core.kappa_epsilon(_model(model), lambda0, epsilon, trials, seed, workers, gain, rows, cols)


def covert_outage_rate(model, psi, epsilon, trials, seed=1, gain="singular_value", rows=2, cols=2):
    return _core.covert_outage_rate(_model(model), psi, epsilon, trials, seed, gain, rows, cols)


def ach_rate_bound(n, epsilon, delta, model, trials, seed=1, **kwargs):
    return _core.ach_rate_bound(n, epsilon, delta, _model(model), trials, seed, **kwargs)


def con_rate_bound(n, epsilon, delta, model, trials, seed=1, **kwargs):
    return _core.con_rate_bound(n, epsilon, delta, _model(model), trials, seed, **kwargs)


def run_command(command, config, seed=0, workers=0, trials=0):
    """Runs a CLI command on a config dict (or JSON text) and returns the output text."""
    text = config if isinstance(config, str) else _json.dumps(config)
    return _core.run_command(command, text, seed, workers, trials)


__all__ = [
    "QscovertError",
    "__version__",
    "ach_rate_bound",
    "con_rate_bound",
    "covert_outage_rate",
    "delta_n",
    "first_order_rate",
    "gsvd",
    "kappa_epsilon",
    "kl_output_vs_noise",
    "logdet_psd",
    "orthonormalize",
    "pinsker_floor",
    "power_ach",
    "power_con",
    "principal_angles",
    "run_command",
    "singular_values",
    "spectral_norm",
    "subspace_sin_sq",
]
