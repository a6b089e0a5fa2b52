"""Quantum sensitivity bounds for pure and mixed states."""

import json

from ._qsense import (
    Channel,
    Error,
    bound_entangled,
    bound_product,
    bures_distance_sq,
    check_lemma_once,
    delta_x_min,
    eigh,
    expm_i_hermitian,
    extremal_entangled_state,
    fidelity,
    ghz_state,
    mix,
    product_state,
    qfi_fd,
    qfi_sld,
    random_density,
    random_pure,
    sqrt_psd,
    trace_norm,
)
from . import _qsense


def scaling_experiment(h, k_max, n=1, dx=1e-4):
    """Rows comparing measured and closed-form product/entangled bounds."""
    return json.loads(_qsense._scaling_json(h, k_max, n, dx))


def werner_experiment(k, q_grid, n=1, dx=1e-4):
    return json.loads(_qsense._werner_json(k, list(q_grid), n, dx))


def run_suite(suite, trials, seed, dims=(), gammas=(), invert=False):
    """Run the lemma or theorem fuzzer; returns (exit_code, report dict)."""
    code, report = _qsense._run_suite_json(suite, trials, seed, list(dims), list(gammas), invert)
    return code, json.loads(report)


__all__ = [
    "Channel",
    "Error",
    "bound_entangled",
    "bound_product",
    "bures_distance_sq",
    "check_lemma_once",
    "delta_x_min",
    "eigh",
    "expm_i_hermitian",
    "extremal_entangled_state",
    "fidelity",
    "ghz_state",
    "mix",
    "product_state",
    "qfi_fd",
    "qfi_sld",
    "random_density",
    "random_pure",
    "run_suite",
    "scaling_experiment",
    "sqrt_psd",
    "trace_norm",
    "werner_experiment",
]
