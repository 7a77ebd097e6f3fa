"""MCP tool functions for the doped Clifford decoder."""

from .decoder_tools import (
    decompose_circuit,
    get_resolution_bound,
    hp_fidelity,
    learn_decoder,
    run_experiment,
    sample_clifford,
    verify_oracles,
)

__all__ = [
    "decompose_circuit",
    "get_resolution_bound",
    "hp_fidelity",
    "learn_decoder",
    "run_experiment",
    "sample_clifford",
    "verify_oracles",
]
