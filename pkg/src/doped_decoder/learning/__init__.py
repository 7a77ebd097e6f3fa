"""Decoder learning and Hayden-Preskill analysis."""

from .cc import (
    CompressedState,
    Decomposition,
    LearnedGenerator,
    LearnResult,
    build_decoder,
    compress_state,
    decompose,
    learn,
    recomposition_error,
    residual_reconstruct,
)
from .hp import (
    correction_terms,
    enumerate_group,
    fidelity,
    fidelity_bound,
    four_point_otoc,
    gate_fidelity,
    hp_report,
    is_scrambler,
    truncated_otoc,
)

__all__ = [
    "CompressedState",
    "Decomposition",
    "LearnedGenerator",
    "LearnResult",
    "build_decoder",
    "compress_state",
    "decompose",
    "learn",
    "recomposition_error",
    "residual_reconstruct",
    "correction_terms",
    "enumerate_group",
    "fidelity",
    "fidelity_bound",
    "four_point_otoc",
    "gate_fidelity",
    "hp_report",
    "is_scrambler",
    "truncated_otoc",
]
