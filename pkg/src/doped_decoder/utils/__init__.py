"""Utility functions for the doped Clifford decoder."""

from .helpers import (
    derive_seed,
    format_float,
    make_rng,
    read_text,
    spawn_rng,
    write_text,
)

__all__ = [
    "derive_seed",
    "format_float",
    "make_rng",
    "read_text",
    "spawn_rng",
    "write_text",
]
