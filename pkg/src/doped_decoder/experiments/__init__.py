"""Decoder-learning experiments."""

from .fig2 import build_scrambler, format_summary, run_fig2, run_sample, summarize

__all__ = ["build_scrambler", "format_summary", "run_fig2", "run_sample", "summarize"]
