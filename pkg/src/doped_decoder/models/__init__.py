"""Data models for the doped Clifford decoder."""

from .decoder_models import (
    CSV_HEADER,
    CCParams,
    ExperimentConfig,
    Fig2Summary,
    HPReport,
    LearnStats,
    Partition,
    SampleRecord,
)

__all__ = [
    "CSV_HEADER",
    "CCParams",
    "ExperimentConfig",
    "Fig2Summary",
    "HPReport",
    "LearnStats",
    "Partition",
    "SampleRecord",
]
