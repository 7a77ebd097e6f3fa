"""Tests for data models."""

import pytest
from pydantic import ValidationError

from doped_decoder.models.decoder_models import (
    CSV_HEADER,
    CCParams,
    ExperimentConfig,
    HPReport,
    LearnStats,
    Partition,
    SampleRecord,
)


def test_partition_model():
    """Test Partition model."""
    part = Partition.from_sizes(8, 1, 4)
    assert (part.n_a, part.n_b, part.n_c, part.n_d) == (1, 7, 4, 4)
    assert part.n == 8
    assert part.d_a == 2
    assert part.d_d == 16
    assert part.a_qubits == [0]
    assert part.d_qubits == [4, 5, 6, 7]


def test_partition_validation():
    """Test Partition validation."""
    with pytest.raises(ValueError):
        Partition(n_a=1, n_b=2, n_c=1, n_d=1)
    with pytest.raises(ValueError):
        Partition(n_a=0, n_b=0, n_c=0, n_d=0)
    with pytest.raises(ValueError):
        Partition(n_a=-1, n_b=2, n_c=1, n_d=0)


def test_cc_params_model():
    """Test CCParams defaults."""
    params = CCParams()
    assert params.m == 0
    assert params.mode == "exact"
    assert params.budget_for(8, 0) == 11
    assert params.budget_for(8, 2) == 43
    assert params.shots_for(5) == 5

    custom = CCParams(m=4, sampling_budget=7, shots=100, mode="shots")
    assert custom.budget_for(8, 6) == 7
    assert custom.shots_for(5) == 100

    with pytest.raises(ValidationError):
        CCParams(mode="fast")


def test_experiment_config_model():
    """Test ExperimentConfig model."""
    cfg = ExperimentConfig(n=8, n_a=1, n_d=4, t_min=0, t_max=3)
    assert cfg.t_values == [0, 1, 2, 3]
    assert cfg.partition == Partition.from_sizes(8, 1, 4)
    assert cfg.samples == 100

    with pytest.raises(ValidationError):
        ExperimentConfig(t_min=4, t_max=2)
    with pytest.raises(ValidationError):
        ExperimentConfig(n=4, n_d=5)
    with pytest.raises(ValidationError):
        ExperimentConfig(workers=-1)


def test_sample_record_csv_row():
    """Test SampleRecord CSV formatting."""
    record = SampleRecord(
        t=2,
        sample=5,
        seed=99,
        steps=12,
        queries=40,
        gd_rank=6,
        r_zero=True,
        fidelity=0.98838,
        success=True,
    )
    row = record.csv_row()
    assert len(row) == len(CSV_HEADER)
    assert row == ["2", "5", "99", "12", "40", "6", "1", "0.98838", "1"]


def test_hp_report_text():
    """Test HPReport text form."""
    report = HPReport(
        fidelity=0.25,
        omega_gd=1.0,
        omega4=1.0,
        r=0.0,
        rprime=0.0,
        gd_size=16,
        gd_rank=4,
        bound=64 / 65,
        success=True,
        consistent=True,
        exact={"fidelity": "1/2^2"},
    )
    lines = report.to_text().splitlines()
    assert lines[0] == "fidelity=0.25"
    assert "success=true" in lines
    assert lines[-1] == "fidelity_exact=1/2^2"


def test_learn_stats_text():
    """Test LearnStats text form."""
    stats = LearnStats(sampling_steps=3, oracle_queries=9, k_reached=2, pair_count=1)
    text = stats.to_text()
    assert "sampling_steps=3" in text
    assert "budget_exhausted=False" in text
    assert stats.x_attempts == []
