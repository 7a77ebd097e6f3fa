"""Tests for the decoder-learning experiment runner."""

import csv

import pytest

from doped_decoder.experiments.fig2 import (
    all_verified,
    build_scrambler,
    format_summary,
    middle_layer,
    records_to_sidecar,
    run_fig2,
    run_sample,
    summarize,
)
from doped_decoder.models.decoder_models import CSV_HEADER, ExperimentConfig, SampleRecord
from doped_decoder.utils.helpers import make_rng


@pytest.fixture
def small_config():
    return ExperimentConfig(n=4, n_a=1, n_d=2, t_min=0, t_max=2, samples=2, seed=3, workers=1)


def test_middle_layer():
    names = [(g.name, g.qubits) for g in middle_layer(8, 3)]
    assert names == [("T", (0,)), ("H", (0,)), ("T", (0,)), ("T", (1,))]
    assert middle_layer(4, 0) == []
    with pytest.raises(ValueError):
        middle_layer(1, 3)


def test_build_scrambler_counts_t():
    circuit = build_scrambler(4, 3, make_rng(1))
    assert circuit.n == 4
    assert circuit.t == 3


def test_run_sample_is_deterministic(small_config):
    config = small_config.model_dump()
    first = run_sample(config, 1, 0)
    assert first.error is None
    assert first.success
    assert run_sample(config, 1, 0) == first
    assert run_sample(config, 1, 1).seed != first.seed


def test_clifford_samples_have_no_corrections(small_config):
    record = run_sample(small_config.model_dump(), 0, 0)
    assert record.r_zero
    assert record.gd_rank == 2 * small_config.n_d


def test_run_fig2_writes_csv_and_sidecar(small_config, tmp_path):
    cfg = small_config.model_copy(update={"exact_sidecar": True})
    target = tmp_path / "fig2.csv"
    records, summaries = run_fig2(cfg, target)
    assert len(records) == 6
    assert [(r.t, r.sample) for r in records] == [(t, s) for t in range(3) for s in range(2)]
    assert all_verified(records)

    with target.open(newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == CSV_HEADER
    assert len(rows) == 7

    sidecar = (tmp_path / "fig2.exact.txt").read_text()
    assert sidecar.splitlines()[0].startswith("0 0 fidelity=")

    assert [s.t for s in summaries] == [0, 1, 2]
    assert summaries[0].failure_fraction == 0.0
    assert summaries[0].bound == pytest.approx(2.0**-4)
    assert format_summary(summaries).splitlines()[0].split()[0] == "t"


def test_summarize_counts_failures(small_config):
    rows = [
        SampleRecord(t=0, sample=i, seed=i, steps=2, queries=4, gd_rank=4, r_zero=i == 0, fidelity=0.5, success=True)
        for i in range(4)
    ]
    (summary,) = summarize(rows, small_config)
    assert summary.samples == 4
    assert summary.failure_fraction == 0.75
    assert summary.mean_queries == 4.0


def test_errored_samples_fail_verification():
    bad = SampleRecord(
        t=1, sample=0, seed=0, steps=0, queries=0, gd_rank=0, r_zero=False, fidelity=0.0, success=False, error="boom"
    )
    assert not all_verified([bad])
    assert records_to_sidecar([bad]) == "1 0 error='boom'\n"


def test_errored_samples_are_not_counted_as_failures(small_config):
    good = SampleRecord(t=1, sample=0, seed=0, steps=6, queries=9, gd_rank=3, r_zero=True, fidelity=0.75, success=True)
    bad = SampleRecord(
        t=1, sample=1, seed=1, steps=0, queries=0, gd_rank=0, r_zero=False, fidelity=0.0, success=False, error="boom"
    )
    (summary,) = summarize([good, bad], small_config)
    assert summary.samples == 2
    assert summary.errored == 1
    assert summary.failure_fraction == 0.0
    assert summary.mean_fidelity == 0.75
    assert summary.mean_steps == 6.0

    (only_errors,) = summarize([bad], small_config)
    assert only_errors.errored == 1
    assert only_errors.failure_fraction == 0.0
    assert only_errors.mean_queries == 0.0


@pytest.mark.slow
def test_worker_pool_matches_serial(small_config, tmp_path):
    serial, _ = run_fig2(small_config, tmp_path / "serial.csv")
    pooled, _ = run_fig2(small_config.model_copy(update={"workers": 2}), tmp_path / "pooled.csv")
    assert serial == pooled
    assert (tmp_path / "serial.csv").read_text() == (tmp_path / "pooled.csv").read_text()
