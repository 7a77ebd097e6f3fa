"""Decoder-learning experiment over T counts: scramblers, samples, CSV and summary."""

from __future__ import annotations

import csv
import io
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..learning.cc import learn
from ..learning.hp import hp_report
from ..models.decoder_models import CSV_HEADER, CCParams, ExperimentConfig, Fig2Summary, SampleRecord
from ..oracle.circuit import DopedCircuit
from ..stabilizer.subroutines import sample_random_clifford
from ..stabilizer.tableau import Gate, h, synthesize, t_gate
from ..utils.helpers import derive_seed, make_rng, write_text

logger = logging.getLogger(__name__)


def middle_layer(n: int, t: int) -> List[Gate]:
    """T H T on qubits 0..t//2-1, then a lone T on qubit t//2 when t is odd."""
    width = t // 2 + t % 2
    if width > n:
        raise ValueError(f"t={t} needs {width} qubits for the middle layer, only {n} available")
    gates: List[Gate] = []
    for i in range(t // 2):
        gates.extend([t_gate(i), h(i), t_gate(i)])
    if t % 2:
        gates.append(t_gate(t // 2))
    return gates


def build_scrambler(n: int, t: int, rng: np.random.Generator) -> DopedCircuit:
    """
    Random Clifford, the T middle layer, random Clifford.

    Args:
        n: Number of qubits
        t: Number of T gates
        rng: Random generator

    Returns:
        A t-doped scrambler whose Clifford layers are uniform tableau samples
    """
    first = synthesize(sample_random_clifford(n, rng))
    last = synthesize(sample_random_clifford(n, rng))
    return DopedCircuit(first + DopedCircuit.from_gates(n, middle_layer(n, t)).gates + last)


def run_sample(config: Dict[str, Any], t: int, sample: int) -> SampleRecord:
    """
    Learn a decoder for one scrambler and score it.

    Args:
        config: ExperimentConfig as a plain dict (picklable for worker processes)
        t: Number of T gates
        sample: Sample index

    Returns:
        SampleRecord; failures are recorded in ``error`` rather than raised
    """
    cfg = ExperimentConfig(**config)
    part = cfg.partition
    seed = derive_seed(cfg.seed, t, sample)
    rng = make_rng(seed)
    try:
        circuit = build_scrambler(cfg.n, t, rng)
        params = CCParams(m=part.n_c, mode=cfg.mode, seed=seed)
        result = learn(circuit, params, rng)
        report = hp_report(circuit, result.decoder, part, result.generators)
        return SampleRecord(
            t=t,
            sample=sample,
            seed=seed,
            steps=result.stats.sampling_steps,
            queries=result.stats.oracle_queries,
            gd_rank=report.gd_rank,
            r_zero=report.success,
            fidelity=report.fidelity,
            success=report.consistent,
            exact=report.exact,
        )
    except Exception as e:
        logger.error(f"Sample t={t} #{sample} failed: {e}")
        return SampleRecord(
            t=t,
            sample=sample,
            seed=seed,
            steps=0,
            queries=0,
            gd_rank=0,
            r_zero=False,
            fidelity=0.0,
            success=False,
            error=str(e),
        )


def _run_task(args: Tuple[Dict[str, Any], int, int]) -> SampleRecord:
    return run_sample(*args)


def _mean(values: Sequence[float]) -> float:
    return float(np.mean(values)) if len(values) else 0.0


def summarize(records: Sequence[SampleRecord], cfg: ExperimentConfig) -> List[Fig2Summary]:
    """
    Per-t means and failure fractions; a failure is R != 0 or R' != 0.

    Samples that raised are counted in ``errored`` and left out of the means
    and the failure fraction.
    """
    part = cfg.partition
    out = []
    for t in cfg.t_values:
        rows = [r for r in records if r.t == t]
        if not rows:
            continue
        done = [r for r in rows if r.error is None]
        out.append(
            Fig2Summary(
                t=t,
                samples=len(rows),
                errored=len(rows) - len(done),
                mean_steps=_mean([r.steps for r in done]),
                mean_queries=_mean([r.queries for r in done]),
                mean_fidelity=_mean([r.fidelity for r in done]),
                failure_fraction=sum(1 for r in done if not r.r_zero) / len(done) if done else 0.0,
                bound=2.0 ** (t - 2 * part.n_c),
            )
        )
    return out


def format_summary(summaries: Sequence[Fig2Summary]) -> str:
    lines = [
        f"{'t':>3} {'samples':>8} {'errored':>8} {'steps':>12} {'queries':>12} "
        f"{'fidelity':>12} {'failure':>10} {'bound':>10}"
    ]
    for s in summaries:
        lines.append(
            f"{s.t:>3} {s.samples:>8} {s.errored:>8} {s.mean_steps:>12.2f} {s.mean_queries:>12.1f} "
            f"{s.mean_fidelity:>12.8f} {s.failure_fraction:>10.4f} {s.bound:>10.6f}"
        )
    return "\n".join(lines) + "\n"


def records_to_csv(records: Sequence[SampleRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow(record.csv_row())
    return buffer.getvalue()


def records_to_sidecar(records: Sequence[SampleRecord]) -> str:
    """Exact values per sample as ``t sample key=value ...`` lines."""
    lines = []
    for r in records:
        fields = " ".join(f"{k}={v}" for k, v in r.exact.items())
        if r.error:
            fields = f"error={r.error!r}"
        lines.append(f"{r.t} {r.sample} {fields}".rstrip())
    return "\n".join(lines) + "\n"


def all_verified(records: Sequence[SampleRecord]) -> bool:
    """True when no sample errored and every fidelity decomposition was consistent."""
    return all(r.error is None and r.success for r in records)


def run_fig2(cfg: ExperimentConfig, output: Optional[Path] = None) -> Tuple[List[SampleRecord], List[Fig2Summary]]:
    """
    Run every (t, sample) pair and write the dataset.

    Args:
        cfg: Experiment configuration
        output: CSV path; overrides cfg.output

    Returns:
        (records sorted by (t, sample), per-t summaries)
    """
    config = cfg.model_dump()
    tasks = [(config, t, sample) for t in cfg.t_values for sample in range(cfg.samples)]
    logger.info(f"Running {len(tasks)} samples (n={cfg.n}, |A|={cfg.n_a}, |D|={cfg.n_d}, workers={cfg.workers})")

    workers = cfg.workers or os.cpu_count() or 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        records = [_run_task(task) for task in tasks]
    records.sort(key=lambda r: (r.t, r.sample))

    target = output or (Path(cfg.output) if cfg.output else None)
    if target is not None:
        write_text(target, records_to_csv(records))
        logger.info(f"Wrote {len(records)} rows to {target}")
        if cfg.exact_sidecar:
            sidecar = target.with_suffix(".exact.txt")
            write_text(sidecar, records_to_sidecar(records))
            logger.info(f"Wrote exact values to {sidecar}")

    summaries = summarize(records, cfg)
    for s in summaries:
        if s.failure_fraction > s.bound:
            logger.warning(f"t={s.t}: failure fraction {s.failure_fraction:.4f} above 2^(t-2|C|)={s.bound:.4f}")
    return records, summaries
