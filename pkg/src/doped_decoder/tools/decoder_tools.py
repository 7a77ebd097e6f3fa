"""MCP tools for decoder learning, decomposition and decoding-fidelity analysis."""

import asyncio
import logging
from typing import Any, Dict, Optional

from ..experiments.fig2 import all_verified, run_fig2
from ..learning.cc import decompose, learn
from ..learning.hp import hp_report, is_scrambler
from ..models.decoder_models import CCParams, ExperimentConfig, Partition
from ..oracle.circuit import DopedCircuit
from ..oracle.densecheck import cross_validate
from ..oracle.doped_oracle import resolution_bound
from ..stabilizer.subroutines import sample_random_clifford
from ..utils.helpers import make_rng

logger = logging.getLogger(__name__)


async def sample_clifford(n: int, seed: Optional[int] = None) -> Dict[str, Any]:
    """
    Sample a uniformly random n-qubit Clifford.

    Args:
        n: Number of qubits
        seed: Seed for the generator (default from settings)

    Returns:
        Dictionary with the tableau in text form
    """
    try:
        tableau = await asyncio.to_thread(sample_random_clifford, n, make_rng(seed))
        return {"success": True, "n": n, "tableau": tableau.to_text()}
    except Exception as e:
        logger.error(f"Error in sample_clifford: {e}")
        return {"success": False, "error": str(e), "n": n}


async def learn_decoder(
    circuit: str,
    m: int = 0,
    seed: Optional[int] = None,
    mode: str = "exact",
) -> Dict[str, Any]:
    """
    Learn a Clifford decoder for a doped circuit.

    Args:
        circuit: Circuit text ("circuit n=..." followed by gate lines)
        m: Number of excluded leading qubits
        seed: Seed for the generator
        mode: Oracle mode ('exact' or 'shots')

    Returns:
        Dictionary with the learned generators, decoder tableau and statistics
    """
    try:
        doped = DopedCircuit.from_text(circuit)
        params = CCParams(m=m, mode=mode, seed=seed)
        result = await asyncio.to_thread(learn, doped, params, make_rng(seed))
        return {
            "success": True,
            "generators": [g.to_text() for g in result.generators],
            "decoder": result.decoder.to_text(header="decoder"),
            "stats": result.stats.model_dump(),
        }
    except Exception as e:
        logger.error(f"Error in learn_decoder: {e}")
        return {"success": False, "error": str(e), "generators": []}


async def decompose_circuit(circuit: str, seed: Optional[int] = None) -> Dict[str, Any]:
    """
    Split a doped circuit as U0 (1_s (x) u) U0'.

    Args:
        circuit: Circuit text
        seed: Seed for the generator

    Returns:
        Dictionary with s, both Clifford tableaux and gate counts
    """
    try:
        doped = DopedCircuit.from_text(circuit)
        result = await asyncio.to_thread(decompose, doped, make_rng(seed))
        return {
            "success": True,
            "n": doped.n,
            "t": doped.t,
            "s": result.s,
            "u0": result.u0.to_text(header="u0"),
            "u0_prime": result.u0_prime.to_text(header="u0_prime"),
            "gate_counts": result.gate_counts,
            "attempts": result.attempts,
        }
    except Exception as e:
        logger.error(f"Error in decompose_circuit: {e}")
        return {"success": False, "error": str(e)}


def _analyze(doped: DopedCircuit, part: Partition, seed: Optional[int]) -> Dict[str, Any]:
    result = learn(doped, CCParams(m=part.n_c, seed=seed), make_rng(seed))
    report = hp_report(doped, result.decoder, part, result.generators)
    return {"report": report.model_dump(), "scrambler": is_scrambler(doped, part)}


async def hp_fidelity(
    circuit: str,
    n_a: int = 1,
    n_d: int = 4,
    seed: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Learn a decoder on the last n_d qubits and report its decoding fidelity.

    Args:
        circuit: Circuit text
        n_a: Size of the input subsystem A
        n_d: Size of the output subsystem D
        seed: Seed for the generator

    Returns:
        Dictionary with the HP report fields and the scrambler test result
    """
    try:
        doped = DopedCircuit.from_text(circuit)
        part = Partition.from_sizes(doped.n, n_a, n_d)
        analysis = await asyncio.to_thread(_analyze, doped, part, seed)
        return {"success": True, **analysis}
    except Exception as e:
        logger.error(f"Error in hp_fidelity: {e}")
        return {"success": False, "error": str(e)}


async def get_resolution_bound(t: int) -> Dict[str, Any]:
    """Smallest gap between distinct Choi expectations of a t-doped circuit."""
    try:
        return {"success": True, "t": t, "bound": resolution_bound(t)}
    except Exception as e:
        logger.error(f"Error in get_resolution_bound: {e}")
        return {"success": False, "error": str(e), "t": t}


async def run_experiment(
    n: int = 8,
    n_a: int = 1,
    n_d: int = 4,
    t_min: int = 0,
    t_max: int = 6,
    samples: int = 10,
    seed: Optional[int] = None,
    mode: str = "exact",
) -> Dict[str, Any]:
    """
    Run the decoder-learning experiment without writing files.

    Returns:
        Dictionary with per-t summaries and whether every sample verified
    """
    try:
        fields = dict(n=n, n_a=n_a, n_d=n_d, t_min=t_min, t_max=t_max, samples=samples, mode=mode, workers=1)
        if seed is not None:
            fields["seed"] = seed
        cfg = ExperimentConfig(**fields)
        records, summaries = await asyncio.to_thread(run_fig2, cfg)
        return {
            "success": True,
            "summaries": [s.model_dump() for s in summaries],
            "verified": all_verified(records),
        }
    except Exception as e:
        logger.error(f"Error in run_experiment: {e}")
        return {"success": False, "error": str(e), "summaries": []}


async def verify_oracles(n_max: int = 4, cases: int = 50, seed: Optional[int] = None) -> Dict[str, Any]:
    """
    Cross-check tableau, Pauli-sum and Choi computations against dense matrices.

    Args:
        n_max: Largest register size (at most 6)
        cases: Number of random cases
        seed: Seed for the generator

    Returns:
        Dictionary with the cross-validation summary
    """
    try:
        if n_max > 6:
            raise ValueError(f"n_max must be at most 6, got {n_max}")
        summary = await asyncio.to_thread(cross_validate, n_max, cases, make_rng(seed))
        return {"success": True, **summary}
    except Exception as e:
        logger.error(f"Error in verify_oracles: {e}")
        return {"success": False, "error": str(e)}
