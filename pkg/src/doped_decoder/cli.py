"""Command-line experiment runner for the doped Clifford decoder."""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .config import settings
from .experiments.fig2 import all_verified, build_scrambler, format_summary, run_fig2
from .learning.cc import decompose, learn
from .models.decoder_models import CCParams, ExperimentConfig
from .oracle.circuit import DopedCircuit
from .oracle.densecheck import cross_validate
from .oracle.doped_oracle import resolution_bound
from .stabilizer.subroutines import sample_random_clifford
from .utils.helpers import make_rng, read_text, write_text

logger = logging.getLogger(__name__)

VERIFY_MAX_QUBITS = 6


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        path = write_text(output, text)
        logger.info(f"Wrote {path}")
    else:
        sys.stdout.write(text)


def _load_circuit(path: str) -> DopedCircuit:
    return DopedCircuit.from_text(read_text(path))


def cmd_run_fig2(args: argparse.Namespace) -> int:
    cfg = ExperimentConfig(
        n=args.n,
        n_a=args.a,
        n_d=args.d,
        t_min=args.t_min,
        t_max=args.t_max,
        samples=args.samples,
        seed=args.seed if args.seed is not None else settings.default_seed,
        mode=args.mode or settings.oracle_mode,
        output=args.output or str(Path(settings.decoder_output_dir) / "fig2.csv"),
        workers=args.workers if args.workers is not None else settings.worker_count,
        exact_sidecar=args.exact_sidecar,
    )
    records, summaries = run_fig2(cfg)
    sys.stdout.write(format_summary(summaries))
    if not all_verified(records):
        logger.error("Some samples failed verification")
        return 1
    return 0


def cmd_sample_clifford(args: argparse.Namespace) -> int:
    tableau = sample_random_clifford(args.n, make_rng(args.seed))
    _emit(tableau.to_text(), args.output)
    return 0


def cmd_scrambler(args: argparse.Namespace) -> int:
    circuit = build_scrambler(args.n, args.t, make_rng(args.seed))
    _emit(circuit.to_text(), args.output)
    return 0


def cmd_learn_decoder(args: argparse.Namespace) -> int:
    circuit = _load_circuit(args.circuit)
    params = CCParams(m=args.m, mode=args.mode or settings.oracle_mode, seed=args.seed)
    result = learn(circuit, params, make_rng(args.seed))
    _emit(result.to_text(), args.output)
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    circuit = _load_circuit(args.circuit)
    result = decompose(circuit, make_rng(args.seed))
    lines = [f"n={circuit.n}", f"t={circuit.t}", f"s={result.s}", f"attempts={result.attempts}"]
    for name, counts in result.gate_counts.items():
        lines.append(f"{name} " + " ".join(f"{gate}={count}" for gate, count in counts.items()))
    if args.output:
        out_dir = Path(args.output)
        for name, tableau in (("u0", result.u0), ("u0_prime", result.u0_prime)):
            path = write_text(out_dir / f"{name}.txt", tableau.to_text())
            logger.info(f"Wrote {path}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    summary = cross_validate(n_max=args.n_max, cases=args.cases, rng=make_rng(args.seed), t_max=args.t_max)
    lines = [f"cases={summary['cases']}", f"failures={summary['failures']}"]
    lines.extend(f"max_error_{key}={value:.3e}" for key, value in summary["max_errors"].items())
    lines.append(f"uniformity_pvalue={summary['uniformity_pvalue']:.4f}")
    lines.append(f"passed={str(summary['passed']).lower()}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0 if summary["passed"] else 1


def cmd_resolution_bound(args: argparse.Namespace) -> int:
    sys.stdout.write(f"{resolution_bound(args.t):.12g}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doped-decoder",
        description="Learn Clifford decoders for t-doped Clifford scramblers.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="Override LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run-fig2", help="Learn decoders over a range of T counts and write a CSV")
    p.add_argument("--n", type=int, default=8, help="Number of qubits")
    p.add_argument("--a", type=int, default=1, help="|A|")
    p.add_argument("--d", type=int, default=4, help="|D|")
    p.add_argument("--t-min", type=int, default=0)
    p.add_argument("--t-max", type=int, default=6)
    p.add_argument("--samples", type=int, default=100, help="Samples per T count")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--mode", choices=["exact", "shots"], default=None)
    p.add_argument("--workers", type=int, default=None, help="Worker processes")
    p.add_argument("--output", default=None, help="CSV path (default DECODER_OUTPUT_DIR/fig2.csv)")
    p.add_argument("--exact-sidecar", action="store_true", help="Also write exact values")
    p.set_defaults(func=cmd_run_fig2)

    p = sub.add_parser("sample-clifford", help="Write a uniformly random Clifford tableau")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_sample_clifford)

    p = sub.add_parser("scrambler", help="Write a random t-doped scrambler circuit")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_scrambler)

    p = sub.add_parser("learn-decoder", help="Learn a decoder for a circuit file")
    p.add_argument("--circuit", required=True, help="Circuit file")
    p.add_argument("--m", type=int, default=0, help="Excluded qubits")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--mode", choices=["exact", "shots"], default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_learn_decoder)

    p = sub.add_parser("decompose", help="Split a circuit into Cliffords around a small residual")
    p.add_argument("--circuit", required=True, help="Circuit file")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", default=None, help="Directory for u0.txt and u0_prime.txt tableaux")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="Cross-check the exact oracles against dense simulation")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--t-max", type=int, default=4)
    p.add_argument("--cases", type=int, default=50)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("resolution-bound", help="Print the Choi-expectation resolution for t T gates")
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_resolution_bound)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.n_max > VERIFY_MAX_QUBITS:
        parser.error(f"--n-max must be at most {VERIFY_MAX_QUBITS}")
    level = (args.log_level or settings.log_level).upper()
    logging.basicConfig(
        level=getattr(logging, level),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )
    return args.func(args)


def cli_main():
    """CLI entry point."""
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        sys.exit(0)
    except (ValueError, RuntimeError, OSError) as e:
        logger.error(f"doped-decoder: {e}")
        sys.stderr.write(f"error: {e}\n")
        sys.exit(1)


if __name__ == "__main__":
    cli_main()
