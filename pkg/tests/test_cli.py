"""Tests for the command-line runner."""

import pytest

from doped_decoder.cli import build_parser, main
from doped_decoder.learning.cc import LearnResult, decompose
from doped_decoder.oracle.circuit import DopedCircuit
from doped_decoder.stabilizer.tableau import CliffordTableau
from doped_decoder.utils.helpers import make_rng


def test_resolution_bound_command(capsys):
    assert main(["resolution-bound", "--t", "0"]) == 0
    assert capsys.readouterr().out == "0.235702260396\n"


def test_sample_clifford_is_reproducible(tmp_path):
    first, second = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["sample-clifford", "--n", "3", "--seed", "9", "--output", str(first)]) == 0
    assert main(["sample-clifford", "--n", "3", "--seed", "9", "--output", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    tableau = CliffordTableau.from_text(first.read_text())
    assert tableau.n == 3


def test_scrambler_then_learn_decoder(tmp_path):
    circuit_path = tmp_path / "u.txt"
    learned_path = tmp_path / "v.txt"
    assert main(["scrambler", "--n", "4", "--t", "2", "--seed", "1", "--output", str(circuit_path)]) == 0
    circuit = DopedCircuit.from_text(circuit_path.read_text())
    assert circuit.t == 2
    assert main(["learn-decoder", "--circuit", str(circuit_path), "--m", "2", "--seed", "1", "--output", str(learned_path)]) == 0
    result = LearnResult.from_text(learned_path.read_text())
    assert result.n == 4
    assert result.m == 2


def test_decompose_command(tmp_path, capsys):
    circuit_path = tmp_path / "u.txt"
    main(["scrambler", "--n", "3", "--t", "0", "--seed", "4", "--output", str(circuit_path)])
    assert main(["decompose", "--circuit", str(circuit_path), "--seed", "4"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[:3] == ["n=3", "t=0", "s=3"]
    assert any(line.startswith("u0 ") for line in out)


def test_decompose_writes_tableaux(tmp_path):
    circuit_path = tmp_path / "u.txt"
    out_dir = tmp_path / "split"
    main(["scrambler", "--n", "4", "--t", "2", "--seed", "6", "--output", str(circuit_path)])
    assert main(["decompose", "--circuit", str(circuit_path), "--seed", "6", "--output", str(out_dir)]) == 0
    u0 = CliffordTableau.from_text((out_dir / "u0.txt").read_text())
    u0_prime = CliffordTableau.from_text((out_dir / "u0_prime.txt").read_text())
    expected = decompose(DopedCircuit.from_text(circuit_path.read_text()), make_rng(6))
    assert u0 == expected.u0
    assert u0_prime == expected.u0_prime


def test_verify_command(capsys):
    assert main(["verify", "--n-max", "3", "--t-max", "2", "--cases", "10", "--seed", "2"]) == 0
    out = capsys.readouterr().out
    assert "failures=0" in out
    assert out.strip().endswith("passed=true")


def test_verify_rejects_large_registers():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--n-max", "7"])
    assert exc.value.code == 2


def test_run_fig2_command(tmp_path, capsys):
    output = tmp_path / "fig2.csv"
    code = main(
        [
            "run-fig2", "--n", "4", "--a", "1", "--d", "2", "--t-min", "0", "--t-max", "1",
            "--samples", "2", "--seed", "5", "--workers", "1", "--output", str(output), "--exact-sidecar",
        ]
    )
    assert code == 0
    assert len(output.read_text().splitlines()) == 5
    assert (tmp_path / "fig2.exact.txt").exists()
    assert capsys.readouterr().out.splitlines()[0].split()[0] == "t"


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
