"""Tests for the dense simulator used as a cross-check."""

import numpy as np
import pytest

from doped_decoder.exceptions import DenseCapExceededError, DimensionMismatchError
from doped_decoder.models.decoder_models import Partition
from doped_decoder.oracle.circuit import DopedCircuit, random_doped_circuit
from doped_decoder.oracle.densecheck import (
    check_cap,
    choi_expectation,
    cross_validate,
    dense_gate_fidelity,
    dense_otoc,
    dense_unitary,
    hp_fidelity_dense,
    is_unitary,
    pauli_matrix,
)
from doped_decoder.stabilizer.f2core import parse_pauli
from doped_decoder.stabilizer.tableau import GateList, h, s, t_gate
from doped_decoder.utils.helpers import make_rng


@pytest.fixture
def rng():
    """Seeded generator."""
    return make_rng(31)


def test_empty_circuit_is_identity():
    assert np.allclose(dense_unitary(DopedCircuit.from_gates(2, [])), np.eye(4))


def test_single_gates():
    hadamard = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert np.allclose(dense_unitary(GateList(1, (h(0),))), hadamard)
    assert np.allclose(dense_unitary(GateList(1, (t_gate(0), t_gate(0)))), dense_unitary(GateList(1, (s(0),))))


def test_qubit_zero_is_most_significant():
    assert np.allclose(pauli_matrix(parse_pauli("XI")), np.kron(pauli_matrix(parse_pauli("X")), np.eye(2)))
    assert np.allclose(pauli_matrix(parse_pauli("-iZ")), -1j * np.diag([1, -1]))


def test_choi_expectation_of_t():
    """Tr(T^dag X T X^T)/2 = 1/sqrt2."""
    u = dense_unitary(GateList(1, (t_gate(0),)))
    assert choi_expectation(u, parse_pauli("X"), parse_pauli("X")) == pytest.approx(1 / np.sqrt(2))
    assert choi_expectation(u, parse_pauli("Z"), parse_pauli("Z")) == pytest.approx(1.0)


def test_random_circuits_are_unitary(rng):
    assert is_unitary(dense_unitary(random_doped_circuit(3, 3, rng)))


def test_cross_validate_passes(rng):
    summary = cross_validate(n_max=3, cases=20, rng=rng, t_max=3)
    assert summary["passed"]
    assert summary["failures"] == 0
    assert set(summary["max_errors"]) == {"tableau", "propagation", "choi", "unitarity"}
    assert 0.0 < summary["uniformity_pvalue"] <= 1.0


def test_dense_cap():
    check_cap(3)
    with pytest.raises(DenseCapExceededError):
        check_cap(13)
    with pytest.raises(DenseCapExceededError):
        dense_unitary(DopedCircuit.from_gates(3, [h(0)]), cap=2)


def test_identity_otoc():
    part = Partition.from_sizes(3, 1, 1)
    assert dense_otoc(np.eye(8), part) == pytest.approx(1.0)


def test_protocol_without_scrambling():
    """With U = V = 1 the message never reaches D, so F = 1/d_A^2."""
    part = Partition.from_sizes(2, 1, 1)
    assert hp_fidelity_dense(np.eye(4), np.eye(4), part) == pytest.approx(0.25)


def test_protocol_rejects_mismatched_decoder():
    part = Partition.from_sizes(2, 1, 1)
    with pytest.raises(DimensionMismatchError):
        hp_fidelity_dense(np.eye(4), np.eye(2), part)


def test_dense_gate_fidelity(rng):
    u = dense_unitary(random_doped_circuit(2, 1, rng))
    assert dense_gate_fidelity(u, u) == pytest.approx(1.0)
    assert dense_gate_fidelity(u, 1j * u) == pytest.approx(1.0)
