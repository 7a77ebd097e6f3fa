"""Tests for the query oracle in exact and shots mode."""

import math

import pytest

from doped_decoder.exceptions import DenseCapExceededError, NotPreservedError
from doped_decoder.oracle.circuit import DopedCircuit, propagate_pauli, random_doped_circuit
from doped_decoder.oracle.coeff import Coeff
from doped_decoder.oracle.doped_oracle import (
    DopedOracle,
    check_preserved,
    hoeffding_shots,
    learn_image,
    phase_of_image,
    resolution_bound,
    verify_image,
)
from doped_decoder.stabilizer.f2core import iter_paulis, parse_pauli
from doped_decoder.stabilizer.subroutines import random_pauli
from doped_decoder.stabilizer.tableau import h, s, t_gate
from doped_decoder.utils.helpers import make_rng


@pytest.fixture
def rng():
    """Seeded generator."""
    return make_rng(19)


@pytest.fixture
def t_circuit():
    return DopedCircuit.from_gates(2, [h(1), t_gate(0)])


def test_resolution_bound_values():
    assert resolution_bound(0) == pytest.approx(math.sqrt(2) / 6)
    expected = (1 / (6 * math.sqrt(2))) * (1 - 1 / math.sqrt(2)) ** 2
    assert resolution_bound(2) == pytest.approx(expected, rel=1e-12)
    assert resolution_bound(2) == pytest.approx(0.01011, abs=1e-5)
    with pytest.raises(ValueError):
        resolution_bound(-1)


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_distinct_choi_values_are_resolved(t):
    """Distinct |<Q (x) P>| values of a t-doped circuit differ by at least the resolution bound."""
    rng = make_rng(300 + t)
    bound = resolution_bound(t)
    for _ in range(5):
        circuit = random_doped_circuit(3, t, rng)
        values = {Coeff.zero()}
        for p in iter_paulis(3, range(3)):
            values.update(abs(c) for _, c in propagate_pauli(p, circuit))
        ordered = sorted(values)
        assert ordered[-1] == Coeff.one()
        gaps = [float(b - a) for a, b in zip(ordered, ordered[1:])]
        assert min(gaps) >= bound


def test_hoeffding_shots():
    assert hoeffding_shots(0.1, 0.05) == 2952
    with pytest.raises(ValueError):
        hoeffding_shots(0.0, 0.05)
    with pytest.raises(ValueError):
        hoeffding_shots(0.1, 1.0)


def test_exact_queries_are_counted(t_circuit):
    oracle = DopedOracle(t_circuit, mode="exact")
    oracle.check_preserved(parse_pauli("ZI"))
    oracle.learn_image(parse_pauli("XI"))
    oracle.verify_image(parse_pauli("IX"), parse_pauli("IZ"))
    assert oracle.queries == 3
    # images are cached but still counted
    oracle.check_preserved(parse_pauli("ZI"))
    assert oracle.queries == 4


def test_learn_image_takes_largest_term(t_circuit):
    """T^dag X T = (X - Y)/sqrt2; the tie goes to X."""
    assert learn_image(parse_pauli("XI"), t_circuit) == parse_pauli("XI")
    assert learn_image(parse_pauli("IX"), t_circuit) == parse_pauli("IZ")


def test_check_preserved_and_verify(t_circuit):
    assert check_preserved(parse_pauli("XI"), t_circuit) is None
    assert check_preserved(parse_pauli("-ZZ"), t_circuit) == (parse_pauli("ZX"), -1)
    assert verify_image(parse_pauli("ZZ"), parse_pauli("ZX"), t_circuit)
    assert not verify_image(parse_pauli("XI"), parse_pauli("XI"), t_circuit)


def test_phase_of_image_exact():
    circuit = DopedCircuit.from_gates(1, [s(0), h(0)])
    # S^dag H X H S = S^dag Z S = Z
    assert phase_of_image(parse_pauli("X"), circuit) == 1
    # S^dag H Z H S = S^dag X S = -Y
    assert phase_of_image(parse_pauli("Z"), circuit) == -1
    assert phase_of_image(parse_pauli("-Z"), circuit) == 1
    with pytest.raises(NotPreservedError):
        phase_of_image(parse_pauli("X"), circuit, image=parse_pauli("X"))


def test_phase_of_unpreserved_raises(t_circuit):
    with pytest.raises(NotPreservedError):
        phase_of_image(parse_pauli("XI"), t_circuit)


def test_shots_mode_agrees_with_exact(rng):
    circuit = random_doped_circuit(3, 2, rng)
    exact = DopedOracle(circuit, mode="exact")
    shots = DopedOracle(circuit, mode="shots", shots=64, rng=rng)
    checked = 0
    for _ in range(40):
        p = random_pauli(3, range(3), rng)
        if p.is_identity():
            continue
        found = exact.check_preserved(p)
        if found is None:
            continue
        image, sign = found
        assert shots.learn_image(p) == image
        assert shots.verify_image(p, image)
        assert shots.phase_of_image(p, image) == sign
        checked += 1
    assert checked > 0
    assert shots.queries > 0


def test_shots_verify_rejects_wrong_image(rng):
    circuit = DopedCircuit.from_gates(2, [h(0)])
    oracle = DopedOracle(circuit, mode="shots", rng=rng)
    assert oracle.verify_image(parse_pauli("XI"), parse_pauli("ZI"))
    assert not oracle.verify_image(parse_pauli("XI"), parse_pauli("XI"))


def test_invalid_mode():
    with pytest.raises(ValueError):
        DopedOracle(DopedCircuit.from_gates(1, [h(0)]), mode="fast")


def test_shots_mode_respects_dense_cap():
    with pytest.raises(DenseCapExceededError):
        DopedOracle(DopedCircuit.from_gates(13, [h(0)]), mode="shots")
