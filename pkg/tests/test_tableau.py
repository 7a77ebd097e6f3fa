"""Tests for gates, gate lists and Clifford tableaux."""

import numpy as np
import pytest

from doped_decoder.exceptions import InvalidTableauError
from doped_decoder.oracle.densecheck import dense_clifford, dense_conjugate, pauli_matrix
from doped_decoder.stabilizer.f2core import PauliString, parse_pauli
from doped_decoder.stabilizer.subroutines import sample_random_clifford
from doped_decoder.stabilizer.tableau import (
    CliffordTableau,
    Gate,
    GateList,
    apply_gate,
    cnot,
    compose,
    conjugate_pauli,
    from_gates,
    h,
    inverse,
    is_valid,
    s,
    synthesize,
    t_gate,
)
from doped_decoder.utils.helpers import make_rng


@pytest.fixture
def rng():
    """Seeded generator."""
    return make_rng(7)


def test_hadamard_rows():
    """H^dag X H = Z and H^dag Z H = X."""
    tab = from_gates([h(0)], 1)
    assert tab.x_image(0) == parse_pauli("Z")
    assert tab.z_image(0) == parse_pauli("X")


def test_phase_gate_rows():
    """S^dag X S = -Y, Z is fixed."""
    tab = from_gates([s(0)], 1)
    assert tab.x_image(0) == parse_pauli("-Y")
    assert tab.z_image(0) == parse_pauli("Z")


def test_cnot_rows():
    tab = from_gates([cnot(0, 1)], 2)
    assert tab.x_image(0) == parse_pauli("XX")
    assert tab.z_image(0) == parse_pauli("ZI")
    assert tab.x_image(1) == parse_pauli("IX")
    assert tab.z_image(1) == parse_pauli("ZZ")


def test_apply_gate_appends_adjoint():
    """apply_gate gives the tableau of U g^dag."""
    ident = CliffordTableau.identity(1)
    assert apply_gate(ident, h(0)) == from_gates([h(0)], 1)
    assert apply_gate(ident, s(0)) == from_gates([s(0), s(0), s(0)], 1)
    with pytest.raises(ValueError):
        apply_gate(ident, t_gate(0))


def test_from_gates_time_order():
    """Gates applied g1 then g2 give the tableau of g2 g1."""
    both = from_gates([h(0), s(0)], 1)
    assert both == compose(from_gates([s(0)], 1), from_gates([h(0)], 1))


def test_conjugation_is_homomorphism(rng):
    tab = sample_random_clifford(4, rng)
    p, q = parse_pauli("XYZI"), parse_pauli("-ZZXY")
    assert conjugate_pauli(tab, p * q) == conjugate_pauli(tab, p) * conjugate_pauli(tab, q)


def test_synthesize_round_trip(rng):
    for n in (1, 2, 3, 5):
        tab = sample_random_clifford(n, rng)
        gates = synthesize(tab)
        assert gates.is_clifford
        assert from_gates(gates) == tab


def test_inverse_and_compose(rng):
    tab = sample_random_clifford(4, rng)
    ident = CliffordTableau.identity(4)
    assert compose(tab, inverse(tab)) == ident
    assert compose(tab, tab, invert_a=True) == ident
    assert inverse(inverse(tab)) == tab


def test_is_valid():
    assert is_valid(CliffordTableau.identity(3))
    x = parse_pauli("X")
    assert not is_valid(CliffordTableau(1, (x, x)))
    with pytest.raises(InvalidTableauError):
        synthesize(CliffordTableau(1, (x, x)))


def test_embed_tableau():
    small = from_gates([h(0)], 1)
    big = small.embed(3, [2])
    assert big.x_image(2) == parse_pauli("IIZ")
    assert big.x_image(0) == parse_pauli("XII")


def test_tableau_text_round_trip(rng):
    tab = sample_random_clifford(3, rng)
    text = tab.to_text()
    assert text.startswith("tableau n=3\n")
    assert CliffordTableau.from_text(text) == tab
    with pytest.raises(ValueError):
        CliffordTableau.from_text("tableau n=1\n10 0\n")


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("CNOT", (0, 0))
    with pytest.raises(ValueError):
        Gate("Q", (0,))
    with pytest.raises(ValueError):
        Gate("H", (0, 1))
    with pytest.raises(ValueError):
        GateList(1, (h(1),))


def test_gate_list_text_and_counts():
    gates = GateList(2, (h(0), cnot(0, 1), t_gate(1), s(0)))
    text = gates.to_text()
    assert text == "circuit n=2\nH 1\nCNOT 1 2\nT 2\nS 1\n"
    assert GateList.from_text(text) == gates
    assert gates.t_count == 1
    assert gates.counts() == {"H": 1, "S": 1, "T": 1, "CNOT": 1}
    with pytest.raises(ValueError):
        GateList.from_text("H 1\n")


def test_gate_list_inverse():
    gates = GateList(1, (h(0), s(0), t_gate(0)))
    inv = gates.inverse()
    assert inv.t_count == 7
    assert inv.counts()["S"] == 3
    assert inv.gates[-1] == h(0)


def test_dense_agreement_of_conjugation(rng):
    tab = sample_random_clifford(3, rng)
    u = dense_clifford(tab)
    for j in range(3):
        for kind in ("X", "Z"):
            p = PauliString.local(3, j, kind)
            expected = dense_conjugate(u, p)
            assert np.allclose(pauli_matrix(conjugate_pauli(tab, p)), expected, atol=1e-10)
