"""Stabilizer-formalism core: F2 vectors, Pauli strings, tableaux and subroutines."""

from .f2core import (
    F2Vec,
    PauliString,
    SymplecticMatrix,
    format_pauli,
    gf2_nullspace,
    gf2_rank,
    iter_paulis,
    parse_pauli,
    pauli_mul,
    symplectic_form,
)
from .subroutines import (
    TauMatrix,
    build_tau,
    clifford_mapping,
    complete_constrained,
    diagonalize,
    sample_random_clifford,
    sweep_pair,
)
from .tableau import (
    CliffordTableau,
    Gate,
    GateList,
    apply_gate,
    compose,
    conjugate_pauli,
    from_gates,
    is_valid,
    synthesize,
)

__all__ = [
    "F2Vec",
    "PauliString",
    "SymplecticMatrix",
    "format_pauli",
    "gf2_nullspace",
    "gf2_rank",
    "iter_paulis",
    "parse_pauli",
    "pauli_mul",
    "symplectic_form",
    "TauMatrix",
    "build_tau",
    "clifford_mapping",
    "complete_constrained",
    "diagonalize",
    "sample_random_clifford",
    "sweep_pair",
    "CliffordTableau",
    "Gate",
    "GateList",
    "apply_gate",
    "compose",
    "conjugate_pauli",
    "from_gates",
    "is_valid",
    "synthesize",
]
