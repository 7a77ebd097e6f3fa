"""The doped scrambler: circuits, exact propagation, query oracle and dense checks."""

from .circuit import DopedCircuit, PauliSum, propagate_pauli, random_doped_circuit
from .coeff import Coeff, QSqrt2
from .doped_oracle import (
    DopedOracle,
    check_preserved,
    hoeffding_shots,
    learn_image,
    phase_of_image,
    resolution_bound,
    verify_image,
)

__all__ = [
    "DopedCircuit",
    "PauliSum",
    "propagate_pauli",
    "random_doped_circuit",
    "Coeff",
    "QSqrt2",
    "DopedOracle",
    "check_preserved",
    "hoeffding_shots",
    "learn_image",
    "phase_of_image",
    "resolution_bound",
    "verify_image",
]
