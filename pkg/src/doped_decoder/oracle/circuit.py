"""t-doped Clifford circuits and exact Heisenberg propagation of Pauli strings."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

import numpy as np

from ..exceptions import DimensionMismatchError
from ..stabilizer.f2core import PauliString, pauli_mul, symplectic_form
from ..stabilizer.subroutines import sample_random_clifford
from ..stabilizer.tableau import (
    CliffordTableau,
    Gate,
    GateList,
    conjugate_pauli,
    from_gates,
    inverse,
    synthesize,
    t_gate,
)
from .coeff import Coeff

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DopedCircuit:
    """A circuit over {H, S, CNOT, T}; ``t`` is its number of T gates."""

    gates: GateList

    def __post_init__(self) -> None:
        if self.gates.n < 1:
            raise ValueError(f"A doped circuit needs n >= 1, got {self.gates.n}")

    @classmethod
    def from_gates(cls, n: int, gates: Iterable[Gate]) -> DopedCircuit:
        return cls(GateList(n, tuple(gates)))

    @classmethod
    def from_text(cls, text: str) -> DopedCircuit:
        return cls(GateList.from_text(text))

    def to_text(self) -> str:
        return self.gates.to_text()

    @property
    def n(self) -> int:
        return self.gates.n

    @property
    def t(self) -> int:
        return self.gates.t_count

    @cached_property
    def segments(self) -> tuple[tuple[str, CliffordTableau | int], ...]:
        """Maximal Clifford runs as tableaux, separated by ("t", qubit) entries."""
        out: list[tuple[str, CliffordTableau | int]] = []
        run: list[Gate] = []
        for gate in self.gates:
            if gate.name == "T":
                if run:
                    out.append(("clifford", from_gates(run, self.n)))
                    run = []
                out.append(("t", gate.qubits[0]))
            else:
                run.append(gate)
        if run:
            out.append(("clifford", from_gates(run, self.n)))
        return tuple(out)

    @cached_property
    def inverse_segments(self) -> tuple[tuple[str, CliffordTableau | int], ...]:
        return tuple((kind, inverse(v) if kind == "clifford" else v) for kind, v in self.segments)

    def propagate(self, p: PauliString, adjoint: bool = True) -> PauliSum:
        return propagate_pauli(p, self, adjoint)


class PauliSum:
    """
    A real linear combination of Hermitian Pauli strings with exact coefficients.

    Keys are phase-0 strings; signs live in the coefficients. Zero terms are
    dropped on every update.
    """

    def __init__(self, n: int, terms: Mapping[PauliString, Coeff] | None = None) -> None:
        self.n = n
        self.terms: dict[PauliString, Coeff] = {}
        for p, c in (terms or {}).items():
            self.add_term(p, c)

    @classmethod
    def single(cls, p: PauliString) -> PauliSum:
        if not p.is_hermitian():
            raise ValueError(f"Pauli sums hold Hermitian strings only, got {p}")
        return cls(p.n, {p.canonical(): Coeff(p.sign)})

    def add_term(self, p: PauliString, c: Coeff) -> None:
        if p.n != self.n:
            raise DimensionMismatchError(f"Term on {p.n} qubits in an n={self.n} sum")
        if p.phase_exp == 2:
            c = -c
        elif p.phase_exp != 0:
            raise ValueError(f"Pauli sums hold Hermitian strings only, got {p}")
        key = p.canonical()
        total = self.terms.get(key, Coeff.zero()) + c
        if total.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = total

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[PauliString, Coeff]]:
        return iter(self.terms.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def coefficient(self, p: PauliString) -> Coeff:
        return self.terms.get(p.canonical(), Coeff.zero())

    def norm_squared(self) -> Coeff:
        """Sum of squared coefficients, i.e. Tr(X^2)/d."""
        total = Coeff.zero()
        for c in self.terms.values():
            total = total + c * c
        return total

    def as_single(self) -> PauliString | None:
        """The signed Pauli string when this sum is exactly one term of weight +-1."""
        if len(self.terms) != 1:
            return None
        (p, c), = self.terms.items()
        if c == Coeff.one():
            return p
        if c == Coeff(-1):
            return -p
        return None

    def max_term(self) -> PauliString:
        """Signed term of largest |coefficient|; ties go to the smallest key."""
        if not self.terms:
            raise ValueError("Empty Pauli sum has no terms")
        best = max(self.terms.items(), key=lambda item: (abs(item[1]), -item[0].key))
        p, c = best
        return p if c.sign > 0 else -p

    def overlap(self, other: PauliSum) -> Coeff:
        """Tr(X Y) / d for this sum X and ``other`` Y."""
        if other.n != self.n:
            raise DimensionMismatchError(f"Cannot overlap n={self.n} with n={other.n}")
        small, large = (self, other) if len(self) <= len(other) else (other, self)
        total = Coeff.zero()
        for p, c in small.terms.items():
            c2 = large.terms.get(p)
            if c2 is not None:
                total = total + c * c2
        return total

    def twisted_overlap(self, other: PauliSum, twist: PauliString) -> Coeff:
        """
        Tr(P X P Y) / d for a Pauli string P.

        Only matching terms survive; each picks up (-1)^omega(P, p_j).
        """
        if other.n != self.n or twist.n != self.n:
            raise DimensionMismatchError("Operands act on different numbers of qubits")
        total = Coeff.zero()
        for p, c in self.terms.items():
            c2 = other.terms.get(p)
            if c2 is None:
                continue
            term = c * c2
            total = total + (-term if symplectic_form(twist, p) else term)
        return total

    def conjugate_clifford(self, tableau: CliffordTableau) -> PauliSum:
        out = PauliSum(self.n)
        for p, c in self.terms.items():
            out.add_term(conjugate_pauli(tableau, p), c)
        return out

    def apply_t(self, qubit: int, adjoint: bool) -> PauliSum:
        """
        Conjugate by a T gate on ``qubit``.

        For P anticommuting with Z_qubit and Z P = i^r P', adjoint=True gives
        T^dag P T = P/sqrt2 + i^(1+r) P'/sqrt2 and adjoint=False gives
        T P T^dag = P/sqrt2 + i^(3+r) P'/sqrt2. Other terms are unchanged.
        """
        z_q = PauliString.local(self.n, qubit, "Z")
        bit = 1 << qubit
        out = PauliSum(self.n)
        for p, c in self.terms.items():
            if not p.x & bit:
                out.add_term(p, c)
                continue
            zp = pauli_mul(z_q, p)
            r = zp.phase_exp
            scale = c.div_sqrt2()
            exponent = ((1 if adjoint else 3) + r) % 4
            out.add_term(p, scale)
            out.add_term(zp.canonical(), scale if exponent == 0 else -scale)
        return out

    def to_text(self) -> str:
        items = sorted(self.terms.items(), key=lambda item: item[0].key)
        return " ".join(f"{c.to_text()}*{p.to_text()}" for p, c in items)

    def __repr__(self) -> str:
        return f"PauliSum(n={self.n}, terms={len(self.terms)})"


def propagate_pauli(p: PauliString, circuit: DopedCircuit, adjoint: bool = True) -> PauliSum:
    """
    Propagate a Hermitian Pauli string through a doped circuit exactly.

    Args:
        p: Hermitian Pauli string on circuit.n qubits
        circuit: The doped circuit U
        adjoint: Compute U^dag p U (True) or U p U^dag (False)

    Returns:
        The image as a Pauli sum with at most 2^t terms
    """
    if p.n != circuit.n:
        raise DimensionMismatchError(f"Pauli on {p.n} qubits, circuit on {circuit.n}")
    current = PauliSum.single(p)
    # U^dag p U peels gates from the end of the circuit
    steps = reversed(circuit.segments) if adjoint else iter(circuit.inverse_segments)
    for kind, value in steps:
        if kind == "clifford":
            current = current.conjugate_clifford(value)
        else:
            current = current.apply_t(value, adjoint)
    return current


def random_doped_circuit(n: int, t: int, rng: np.random.Generator, layers: int | None = None) -> DopedCircuit:
    """
    Random Clifford layers interleaved with t T gates on random qubits.

    Args:
        n: Number of qubits
        t: Number of T gates
        rng: Random generator
        layers: Number of uniform Clifford layers (default t + 1)

    Returns:
        The circuit; each layer is a synthesized uniform random Clifford
    """
    layers = t + 1 if layers is None else max(layers, 1)
    slots = sorted(int(v) for v in rng.integers(0, layers, size=t)) if layers > 1 else [0] * t
    gates: list[Gate] = []
    for layer in range(layers):
        gates.extend(synthesize(sample_random_clifford(n, rng)))
        for _ in range(slots.count(layer)):
            gates.append(t_gate(int(rng.integers(0, n))))
    return DopedCircuit.from_gates(n, gates)
