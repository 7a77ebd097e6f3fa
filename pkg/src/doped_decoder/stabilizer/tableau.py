"""Clifford tableaux, gate lists and tableau synthesis.

A tableau stores the adjoint action of a Clifford U: row 2j is U^dag X_j U and
row 2j+1 is U^dag Z_j U (0-based j), each a Hermitian Pauli string whose sign is
the phase bit.

``apply_gate`` updates the rows by conjugation g (.) g^dag, i.e. the result is
the tableau of U g^dag. ``from_gates`` therefore walks a circuit backwards with
inverse gates, and ``synthesize`` returns gates in time order.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from ..exceptions import DimensionMismatchError, InvalidTableauError
from .f2core import F2Vec, PauliString, SymplecticMatrix, omega_matrix, symplectic_form

logger = logging.getLogger(__name__)

GATE_ARITY = {"H": 1, "S": 1, "T": 1, "CNOT": 2}
CLIFFORD_GATES = frozenset({"H", "S", "CNOT"})


@dataclass(frozen=True, slots=True)
class Gate:
    """A gate from {H, S, CNOT, T} on 0-based qubit indices (control first)."""

    name: str
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        arity = GATE_ARITY.get(self.name)
        if arity is None:
            raise ValueError(f"Unknown gate {self.name!r}")
        if len(self.qubits) != arity:
            raise ValueError(f"Gate {self.name} takes {arity} qubit(s), got {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"Negative qubit index in {self.name}{self.qubits}")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError(f"CNOT control and target coincide: {self.qubits}")

    @property
    def is_clifford(self) -> bool:
        return self.name in CLIFFORD_GATES

    def to_text(self) -> str:
        return " ".join([self.name, *(str(q + 1) for q in self.qubits)])

    @classmethod
    def from_text(cls, line: str) -> Gate:
        parts = line.split()
        if not parts:
            raise ValueError("Empty gate line")
        try:
            qubits = tuple(int(tok) - 1 for tok in parts[1:])
        except ValueError as e:
            raise ValueError(f"Bad qubit index in gate line {line!r}") from e
        return cls(parts[0].upper(), qubits)


def h(q: int) -> Gate:
    return Gate("H", (q,))


def s(q: int) -> Gate:
    return Gate("S", (q,))


def cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


def t_gate(q: int) -> Gate:
    return Gate("T", (q,))


@dataclass(frozen=True)
class GateList:
    """An ordered gate sequence in time order on n qubits."""

    n: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        for gate in self.gates:
            if any(q >= self.n for q in gate.qubits):
                raise ValueError(f"Gate {gate.to_text()} out of range for n={self.n}")

    @property
    def t_count(self) -> int:
        return sum(1 for g in self.gates if g.name == "T")

    @property
    def is_clifford(self) -> bool:
        return self.t_count == 0

    def counts(self) -> dict[str, int]:
        tally = Counter(g.name for g in self.gates)
        return {name: tally.get(name, 0) for name in GATE_ARITY}

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __add__(self, other: GateList) -> GateList:
        if other.n != self.n:
            raise DimensionMismatchError(f"Cannot concatenate n={self.n} and n={other.n}")
        return GateList(self.n, self.gates + other.gates)

    def inverse(self) -> GateList:
        """Reverse the circuit; S^dag is S^3 and T^dag is T^7."""
        out: list[Gate] = []
        for gate in reversed(self.gates):
            if gate.name == "S":
                out.extend([gate] * 3)
            elif gate.name == "T":
                out.extend([gate] * 7)
            else:
                out.append(gate)
        return GateList(self.n, tuple(out))

    def embed(self, n: int, qubits: Sequence[int]) -> GateList:
        """Relabel qubit k of this list as ``qubits[k]`` in an n-qubit register."""
        mapped = (Gate(g.name, tuple(qubits[q] for q in g.qubits)) for g in self.gates)
        return GateList(n, tuple(mapped))

    def to_text(self) -> str:
        lines = [f"circuit n={self.n}"]
        lines.extend(g.to_text() for g in self.gates)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> GateList:
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or not lines[0].startswith("circuit n="):
            raise ValueError("Circuit text must start with 'circuit n=<N>'")
        try:
            n = int(lines[0].split("=", 1)[1])
        except ValueError as e:
            raise ValueError(f"Bad circuit header {lines[0]!r}") from e
        return cls(n, tuple(Gate.from_text(ln) for ln in lines[1:]))


@dataclass
class PauliFrame:
    """
    A mutable list of Hermitian Pauli rows transformed together by conjugation.

    Every ``apply`` maps each row P to g P g^dag and records g. Sweeps reduce
    rows to single-qubit generators on a target qubit using only qubits at or
    above that target.
    """

    n: int
    xs: list[int]
    zs: list[int]
    signs: list[int]
    gates: list[Gate] = field(default_factory=list)

    @classmethod
    def from_paulis(cls, n: int, rows: Iterable[PauliString]) -> PauliFrame:
        rows = list(rows)
        for row in rows:
            if row.n != n:
                raise DimensionMismatchError(f"Row on {row.n} qubits in an n={n} frame")
            if not row.is_hermitian():
                raise InvalidTableauError(f"Row {row} is not Hermitian")
        return cls(n, [r.x for r in rows], [r.z for r in rows], [r.phase_exp >> 1 for r in rows])

    def row(self, i: int) -> PauliString:
        return PauliString.from_xz(self.n, self.xs[i], self.zs[i], 2 * self.signs[i])

    def rows(self) -> tuple[PauliString, ...]:
        return tuple(self.row(i) for i in range(len(self.xs)))

    def _conjugate(self, gate: Gate, adjoint: bool) -> None:
        xs, zs, signs = self.xs, self.zs, self.signs
        if gate.name == "H":
            bit = 1 << gate.qubits[0]
            for i in range(len(xs)):
                a, b = xs[i] & bit, zs[i] & bit
                if a and b:
                    signs[i] ^= 1
                if bool(a) != bool(b):
                    xs[i] ^= bit
                    zs[i] ^= bit
        elif gate.name == "S":
            bit = 1 << gate.qubits[0]
            for i in range(len(xs)):
                if xs[i] & bit:
                    has_z = bool(zs[i] & bit)
                    # forward: X -> Y, Y -> -X; adjoint: X -> -Y, Y -> X
                    if has_z != adjoint:
                        signs[i] ^= 1
                    zs[i] ^= bit
        elif gate.name == "CNOT":
            cb, tb = 1 << gate.qubits[0], 1 << gate.qubits[1]
            for i in range(len(xs)):
                xc, zt = bool(xs[i] & cb), bool(zs[i] & tb)
                if xc and zt and bool(xs[i] & tb) == bool(zs[i] & cb):
                    signs[i] ^= 1
                if xc:
                    xs[i] ^= tb
                if zt:
                    zs[i] ^= cb
        else:
            raise ValueError(f"Gate {gate.name} is not Clifford; tableaux are Clifford-only")

    def apply(self, gate: Gate) -> None:
        self._conjugate(gate, adjoint=False)
        self.gates.append(gate)

    def apply_adjoint(self, gate: Gate) -> None:
        """Map rows P to g^dag P g; not recorded."""
        self._conjugate(gate, adjoint=True)

    def swap(self, a: int, b: int) -> None:
        self.apply(cnot(a, b))
        self.apply(cnot(b, a))
        self.apply(cnot(a, b))

    def make_x_only(self, i: int, lo: int) -> None:
        """Clear the z part of row i on qubits >= lo with H (Z) and S (Y)."""
        for q in range(lo, self.n):
            bit = 1 << q
            if self.zs[i] & bit:
                self.apply(s(q) if self.xs[i] & bit else h(q))

    def collapse_x(self, i: int, lo: int, target: int) -> None:
        """Reduce an x-only row (on qubits >= lo) to +-X_target by a CNOT ladder."""
        support = [q for q in range(lo, self.n) if (self.xs[i] >> q) & 1]
        if not support:
            raise InvalidTableauError(f"Row {i} has no support at or above qubit {lo}")
        while len(support) > 1:
            survivors = []
            for k in range(0, len(support) - 1, 2):
                self.apply(cnot(support[k], support[k + 1]))
                survivors.append(support[k])
            if len(support) % 2:
                survivors.append(support[-1])
            support = survivors
        if support[0] != target:
            self.swap(support[0], target)

    def sweep_pair(self, i1: int, i2: int, target: int) -> None:
        """Map rows (i1, i2) to (+-X_target, +-Z_target); target is the lowest free qubit."""
        if symplectic_form(self.row(i1), self.row(i2)) != 1:
            raise InvalidTableauError(f"Rows {i1} and {i2} commute; cannot sweep them as a pair")
        self.make_x_only(i1, target)
        self.collapse_x(i1, target, target)
        self.apply(h(target))
        self.make_x_only(i2, target)
        self.collapse_x(i2, target, target)
        self.apply(h(target))

    def fix_pair_signs(self, i1: int, i2: int, target: int) -> None:
        """Make rows (i1, i2) exactly (+X_target, +Z_target)."""
        if self.signs[i1]:
            # Z = S S flips X and keeps Z
            self.apply(s(target))
            self.apply(s(target))
        if self.signs[i2]:
            # X = H S S H flips Z and keeps X
            self.apply(h(target))
            self.apply(s(target))
            self.apply(s(target))
            self.apply(h(target))


@dataclass(frozen=True)
class CliffordTableau:
    """Adjoint action of a Clifford: rows[2j] = U^dag X_j U, rows[2j+1] = U^dag Z_j U."""

    n: int
    rows: tuple[PauliString, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) != 2 * self.n:
            raise DimensionMismatchError(f"Tableau on n={self.n} needs {2 * self.n} rows, got {len(self.rows)}")
        for row in self.rows:
            if row.n != self.n:
                raise DimensionMismatchError(f"Row on {row.n} qubits in an n={self.n} tableau")

    @classmethod
    def identity(cls, n: int) -> CliffordTableau:
        rows = []
        for j in range(n):
            rows.append(PauliString.local(n, j, "X"))
            rows.append(PauliString.local(n, j, "Z"))
        return cls(n, tuple(rows))

    @classmethod
    def from_frame(cls, frame: PauliFrame) -> CliffordTableau:
        return cls(frame.n, frame.rows())

    def frame(self) -> PauliFrame:
        return PauliFrame.from_paulis(self.n, self.rows)

    @property
    def phase_bits(self) -> tuple[int, ...]:
        return tuple(row.phase_exp >> 1 for row in self.rows)

    @property
    def partial(self) -> SymplecticMatrix:
        return SymplecticMatrix(self.n, tuple(row.vec for row in self.rows))

    def x_image(self, qubit: int) -> PauliString:
        return self.rows[2 * qubit]

    def z_image(self, qubit: int) -> PauliString:
        return self.rows[2 * qubit + 1]

    def conjugate(self, p: PauliString) -> PauliString:
        return conjugate_pauli(self, p)

    def inverse(self) -> CliffordTableau:
        return inverse(self)

    def embed(self, n: int, qubits: Sequence[int]) -> CliffordTableau:
        """Extend to n qubits acting as this tableau on ``qubits`` and trivially elsewhere."""
        if len(qubits) != self.n:
            raise DimensionMismatchError(f"Need {self.n} target qubits, got {len(qubits)}")
        rows = list(CliffordTableau.identity(n).rows)
        for k, q in enumerate(qubits):
            rows[2 * q] = self.rows[2 * k].embed(n, qubits)
            rows[2 * q + 1] = self.rows[2 * k + 1].embed(n, qubits)
        return CliffordTableau(n, tuple(rows))

    def to_text(self, header: str = "tableau") -> str:
        lines = [f"{header} n={self.n}"]
        for row in self.rows:
            lines.append(f"{row.vec.to_bitstring()} {row.phase_exp >> 1}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> CliffordTableau:
        n, rows = parse_row_block(text, "tableau")
        return cls(n, tuple(rows))


def parse_row_block(text: str, header: str) -> tuple[int, list[PauliString]]:
    """Parse '<header> n=<N>' followed by 2n lines of '<bits> <phase bit>'."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    prefix = f"{header} n="
    if not lines or not lines[0].startswith(prefix):
        raise ValueError(f"Text must start with '{prefix}<N>'")
    try:
        n = int(lines[0][len(prefix):])
    except ValueError as e:
        raise ValueError(f"Bad header {lines[0]!r}") from e
    body = lines[1:]
    if len(body) != 2 * n:
        raise ValueError(f"Expected {2 * n} rows after header, got {len(body)}")
    rows = []
    for line in body:
        parts = line.split()
        if len(parts) != 2 or parts[1] not in ("0", "1"):
            raise ValueError(f"Bad row line {line!r}")
        vec = F2Vec.from_bits(parts[0])
        if vec.n != n:
            raise ValueError(f"Row {line!r} does not have {2 * n} bits")
        rows.append(PauliString(vec, 2 * int(parts[1])))
    return n, rows


def apply_gate(tableau: CliffordTableau, gate: Gate) -> CliffordTableau:
    """
    Update every row by conjugation with a Clifford gate.

    Args:
        tableau: Tableau of U
        gate: H, S or CNOT

    Returns:
        The tableau of U g^dag (rows mapped to g row g^dag)
    """
    if not gate.is_clifford:
        raise ValueError(f"Gate {gate.name} is not Clifford; tableaux are Clifford-only")
    frame = tableau.frame()
    frame.apply(gate)
    return CliffordTableau.from_frame(frame)


def from_gates(gates: GateList | Iterable[Gate], n: int | None = None) -> CliffordTableau:
    """Tableau of the Clifford circuit ``gates`` (time order)."""
    if isinstance(gates, GateList):
        n = gates.n
        seq = gates.gates
    else:
        seq = tuple(gates)
        if n is None:
            raise ValueError("Qubit count is required when passing a plain gate sequence")
    frame = CliffordTableau.identity(n).frame()
    for gate in reversed(seq):
        frame.apply_adjoint(gate)
    return CliffordTableau.from_frame(frame)


def conjugate_pauli(tableau: CliffordTableau, p: PauliString) -> PauliString:
    """
    Compute U^dag p U as the phase-tracked product of selected rows.

    Args:
        tableau: Tableau of U
        p: Pauli string on the same qubits (any phase)

    Returns:
        The conjugated Pauli string
    """
    if p.n != tableau.n:
        raise DimensionMismatchError(f"Pauli on {p.n} qubits, tableau on {tableau.n}")
    n = tableau.n
    ax = az = 0
    phase = p.phase_exp + (p.x & p.z).bit_count()
    support = p.x | p.z
    rows = tableau.rows
    while support:
        j = (support & -support).bit_length() - 1
        support &= support - 1
        for k, present in ((2 * j, (p.x >> j) & 1), (2 * j + 1, (p.z >> j) & 1)):
            if not present:
                continue
            r = rows[k]
            nx, nz = ax ^ r.x, az ^ r.z
            phase += (
                r.phase_exp
                + (ax & az).bit_count()
                + (r.x & r.z).bit_count()
                + 2 * (az & r.x).bit_count()
                - (nx & nz).bit_count()
            )
            ax, az = nx, nz
    return PauliString.from_xz(n, ax, az, phase)


def compose(a: CliffordTableau, b: CliffordTableau, invert_a: bool = False) -> CliffordTableau:
    """
    Tableau of the product A B (or A^-1 B).

    Args:
        a: Tableau of A
        b: Tableau of B
        invert_a: Use A^-1 in place of A

    Returns:
        Tableau whose conjugation is p -> B^dag (A^dag p A) B
    """
    if a.n != b.n:
        raise DimensionMismatchError(f"Cannot compose n={a.n} with n={b.n}")
    left = inverse(a) if invert_a else a
    return CliffordTableau(a.n, tuple(conjugate_pauli(b, row) for row in left.rows))


def inverse(tableau: CliffordTableau) -> CliffordTableau:
    """Tableau of U^-1: partial part Omega M^T Omega, signs fixed by conjugation."""
    n = tableau.n
    if n == 0:
        return tableau
    m = tableau.partial.to_array().astype(np.int64)
    omega = omega_matrix(n).astype(np.int64)
    inv = (omega @ m.T @ omega) % 2
    rows = []
    for k, bits in enumerate(inv):
        candidate = PauliString(F2Vec.from_bits(bits.tolist()), 0)
        back = conjugate_pauli(tableau, candidate)
        expected = CliffordTableau.identity(n).rows[k]
        if back.vec != expected.vec:
            raise InvalidTableauError("Tableau is not symplectic; cannot invert")
        rows.append(candidate if back.phase_exp == 0 else -candidate)
    return CliffordTableau(n, tuple(rows))


def is_valid(tableau: CliffordTableau) -> bool:
    """True iff rows are Hermitian and the partial tableau is symplectic."""
    if any(not row.is_hermitian() for row in tableau.rows):
        return False
    rows = tableau.rows
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            expected = 1 if (i % 2 == 0 and j == i + 1) else 0
            if symplectic_form(rows[i], rows[j]) != expected:
                return False
    return True


def synthesize(tableau: CliffordTableau) -> GateList:
    """
    Decompose a tableau into H, S and CNOT gates.

    Args:
        tableau: A valid tableau

    Returns:
        Gates in time order with ``from_gates(result) == tableau`` exactly
    """
    if not is_valid(tableau):
        raise InvalidTableauError("Cannot synthesize an invalid tableau")
    frame = tableau.frame()
    for j in range(tableau.n):
        frame.sweep_pair(2 * j, 2 * j + 1, j)
        frame.fix_pair_signs(2 * j, 2 * j + 1, j)
    logger.debug(f"Synthesized n={tableau.n} tableau into {len(frame.gates)} gates")
    return GateList(tableau.n, tuple(frame.gates))
