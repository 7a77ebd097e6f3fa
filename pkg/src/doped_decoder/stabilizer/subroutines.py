"""Tableau subroutines: tau initialization, sweeping, random Cliffords,
diagonalizers and constrained random completion."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from ..exceptions import DimensionMismatchError, InvalidTableauError
from .f2core import F2Vec, PauliString, SymplecticMatrix, gf2_rank, symplectic_form
from .tableau import (
    CliffordTableau,
    GateList,
    PauliFrame,
    cnot,
    compose,
    from_gates,
    inverse,
    s,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TauMatrix:
    """
    Incomplete tableau in canonical layout.

    Rows 0..2*pair_count-1 hold anticommuting pairs, each unpaired row is followed
    by a zero row, the rest are zero. ``sources`` gives, per row, the bit mask of
    input elements whose product the row is (0 for zero rows).
    """

    n: int
    rows: tuple[F2Vec, ...]
    pair_count: int
    unpaired_count: int
    sources: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) != 2 * self.n:
            raise DimensionMismatchError(f"Tau on n={self.n} needs {2 * self.n} rows, got {len(self.rows)}")
        if self.pair_count + self.unpaired_count > self.n:
            raise InvalidTableauError("More constrained qubits than qubits")
        if not self.sources:
            object.__setattr__(self, "sources", tuple(0 for _ in self.rows))

    @classmethod
    def empty(cls, n: int) -> TauMatrix:
        return cls(n, tuple(F2Vec.zero(n) for _ in range(2 * n)), 0, 0)

    @classmethod
    def from_slots(
        cls,
        n: int,
        pairs: Sequence[tuple[PauliString, PauliString]],
        unpaired: Sequence[PauliString] = (),
    ) -> TauMatrix:
        rows: list[F2Vec] = []
        for a, b in pairs:
            rows.extend([a.vec, b.vec])
        for u in unpaired:
            rows.extend([u.vec, F2Vec.zero(n)])
        rows.extend(F2Vec.zero(n) for _ in range(2 * n - len(rows)))
        tau = cls(n, tuple(rows), len(pairs), len(unpaired))
        if not tau.is_member():
            raise InvalidTableauError("Rows do not follow the paired/unpaired commutation pattern")
        return tau

    @property
    def constrained_rows(self) -> tuple[int, ...]:
        """Indices of nonzero rows: all pair rows, then the unpaired rows."""
        base = 2 * self.pair_count
        return tuple(range(base)) + tuple(base + 2 * j for j in range(self.unpaired_count))

    def pauli(self, i: int) -> PauliString:
        return PauliString(self.rows[i], 0)

    def is_member(self) -> bool:
        """Check the paired/unpaired layout and commutation pattern."""
        constrained = set(self.constrained_rows)
        for i, row in enumerate(self.rows):
            if (i in constrained) == row.is_zero():
                return False
        for i in range(len(self.rows)):
            for j in range(i + 1, len(self.rows)):
                partner = i % 2 == 0 and j == i + 1 and i < 2 * self.pair_count
                if symplectic_form(self.rows[i], self.rows[j]) != (1 if partner else 0):
                    return False
        return gf2_rank(self.rows[i] for i in constrained) == len(constrained)

    def to_text(self) -> str:
        lines = [f"tau n={self.n}"]
        lines.extend(f"{row.to_bitstring()} 0" for row in self.rows)
        return "\n".join(lines) + "\n"


def build_tau(h: Sequence[PauliString], n: int | None = None) -> TauMatrix:
    """
    Arrange an independent set of Pauli strings into canonical tau layout.

    Each element is paired with the first later element it anticommutes with;
    the leftovers are symplectically orthogonalized against every new pair.

    Args:
        h: Independent Pauli strings (phases ignored)
        n: Qubit count, required when ``h`` is empty

    Returns:
        TauMatrix with pairs first, then unpaired rows each followed by a zero row
    """
    if not h:
        if n is None:
            raise ValueError("Qubit count is required for an empty generator set")
        return TauMatrix.empty(n)
    n = h[0].n if n is None else n
    for p in h:
        if p.n != n:
            raise DimensionMismatchError(f"Generator on {p.n} qubits in an n={n} set")
    if gf2_rank(h) != len(h):
        raise ValueError("Generator set is linearly dependent over F2")

    remaining: list[tuple[F2Vec, int]] = [(p.vec, 1 << i) for i, p in enumerate(h)]
    pairs: list[tuple[tuple[F2Vec, int], tuple[F2Vec, int]]] = []
    unpaired: list[tuple[F2Vec, int]] = []
    while remaining:
        a, ma = remaining.pop(0)
        k = next((k for k, (c, _) in enumerate(remaining) if symplectic_form(a, c)), None)
        if k is None:
            unpaired.append((a, ma))
            continue
        b, mb = remaining.pop(k)
        pairs.append(((a, ma), (b, mb)))
        for idx, (c, mc) in enumerate(remaining):
            wa, wb = symplectic_form(c, a), symplectic_form(c, b)
            if wb:
                c, mc = c ^ a, mc ^ ma
            if wa:
                c, mc = c ^ b, mc ^ mb
            remaining[idx] = (c, mc)

    rows: list[F2Vec] = []
    sources: list[int] = []
    for (a, ma), (b, mb) in pairs:
        rows.extend([a, b])
        sources.extend([ma, mb])
    for u, mu in unpaired:
        rows.extend([u, F2Vec.zero(n)])
        sources.extend([mu, 0])
    pad = 2 * n - len(rows)
    rows.extend(F2Vec.zero(n) for _ in range(pad))
    sources.extend(0 for _ in range(pad))
    return TauMatrix(n, tuple(rows), len(pairs), len(unpaired), tuple(sources))


def _frame_tableau(n: int, gates: Sequence) -> CliffordTableau:
    """Identity tableau with each gate applied by conjugation, in order."""
    frame = CliffordTableau.identity(n).frame()
    for gate in gates:
        frame.apply(gate)
    return CliffordTableau.from_frame(frame)


def sweep_pair(p1: PauliString, p2: PauliString, target: int = 0) -> tuple[GateList, SymplecticMatrix]:
    """
    Map an anticommuting pair to (X_target, Z_target) up to signs.

    Args:
        p1: First Pauli string, supported on qubits >= target
        p2: Second Pauli string anticommuting with p1
        target: Destination qubit (0-based)

    Returns:
        The gates (H, S, CNOT only) and the symplectic matrix of the transform,
        whose row i is the image of the i-th interleaved basis vector
    """
    if p1.n != p2.n:
        raise DimensionMismatchError(f"Pair on {p1.n} and {p2.n} qubits")
    low = (1 << target) - 1
    if (p1.x | p1.z | p2.x | p2.z) & low:
        raise ValueError(f"Pair must be supported on qubits >= {target}")
    frame = PauliFrame.from_paulis(p1.n, [p1.canonical(), p2.canonical()])
    frame.sweep_pair(0, 1, target)
    gates = GateList(p1.n, tuple(frame.gates))
    return gates, _frame_tableau(p1.n, frame.gates).partial


@dataclass
class SamplingStats:
    """Rejection-sampling counters from ``sample_random_clifford``."""

    first_attempts: list[int] = field(default_factory=list)
    partner_attempts: list[int] = field(default_factory=list)


def random_bits(rng: np.random.Generator, count: int) -> int:
    if count <= 0:
        return 0
    bits = rng.integers(0, 2, size=count, dtype=np.uint8)
    return sum(int(b) << i for i, b in enumerate(bits))


def random_pauli(n: int, qubits: Sequence[int], rng: np.random.Generator) -> PauliString:
    """Uniform Hermitian Pauli string supported on ``qubits`` (identity allowed)."""
    xb = random_bits(rng, len(qubits))
    zb = random_bits(rng, len(qubits))
    x = z = 0
    for k, q in enumerate(qubits):
        x |= ((xb >> k) & 1) << q
        z |= ((zb >> k) & 1) << q
    return PauliString.from_xz(n, x, z)


def sample_random_clifford(
    n: int,
    rng: np.random.Generator,
    stats: SamplingStats | None = None,
) -> CliffordTableau:
    """
    Sample a uniformly random n-qubit Clifford tableau.

    For each qubit j a uniform anticommuting pair on qubits j..n-1 is drawn by
    rejection and swept onto (X_j, Z_j); the collected gates define the Clifford,
    and the phase bits are drawn uniformly.

    Args:
        n: Number of qubits (>= 1)
        rng: Random generator
        stats: Optional accumulator for rejection counts

    Returns:
        A valid tableau
    """
    if n < 1:
        raise ValueError(f"Random Clifford needs n >= 1, got {n}")
    gates = []
    for j in range(n):
        block = list(range(j, n))
        attempts = 0
        while True:
            attempts += 1
            p1 = random_pauli(n, block, rng)
            if not p1.is_identity():
                break
        partner_attempts = 0
        while True:
            partner_attempts += 1
            p2 = random_pauli(n, block, rng)
            if not p1.commutes_with(p2):
                break
        if stats is not None:
            stats.first_attempts.append(attempts)
            stats.partner_attempts.append(partner_attempts)
        frame = PauliFrame.from_paulis(n, [p1, p2])
        frame.sweep_pair(0, 1, j)
        gates.extend(frame.gates)
    tableau = from_gates(gates, n)
    signs = random_bits(rng, 2 * n)
    rows = tuple(row.canonical().with_phase(2 * ((signs >> k) & 1)) for k, row in enumerate(tableau.rows))
    return CliffordTableau(n, rows)


class Diagonalization(NamedTuple):
    diagonalizer: CliffordTableau
    tau: TauMatrix


def _diagonalizing_frame(tau: TauMatrix) -> PauliFrame:
    if not tau.is_member():
        raise InvalidTableauError("Input is not a valid tau matrix")
    n = tau.n
    frame = PauliFrame.from_paulis(n, [tau.pauli(i) for i in range(2 * n)])
    for i in range(tau.pair_count):
        frame.sweep_pair(2 * i, 2 * i + 1, i)
        frame.fix_pair_signs(2 * i, 2 * i + 1, i)
    for j in range(tau.unpaired_count):
        r = 2 * tau.pair_count + 2 * j
        slot = tau.pair_count + j
        frame.make_x_only(r, slot)
        high = frame.xs[r] >> slot << slot
        if not high:
            raise InvalidTableauError(f"Unpaired row {r} is dependent on earlier rows")
        control = (high & -high).bit_length() - 1
        for k in range(tau.pair_count, slot):
            if (frame.xs[r] >> k) & 1:
                frame.apply(cnot(control, k))
        frame.collapse_x(r, slot, slot)
        if frame.signs[r]:
            frame.apply(s(slot))
            frame.apply(s(slot))
    return frame


def diagonalize(tau: TauMatrix) -> Diagonalization:
    """
    Build a diagonalizer D for a tau matrix.

    Args:
        tau: A member of the tau set

    Returns:
        The tableau of D, with D^dag g D equal to the local generator of each
        nonzero row exactly (sign +1), and the resulting partial-identity tau
    """
    frame = _diagonalizing_frame(tau)
    mapped = tuple(row.vec for row in frame.rows())
    out = TauMatrix(tau.n, mapped, tau.pair_count, tau.unpaired_count, tau.sources)
    diagonalizer = _frame_tableau(tau.n, frame.gates)
    logger.debug(
        f"Diagonalized tau (pairs={tau.pair_count}, unpaired={tau.unpaired_count}) "
        f"with {len(frame.gates)} gates"
    )
    return Diagonalization(diagonalizer, out)


def complete_constrained(
    tau: TauMatrix,
    phases: Sequence[int],
    rng: np.random.Generator,
) -> CliffordTableau:
    """
    Uniformly random tableau agreeing with tau on its constrained rows.

    The constrained rows are mapped to local generators by a diagonalizer; a
    uniform Clifford on the last n - n_P qubits, corrected so that it fixes the
    unpaired slots, supplies the randomness. Free phase bits are uniform.

    Args:
        tau: Constraints; row 2j is the image of X_j and row 2j+1 of Z_j
        phases: One bit per constrained row, in ``tau.constrained_rows`` order
        rng: Random generator

    Returns:
        A valid tableau
    """
    constrained = tau.constrained_rows
    if len(phases) != len(constrained):
        raise ValueError(f"Expected {len(constrained)} phase bits, got {len(phases)}")
    n = tau.n
    d_hat = diagonalize(tau).diagonalizer
    free = n - tau.pair_count
    if free:
        q_block = sample_random_clifford(free, rng)
        y = [q_block.x_image(k).canonical() for k in range(tau.unpaired_count)]
        d_y = diagonalize(TauMatrix.from_slots(free, [], y)).diagonalizer
        block = compose(q_block, d_y)
        r = block.embed(n, list(range(tau.pair_count, n)))
    else:
        r = CliffordTableau.identity(n)
    result = compose(r, inverse(d_hat))

    fixed = dict(zip(constrained, phases))
    signs = random_bits(rng, 2 * n)
    rows = []
    for k, row in enumerate(result.rows):
        bit = fixed[k] if k in fixed else (signs >> k) & 1
        rows.append(row.canonical().with_phase(2 * (int(bit) & 1)))
    return CliffordTableau(n, tuple(rows))


def clifford_mapping(p: PauliString, q: PauliString, rng: np.random.Generator) -> CliffordTableau:
    """
    Random Clifford tableau whose conjugation sends p to q exactly.

    Args:
        p: Hermitian, non-identity source string
        q: Hermitian, non-identity target string (sign respected)
        rng: Random generator

    Returns:
        Tableau T with conjugate_pauli(T, p) == q
    """
    if p.n != q.n:
        raise DimensionMismatchError(f"Cannot map {p.n}-qubit to {q.n}-qubit string")
    if p.is_identity() or q.is_identity():
        raise ValueError("Both strings must be non-identity")
    n = p.n
    to_p = complete_constrained(TauMatrix.from_slots(n, [], [p.canonical()]), [p.phase_exp >> 1], rng)
    to_q = complete_constrained(TauMatrix.from_slots(n, [], [q.canonical()]), [q.phase_exp >> 1], rng)
    return compose(to_p, to_q, invert_a=True)
