"""Bit-packed F2 vectors, the symplectic form and phase-tracked Pauli strings.

A Pauli string on n qubits is stored as two n-bit words ``x`` and ``z``; bit j
of each word belongs to qubit j (qubit 1 in the 1-based external formats).
External bit formats use the interleaved order x1 z1 x2 z2 ... xn zn.

The operator encoded by (x, z, p) is::

    i^p * prod_j i^(x_j z_j) X_j^(x_j) Z_j^(z_j)

so that Y = i X Z and every phase-0 string is Hermitian.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..exceptions import DimensionMismatchError

logger = logging.getLogger(__name__)

_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_LETTER = {bits: letter for letter, bits in _LETTER_BITS.items()}
_PHASE_TOKENS = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}
_PHASE_PREFIX = {0: "", 1: "i", 2: "-", 3: "-i"}


def _check_same_n(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatchError(f"Qubit counts differ: {a} != {b}")


@dataclass(frozen=True, slots=True)
class F2Vec:
    """A 2n-bit F2 vector holding the x and z halves of a Pauli string."""

    n: int
    x: int = 0
    z: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"Qubit count must be non-negative, got {self.n}")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError(f"Bit words do not fit in {self.n} qubits")

    @classmethod
    def zero(cls, n: int) -> F2Vec:
        return cls(n, 0, 0)

    @classmethod
    def from_bits(cls, bits: Sequence[int] | str) -> F2Vec:
        """Build a vector from interleaved bits (a sequence or a '0'/'1' string)."""
        values = [int(b) for b in bits]
        if len(values) % 2:
            raise ValueError(f"Interleaved bit string has odd length {len(values)}")
        if any(v not in (0, 1) for v in values):
            raise ValueError("Bits must be 0 or 1")
        n = len(values) // 2
        x = sum(values[2 * j] << j for j in range(n))
        z = sum(values[2 * j + 1] << j for j in range(n))
        return cls(n, x, z)

    @classmethod
    def from_key(cls, n: int, key: int) -> F2Vec:
        mask = (1 << n) - 1
        return cls(n, key & mask, key >> n)

    @property
    def key(self) -> int:
        """Single-integer packing (x in the low word) used by GF(2) elimination."""
        return self.x | (self.z << self.n)

    def bits(self) -> tuple[int, ...]:
        out: list[int] = []
        for j in range(self.n):
            out.append((self.x >> j) & 1)
            out.append((self.z >> j) & 1)
        return tuple(out)

    def to_bitstring(self) -> str:
        return "".join(str(b) for b in self.bits())

    def to_array(self) -> np.ndarray:
        return np.array(self.bits(), dtype=np.uint8)

    def is_zero(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def __xor__(self, other: F2Vec) -> F2Vec:
        _check_same_n(self.n, other.n)
        return F2Vec(self.n, self.x ^ other.x, self.z ^ other.z)


def symplectic_form(a: F2Vec | PauliString, b: F2Vec | PauliString) -> int:
    """
    Return a^T Omega b mod 2 for the interleaved per-qubit swap form Omega.

    Args:
        a: First vector (or Pauli string)
        b: Second vector (or Pauli string)

    Returns:
        1 if the encoded Pauli operators anticommute, else 0
    """
    _check_same_n(a.n, b.n)
    return ((a.x & b.z) ^ (a.z & b.x)).bit_count() & 1


@dataclass(frozen=True, slots=True)
class PauliString:
    """A Pauli operator i^phase_exp * P(vec), phase_exp taken mod 4."""

    vec: F2Vec
    phase_exp: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @classmethod
    def from_xz(cls, n: int, x: int, z: int, phase_exp: int = 0) -> PauliString:
        return cls(F2Vec(n, x, z), phase_exp)

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(F2Vec.zero(n), 0)

    @classmethod
    def local(cls, n: int, qubit: int, kind: str) -> PauliString:
        """Single-qubit generator ``kind`` in {X, Y, Z} on 0-based ``qubit``."""
        if not 0 <= qubit < n:
            raise ValueError(f"Qubit {qubit} out of range for n={n}")
        bx, bz = _LETTER_BITS[kind.upper()]
        return cls(F2Vec(n, bx << qubit, bz << qubit), 0)

    @property
    def n(self) -> int:
        return self.vec.n

    @property
    def x(self) -> int:
        return self.vec.x

    @property
    def z(self) -> int:
        return self.vec.z

    @property
    def key(self) -> int:
        return self.vec.key

    @property
    def weight(self) -> int:
        return self.vec.weight

    def is_identity(self) -> bool:
        return self.vec.is_zero()

    def is_hermitian(self) -> bool:
        return self.phase_exp in (0, 2)

    @property
    def sign(self) -> int:
        if not self.is_hermitian():
            raise ValueError(f"Pauli string {self} is not Hermitian")
        return 1 if self.phase_exp == 0 else -1

    def canonical(self) -> PauliString:
        """The phase-0 (Hermitian) representative of the same class."""
        return self if self.phase_exp == 0 else PauliString(self.vec, 0)

    def with_phase(self, phase_exp: int) -> PauliString:
        return PauliString(self.vec, phase_exp)

    def __neg__(self) -> PauliString:
        return PauliString(self.vec, self.phase_exp + 2)

    def __mul__(self, other: PauliString) -> PauliString:
        return pauli_mul(self, other)

    def commutes_with(self, other: PauliString) -> bool:
        return symplectic_form(self.vec, other.vec) == 0

    def letter(self, qubit: int) -> str:
        return _BITS_LETTER[((self.x >> qubit) & 1, (self.z >> qubit) & 1)]

    def restrict(self, qubits: Sequence[int]) -> PauliString:
        """Letters on ``qubits`` (in the given order) as a Hermitian string."""
        x = z = 0
        for k, q in enumerate(qubits):
            x |= ((self.x >> q) & 1) << k
            z |= ((self.z >> q) & 1) << k
        return PauliString.from_xz(len(qubits), x, z)

    def embed(self, n: int, qubits: Sequence[int]) -> PauliString:
        """Place this string on ``qubits`` of an n-qubit register."""
        if len(qubits) != self.n:
            raise DimensionMismatchError(f"Need {self.n} target qubits, got {len(qubits)}")
        x = z = 0
        for k, q in enumerate(qubits):
            x |= ((self.x >> k) & 1) << q
            z |= ((self.z >> k) & 1) << q
        return PauliString.from_xz(n, x, z, self.phase_exp)

    def to_text(self) -> str:
        return format_pauli(self)

    def __str__(self) -> str:
        return format_pauli(self)


def pauli_mul(p: PauliString, q: PauliString) -> PauliString:
    """
    Multiply two Pauli strings with exact phase tracking.

    Args:
        p: Left factor
        q: Right factor

    Returns:
        The product p*q with its vector equal to p.vec XOR q.vec
    """
    _check_same_n(p.n, q.n)
    x3 = p.x ^ q.x
    z3 = p.z ^ q.z
    phase = (
        p.phase_exp
        + q.phase_exp
        + (p.x & p.z).bit_count()
        + (q.x & q.z).bit_count()
        + 2 * (p.z & q.x).bit_count()
        - (x3 & z3).bit_count()
    )
    return PauliString(F2Vec(p.n, x3, z3), phase)


def parse_pauli(text: str) -> PauliString:
    """
    Parse a Pauli string such as ``"XZ"``, ``"-YIZ"`` or ``"iX"``.

    Args:
        text: Letters over {I, X, Y, Z} with an optional +, -, i, -i prefix

    Returns:
        The parsed Pauli string; the first letter is qubit 1
    """
    body = text.strip()
    split = 0
    while split < len(body) and body[split] in "+-i":
        split += 1
    token, letters = body[:split], body[split:]
    if token not in _PHASE_TOKENS:
        raise ValueError(f"Bad phase prefix {token!r} in Pauli text {text!r}")
    if not letters:
        raise ValueError(f"Empty Pauli text {text!r}")
    x = z = 0
    for j, ch in enumerate(letters):
        if ch not in _LETTER_BITS:
            raise ValueError(f"Bad character {ch!r} in Pauli text {text!r}")
        bx, bz = _LETTER_BITS[ch]
        x |= bx << j
        z |= bz << j
    return PauliString.from_xz(len(letters), x, z, _PHASE_TOKENS[token])


def format_pauli(p: PauliString) -> str:
    return _PHASE_PREFIX[p.phase_exp] + "".join(p.letter(j) for j in range(p.n))


def parse_pauli_bits(text: str, n: int | None = None) -> PauliString:
    """Parse the interleaved '0'/'1' format with an optional phase prefix."""
    body = text.strip()
    split = 0
    while split < len(body) and body[split] in "+-i":
        split += 1
    token = body[:split]
    if token not in _PHASE_TOKENS:
        raise ValueError(f"Bad phase prefix {token!r} in bit string {text!r}")
    vec = F2Vec.from_bits(body[split:])
    if n is not None and vec.n != n:
        raise DimensionMismatchError(f"Bit string encodes {vec.n} qubits, expected {n}")
    return PauliString(vec, _PHASE_TOKENS[token])


def format_pauli_bits(p: PauliString) -> str:
    return _PHASE_PREFIX[p.phase_exp] + p.vec.to_bitstring()


def omega_matrix(n: int) -> np.ndarray:
    """Interleaved symplectic form: one [[0,1],[1,0]] block per qubit."""
    return np.kron(np.eye(n, dtype=np.uint8), np.array([[0, 1], [1, 0]], dtype=np.uint8))


@dataclass(frozen=True, slots=True)
class SymplecticMatrix:
    """2n rows of F2 vectors; row i is the image of the i-th interleaved basis vector."""

    n: int
    rows: tuple[F2Vec, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != 2 * self.n:
            raise DimensionMismatchError(f"Expected {2 * self.n} rows, got {len(self.rows)}")
        for row in self.rows:
            _check_same_n(row.n, self.n)

    @classmethod
    def identity(cls, n: int) -> SymplecticMatrix:
        rows = []
        for j in range(n):
            rows.append(F2Vec(n, 1 << j, 0))
            rows.append(F2Vec(n, 0, 1 << j))
        return cls(n, tuple(rows))

    @classmethod
    def from_array(cls, array: np.ndarray) -> SymplecticMatrix:
        matrix = np.asarray(array, dtype=np.uint8) % 2
        size = matrix.shape[0]
        if matrix.shape != (size, size) or size % 2:
            raise ValueError(f"Symplectic matrix must be 2n x 2n, got {matrix.shape}")
        return cls(size // 2, tuple(F2Vec.from_bits(row.tolist()) for row in matrix))

    def to_array(self) -> np.ndarray:
        if self.n == 0:
            return np.zeros((0, 0), dtype=np.uint8)
        return np.stack([row.to_array() for row in self.rows])

    def is_symplectic(self) -> bool:
        m = self.to_array().astype(np.int64)
        omega = omega_matrix(self.n).astype(np.int64)
        return bool(np.array_equal((m @ omega @ m.T) % 2, omega))


@dataclass
class GF2Elimination:
    """Incremental row reduction over GF(2) with combination tracking.

    Each basis entry remembers which inserted vectors it is the XOR of, so
    dependent insertions yield left-nullspace vectors directly.
    """

    pivots: dict[int, tuple[int, int]]
    dependencies: list[int]
    count: int = 0

    @classmethod
    def empty(cls) -> GF2Elimination:
        return cls({}, [], 0)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, key: int) -> tuple[int, int]:
        """Reduce ``key`` against the basis; returns (residual, combination mask)."""
        mask = 0
        while key:
            pivot = key.bit_length() - 1
            entry = self.pivots.get(pivot)
            if entry is None:
                break
            key ^= entry[0]
            mask ^= entry[1]
        return key, mask

    def insert(self, key: int) -> bool:
        """Insert a vector; returns True when it raised the rank."""
        index = self.count
        self.count += 1
        residual, mask = self.reduce(key)
        mask ^= 1 << index
        if residual:
            self.pivots[residual.bit_length() - 1] = (residual, mask)
            return True
        self.dependencies.append(mask)
        return False

    def contains(self, key: int) -> bool:
        return self.reduce(key)[0] == 0


def _as_key(v: F2Vec | PauliString | int) -> int:
    return v if isinstance(v, int) else v.key


def gf2_rank(vectors: Iterable[F2Vec | PauliString | int]) -> int:
    elim = GF2Elimination.empty()
    for v in vectors:
        elim.insert(_as_key(v))
    return elim.rank


def gf2_nullspace(vectors: Sequence[F2Vec | PauliString | int]) -> list[int]:
    """
    Basis of the left null space of a list of vectors.

    Args:
        vectors: Vectors (or packed integer keys) to combine

    Returns:
        Bit masks over input indices whose selected vectors XOR to zero
    """
    elim = GF2Elimination.empty()
    for v in vectors:
        elim.insert(_as_key(v))
    return list(elim.dependencies)


def gf2_in_span(vector: F2Vec | PauliString | int, basis: Iterable[F2Vec | PauliString | int]) -> bool:
    elim = GF2Elimination.empty()
    for v in basis:
        elim.insert(_as_key(v))
    return elim.contains(_as_key(vector))


def iter_paulis(n: int, qubits: Sequence[int]) -> Iterable[PauliString]:
    """All 4^len(qubits) Hermitian strings supported on ``qubits``, identity first."""
    k = len(qubits)
    for code in range(1 << (2 * k)):
        x = z = 0
        for pos, q in enumerate(qubits):
            x |= ((code >> (2 * pos)) & 1) << q
            z |= ((code >> (2 * pos + 1)) & 1) << q
        yield PauliString.from_xz(n, x, z)
