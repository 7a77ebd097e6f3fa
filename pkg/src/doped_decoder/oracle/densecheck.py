"""Dense state-vector and unitary oracle for small registers.

Qubit 0 is the most significant tensor factor, so a Pauli string's matrix is
the Kronecker product of its letters from qubit 0 to qubit n-1. All EPR and Choi
conventions use |EPR> = d^(-1/2) sum_i |ii> in the computational basis.
"""

from __future__ import annotations

import logging
from typing import Any, Dict, Iterable, Optional, Sequence

import numpy as np
from scipy.stats import chisquare

from ..config import settings
from ..exceptions import DenseCapExceededError, DimensionMismatchError, ProjectionError
from ..models.decoder_models import Partition
from ..stabilizer.f2core import PauliString, iter_paulis
from ..stabilizer.subroutines import random_pauli, sample_random_clifford
from ..stabilizer.tableau import CliffordTableau, GateList, conjugate_pauli, synthesize
from .circuit import DopedCircuit, PauliSum, propagate_pauli, random_doped_circuit

logger = logging.getLogger(__name__)

TOLERANCE = 1e-10
UNIFORMITY_ALPHA = 1e-4
SINGLE_QUBIT_CLIFFORDS = 24

_SQRT_HALF = 1.0 / np.sqrt(2.0)
_LETTERS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_GATES = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT_HALF,
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "T": np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
        dtype=complex,
    ),
}


def check_cap(n: int, cap: Optional[int] = None) -> None:
    limit = settings.dense_max_qubits if cap is None else cap
    if n > limit:
        raise DenseCapExceededError(f"Dense simulation of {n} qubits exceeds the cap of {limit}")


def gate_matrix(name: str) -> np.ndarray:
    return _GATES[name]


def apply_local(tensor: np.ndarray, matrix: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    """Apply a 2^k x 2^k matrix to the given qubit axes of a tensor."""
    k = len(axes)
    gate = matrix.reshape((2,) * (2 * k))
    out = np.tensordot(gate, tensor, axes=(list(range(k, 2 * k)), list(axes)))
    return np.moveaxis(out, list(range(k)), list(axes))


def pauli_matrix(p: PauliString) -> np.ndarray:
    """Dense matrix of i^phase times the letters of ``p``."""
    out = np.ones((1, 1), dtype=complex)
    for j in range(p.n):
        out = np.kron(out, _LETTERS[p.letter(j)])
    return out * (1j**p.phase_exp)


def pauli_sum_matrix(s: PauliSum) -> np.ndarray:
    d = 2**s.n
    out = np.zeros((d, d), dtype=complex)
    for p, c in s:
        out += float(c) * pauli_matrix(p)
    return out


def dense_unitary(circuit: DopedCircuit | GateList, cap: Optional[int] = None) -> np.ndarray:
    """
    Dense matrix of a circuit, gates multiplied in time order.

    Args:
        circuit: Doped circuit or gate list
        cap: Qubit cap (default settings.dense_max_qubits)

    Returns:
        The 2^n x 2^n unitary
    """
    gates = circuit.gates if isinstance(circuit, DopedCircuit) else circuit
    n = gates.n
    check_cap(n, cap)
    d = 2**n
    tensor = np.eye(d, dtype=complex).reshape((2,) * n + (d,))
    for gate in gates:
        tensor = apply_local(tensor, _GATES[gate.name], gate.qubits)
    return tensor.reshape(d, d)


def dense_clifford(tableau: CliffordTableau, cap: Optional[int] = None) -> np.ndarray:
    """Dense matrix (up to global phase) of a tableau via synthesis."""
    return dense_unitary(synthesize(tableau), cap)


def dense_conjugate(u: np.ndarray, p: PauliString) -> np.ndarray:
    """U^dag P U."""
    return u.conj().T @ pauli_matrix(p) @ u


def is_unitary(u: np.ndarray, tol: float = TOLERANCE) -> bool:
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def choi_expectation(u: np.ndarray, p: PauliString, q: PauliString) -> complex:
    """<U| Q (x) P |U> for the Choi state (1 (x) U)|EPR>, i.e. Tr(U^dag P U Q^T)/d."""
    d = u.shape[0]
    return complex(np.trace(dense_conjugate(u, p) @ pauli_matrix(q).T) / d)


def dense_expect(circuit: DopedCircuit, p: PauliString, q: PauliString, cap: Optional[int] = None) -> complex:
    """
    Choi-state expectation used by image verification.

    Args:
        circuit: The circuit U
        p: Probe Pauli on the output side
        q: Candidate image on the reference side

    Returns:
        Tr(U^dag p U q^T)/d; modulus 1 iff U^dag p U = +-q
    """
    return choi_expectation(dense_unitary(circuit, cap), p, q)


def dense_otoc(u: np.ndarray, part: Partition, group: Optional[Iterable[PauliString]] = None) -> float:
    """
    Average of Tr(P_A U^dag P_D U P_A U^dag P_D U)/d over P(A) and P(D) (or ``group``).

    Args:
        u: Dense unitary on part.n qubits
        part: Partition fixing A (first qubits) and D (last qubits)
        group: Optional list of n-qubit strings replacing P(D)

    Returns:
        The (truncated) four-point OTOC
    """
    n = part.n
    d = 2**n
    elements = list(group) if group is not None else list(iter_paulis(n, part.d_qubits))
    a_mats = [pauli_matrix(pa) for pa in iter_paulis(n, part.a_qubits)]
    total = 0.0
    for pd in elements:
        x = dense_conjugate(u, pd)
        for pa in a_mats:
            total += np.trace(pa @ x @ pa @ x).real / d
    return total / (len(elements) * len(a_mats))


def dense_truncated_otoc(u: np.ndarray, part: Partition, sources: Sequence[PauliString]) -> float:
    """Four-point OTOC averaged over the group generated by ``sources``."""
    n = part.n
    elements = [PauliString.identity(n)]
    for g in sources:
        elements.extend([(e * g).canonical() for e in elements])
    return dense_otoc(u, part, elements)


def dense_gate_fidelity(u: np.ndarray, v: np.ndarray) -> float:
    """|Tr(V^dag U)|^2 / d^2."""
    d = u.shape[0]
    return float(abs(np.trace(v.conj().T @ u)) ** 2 / d**2)


def hp_fidelity_dense(
    u: np.ndarray,
    v: np.ndarray,
    part: Partition,
    cap: Optional[int] = None,
) -> float:
    """
    Run the EPR-projection decoding protocol on dense states.

    Registers are R, A, B, B', A', R' with EPR pairs on RA, BB' and A'R'. U acts on
    AB, V* on A'B' (A' in the role of A), then DD' and RR' are projected onto EPR
    pairs; D is the last |D| output qubits of each side.

    Args:
        u: Dense scrambler on part.n qubits
        v: Dense decoder on part.n qubits
        part: Partition
        cap: Per-copy qubit cap; the protocol uses 2n + 2|A| qubits

    Returns:
        Tr(Pi_RR' |Psi_out><Psi_out|) after the normalized DD' projection
    """
    n, a = part.n, part.n_a
    limit = settings.dense_max_qubits if cap is None else cap
    if 2 * n + 2 * a > 2 * limit:
        raise DenseCapExceededError(f"Decoding protocol needs {2 * n + 2 * a} qubits, over 2 x {limit}")
    if u.shape != v.shape or u.shape[0] != 2**n:
        raise DimensionMismatchError("Scrambler and decoder must both act on part.n qubits")
    da, db = 2**a, 2 ** (n - a)
    dd, dc = part.d_d, 2**part.n_c
    d = 2**n
    psi = np.einsum("ij,kl,mn->ijklmn", np.eye(da), np.eye(db), np.eye(da)).astype(complex)
    psi /= np.sqrt(da * db * da)
    # [R, A, B, B', A', R'] -> [R, AB, B', A', R']
    psi = psi.reshape(da, d, db, da, da)
    psi = np.einsum("xy,rybsk->rxbsk", u, psi)
    v_star = v.conj().reshape(da, db, da, db)
    # V* input order is (A', B'); output is an n-qubit register
    psi = np.einsum("pqst,rxtsk->rxpqk", v_star, psi).reshape(da, dc, dd, dc, dd, da)
    phi = np.einsum("rcidje,ij->rcde", psi, np.eye(dd)) / np.sqrt(dd)
    p_out = float(np.sum(np.abs(phi) ** 2))
    if p_out < TOLERANCE:
        raise ProjectionError("EPR projection on DD' annihilated the state")
    chi = np.einsum("rcds,rs->cd", phi, np.eye(da)) / np.sqrt(da)
    return float(np.sum(np.abs(chi) ** 2) / p_out)


def max_sum_error(s: PauliSum, target: np.ndarray) -> float:
    return float(np.max(np.abs(pauli_sum_matrix(s) - target)))


def single_qubit_uniformity(draws: int, rng: np.random.Generator) -> float:
    """Chi-square p-value of random single-qubit tableaux against the uniform law on all 24."""
    counts: Dict[str, int] = {}
    for _ in range(draws):
        key = sample_random_clifford(1, rng).to_text()
        counts[key] = counts.get(key, 0) + 1
    observed = list(counts.values()) + [0] * (SINGLE_QUBIT_CLIFFORDS - len(counts))
    return float(chisquare(observed).pvalue)


def cross_validate(
    n_max: int = 4,
    cases: int = 50,
    rng: Optional[np.random.Generator] = None,
    t_max: int = 4,
    uniformity_draws: int = 2400,
) -> Dict[str, Any]:
    """
    Cross-check tableau conjugation, Pauli-sum propagation and Choi expectations
    against dense linear algebra on random instances.

    Args:
        n_max: Largest register size
        cases: Number of random (circuit, Pauli) cases
        rng: Random generator
        t_max: Largest T count per circuit
        uniformity_draws: Single-qubit Clifford draws for the chi-square check, 0 to skip

    Returns:
        Summary dict with per-check maximum errors and a pass flag
    """
    rng = rng if rng is not None else np.random.Generator(np.random.Philox(settings.default_seed))
    check_cap(n_max)
    worst = {"tableau": 0.0, "propagation": 0.0, "choi": 0.0, "unitarity": 0.0}
    failures = 0
    for _ in range(cases):
        n = int(rng.integers(1, n_max + 1))
        t = int(rng.integers(0, t_max + 1))
        circuit = random_doped_circuit(n, t, rng)
        u = dense_unitary(circuit)
        p = random_pauli(n, list(range(n)), rng)

        clifford = sample_random_clifford(n, rng)
        c_mat = dense_clifford(clifford)
        tab_err = float(np.max(np.abs(pauli_matrix(conjugate_pauli(clifford, p)) - dense_conjugate(c_mat, p))))

        image = propagate_pauli(p, circuit)
        prop_err = max_sum_error(image, dense_conjugate(u, p))

        q = random_pauli(n, list(range(n)), rng)
        predicted = image.coefficient(q)
        # transposition flips the sign of each Y
        y_count = (q.x & q.z).bit_count()
        expected = float(predicted) * (-1) ** y_count
        choi_err = abs(choi_expectation(u, p, q) - expected)

        unit_err = float(np.max(np.abs(u.conj().T @ u - np.eye(2**n))))
        sq = image.norm_squared()
        errors = {"tableau": tab_err, "propagation": prop_err, "choi": choi_err, "unitarity": unit_err}
        for key, value in errors.items():
            worst[key] = max(worst[key], value)
        if max(errors.values()) > TOLERANCE or sq.a != 1 or sq.b != 0 or sq.k != 0:
            failures += 1
    p_value = single_qubit_uniformity(uniformity_draws, rng) if uniformity_draws else 1.0
    passed = failures == 0 and p_value > UNIFORMITY_ALPHA
    logger.info(f"Cross-validation over {cases} cases: failures={failures}, worst={worst}")
    return {
        "cases": cases,
        "n_max": n_max,
        "failures": failures,
        "max_errors": worst,
        "uniformity_pvalue": p_value,
        "passed": passed,
    }
