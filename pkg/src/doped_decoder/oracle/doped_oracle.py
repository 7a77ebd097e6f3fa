"""Query access to a doped scrambler.

``DopedOracle`` answers the three questions the learner asks about U: the image
U^dag P U of a Pauli string, whether a candidate image is right, and the sign of
a preserved image. In exact mode answers come from Pauli-sum propagation; in
shots mode they are sampled from dense simulations of the measurement protocols.
"""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np

from ..config import settings
from ..exceptions import NotPreservedError
from ..stabilizer.f2core import PauliString
from ..stabilizer.subroutines import clifford_mapping
from ..utils.helpers import make_rng
from .circuit import DopedCircuit, PauliSum, propagate_pauli
from .densecheck import check_cap, dense_clifford, dense_conjugate, dense_unitary, pauli_matrix

logger = logging.getLogger(__name__)

_MODES = ("exact", "shots")
_EPR = np.eye(2, dtype=complex) / np.sqrt(2.0)
_EPR_MINUS = np.diag([1.0, -1.0]).astype(complex) / np.sqrt(2.0)
_PROBE_ZERO = np.array([[1, 0], [0, 0]], dtype=complex)
_PROBE_PLUS = np.full((2, 2), 0.5, dtype=complex)


def resolution_bound(t: int) -> float:
    """
    Smallest possible gap between distinct Choi expectations of a t-doped circuit.

    Args:
        t: Number of T gates (>= 0)

    Returns:
        (1 / (6 sqrt2^(t-1))) (1 - 1/sqrt2)^t
    """
    if t < 0:
        raise ValueError(f"T count must be non-negative, got {t}")
    return (1.0 / (6.0 * math.sqrt(2.0) ** (t - 1))) * (1.0 - 1.0 / math.sqrt(2.0)) ** t


def hoeffding_shots(eps: float, delta: float) -> int:
    """Shots for additive error eps with failure probability delta: ceil(8 ln(2/delta)/eps^2)."""
    if eps <= 0 or not 0 < delta < 1:
        raise ValueError(f"Need eps > 0 and 0 < delta < 1, got eps={eps}, delta={delta}")
    return math.ceil(8.0 * math.log(2.0 / delta) / eps**2)


def _kron_all(factors: list[np.ndarray]) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = np.kron(out, f)
    return out


def _pair_expectation(m: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    """<psi| A (x) B |psi> for the two-register state with matrix M: Tr(M^dag A M B^T)."""
    return float(np.trace(m.conj().T @ a @ m @ b.T).real)


class DopedOracle:
    """
    Simulated query access to U for one doped circuit.

    Every public query increments ``queries``: one per call in exact mode, one
    per use of U in shots mode.
    """

    def __init__(
        self,
        circuit: DopedCircuit,
        mode: Optional[str] = None,
        shots: Optional[int] = None,
        rng: Optional[np.random.Generator] = None,
        fail_probability: Optional[float] = None,
    ) -> None:
        self.circuit = circuit
        self.mode = mode or settings.oracle_mode
        if self.mode not in _MODES:
            raise ValueError(f"Unknown oracle mode {self.mode!r}; expected one of {_MODES}")
        self.shots = shots if shots is not None else circuit.n
        self.rng = rng if rng is not None else make_rng()
        self.fail_probability = fail_probability or settings.fail_probability
        self.queries = 0
        self._images: dict[PauliString, PauliSum] = {}
        self._dense: Optional[np.ndarray] = None
        if self.mode == "shots":
            check_cap(circuit.n)

    @property
    def n(self) -> int:
        return self.circuit.n

    @property
    def dense(self) -> np.ndarray:
        if self._dense is None:
            self._dense = dense_unitary(self.circuit)
        return self._dense

    def image(self, p: PauliString) -> PauliSum:
        """Exact U^dag p U for a Hermitian p (cached; not counted as a query)."""
        key = p.canonical()
        cached = self._images.get(key)
        if cached is None:
            cached = propagate_pauli(key, self.circuit)
            self._images[key] = cached
        if p.phase_exp == 2:
            return PauliSum(cached.n, {q: -c for q, c in cached})
        return cached

    def check_preserved(self, p: PauliString) -> Optional[tuple[PauliString, int]]:
        """(image, sign) when U^dag p U is a single Pauli string, else None."""
        self.queries += 1
        single = self.image(p).as_single()
        if single is None:
            return None
        return single.canonical(), single.sign

    def learn_image(self, p: PauliString) -> PauliString:
        """
        Learn the phase-free image of p.

        Exact mode returns the single-term image, or the largest term when p is not
        preserved. Shots mode runs the per-qubit EPR measurement protocol.
        """
        if self.mode == "exact":
            self.queries += 1
            return self.image(p).max_term().canonical()
        return self._learn_image_shots(p)

    def _learn_image_shots(self, p: PauliString) -> PauliString:
        n = self.n
        a = dense_conjugate(self.dense, p.canonical())
        x = z = 0
        for j in range(n):
            deterministic = []
            for probe in (_PROBE_ZERO, _PROBE_PLUS):
                m = _kron_all([probe if k == j else _EPR for k in range(n)])
                e = max(-1.0, min(1.0, _pair_expectation(m, a, a)))
                k_plus = int(self.rng.binomial(self.shots, (1.0 + e) / 2.0))
                self.queries += 2 * self.shots
                deterministic.append(k_plus in (0, self.shots))
            stable_zero, stable_plus = deterministic
            # stable under |00>: I or Z; stable under |++>: I or X
            if not stable_zero:
                x |= 1 << j
            if not stable_plus:
                z |= 1 << j
        return PauliString.from_xz(n, x, z)

    def verify_image(self, p: PauliString, q: PauliString, t: Optional[int] = None) -> bool:
        """True iff U^dag p U = +-q."""
        if self.mode == "exact":
            found = self.check_preserved(p)
            return found is not None and found[0].vec == q.vec
        t = self.circuit.t if t is None else t
        eps = resolution_bound(t) / 2.0
        shots = hoeffding_shots(eps, self.fail_probability)
        d = 2**self.n
        e = float(np.trace(dense_conjugate(self.dense, p.canonical()) @ pauli_matrix(q.canonical()).T).real / d)
        e = max(-1.0, min(1.0, e))
        k_plus = int(self.rng.binomial(shots, (1.0 + e) / 2.0))
        self.queries += shots
        estimate = (2.0 * k_plus - shots) / shots
        return abs(estimate) >= 1.0 - eps

    def phase_of_image(self, p: PauliString, image: Optional[PauliString] = None) -> int:
        """
        Sign s with U^dag p U = s * image for a preserved p.

        Shots mode prepares EPR pairs (with a Z-twisted pair wherever the image has a
        Y), applies U to one register and a Clifford U0 with U0^dag p U0 = image to
        the other, and reads p (x) p once.
        """
        if self.mode == "exact":
            found = self.check_preserved(p)
            if found is None:
                raise NotPreservedError(f"{p} is not preserved; its image has no sign")
            q, sign = found
            if image is not None and image.vec != q.vec:
                raise NotPreservedError(f"{image} is not the image of {p}")
            return sign
        if image is None:
            image = self.learn_image(p)
        p0, q0 = p.canonical(), image.canonical()
        u0 = dense_clifford(clifford_mapping(p0, q0, self.rng))
        factors = [_EPR_MINUS if q0.letter(j) == "Y" else _EPR for j in range(self.n)]
        m = self.dense @ _kron_all(factors) @ u0.T
        pm = pauli_matrix(p0)
        e = _pair_expectation(m, pm, pm)
        self.queries += 1
        if abs(abs(e) - 1.0) > 1e-9:
            raise NotPreservedError(f"{p} is not mapped to +-{image}")
        sign = 1 if e > 0 else -1
        return -sign if p.phase_exp == 2 else sign


def check_preserved(p: PauliString, circuit: DopedCircuit) -> Optional[tuple[PauliString, int]]:
    """
    Exact preservation test.

    Args:
        p: Hermitian Pauli string
        circuit: The doped circuit

    Returns:
        (q, sign) with U^dag p U = sign * q, or None when the image has several terms
    """
    single = propagate_pauli(p, circuit).as_single()
    if single is None:
        return None
    return single.canonical(), single.sign


def learn_image(
    p: PauliString,
    circuit: DopedCircuit,
    mode: str = "exact",
    shots: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> PauliString:
    return DopedOracle(circuit, mode, shots, rng).learn_image(p)


def verify_image(
    p: PauliString,
    q: PauliString,
    circuit: DopedCircuit,
    mode: str = "exact",
    rng: Optional[np.random.Generator] = None,
) -> bool:
    return DopedOracle(circuit, mode, rng=rng).verify_image(p, q)


def phase_of_image(
    p: PauliString,
    circuit: DopedCircuit,
    mode: str = "exact",
    rng: Optional[np.random.Generator] = None,
    image: Optional[PauliString] = None,
) -> int:
    return DopedOracle(circuit, mode, rng=rng).phase_of_image(p, image)
