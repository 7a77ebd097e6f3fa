"""Learning a Clifford decoder for a doped scrambler from queries.

The learner grows a set of preserved Pauli strings (those U maps to single Pauli
strings), keeping a diagonalizer that turns the found set into local generators so
that fresh candidates are always independent of it. The decoder V is a uniformly
random Clifford that agrees with U on the group the set generates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..config import settings
from ..exceptions import DecompositionError, LearningError
from ..models.decoder_models import CCParams, LearnStats
from ..oracle.circuit import DopedCircuit, propagate_pauli
from ..oracle.densecheck import check_cap, dense_clifford, dense_conjugate, dense_unitary
from ..oracle.doped_oracle import DopedOracle
from ..stabilizer.f2core import GF2Elimination, PauliString, gf2_nullspace, parse_pauli
from ..stabilizer.subroutines import (
    TauMatrix,
    build_tau,
    complete_constrained,
    diagonalize,
    random_pauli,
)
from ..stabilizer.tableau import (
    CliffordTableau,
    compose,
    conjugate_pauli,
    from_gates,
    h,
    inverse,
    parse_row_block,
    s,
    synthesize,
)
from ..utils.helpers import make_rng, spawn_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LearnedGenerator:
    """A preserved string: U^dag source U = sign * image (source and image phase-free)."""

    source: PauliString
    image: PauliString
    sign: int

    @property
    def signed_image(self) -> PauliString:
        return self.image if self.sign > 0 else -self.image

    def to_text(self) -> str:
        return f"{self.source.to_text()} {self.image.to_text()} {self.sign:+d}"


@dataclass
class LearnResult:
    """Generators of the learned group, the decoder V and the diagonalizer of the group."""

    n: int
    m: int
    generators: List[LearnedGenerator]
    decoder: CliffordTableau
    diagonalizer: CliffordTableau
    stats: LearnStats = field(default_factory=LearnStats)
    pair_count: int = 0
    unpaired_count: int = 0

    @property
    def sources(self) -> List[PauliString]:
        return [g.source for g in self.generators]

    def to_text(self) -> str:
        lines = [f"learn_result n={self.n} m={self.m} pairs={self.pair_count} unpaired={self.unpaired_count}"]
        lines.append(f"generators {len(self.generators)}")
        lines.extend(g.to_text() for g in self.generators)
        out = "\n".join(lines) + "\n"
        out += self.decoder.to_text(header="decoder")
        out += self.diagonalizer.to_text(header="diagonalizer")
        out += "stats\n" + self.stats.to_text()
        return out

    @classmethod
    def from_text(cls, text: str) -> LearnResult:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("learn_result "):
            raise ValueError("Text must start with 'learn_result'")
        head = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
        n, m = int(head["n"]), int(head["m"])
        count = int(lines[1].split()[1])
        generators = []
        for line in lines[2 : 2 + count]:
            src, img, sign = line.split()
            generators.append(LearnedGenerator(parse_pauli(src), parse_pauli(img), int(sign)))
        rest = lines[2 + count :]
        decoder_block = rest[: 2 * n + 1]
        diag_block = rest[2 * n + 1 : 4 * n + 2]
        _, dec_rows = parse_row_block("\n".join(decoder_block), "decoder")
        _, diag_rows = parse_row_block("\n".join(diag_block), "diagonalizer")
        stats_lines = rest[4 * n + 3 :]
        values: Dict[str, str] = dict(ln.split("=", 1) for ln in stats_lines)
        stats = LearnStats(
            sampling_steps=int(values.get("sampling_steps", 0)),
            oracle_queries=int(values.get("oracle_queries", 0)),
            k_reached=int(values.get("k_reached", 0)),
            pair_count=int(values.get("pair_count", 0)),
            unpaired_count=int(values.get("unpaired_count", 0)),
            budget_exhausted=values.get("budget_exhausted", "False") == "True",
        )
        return cls(
            n,
            m,
            generators,
            CliffordTableau(n, tuple(dec_rows)),
            CliffordTableau(n, tuple(diag_rows)),
            stats,
            int(head["pairs"]),
            int(head["unpaired"]),
        )


def _draw_nonidentity(n: int, qubits: Sequence[int], rng: np.random.Generator) -> PauliString:
    while True:
        p = random_pauli(n, qubits, rng)
        if not p.is_identity():
            return p


def _combine(generators: Sequence[LearnedGenerator], mask: int, n: int) -> tuple[PauliString, PauliString]:
    """Phase-free product of the selected sources and its signed image."""
    src = PauliString.identity(n)
    img = PauliString.identity(n)
    for i, g in enumerate(generators):
        if (mask >> i) & 1:
            src = src * g.source
            img = img * g.signed_image
    img = img.with_phase(img.phase_exp - src.phase_exp)
    if not img.is_hermitian():
        raise LearningError("Product of learned images is not Hermitian")
    return src.canonical(), img


class _Learner:
    """Mutable state of one learning run."""

    def __init__(self, oracle: DopedOracle, m: int, budget: int, rng: np.random.Generator) -> None:
        self.oracle = oracle
        self.n = oracle.n
        self.m = m
        self.local_n = self.n - m
        self.region = list(range(m, self.n))
        self.budget = budget
        self.rng = rng
        self.pairs: List[tuple[LearnedGenerator, LearnedGenerator]] = []
        self.pair_locals: List[tuple[PauliString, PauliString]] = []
        self.unpaired: List[LearnedGenerator] = []
        self.unpaired_locals: List[PauliString] = []
        self.lift = CliffordTableau.identity(self.local_n) if self.local_n else None
        self.elimination = GF2Elimination.empty()
        self.stats = LearnStats()

    @property
    def used(self) -> int:
        return len(self.pairs) + len(self.unpaired)

    def _candidate(self, fresh: Sequence[int]) -> tuple[PauliString, PauliString]:
        local = _draw_nonidentity(self.local_n, fresh, self.rng)
        lifted = conjugate_pauli(self.lift, local).canonical()
        return lifted, lifted.embed(self.n, self.region)

    def _test(self, source: PauliString) -> Optional[LearnedGenerator]:
        self.stats.sampling_steps += 1
        image = self.oracle.learn_image(source)
        if not self.oracle.verify_image(source, image):
            logger.debug(f"Candidate {source} rejected")
            return None
        sign = self.oracle.phase_of_image(source, image)
        return LearnedGenerator(source, image, sign)

    def _accept(self, gen: LearnedGenerator) -> None:
        if not self.elimination.insert(gen.source.key):
            raise LearningError(f"Accepted generator {gen.source} does not raise the rank")

    def search_x(self, fresh: Sequence[int]) -> Optional[tuple[PauliString, LearnedGenerator]]:
        for attempt in range(1, self.budget + 1):
            local, source = self._candidate(fresh)
            gen = self._test(source)
            if gen is not None:
                self.stats.x_attempts.append(attempt)
                return local, gen
        return None

    def search_z(self, fresh: Sequence[int], x_local: PauliString) -> Optional[tuple[PauliString, LearnedGenerator]]:
        for attempt in range(1, self.budget + 1):
            while True:
                local, source = self._candidate(fresh)
                if not local.commutes_with(x_local):
                    break
            gen = self._test(source)
            if gen is not None:
                self.stats.z_attempts.append(attempt)
                return local, gen
        self.stats.z_attempts.append(self.budget)
        return None

    def rediagonalize(self) -> None:
        tau = TauMatrix.from_slots(self.local_n, self.pair_locals, self.unpaired_locals)
        self.lift = inverse(diagonalize(tau).diagonalizer)
        logger.debug(f"Re-diagonalized: pairs={len(self.pairs)}, unpaired={len(self.unpaired)}")

    def run(self) -> None:
        while self.used < self.local_n:
            fresh = list(range(self.used, self.local_n))
            found = self.search_x(fresh)
            if found is None:
                self.stats.budget_exhausted = True
                logger.warning(
                    f"Sampling budget {self.budget} exhausted after {self.used} generators; "
                    f"declaring the group complete"
                )
                break
            x_local, x_gen = found
            self._accept(x_gen)
            partner = self.search_z(fresh, x_local)
            if partner is None:
                self.unpaired.append(x_gen)
                self.unpaired_locals.append(x_local)
            else:
                z_local, z_gen = partner
                self._accept(z_gen)
                self.pairs.append((x_gen, z_gen))
                self.pair_locals.append((x_local, z_local))
            self.rediagonalize()

    def generators(self) -> List[LearnedGenerator]:
        out: List[LearnedGenerator] = []
        for x_gen, z_gen in self.pairs:
            out.extend([x_gen, z_gen])
        out.extend(self.unpaired)
        return out


def build_decoder(
    n: int,
    generators: Sequence[LearnedGenerator],
    rng: np.random.Generator,
) -> tuple[CliffordTableau, CliffordTableau, TauMatrix]:
    """
    Uniformly random Clifford V agreeing with the learned images.

    Args:
        n: Number of qubits
        generators: Independent learned generators
        rng: Random generator

    Returns:
        (V, diagonalizer A of the generator set, tau of the set); V = A B with B
        completing the images of the diagonalized rows
    """
    tau_src = build_tau([g.source for g in generators], n)
    a = diagonalize(tau_src).diagonalizer
    rows = list(tau_src.rows)
    phases: List[int] = []
    for alpha in tau_src.constrained_rows:
        src, img = _combine(generators, tau_src.sources[alpha], n)
        if src.vec != tau_src.rows[alpha]:
            raise LearningError("Tau row does not match the product of its sources")
        rows[alpha] = img.vec
        phases.append(img.phase_exp >> 1)
    tau_img = TauMatrix(n, tuple(rows), tau_src.pair_count, tau_src.unpaired_count, tau_src.sources)
    b = complete_constrained(tau_img, phases, rng)
    return compose(a, b), a, tau_src


def learn(
    circuit: DopedCircuit,
    params: Optional[CCParams] = None,
    rng: Optional[np.random.Generator] = None,
    oracle: Optional[DopedOracle] = None,
) -> LearnResult:
    """
    Run the CC algorithm on the last n - m qubits.

    Args:
        circuit: The doped scrambler, accessed only through the oracle
        params: Learning parameters
        rng: Random generator (default from params.seed or settings)
        oracle: Optional pre-built oracle (its counter is reused)

    Returns:
        LearnResult whose decoder reproduces every learned image with its sign
    """
    params = params or CCParams()
    n = circuit.n
    if params.m > n:
        raise ValueError(f"Excluded qubit count m={params.m} exceeds n={n}")
    rng = rng if rng is not None else make_rng(params.seed)
    if oracle is None:
        oracle = DopedOracle(circuit, params.mode, params.shots_for(n), rng)
    start_queries = oracle.queries
    budget = params.budget_for(n, circuit.t)

    learner = _Learner(oracle, params.m, budget, rng)
    learner.run()
    generators = learner.generators()
    decoder, diag, _ = build_decoder(n, generators, rng)

    for g in generators:
        if conjugate_pauli(decoder, g.source) != g.signed_image:
            raise LearningError(f"Decoder does not reproduce the image of {g.source}")

    stats = learner.stats
    stats.oracle_queries = oracle.queries - start_queries
    stats.k_reached = len(generators)
    stats.pair_count = len(learner.pairs)
    stats.unpaired_count = len(learner.unpaired)
    logger.info(
        f"Learned {len(generators)} generators (pairs={stats.pair_count}, unpaired={stats.unpaired_count}) "
        f"in {stats.sampling_steps} steps and {stats.oracle_queries} queries"
    )
    return LearnResult(n, params.m, generators, decoder, diag, stats, stats.pair_count, stats.unpaired_count)


@dataclass
class Decomposition:
    """U_t = U0 (1_s (x) u) U0' with the residual verified on the first s qubits."""

    u0: CliffordTableau
    u0_prime: CliffordTableau
    s: int
    learn_result: LearnResult
    residual: DopedCircuit
    gate_counts: Dict[str, Dict[str, int]]
    attempts: int = 1


def residual_circuit(circuit: DopedCircuit, u0: CliffordTableau, u0_prime: CliffordTableau) -> DopedCircuit:
    """Gates of U0^dag U_t U0'^dag in time order."""
    gates = synthesize(u0_prime).inverse() + circuit.gates + synthesize(u0).inverse()
    return DopedCircuit(gates)


def residual_is_identity(residual: DopedCircuit, s: int) -> bool:
    """True iff X_j and Z_j for j < s are mapped to themselves with sign +1."""
    for j in range(s):
        for kind in ("X", "Z"):
            p = PauliString.local(residual.n, j, kind)
            if propagate_pauli(p, residual).as_single() != p:
                return False
    return True


def decompose(
    circuit: DopedCircuit,
    rng: Optional[np.random.Generator] = None,
    params: Optional[CCParams] = None,
    retries: Optional[int] = None,
) -> Decomposition:
    """
    Split a doped circuit into two Cliffords around a residual on n - s qubits.

    Args:
        circuit: The doped circuit
        rng: Random generator
        params: Learning parameters (m is forced to 0)
        retries: Fresh-seed retries after a failed check (default settings.decompose_retries)

    Returns:
        Decomposition with U0 = A (the diagonalizer of the learned group),
        U0' = A^dag V and s = number of learned pairs
    """
    rng = rng if rng is not None else make_rng()
    base = params or CCParams()
    params = base.model_copy(update={"m": 0})
    retries = settings.decompose_retries if retries is None else retries
    attempt_rng = rng
    for attempt in range(1, retries + 2):
        result = learn(circuit, params, attempt_rng)
        u0 = result.diagonalizer
        u0_prime = compose(u0, result.decoder, invert_a=True)
        s = result.pair_count
        residual = residual_circuit(circuit, u0, u0_prime)
        if residual_is_identity(residual, s):
            counts = {
                "u0": synthesize(u0).counts(),
                "u0_prime": synthesize(u0_prime).counts(),
                "circuit": circuit.gates.counts(),
            }
            logger.info(f"Decomposed n={circuit.n}, t={circuit.t} circuit with s={s} (attempt {attempt})")
            return Decomposition(u0, u0_prime, s, result, residual, counts, attempt)
        logger.warning(f"Residual check failed on attempt {attempt}; retrying with a fresh seed")
        attempt_rng = spawn_rng(rng)
    raise DecompositionError(f"Residual is not the identity on the claimed block after {retries + 1} attempts")


@dataclass
class CompressedState:
    """U_t|0> = D~ (|0>_s (x) |phi>)."""

    d_tilde: CliffordTableau
    s: int
    phi: np.ndarray
    stabilizers: List[PauliString]


def compress_state(
    circuit: DopedCircuit,
    rng: Optional[np.random.Generator] = None,
    learn_result: Optional[LearnResult] = None,
) -> CompressedState:
    """
    Compress the doped stabilizer state U_t|0>.

    Learned generators whose images are Z-type strings stabilize the state (with
    the image sign); a diagonalizer of these commuting strings, followed by H and
    sign-fixing X gates, maps them to Z_j on the first s qubits.

    Args:
        circuit: The doped circuit
        rng: Random generator for learning
        learn_result: Existing m=0 learning result

    Returns:
        CompressedState with the dense residual state on n - s qubits
    """
    n = circuit.n
    check_cap(n)
    if learn_result is None:
        learn_result = learn(circuit, CCParams(m=0), rng if rng is not None else make_rng())
    gens = learn_result.generators
    masks = gf2_nullspace([g.image.x for g in gens])
    stabilizers: List[PauliString] = []
    signs: List[int] = []
    for mask in masks:
        src, img = _combine(gens, mask, n)
        stabilizers.append(src)
        signs.append(img.sign)
    k = len(stabilizers)
    d = diagonalize(TauMatrix.from_slots(n, [], stabilizers)).diagonalizer if k else CliffordTableau.identity(n)
    layer = []
    for j, lam in enumerate(signs):
        if lam < 0:
            # X = H S S H
            layer.extend([h(j), s(j), s(j), h(j)])
    layer.extend(h(j) for j in range(k))
    d_tilde = compose(d, from_gates(layer, n))

    psi = dense_unitary(circuit)[:, 0]
    rotated = dense_clifford(d_tilde).conj().T @ psi
    block = rotated.reshape(2**k, 2 ** (n - k))
    phi = block[0].copy()
    leak = float(np.sum(np.abs(block[1:]) ** 2))
    if leak > 1e-8:
        raise LearningError(f"State is not stabilized by the learned Z-type group (leak {leak:.3g})")
    logger.info(f"Compressed n={n}, t={circuit.t} state onto {n - k} qubits")
    return CompressedState(d_tilde, k, phi, stabilizers)


def residual_reconstruct(
    circuit: DopedCircuit,
    u0: CliffordTableau,
    u0_prime: CliffordTableau,
    s: Optional[int] = None,
    tol: float = 1e-10,
) -> tuple[np.ndarray, int]:
    """
    Dense residual u on n - s qubits with U0^dag U_t U0'^dag = 1_s (x) u.

    Args:
        circuit: The doped circuit
        u0, u0_prime: Clifford factors
        s: Identity-block size; inferred as the largest valid size when None
        tol: Entrywise tolerance of the block check

    Returns:
        (u, s)
    """
    n = circuit.n
    check_cap(n)
    full = dense_unitary(residual_circuit(circuit, u0, u0_prime))
    candidates = [s] if s is not None else list(range(n, -1, -1))
    for size in candidates:
        rest = 2 ** (n - size)
        u = full.reshape(2**size, rest, 2**size, rest)[0, :, 0, :]
        if np.max(np.abs(np.kron(np.eye(2**size), u) - full)) <= tol:
            return u, size
    raise DecompositionError(f"Residual is not of the form 1 (x) u for s={s}")


def recomposition_error(
    circuit: DopedCircuit,
    u0: CliffordTableau,
    u0_prime: CliffordTableau,
    u: np.ndarray,
) -> float:
    """Max deviation of U0 (1 (x) u) U0' from U_t in conjugating every local generator."""
    n = circuit.n
    s = n - int(round(np.log2(u.shape[0])))
    recomposed = dense_clifford(u0) @ np.kron(np.eye(2**s), u) @ dense_clifford(u0_prime)
    target = dense_unitary(circuit)
    worst = 0.0
    for j in range(n):
        for kind in ("X", "Z"):
            p = PauliString.local(n, j, kind)
            diff = dense_conjugate(recomposed, p) - dense_conjugate(target, p)
            worst = max(worst, float(np.max(np.abs(diff))))
    return worst
