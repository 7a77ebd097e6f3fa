"""Hayden-Preskill quantities for a doped scrambler and a Clifford decoder.

Every average is a sum over enumerated Pauli strings, evaluated with the
twisted-trace rule: for a Pauli sum X = sum_j x_j p_j,

    (1/d_A^2) sum_{P_A} Tr(P_A X P_A Y)/d = sum_j x_j y_j [p_j restricted to A is I]

so only terms with no support on A survive. A is the first |A| qubits and D the
last |D| qubits (see Partition).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import numpy as np

from ..config import settings
from ..exceptions import EnumerationLimitError
from ..models.decoder_models import HPReport, Partition
from ..oracle.circuit import DopedCircuit, PauliSum, propagate_pauli
from ..oracle.coeff import Coeff, QSqrt2
from ..stabilizer.f2core import GF2Elimination, PauliString, iter_paulis
from ..stabilizer.subroutines import random_bits, random_pauli
from ..stabilizer.tableau import CliffordTableau, conjugate_pauli
from ..utils.helpers import make_rng
from .cc import LearnedGenerator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupElement:
    """A product of learned generators: U^dag source U = image (image carries the sign)."""

    source: PauliString
    image: PauliString


def enumerate_group(generators: Sequence[LearnedGenerator], limit: Optional[int] = None) -> List[GroupElement]:
    """
    All 2^k products of k independent generators, identity first.

    Args:
        generators: Learned generators
        limit: Maximum group size (default settings.enumeration_limit)

    Returns:
        Elements with phase-free sources and signed images
    """
    limit = settings.enumeration_limit if limit is None else limit
    k = len(generators)
    if 2**k > limit:
        raise EnumerationLimitError(f"Group of size 2^{k} exceeds the enumeration limit {limit}")
    if not generators:
        return []
    n = generators[0].source.n
    identity = PauliString.identity(n)
    elements = [GroupElement(identity, identity)]
    for g in generators:
        grown = []
        for e in elements:
            src = e.source * g.source
            img = e.image * g.signed_image
            grown.append(GroupElement(src.canonical(), img.with_phase(img.phase_exp - src.phase_exp)))
        elements.extend(grown)
    return elements


def _check_limits(part: Partition, monte_carlo: bool = False) -> None:
    if monte_carlo:
        return
    if part.n_d > settings.hp_exact_max_qubits:
        raise EnumerationLimitError(
            f"|D|={part.n_d} exceeds hp_exact_max_qubits={settings.hp_exact_max_qubits}; "
            f"use the Monte Carlo estimate"
        )
    if 4 ** (part.n_a + part.n_d) > settings.enumeration_limit:
        raise EnumerationLimitError(
            f"4^(|A|+|D|) terms exceed the enumeration limit {settings.enumeration_limit}; "
            f"use the Monte Carlo estimate"
        )


def _a_mask(part: Partition) -> int:
    return (1 << part.n_a) - 1


def _omega_term(x: PauliSum, a_mask: int) -> Coeff:
    """(1/d_A^2) sum_{P_A} Tr(P_A X P_A X)/d."""
    total = Coeff.zero()
    for p, c in x:
        if not (p.x | p.z) & a_mask:
            total = total + c * c
    return total


def _decoder_overlap(x: PauliSum, decoder: CliffordTableau, p: PauliString) -> tuple[Coeff, PauliString]:
    """Tr(U^dag p U V^dag p V)/d and the signed decoder image V^dag p V."""
    v = conjugate_pauli(decoder, p)
    c = x.coefficient(v)
    return (c if v.phase_exp == 0 else -c), v


def _d_paulis(part: Partition) -> Iterable[PauliString]:
    return iter_paulis(part.n, part.d_qubits)


def four_point_otoc(
    circuit: DopedCircuit,
    part: Partition,
    monte_carlo: bool = False,
    rng: Optional[np.random.Generator] = None,
) -> Coeff | float:
    """
    Average of Tr(P_A P_D(U) P_A P_D(U))/d over P(A) and P(D), identity included.

    Args:
        circuit: The scrambler U on part.n qubits
        part: Partition
        monte_carlo: Sample P(D) instead of enumerating it

    Returns:
        Exact Coeff, or a float estimate in Monte Carlo mode
    """
    if monte_carlo:
        return estimate_four_point_otoc(circuit, part, rng=rng)
    _check_limits(part)
    mask = _a_mask(part)
    total = Coeff.zero()
    for pd in _d_paulis(part):
        total = total + _omega_term(propagate_pauli(pd, circuit), mask)
    return total.div_pow2(2 * part.n_d)


def truncated_otoc(
    circuit: DopedCircuit,
    part: Partition,
    generators: Sequence[LearnedGenerator],
    monte_carlo: bool = False,
    rng: Optional[np.random.Generator] = None,
) -> Coeff | float:
    """Four-point OTOC with P(D) replaced by the group the generators span."""
    if monte_carlo:
        return estimate_truncated_otoc(circuit, part, generators, rng=rng)
    _check_limits(part)
    elements = enumerate_group(generators)
    if not elements:
        elements = [GroupElement(PauliString.identity(part.n), PauliString.identity(part.n))]
    mask = _a_mask(part)
    total = Coeff.zero()
    for e in elements:
        total = total + _omega_term(propagate_pauli(e.source, circuit), mask)
    return total.div_pow2(len(generators))


@dataclass
class _Sums:
    n_in: Coeff
    n_out: Coeff
    dn_in: Coeff
    dn_out: Coeff
    omega_in: Coeff
    omega_all: Coeff


def _accumulate(
    circuit: DopedCircuit,
    decoder: CliffordTableau,
    part: Partition,
    group: Optional[GF2Elimination],
) -> _Sums:
    """One pass over P(D) splitting every sum into G_D and its complement."""
    mask = _a_mask(part)
    d_a2 = part.d_a**2
    sums = _Sums(*(Coeff.zero() for _ in range(6)))
    for pd in _d_paulis(part):
        x = propagate_pauli(pd, circuit)
        n_val, v = _decoder_overlap(x, decoder, pd)
        dn = n_val * d_a2 if not (v.x | v.z) & mask else Coeff.zero()
        omega = _omega_term(x, mask)
        sums.omega_all = sums.omega_all + omega
        inside = group is not None and group.contains(pd.key)
        if inside:
            sums.n_in = sums.n_in + n_val
            sums.dn_in = sums.dn_in + dn
            sums.omega_in = sums.omega_in + omega
        else:
            sums.n_out = sums.n_out + n_val
            sums.dn_out = sums.dn_out + dn
    return sums


def _group_elimination(generators: Sequence[LearnedGenerator]) -> GF2Elimination:
    elim = GF2Elimination.empty()
    for g in generators:
        elim.insert(g.source.key)
    return elim


def correction_terms(
    circuit: DopedCircuit,
    decoder: CliffordTableau,
    part: Partition,
    generators: Sequence[LearnedGenerator],
) -> tuple[Coeff, Coeff]:
    """
    R and R' from the complement of G_D in P(D).

    Args:
        circuit: The scrambler U
        decoder: Tableau of V
        part: Partition
        generators: Generators of G_D

    Returns:
        (R, R') exactly; both zero for a decoder that matches U on G_D
    """
    _check_limits(part)
    elim = _group_elimination(generators)
    sums = _accumulate(circuit, decoder, part, elim)
    rank = elim.rank
    return sums.n_out.div_pow2(rank), sums.dn_out.div_pow2(rank)


def fidelity(
    circuit: DopedCircuit,
    decoder: CliffordTableau,
    part: Partition,
    monte_carlo: bool = False,
    rng: Optional[np.random.Generator] = None,
) -> QSqrt2 | float:
    """
    Decoding fidelity of V for U.

    Args:
        circuit: The scrambler U
        decoder: Tableau of V
        part: Partition
        monte_carlo: Estimate from sampled P(D)

    Returns:
        The exact ratio of sum_{P_D} Tr(P_D(U) P_D(V))/d to its A-twisted
        counterpart, as a QSqrt2 (float in Monte Carlo mode)
    """
    if monte_carlo:
        return estimate_fidelity(circuit, decoder, part, rng=rng)
    _check_limits(part)
    sums = _accumulate(circuit, decoder, part, None)
    return QSqrt2.from_coeff(sums.n_out) / QSqrt2.from_coeff(sums.dn_out)


def gate_fidelity(circuit: DopedCircuit, decoder: CliffordTableau) -> Coeff:
    """|Tr(V^dag U)|^2/d^2 as the average of Tr(P(U) P(V))/d over all 4^n strings."""
    n = circuit.n
    if 4**n > settings.enumeration_limit:
        raise EnumerationLimitError(f"4^{n} strings exceed the enumeration limit {settings.enumeration_limit}")
    total = Coeff.zero()
    for p in iter_paulis(n, list(range(n))):
        total = total + _decoder_overlap(propagate_pauli(p, circuit), decoder, p)[0]
    return total.div_pow2(2 * n)


def scrambling_value(part: Partition) -> float:
    """d_A^-2 + d_D^-2 - d_A^-2 d_D^-2."""
    a2, d2 = part.d_a**2, part.d_d**2
    return 1.0 / a2 + 1.0 / d2 - 1.0 / (a2 * d2)


def is_scrambler(
    circuit: DopedCircuit,
    part: Partition,
    tol: Optional[float] = None,
    monte_carlo: bool = False,
) -> bool:
    """|Omega(U) - scrambling value| <= tol, default tol = 4/d_D^2."""
    if tol is None:
        tol = 4.0 / part.d_d**2
    if tol < 0:
        raise ValueError(f"Tolerance must be non-negative, got {tol}")
    omega = float(four_point_otoc(circuit, part, monte_carlo=monte_carlo))
    return abs(omega - scrambling_value(part)) <= tol


def fidelity_bound(part: Partition, t: int) -> float:
    """1 / (1 + 2^(2|A| + t - 2|D|))."""
    return 1.0 / (1.0 + 2.0 ** (2 * part.n_a + t - 2 * part.n_d))


def hp_report(
    circuit: DopedCircuit,
    decoder: CliffordTableau,
    part: Partition,
    generators: Sequence[LearnedGenerator],
) -> HPReport:
    """
    All decoding quantities in one pass over P(D).

    The fidelity is evaluated twice, as the direct ratio and as
    (1+R)/(d_A^2 Omega_GD + R'); ``consistent`` records their exact equality.

    Args:
        circuit: The scrambler U
        decoder: Tableau of V
        part: Partition
        generators: Generators of G_D

    Returns:
        HPReport with float and exact values
    """
    _check_limits(part)
    elim = _group_elimination(generators)
    rank = elim.rank
    sums = _accumulate(circuit, decoder, part, elim)
    omega_gd = sums.omega_in.div_pow2(rank)
    omega4 = sums.omega_all.div_pow2(2 * part.n_d)
    r = sums.n_out.div_pow2(rank)
    rprime = sums.dn_out.div_pow2(rank)
    d_a2 = part.d_a**2

    direct = QSqrt2.from_coeff(sums.n_in + sums.n_out) / QSqrt2.from_coeff(sums.dn_in + sums.dn_out)
    formula = QSqrt2.from_coeff(r + 1) / QSqrt2.from_coeff(omega_gd * d_a2 + rprime)
    consistent = direct == formula
    if not consistent:
        logger.warning(f"Fidelity mismatch: direct {direct} vs decomposed {formula}")

    t = circuit.t
    report = HPReport(
        fidelity=float(direct),
        omega_gd=float(omega_gd),
        omega4=float(omega4),
        r=float(r),
        rprime=float(rprime),
        gd_size=2**rank,
        gd_rank=rank,
        bound=fidelity_bound(part, t),
        success=r.is_zero() and rprime.is_zero(),
        consistent=consistent,
        exact={
            "fidelity": direct.to_text(),
            "omega_gd": omega_gd.to_text(),
            "omega4": omega4.to_text(),
            "R": r.to_text(),
            "Rprime": rprime.to_text(),
        },
    )
    logger.debug(f"HP report: {report.to_text().strip()}")
    return report


def estimate_four_point_otoc(
    circuit: DopedCircuit,
    part: Partition,
    samples: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> float:
    """Monte Carlo estimate of the four-point OTOC over sampled P_D."""
    samples = samples or settings.hp_monte_carlo_samples
    rng = rng if rng is not None else make_rng()
    mask = _a_mask(part)
    total = 0.0
    for _ in range(samples):
        pd = random_pauli(part.n, part.d_qubits, rng)
        total += float(_omega_term(propagate_pauli(pd, circuit), mask))
    return total / samples


def estimate_truncated_otoc(
    circuit: DopedCircuit,
    part: Partition,
    generators: Sequence[LearnedGenerator],
    samples: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> float:
    """Monte Carlo estimate over uniformly random products of the generators."""
    samples = samples or settings.hp_monte_carlo_samples
    rng = rng if rng is not None else make_rng()
    mask = _a_mask(part)
    identity = PauliString.identity(part.n)
    total = 0.0
    for _ in range(samples):
        chosen = random_bits(rng, len(generators))
        src = identity
        for i, g in enumerate(generators):
            if (chosen >> i) & 1:
                src = src * g.source
        total += float(_omega_term(propagate_pauli(src.canonical(), circuit), mask))
    return total / samples


def estimate_fidelity(
    circuit: DopedCircuit,
    decoder: CliffordTableau,
    part: Partition,
    samples: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> float:
    """Ratio of Monte Carlo means of the numerator and denominator terms."""
    samples = samples or settings.hp_monte_carlo_samples
    rng = rng if rng is not None else make_rng()
    mask = _a_mask(part)
    d_a2 = part.d_a**2
    num = den = 0.0
    for _ in range(samples):
        pd = random_pauli(part.n, part.d_qubits, rng)
        n_val, v = _decoder_overlap(propagate_pauli(pd, circuit), decoder, pd)
        num += float(n_val)
        if not (v.x | v.z) & mask:
            den += d_a2 * float(n_val)
    if den == 0.0:
        raise ZeroDivisionError("No sampled term contributed to the fidelity denominator")
    return num / den
