"""Pydantic models for decoder parameters, reports and experiment records."""

import math
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from ..config import settings


class CCParams(BaseModel):
    """Parameters of the CC learning algorithm."""

    m: int = Field(default=0, ge=0, description="Number of excluded qubits (|C| for subsystem learning)")
    sampling_budget: Optional[int] = Field(
        default=None,
        ge=1,
        description="Draws per search step M''; default ceil(2^(t+2) n / 3)"
    )
    shots: Optional[int] = Field(
        default=None,
        ge=1,
        description="Shots per measurement setting M in shots mode; default n"
    )
    mode: str = Field(
        default_factory=lambda: settings.oracle_mode,
        pattern="^(exact|shots)$",
        description="Oracle mode ('exact' or 'shots')"
    )
    seed: Optional[int] = Field(default=None, description="Seed for a fresh generator when none is passed")

    def budget_for(self, n: int, t: int) -> int:
        if self.sampling_budget is not None:
            return self.sampling_budget
        return math.ceil(2 ** (t + 2) * n / 3)

    def shots_for(self, n: int) -> int:
        return self.shots if self.shots is not None else n


class Partition(BaseModel):
    """
    Input split A|B and output split C|D of an n-qubit register.

    A is the first |A| input qubits and D the last |D| output qubits.
    """

    n_a: int = Field(..., ge=0, description="|A|")
    n_b: int = Field(..., ge=0, description="|B|")
    n_c: int = Field(..., ge=0, description="|C|")
    n_d: int = Field(..., ge=0, description="|D|")

    @model_validator(mode="after")
    def _check_sizes(self) -> "Partition":
        if self.n_a + self.n_b != self.n_c + self.n_d:
            raise ValueError(
                f"|A|+|B| = {self.n_a + self.n_b} differs from |C|+|D| = {self.n_c + self.n_d}"
            )
        if self.n_a + self.n_b < 1:
            raise ValueError("Partition must cover at least one qubit")
        return self

    @classmethod
    def from_sizes(cls, n: int, n_a: int, n_d: int) -> "Partition":
        return cls(n_a=n_a, n_b=n - n_a, n_c=n - n_d, n_d=n_d)

    @property
    def n(self) -> int:
        return self.n_a + self.n_b

    @property
    def d_a(self) -> int:
        return 2**self.n_a

    @property
    def d_d(self) -> int:
        return 2**self.n_d

    @property
    def d(self) -> int:
        return 2**self.n

    @property
    def a_qubits(self) -> List[int]:
        return list(range(self.n_a))

    @property
    def d_qubits(self) -> List[int]:
        return list(range(self.n - self.n_d, self.n))


class LearnStats(BaseModel):
    """Counters collected by one learning run."""

    sampling_steps: int = Field(default=0, description="Candidates tested against the oracle")
    oracle_queries: int = Field(default=0, description="Oracle uses")
    k_reached: int = Field(default=0, description="Generators found")
    pair_count: int = Field(default=0, description="Anticommuting pairs found")
    unpaired_count: int = Field(default=0, description="Generators without a partner")
    x_attempts: List[int] = Field(default_factory=list, description="Draws per accepted first generator")
    z_attempts: List[int] = Field(default_factory=list, description="Draws per partner search")
    budget_exhausted: bool = Field(default=False, description="Search stopped on an exhausted budget")

    def to_text(self) -> str:
        keys = ["sampling_steps", "oracle_queries", "k_reached", "pair_count", "unpaired_count", "budget_exhausted"]
        return "\n".join(f"{key}={getattr(self, key)}" for key in keys) + "\n"


class HPReport(BaseModel):
    """Hayden-Preskill quantities for one (circuit, decoder, partition)."""

    fidelity: float = Field(..., description="Decoding fidelity F_V")
    omega_gd: float = Field(..., description="Truncated OTOC over G_D")
    omega4: float = Field(..., description="Four-point OTOC over P(D)")
    r: float = Field(..., description="Correction term R")
    rprime: float = Field(..., description="Correction term R'")
    gd_size: int = Field(..., description="|G_D|")
    gd_rank: int = Field(..., description="Number of independent generators of G_D")
    bound: float = Field(..., description="Lower bound 1/(1+2^(2|A|+t-2|D|))")
    success: bool = Field(..., description="R = R' = 0")
    consistent: bool = Field(..., description="(1+R)/(d_A^2 Omega_GD + R') equals the direct ratio exactly")
    exact: Dict[str, str] = Field(default_factory=dict, description="Exact values as text")

    def to_text(self) -> str:
        lines = [
            f"fidelity={self.fidelity:.12g}",
            f"omega_gd={self.omega_gd:.12g}",
            f"omega4={self.omega4:.12g}",
            f"R={self.r:.12g}",
            f"Rprime={self.rprime:.12g}",
            f"gd_size={self.gd_size}",
            f"gd_rank={self.gd_rank}",
            f"bound={self.bound:.12g}",
            f"success={str(self.success).lower()}",
            f"consistent={str(self.consistent).lower()}",
        ]
        lines.extend(f"{key}_exact={value}" for key, value in self.exact.items())
        return "\n".join(lines) + "\n"


class ExperimentConfig(BaseModel):
    """Configuration of the doped-scrambler decoding experiment."""

    n: int = Field(default=8, ge=1, description="Number of qubits")
    n_a: int = Field(default=1, ge=0, description="|A|")
    n_d: int = Field(default=4, ge=1, description="|D|")
    t_min: int = Field(default=0, ge=0, description="Smallest T count")
    t_max: int = Field(default=6, ge=0, description="Largest T count")
    samples: int = Field(default=100, ge=1, description="Samples per T count")
    seed: int = Field(default_factory=lambda: settings.default_seed, description="Base seed")
    mode: str = Field(
        default_factory=lambda: settings.oracle_mode,
        pattern="^(exact|shots)$",
        description="Oracle mode"
    )
    output: Optional[str] = Field(default=None, description="CSV output path")
    workers: int = Field(default_factory=lambda: settings.worker_count, ge=0, description="Worker processes")
    exact_sidecar: bool = Field(default=False, description="Also write exact values to a sidecar file")

    @model_validator(mode="after")
    def _check_ranges(self) -> "ExperimentConfig":
        if self.n_a > self.n or self.n_d > self.n:
            raise ValueError(f"|A|={self.n_a} and |D|={self.n_d} must not exceed n={self.n}")
        if self.t_min > self.t_max:
            raise ValueError(f"t_min={self.t_min} exceeds t_max={self.t_max}")
        return self

    @property
    def partition(self) -> Partition:
        return Partition.from_sizes(self.n, self.n_a, self.n_d)

    @property
    def t_values(self) -> List[int]:
        return list(range(self.t_min, self.t_max + 1))


CSV_HEADER = ["t", "sample", "seed", "steps", "queries", "gd_rank", "R_zero", "fidelity", "success"]


class SampleRecord(BaseModel):
    """One (t, sample) row of the experiment dataset."""

    t: int
    sample: int
    seed: int
    steps: int
    queries: int
    gd_rank: int
    r_zero: bool
    fidelity: float
    success: bool
    exact: Dict[str, str] = Field(default_factory=dict)
    error: Optional[str] = None

    def csv_row(self) -> List[str]:
        return [
            str(self.t),
            str(self.sample),
            str(self.seed),
            str(self.steps),
            str(self.queries),
            str(self.gd_rank),
            "1" if self.r_zero else "0",
            f"{self.fidelity:.12g}",
            "1" if self.success else "0",
        ]


class Fig2Summary(BaseModel):
    """Per-T-count aggregate of an experiment."""

    t: int
    samples: int
    errored: int = Field(default=0, description="Samples that raised instead of finishing")
    mean_steps: float
    mean_queries: float
    mean_fidelity: float
    failure_fraction: float
    bound: float = Field(..., description="Failure bound 2^(t-2|C|)")
