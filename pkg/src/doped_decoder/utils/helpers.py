"""Helper functions for seeding, number formatting and file I/O."""

import hashlib
from pathlib import Path
from typing import Optional, Union

import numpy as np

from ..config import settings

SEED_MASK = (1 << 64) - 1


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    """
    Build the counter-based generator used throughout the package.

    Args:
        seed: 64-bit seed; defaults to settings.default_seed

    Returns:
        numpy Generator backed by Philox
    """
    if seed is None:
        seed = settings.default_seed
    return np.random.Generator(np.random.Philox(int(seed) & SEED_MASK))


def derive_seed(seed: int, t: int, sample: int) -> int:
    """Per-sample seed: base seed XOR a 64-bit blake2b digest of (t, sample)."""
    digest = hashlib.blake2b(f"{t}:{sample}".encode(), digest_size=8).digest()
    return (int(seed) ^ int.from_bytes(digest, "little")) & SEED_MASK


def spawn_rng(rng: np.random.Generator) -> np.random.Generator:
    """Fresh generator seeded from a draw of ``rng`` (used for retries)."""
    child = int(rng.integers(0, 2**63, dtype=np.int64))
    return make_rng(child)


def format_float(value: float) -> str:
    """12 significant digits, the CSV float format."""
    return f"{value:.12g}"


def read_text(path: Union[str, Path]) -> str:
    """Read a UTF-8 text file such as a circuit or tableau."""
    return Path(path).read_text(encoding="utf-8")


def write_text(path: Union[str, Path], text: str) -> Path:
    """Write ``text``, creating parent directories as needed."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    return target
