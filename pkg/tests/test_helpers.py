"""Tests for helper functions."""

from doped_decoder.config import settings
from doped_decoder.utils.helpers import derive_seed, format_float, make_rng, read_text, spawn_rng, write_text


def test_make_rng_is_reproducible():
    a = make_rng(5).integers(0, 2**32, size=4)
    b = make_rng(5).integers(0, 2**32, size=4)
    assert list(a) == list(b)
    default = make_rng().integers(0, 2**32)
    assert default == make_rng(settings.default_seed).integers(0, 2**32)


def test_derive_seed():
    """Seeds are stable and differ across (t, sample)."""
    seeds = {derive_seed(7, t, s) for t in range(4) for s in range(4)}
    assert len(seeds) == 16
    assert derive_seed(7, 1, 2) == derive_seed(7, 1, 2)
    assert derive_seed(7, 1, 2) != derive_seed(8, 1, 2)
    assert 0 <= derive_seed(7, 1, 2) < 2**64


def test_spawn_rng_advances_parent():
    parent = make_rng(1)
    first = spawn_rng(parent).integers(0, 2**32)
    second = spawn_rng(parent).integers(0, 2**32)
    assert first != second


def test_format_float():
    assert format_float(0.98838) == "0.98838"
    assert format_float(1.0) == "1"
    assert format_float(1 / 3) == "0.333333333333"


def test_write_and_read_text(tmp_path):
    target = write_text(tmp_path / "a" / "b" / "out.txt", "hello\n")
    assert target.exists()
    assert read_text(target) == "hello\n"
