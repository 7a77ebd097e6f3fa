"""Tests for the doped Clifford decoder."""
