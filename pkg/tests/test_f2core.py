"""Tests for F2 vectors, the symplectic form and Pauli strings."""

import pytest

from doped_decoder.exceptions import DimensionMismatchError
from doped_decoder.stabilizer.f2core import (
    F2Vec,
    GF2Elimination,
    PauliString,
    SymplecticMatrix,
    format_pauli,
    format_pauli_bits,
    gf2_in_span,
    gf2_nullspace,
    gf2_rank,
    iter_paulis,
    parse_pauli,
    parse_pauli_bits,
    pauli_mul,
    symplectic_form,
)


def test_symplectic_form_single_qubit():
    """X and Z anticommute, every letter commutes with itself."""
    x, y, z = parse_pauli("X"), parse_pauli("Y"), parse_pauli("Z")
    assert symplectic_form(x, z) == 1
    assert symplectic_form(x, y) == 1
    assert symplectic_form(y, z) == 1
    for p in (x, y, z):
        assert symplectic_form(p, p) == 0


def test_symplectic_form_two_qubits():
    """XX and ZZ commute although each factor anticommutes."""
    assert symplectic_form(parse_pauli("XX"), parse_pauli("ZZ")) == 0
    assert symplectic_form(parse_pauli("XI"), parse_pauli("ZZ")) == 1


def test_symplectic_form_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        symplectic_form(parse_pauli("X"), parse_pauli("XX"))


def test_pauli_mul_phases():
    """Products follow Y = iXZ."""
    assert format_pauli(pauli_mul(parse_pauli("X"), parse_pauli("Z"))) == "-iY"
    assert format_pauli(pauli_mul(parse_pauli("Z"), parse_pauli("X"))) == "iY"
    assert pauli_mul(parse_pauli("Y"), parse_pauli("Y")) == PauliString.identity(1)
    assert format_pauli(parse_pauli("X") * parse_pauli("Y")) == "iZ"


def test_pauli_mul_is_associative():
    a, b, c = parse_pauli("XYZ"), parse_pauli("-ZZY"), parse_pauli("iYXI")
    assert (a * b) * c == a * (b * c)


def test_parse_and_format():
    p = parse_pauli("-YIZ")
    assert p.n == 3
    assert p.phase_exp == 2
    assert p.letter(0) == "Y"
    assert p.letter(1) == "I"
    assert p.letter(2) == "Z"
    assert format_pauli(p) == "-YIZ"
    assert parse_pauli("iX").phase_exp == 1
    assert parse_pauli("-iX").phase_exp == 3


def test_parse_rejects_bad_text():
    with pytest.raises(ValueError):
        parse_pauli("XQ")
    with pytest.raises(ValueError):
        parse_pauli("-")
    with pytest.raises(ValueError):
        parse_pauli("--X")


def test_bit_format_is_interleaved():
    """Bits run x1 z1 x2 z2 ..."""
    assert format_pauli_bits(parse_pauli("XZ")) == "1001"
    assert format_pauli_bits(parse_pauli("-Y")) == "-11"
    assert parse_pauli_bits("0110") == parse_pauli("ZX")
    with pytest.raises(DimensionMismatchError):
        parse_pauli_bits("0110", n=3)


def test_f2vec_key_round_trip():
    vec = F2Vec(3, 0b101, 0b011)
    assert F2Vec.from_key(3, vec.key) == vec
    assert vec.weight == 3
    assert (vec ^ vec).is_zero()
    with pytest.raises(ValueError):
        F2Vec(2, 0b100, 0)


def test_hermitian_and_sign():
    p = parse_pauli("-XZ")
    assert p.is_hermitian()
    assert p.sign == -1
    assert p.canonical() == parse_pauli("XZ")
    assert (-p) == parse_pauli("XZ")
    with pytest.raises(ValueError):
        _ = parse_pauli("iX").sign


def test_restrict_and_embed():
    p = parse_pauli("XYZ")
    assert p.restrict([2, 0]) == parse_pauli("ZX")
    assert parse_pauli("ZX").embed(3, [2, 0]) == parse_pauli("XIZ")
    with pytest.raises(DimensionMismatchError):
        parse_pauli("ZX").embed(3, [0])


def test_local_generators():
    assert PauliString.local(3, 1, "Z") == parse_pauli("IZI")
    assert PauliString.local(2, 0, "Y") == parse_pauli("YI")
    with pytest.raises(ValueError):
        PauliString.local(2, 2, "X")


def test_gf2_rank_and_nullspace():
    x, z, y = parse_pauli("X"), parse_pauli("Z"), parse_pauli("Y")
    assert gf2_rank([x, z, y]) == 2
    assert gf2_nullspace([x, z, y]) == [0b111]
    assert gf2_in_span(y, [x, z])
    assert not gf2_in_span(parse_pauli("XI"), [parse_pauli("IX"), parse_pauli("ZZ")])


def test_gf2_elimination_tracks_rank():
    elim = GF2Elimination.empty()
    assert elim.insert(0b0011)
    assert elim.insert(0b0101)
    assert not elim.insert(0b0110)
    assert elim.rank == 2
    assert elim.contains(0b0110)
    assert not elim.contains(0b1000)


def test_iter_paulis_on_subset():
    strings = list(iter_paulis(3, [2]))
    assert len(strings) == 4
    assert strings[0].is_identity()
    assert all((p.x | p.z) & 0b011 == 0 for p in strings)
    assert len({p.key for p in iter_paulis(2, [0, 1])}) == 16


def test_identity_symplectic_matrix():
    assert SymplecticMatrix.identity(3).is_symplectic()
