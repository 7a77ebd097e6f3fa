"""Tests for exact coefficient arithmetic."""

import math
from fractions import Fraction

import pytest

from doped_decoder.oracle.coeff import Coeff, QSqrt2


def test_normal_form_is_unique():
    assert Coeff(2, 0, 2) == Coeff.one()
    assert Coeff(1, 0, -1) == Coeff(0, 1, 0)
    assert Coeff(0, 0, 5) == Coeff.zero()
    assert Coeff(4, 2, 3) == Coeff(2, 1, 1)


def test_arithmetic():
    half_root = Coeff.monomial(1, 1)
    assert half_root * half_root == Coeff.monomial(1, 2)
    assert half_root + half_root == Coeff(0, 1, 0)
    assert half_root - half_root == Coeff.zero()
    assert 3 * Coeff.one() == Coeff(3)
    assert Coeff.one() + 1 == Coeff(2)
    assert Coeff(3).div_pow2(2) == Coeff.monomial(3, 4)
    assert Coeff.one().div_sqrt2(3) == Coeff.monomial(1, 3)


def test_float_values():
    assert float(Coeff.monomial(1, 1)) == pytest.approx(1 / math.sqrt(2))
    assert float(Coeff(1, 1, 1)) == pytest.approx((1 + math.sqrt(2)) / math.sqrt(2))
    assert float(Coeff(-3, 0, 4)) == pytest.approx(-0.75)


def test_sign_and_order():
    assert Coeff(1, -1, 0).sign == -1
    assert Coeff(-1, 1, 0).sign == 1
    assert Coeff.zero().sign == 0
    assert Coeff.monomial(1, 1) < Coeff.one()
    assert abs(Coeff(-1, 0, 1)) == Coeff.monomial(1, 1)
    assert max([Coeff.monomial(1, 2), Coeff.monomial(-1, 0), Coeff.monomial(1, 1)]) == Coeff.monomial(1, 1)


def test_monomial_access():
    c = Coeff.monomial(-3, 5)
    assert c.is_monomial()
    assert c.numerator == -3
    assert c.sqrt2_exp == 5
    assert Coeff(0, 1, 0).as_monomial() == (2, 1)
    with pytest.raises(ValueError):
        Coeff(1, 1, 1).as_monomial()


def test_text_rendering():
    assert Coeff.zero().to_text() == "0"
    assert Coeff.one().to_text() == "1"
    assert Coeff.monomial(3, 4).to_text() == "3/2^2"
    assert Coeff.monomial(1, 3).to_text() == "1/(2^1·√2)"
    assert Coeff.monomial(-1, 1).to_text() == "-1/(2^0·√2)"
    assert Coeff(1, 1, 2).to_text() == "(1+1√2)/2^1"


def test_qsqrt2_from_coeff():
    assert QSqrt2.from_coeff(Coeff.monomial(1, 1)) == QSqrt2(0, Fraction(1, 2))
    assert QSqrt2.from_coeff(Coeff.monomial(3, 4)) == QSqrt2(Fraction(3, 4))
    assert QSqrt2.from_coeff(Coeff(1, 1, 1)) == QSqrt2(1, Fraction(1, 2))


def test_qsqrt2_division():
    root = QSqrt2(0, 1)
    assert QSqrt2(1) / root == QSqrt2(0, Fraction(1, 2))
    x = QSqrt2(Fraction(3, 7), Fraction(-2, 5))
    assert (x / x) == QSqrt2(1)
    assert 1 / QSqrt2(2) == QSqrt2(Fraction(1, 2))
    with pytest.raises(ZeroDivisionError):
        QSqrt2(1) / QSqrt2(0)


def test_qsqrt2_compare_and_text():
    assert QSqrt2(0, 1) > QSqrt2(Fraction(7, 5))
    assert QSqrt2(1) == Coeff.one()
    assert QSqrt2(Fraction(64, 65)).to_text() == "64/65"
    assert QSqrt2(Fraction(1, 4)).to_text() == "1/2^2"
    assert QSqrt2(0, Fraction(1, 2)).to_text() == "1/2^1·√2"
    assert float(QSqrt2(1, 1)) == pytest.approx(1 + math.sqrt(2))
