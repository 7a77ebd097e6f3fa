"""Exact coefficients in Z[1/sqrt2] and Q(sqrt2).

``Coeff`` holds (a + b*sqrt2) / sqrt2**k with integer a, b and k >= 0 in a unique
normal form; it is closed under addition, multiplication and halving, which is
everything Pauli-sum propagation and Pauli-group averages need. ``QSqrt2`` holds
p + q*sqrt2 with rational p, q and adds division for fidelity ratios.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

SQRT2 = math.sqrt(2.0)


def _sign_of(a: int | Fraction, b: int | Fraction) -> int:
    """Sign of a + b*sqrt2 without floating point."""
    if a >= 0 and b >= 0:
        return 0 if a == 0 and b == 0 else 1
    if a <= 0 and b <= 0:
        return -1
    # opposite signs: compare a^2 with 2 b^2
    if a > 0:
        return 1 if a * a > 2 * b * b else -1
    return 1 if 2 * b * b > a * a else -1


@total_ordering
@dataclass(frozen=True, slots=True, init=False)
class Coeff:
    """
    The number (a + b*sqrt2) / sqrt2**k in normal form.

    Normal form: k >= 0 and, when k > 0, ``a`` is odd (otherwise a factor sqrt2
    cancels); zero is (0, 0, 0). The representation is unique, so equality is
    structural.
    """

    a: int
    b: int
    k: int

    def __init__(self, a: int = 0, b: int = 0, k: int = 0) -> None:
        a, b, k = int(a), int(b), int(k)
        while k < 0:
            # multiply the numerator by sqrt2
            a, b, k = 2 * b, a, k + 1
        while k > 0 and a % 2 == 0:
            a, b, k = b, a // 2, k - 1
        if a == 0 and b == 0:
            k = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "k", k)

    @classmethod
    def monomial(cls, m: int, k: int = 0) -> Coeff:
        """m / sqrt2**k."""
        return cls(m, 0, k)

    @classmethod
    def zero(cls) -> Coeff:
        return cls(0, 0, 0)

    @classmethod
    def one(cls) -> Coeff:
        return cls(1, 0, 0)

    def _lift(self, k: int) -> tuple[int, int]:
        """Numerator pair of this value written over sqrt2**k (k >= self.k)."""
        a, b = self.a, self.b
        for _ in range(k - self.k):
            a, b = 2 * b, a
        return a, b

    def __add__(self, other: Coeff | int) -> Coeff:
        if isinstance(other, int):
            other = Coeff(other)
        if not isinstance(other, Coeff):
            return NotImplemented
        k = max(self.k, other.k)
        a1, b1 = self._lift(k)
        a2, b2 = other._lift(k)
        return Coeff(a1 + a2, b1 + b2, k)

    __radd__ = __add__

    def __neg__(self) -> Coeff:
        return Coeff(-self.a, -self.b, self.k)

    def __sub__(self, other: Coeff | int) -> Coeff:
        if isinstance(other, int):
            other = Coeff(other)
        return self + (-other)

    def __mul__(self, other: Coeff | int) -> Coeff:
        if isinstance(other, int):
            other = Coeff(other)
        if not isinstance(other, Coeff):
            return NotImplemented
        return Coeff(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.k + other.k,
        )

    __rmul__ = __mul__

    def div_sqrt2(self, power: int = 1) -> Coeff:
        """Divide by sqrt2**power."""
        return Coeff(self.a, self.b, self.k + power)

    def div_pow2(self, power: int) -> Coeff:
        """Divide by 2**power."""
        return Coeff(self.a, self.b, self.k + 2 * power)

    @property
    def sign(self) -> int:
        return _sign_of(self.a, self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __abs__(self) -> Coeff:
        return -self if self.sign < 0 else self

    def __lt__(self, other: Coeff | int) -> bool:
        if isinstance(other, int):
            other = Coeff(other)
        return (self - other).sign < 0

    def __float__(self) -> float:
        return (self.a + self.b * SQRT2) / SQRT2**self.k

    def is_monomial(self) -> bool:
        return self.b == 0 or (self.k == 0 and self.a == 0)

    def as_monomial(self) -> tuple[int, int]:
        """Return (m, k) with value m / sqrt2**k; raises for non-monomials."""
        if self.b == 0:
            return self.a, self.k
        if self.k == 0 and self.a == 0:
            # b*sqrt2 = 2b / sqrt2
            return 2 * self.b, 1
        raise ValueError(f"{self} is not of the form m/sqrt2^k")

    @property
    def numerator(self) -> int:
        return self.as_monomial()[0]

    @property
    def sqrt2_exp(self) -> int:
        return self.as_monomial()[1]

    def to_text(self) -> str:
        """Render as 'm/2^a', 'm/(2^a·√2)' or '(a+b√2)/...' for general values."""
        if self.is_zero():
            return "0"
        if self.is_monomial():
            m, k = self.as_monomial()
            body = str(m)
        else:
            m, k = None, self.k
            body = f"({self.a}{self.b:+d}√2)"
        if k == 0:
            return body
        if k % 2 == 0:
            return f"{body}/2^{k // 2}"
        return f"{body}/(2^{k // 2}·√2)"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Coeff({self.a}, {self.b}, {self.k})"


@total_ordering
@dataclass(frozen=True, slots=True)
class QSqrt2:
    """The number p + q*sqrt2 with rational p and q."""

    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))

    @classmethod
    def from_coeff(cls, c: Coeff) -> QSqrt2:
        half = c.k // 2
        if c.k % 2 == 0:
            return cls(Fraction(c.a, 2**half), Fraction(c.b, 2**half))
        # (a + b sqrt2) / (2^half sqrt2) = b / 2^half + a sqrt2 / 2^(half+1)
        return cls(Fraction(c.b, 2**half), Fraction(c.a, 2 ** (half + 1)))

    @staticmethod
    def _coerce(value: QSqrt2 | Coeff | int | Fraction) -> QSqrt2:
        if isinstance(value, QSqrt2):
            return value
        if isinstance(value, Coeff):
            return QSqrt2.from_coeff(value)
        return QSqrt2(Fraction(value))

    def __add__(self, other: QSqrt2 | Coeff | int | Fraction) -> QSqrt2:
        o = self._coerce(other)
        return QSqrt2(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self) -> QSqrt2:
        return QSqrt2(-self.p, -self.q)

    def __sub__(self, other: QSqrt2 | Coeff | int | Fraction) -> QSqrt2:
        return self + (-self._coerce(other))

    def __rsub__(self, other: QSqrt2 | Coeff | int | Fraction) -> QSqrt2:
        return self._coerce(other) - self

    def __mul__(self, other: QSqrt2 | Coeff | int | Fraction) -> QSqrt2:
        o = self._coerce(other)
        return QSqrt2(self.p * o.p + 2 * self.q * o.q, self.p * o.q + self.q * o.p)

    __rmul__ = __mul__

    def conjugate(self) -> QSqrt2:
        return QSqrt2(self.p, -self.q)

    def norm(self) -> Fraction:
        return self.p * self.p - 2 * self.q * self.q

    def __truediv__(self, other: QSqrt2 | Coeff | int | Fraction) -> QSqrt2:
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("Division by zero in Q(sqrt2)")
        top = self * o.conjugate()
        return QSqrt2(top.p / n, top.q / n)

    def __rtruediv__(self, other: QSqrt2 | Coeff | int | Fraction) -> QSqrt2:
        return self._coerce(other) / self

    @property
    def sign(self) -> int:
        return _sign_of(self.p, self.q)

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def __lt__(self, other: QSqrt2 | Coeff | int | Fraction) -> bool:
        return (self - self._coerce(other)).sign < 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (QSqrt2, Coeff, int, Fraction)):
            o = self._coerce(other)
            return self.p == o.p and self.q == o.q
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.q))

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * SQRT2

    def to_text(self) -> str:
        if self.q == 0:
            return _fraction_text(self.p)
        if self.p == 0:
            return f"{_fraction_text(self.q)}·√2"
        return f"{_fraction_text(self.p)}+{_fraction_text(self.q)}·√2".replace("+-", "-")

    def __str__(self) -> str:
        return self.to_text()


def _fraction_text(value: Fraction) -> str:
    """'m/2^a' for dyadic rationals, 'p/q' otherwise."""
    if value.denominator == 1:
        return str(value.numerator)
    den = value.denominator
    if den & (den - 1) == 0:
        return f"{value.numerator}/2^{den.bit_length() - 1}"
    return f"{value.numerator}/{den}"
