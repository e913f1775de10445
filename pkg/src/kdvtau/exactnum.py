"""Exact scalar arithmetic: rationals and the quadratic extension Q[s]/(s^2 + 2).

All coefficients in this package are arbitrary-precision rationals
(`fractions.Fraction`, re-exported as `ExactScalar`), kept in lowest terms
with positive denominator by construction.  The closed-form hook
coefficients are evaluated in the extension Q[sqrt(-2)] first and only then
rescaled back to Q; `ext_to_rational` asserts that the sqrt(-2) part has
cancelled, which doubles as a correctness check on the formulas.

No floating point is used anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonRationalError

__all__ = [
    "ExactScalar",
    "ExtScalar",
    "SQRT_MINUS_TWO",
    "as_rational",
    "parse_rational",
    "format_rational",
    "factorial",
    "odd_double_factorial",
    "falling_factorial",
    "ext_to_rational",
]

ExactScalar = Fraction

RationalLike = Fraction | int


def as_rational(x: RationalLike) -> Fraction:
    """Coerce an int or Fraction to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rational(text: str) -> Fraction:
    """Parse the canonical "p/q" (or "p") string form."""
    return Fraction(text.strip())


def format_rational(x: RationalLike) -> str:
    """Canonical string form: "p/q" in lowest terms, "p" when q = 1."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def factorial(n: int) -> Fraction:
    """n! as an exact rational, n >= 0."""
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return Fraction(math.factorial(n))


def odd_double_factorial(n: int) -> Fraction:
    """n!! = n(n-2)...1 for odd n, with 1!! = 1 and (-1)!! = 1.

    Even arguments are rejected: every double factorial appearing in the
    closed forms has odd argument, so an even one signals an index bug.
    """
    if n % 2 == 0:
        raise ValueError(f"double factorial restricted to odd arguments, got {n}")
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    prod = 1
    for k in range(n, 1, -2):
        prod *= k
    return Fraction(prod)


def falling_factorial(y: RationalLike, j: int) -> Fraction:
    """Falling factorial (y)_[j] = y (y-1) ... (y-j+1), with (y)_[0] = 1.

    Defined by the finite product, so integer y with y - j + 1 <= 0 is fine
    (the product just passes through zero or negative factors).
    """
    if j < 0:
        raise ValueError(f"falling factorial needs j >= 0, got {j}")
    y = as_rational(y)
    prod = Fraction(1)
    for i in range(j):
        prod *= y - i
    return prod


@dataclass(frozen=True)
class ExtScalar:
    """Element re + im * s of Q[s] with s^2 = -2."""

    re: Fraction
    im: Fraction

    @classmethod
    def from_rational(cls, x: RationalLike) -> "ExtScalar":
        return cls(as_rational(x), Fraction(0))

    @property
    def is_rational(self) -> bool:
        return self.im == 0

    def __add__(self, other: "ExtScalar | RationalLike") -> "ExtScalar":
        other = _coerce(other)
        return ExtScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: "ExtScalar | RationalLike") -> "ExtScalar":
        other = _coerce(other)
        return ExtScalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: "ExtScalar | RationalLike") -> "ExtScalar":
        return _coerce(other) - self

    def __neg__(self) -> "ExtScalar":
        return ExtScalar(-self.re, -self.im)

    def __mul__(self, other: "ExtScalar | RationalLike") -> "ExtScalar":
        other = _coerce(other)
        # (a + b s)(c + d s) = (ac - 2bd) + (ad + bc) s
        return ExtScalar(
            self.re * other.re - 2 * self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExtScalar":
        if n < 0:
            raise ValueError("only non-negative powers are needed")
        out = ExtScalar.from_rational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __str__(self) -> str:
        if self.is_rational:
            return format_rational(self.re)
        return f"{format_rational(self.re)} + ({format_rational(self.im)})*sqrt(-2)"


def _coerce(x: "ExtScalar | RationalLike") -> ExtScalar:
    if isinstance(x, ExtScalar):
        return x
    return ExtScalar.from_rational(x)


SQRT_MINUS_TWO = ExtScalar(Fraction(0), Fraction(1))


def ext_to_rational(x: ExtScalar) -> Fraction:
    """Extract the rational value of x, requiring the s-part to vanish."""
    if not x.is_rational:
        raise NonRationalError(f"value has a nonzero sqrt(-2) part: {x}")
    return x.re
