"""Exact helpers: rational parsing, scaled-integer decimals and quadratic-surd comparisons."""
import re
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

import mpmath

_RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$')


class Ordering(str, Enum):
    LESS = 'Less'
    EQUAL = 'Equal'
    GREATER = 'Greater'

    @classmethod
    def of(cls, lhs, rhs) -> 'Ordering':
        if lhs < rhs:
            return cls.LESS
        if lhs > rhs:
            return cls.GREATER
        return cls.EQUAL


def parse_rational(text: str) -> Fraction:
    """Parse "n" or "n/d" exactly. Decimal and exponent notation are refused."""
    match = _RATIONAL_RE.match(str(text))
    if not match:
        raise ValueError(f"not an exact rational: {text!r} (expected n or n/d)")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def format_scaled(scaled: int, digits: int) -> str:
    """Place a decimal point `digits` places from the right of an integer."""
    sign = '-' if scaled < 0 else ''
    text = str(abs(scaled))
    if digits <= 0:
        return sign + text
    text = text.rjust(digits + 1, '0')
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def floor_scaled(value, digits: int) -> int:
    """floor(value * 10**digits) for an mpf, evaluated with enough working precision."""
    magnitude = int(mpmath.mag(value)) if value else 0
    extra = max(0, magnitude // 3 + 1)
    with mpmath.mp.workdps(digits + extra + 10):
        return int(mpmath.floor(mpmath.mpf(value) * mpmath.mpf(10) ** digits))


def format_real(value, digits: int) -> str:
    """Fixed-point decimal of a high-precision real, rounded toward minus infinity."""
    return format_scaled(floor_scaled(value, digits), digits)


class Surd(NamedTuple):
    """The real number (a + b*sqrt(c)) / d with b >= 0, c >= 0, d > 0."""
    a: int
    b: int
    c: int
    d: int

    def to_mpf(self):
        return (mpmath.mpf(self.a) + self.b * mpmath.sqrt(self.c)) / self.d


PHI = Surd(1, 1, 5, 2)
PHI_SQUARED = Surd(3, 1, 5, 2)
SILVER = Surd(1, 1, 2, 1)


def growth_surd(f1: int) -> Surd:
    return Surd(3 * f1, 1, 9 * f1 * f1 - 4, 2)


def compare_fraction_to_surd(num: int, den: int, surd: Surd) -> Ordering:
    """Order of num/den against a surd using integer arithmetic only."""
    # num/den ? (a + b√c)/d  <=>  d*num - a*den ? b*den*√c   (den > 0)
    lhs = surd.d * num - surd.a * den
    coeff = surd.b * den
    if coeff == 0 or surd.c == 0:
        return Ordering.of(lhs, 0)
    if lhs < 0:
        return Ordering.LESS
    return Ordering.of(lhs * lhs, coeff * coeff * surd.c)
