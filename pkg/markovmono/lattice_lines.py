"""
Rational lines y = kx + b and their lattice points inside the region x > y >= 1.
"""
import itertools
import math
from enum import Enum
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Optional, Tuple, Union

from .errors import DomainError, MissingCapError, OracleError
from .markov_core import LatticePoint
from .utils.logging import get_logger

logger = get_logger()

Rational = Union[int, Fraction]


class ShiftMode(str, Enum):
    X_AXIS = 'x_axis'
    DIAGONAL = 'diagonal'


class Family(str, Enum):
    LOWER = 'lower'
    UPPER = 'upper'


class RationalLine(NamedTuple):
    """y = (kn/kd) x + bn/bd, always in lowest terms with positive denominators."""
    kn: int
    kd: int
    bn: int
    bd: int

    @property
    def k(self) -> Fraction:
        return Fraction(self.kn, self.kd)

    @property
    def b(self) -> Fraction:
        return Fraction(self.bn, self.bd)

    @property
    def slope_parts(self) -> Tuple[int, int]:
        """(a1, a2) with k = -a1/a2; only meaningful for negative slopes."""
        if self.kn >= 0:
            raise DomainError(f"slope {self.k} is not negative")
        return -self.kn, self.kd

    def y_at(self, x: Rational) -> Fraction:
        return self.k * x + self.b

    def contains(self, point: LatticePoint) -> bool:
        return self.y_at(point.x) == point.y

    def key(self) -> str:
        return f"{self.kn}/{self.kd},{self.bn}/{self.bd}"

    def to_json(self) -> dict:
        return {'k': [self.kn, self.kd], 'b': [self.bn, self.bd]}

    def __str__(self):
        return f"y = {self.k}x + {self.b}"

    @classmethod
    def from_fractions(cls, k: Rational, b: Rational) -> 'RationalLine':
        k, b = Fraction(k), Fraction(b)
        return cls(k.numerator, k.denominator, b.numerator, b.denominator)


def make_line(kn: int, kd: int, bn: int, bd: int) -> RationalLine:
    if kd == 0 or bd == 0:
        raise DomainError(f"zero denominator in line ({kn}/{kd}, {bn}/{bd})")
    return RationalLine.from_fractions(Fraction(kn, kd), Fraction(bn, bd))


class LineEndpoints(NamedTuple):
    first: Optional[LatticePoint]
    second: Optional[LatticePoint]
    last: Optional[LatticePoint]
    second_last: Optional[LatticePoint]


def _tighten(lo: int, hi: Optional[int], coeff: Fraction, rhs: Fraction,
             strict: bool) -> Tuple[int, Optional[int]]:
    """Intersect [lo, hi] with the integers x where coeff*x >= rhs (> when strict)."""
    if coeff == 0:
        holds = 0 > rhs if strict else 0 >= rhs
        return (lo, hi) if holds else (lo, lo - 1)
    bound = rhs / coeff
    if coeff > 0:
        lo = max(lo, math.floor(bound) + 1 if strict else math.ceil(bound))
    else:
        last = math.ceil(bound) - 1 if strict else math.floor(bound)
        hi = last if hi is None else min(hi, last)
    return lo, hi


def _x_range(line: RationalLine) -> Tuple[int, Optional[int]]:
    k, b = line.k, line.b
    lo, hi = 2, None
    lo, hi = _tighten(lo, hi, k, 1 - b, strict=False)     # y >= 1
    lo, hi = _tighten(lo, hi, 1 - k, b, strict=True)      # x > y
    return lo, hi


def _congruence(line: RationalLine) -> Optional[Tuple[int, int]]:
    """Residue and modulus of the x with integral y, or None if there are none."""
    a = line.kn * line.bd
    c = -line.bn * line.kd
    modulus = line.kd * line.bd
    g = math.gcd(a, modulus)
    if c % g:
        return None
    step = modulus // g
    if step == 1:
        return 0, 1
    return ((c // g) * pow(a // g, -1, step)) % step, step


def _iter_points(line: RationalLine, lo: int, hi: Optional[int]) -> Iterator[LatticePoint]:
    solution = _congruence(line)
    if solution is None or (hi is not None and hi < lo):
        return
    residue, step = solution
    x = lo + (residue - lo) % step
    while hi is None or x <= hi:
        y = line.y_at(x)
        yield LatticePoint(x, y.numerator)
        x += step


def region_points(line: RationalLine, x_cap: Optional[int] = None) -> List[LatticePoint]:
    if line.kn >= 0 and x_cap is None:
        raise MissingCapError(f"{line} has nonnegative slope; an x cap is required")
    lo, hi = _x_range(line)
    if x_cap is not None:
        hi = x_cap if hi is None else min(hi, x_cap)
    return list(_iter_points(line, lo, hi))


def endpoints(line: RationalLine, x_cap: Optional[int] = None) -> LineEndpoints:
    """First two and last two region points; last/second_last only for k < 0."""
    if line.kn >= 0 and x_cap is None:
        lo, _ = _x_range(line)
        head = list(itertools.islice(_iter_points(line, lo, None), 2))
        return LineEndpoints(head[0] if head else None,
                             head[1] if len(head) > 1 else None, None, None)
    points = region_points(line, x_cap)
    if not points:
        return LineEndpoints(None, None, None, None)
    return LineEndpoints(points[0],
                         points[1] if len(points) > 1 else None,
                         points[-1],
                         points[-2] if len(points) > 1 else None)


def shift(line: RationalLine, t: Rational, mode: ShiftMode) -> RationalLine:
    """x_axis: y = k(x - t) + b.  diagonal: y - t = k(x - t) + b."""
    k, b, t = line.k, line.b, Fraction(t)
    if ShiftMode(mode) is ShiftMode.X_AXIS:
        return RationalLine.from_fractions(k, b - k * t)
    return RationalLine.from_fractions(k, b + t * (1 - k))


def family_line(k: Rational, n: int, family: Family) -> RationalLine:
    """l_n: y = k(x - n) + 1 (lower) or L_n: y = k(x - n) + n - 1 (upper)."""
    k = Fraction(k)
    if k >= 0:
        raise DomainError(f"family lines need a negative slope, got {k}")
    if Family(family) is Family.LOWER:
        return RationalLine.from_fractions(k, 1 - k * n)
    return RationalLine.from_fractions(k, n - 1 - k * n)


def closed_form_valid(k: Rational, n: int, family: Family) -> bool:
    """Whether the closed-form end points of the family line lie in the region."""
    k = Fraction(k)
    a1, a2 = -k.numerator, k.denominator
    if Family(family) is Family.LOWER:
        return n > 1 + a1 + a2
    return n > 1 + a1


def closed_form_points(k: Rational, n: int, family: Family) -> Tuple[LatticePoint, LatticePoint]:
    k = Fraction(k)
    a1, a2 = -k.numerator, k.denominator
    if Family(family) is Family.LOWER:
        return LatticePoint(n - a2, 1 + a1), LatticePoint(n, 1)
    return LatticePoint(n, n - 1), LatticePoint(n + a2, n - 1 - a1)


def family_endpoints(k: Rational, n: int,
                     family: Family) -> Tuple[Optional[LatticePoint], Optional[LatticePoint]]:
    """
    The two end points that matter for a family line, found by enumeration.

    Lower lines give (second_last, last), upper lines give (first, second). When n is
    past the family bound the enumeration must agree with the closed forms.
    """
    line = family_line(k, n, family)
    ends = endpoints(line)
    pair = (ends.second_last, ends.last) if Family(family) is Family.LOWER else (ends.first, ends.second)
    if closed_form_valid(k, n, family):
        expected = closed_form_points(k, n, family)
        if pair != expected:
            raise OracleError(f"{Family(family).value} family line n={n} for k={Fraction(k)}: "
                              f"enumerated {pair}, closed form {expected}")
    return pair
