"""
Exact ratios of generalized Markov numbers and the closed-form limits and slope
thresholds that govern them.

Every inequality between ratios is decided by cross-multiplication. Real-valued
outputs (limits, thresholds) are mpmath numbers evaluated with guard digits.
"""
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Callable, List, NamedTuple, Optional, Tuple

import mpmath

from .errors import DomainError
from .lattice_lines import RationalLine, region_points
from .markov_core import LatticePoint, MarkovCache, generalized_markov
from .utils.logging import get_logger
from .utils.numeric import Ordering, Surd, compare_fraction_to_surd, format_real, format_scaled

logger = get_logger()

GUARD_DIGITS = 10
MAX_SIGN_DIGITS = 4000


class ExactRatio(NamedTuple):
    """num/den kept exactly as produced; reduce() is optional normalization."""
    num: int
    den: int

    def compare(self, other: 'ExactRatio') -> Ordering:
        return compare_exact(self, other)

    def compare_to_one(self) -> Ordering:
        return Ordering.of(self.num, self.den)

    def compare_to_surd(self, surd: Surd) -> Ordering:
        return compare_fraction_to_surd(self.num, self.den, surd)

    def reduced(self) -> 'ExactRatio':
        g = gcd(self.num, self.den)
        return ExactRatio(self.num // g, self.den // g)

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def to_mpf(self):
        return mpmath.mpf(self.num) / self.den

    def decimal(self, digits: int) -> str:
        return to_decimal(self, digits)

    def __str__(self):
        return f"{self.num}/{self.den}"

    @classmethod
    def parse(cls, text: str) -> 'ExactRatio':
        num, den = text.split('/')
        return cls(int(num), int(den))


def compare_exact(r1: ExactRatio, r2: ExactRatio) -> Ordering:
    return Ordering.of(r1.num * r2.den, r2.num * r1.den)


def to_decimal(r: ExactRatio, digits: int) -> str:
    """Decimal expansion truncated (rounded down) to `digits` places."""
    if r.den < 1:
        raise DomainError(f"ratio denominator must be positive, got {r.den}")
    return format_scaled(r.num * 10 ** digits // r.den, digits)


def horizontal_ratio(q: int, p: int, cache: Optional[MarkovCache] = None) -> ExactRatio:
    if q < 1 or not 0 <= p <= q:
        raise DomainError(f"horizontal ratio needs 0 <= p <= q, q >= 1; got ({q}, {p})")
    return ExactRatio(generalized_markov(q + 1, p, cache), generalized_markov(q, p, cache))


def vertical_ratio(q: int, p: int, cache: Optional[MarkovCache] = None) -> ExactRatio:
    if not 0 <= p < q:
        raise DomainError(f"vertical ratio needs 0 <= p < q; got ({q}, {p})")
    return ExactRatio(generalized_markov(q, p + 1, cache), generalized_markov(q, p, cache))


def markov_at(point: LatticePoint, cache: Optional[MarkovCache] = None) -> int:
    return generalized_markov(point.x, point.y, cache)


def step_ratio(point: LatticePoint, step: Tuple[int, int],
               cache: Optional[MarkovCache] = None) -> ExactRatio:
    """m(point + step) / m(point)."""
    return ExactRatio(markov_at(point.shifted(*step), cache), markov_at(point, cache))


def line_ratios(line: RationalLine, cap: Optional[int] = None,
                cache: Optional[MarkovCache] = None) -> List[Tuple[LatticePoint, ExactRatio]]:
    points = region_points(line, cap)
    if len(points) < 2:
        logger.debug(f"{line} has {len(points)} region point(s); no ratios")
        return []
    values = [markov_at(point, cache) for point in points]
    return [(points[i], ExactRatio(values[i + 1], values[i])) for i in range(len(points) - 1)]


def _check_slope_parts(a1: int, a2: int) -> None:
    if a1 < 1 or a2 < 1 or gcd(a1, a2) != 1:
        raise DomainError(f"expected coprime positive (a1, a2), got ({a1}, {a2})")


def limit_last_ratio(a1: int, a2: int, digits: int):
    """Limit of the last ratio along l_n for k = -a1/a2."""
    _check_slope_parts(a1, a2)
    with mpmath.mp.workdps(digits + GUARD_DIGITS):
        sqrt5 = mpmath.sqrt(5)
        return (2 * sqrt5 / (3 * (1 + sqrt5))) ** a1 * mpmath.phi ** (2 * a2)


def limit_first_ratio(a1: int, a2: int, digits: int):
    """Limit of the first ratio along L_n for k = -a1/a2."""
    _check_slope_parts(a1, a2)
    with mpmath.mp.workdps(digits + GUARD_DIGITS):
        if a1 == a2:
            # only k = -1 here; the silver factor cancels and 9/8 is exact in binary
            return mpmath.mpf(9) / 8
        return (3 / (2 * mpmath.sqrt(2))) ** (a1 + a2) * (1 + mpmath.sqrt(2)) ** (a2 - a1)


class ClosedFormConstants(NamedTuple):
    phi: object
    silver: object
    k_plus: object
    k_minus: object
    digits: int

    def describe(self) -> dict:
        return {
            'phi': format_real(self.phi, self.digits),
            'silver': format_real(self.silver, self.digits),
            'k_plus': format_real(self.k_plus, self.digits),
            'k_minus': format_real(self.k_minus, self.digits),
            'digits': self.digits,
        }


def thresholds(digits: int) -> ClosedFormConstants:
    with mpmath.mp.workdps(digits + GUARD_DIGITS):
        sqrt2 = mpmath.sqrt(2)
        sqrt5 = mpmath.sqrt(5)
        k_plus = -mpmath.log(3 * (2 + sqrt2) / 4) / mpmath.log(2 * (2 + sqrt2) / 3)
        k_minus = -2 * mpmath.log(mpmath.phi) / mpmath.log(3 * (1 + sqrt5) / (2 * sqrt5))
        constants = ClosedFormConstants(+mpmath.phi, 1 + sqrt2, k_plus, k_minus, digits)
    if not constants.k_minus < constants.k_plus < -1:
        raise ArithmeticError("threshold ordering k_minus < k_plus < -1 failed")
    return constants


class SlopeRegime(str, Enum):
    INCREASING = 'IncreasingRegime'
    DECREASING = 'DecreasingRegime'
    MIXED = 'MixedRegime'


def _certified_sign(evaluate: Callable[[], object], digits: int = 30) -> int:
    """Sign of a nonzero real, raising precision until it clears the error margin."""
    while digits <= MAX_SIGN_DIGITS:
        with mpmath.mp.workdps(digits):
            value = evaluate()
            if abs(value) > mpmath.mpf(10) ** (GUARD_DIGITS - digits):
                return 1 if value > 0 else -1
        digits *= 2
    raise ArithmeticError("could not certify the sign within the precision limit")


def _first_limit_log(a1: int, a2: int):
    """log of limit_first_ratio; >= 0 exactly when the slope is in the increasing regime."""
    sqrt2 = mpmath.sqrt(2)
    return a2 * mpmath.log(3 * (2 + sqrt2) / 4) - a1 * mpmath.log(2 * (2 + sqrt2) / 3)


def _last_limit_log(a1: int, a2: int):
    """Minus the log of limit_last_ratio; >= 0 exactly in the decreasing regime."""
    sqrt5 = mpmath.sqrt(5)
    return a1 * mpmath.log(3 * (1 + sqrt5) / (2 * sqrt5)) - 2 * a2 * mpmath.log(mpmath.phi)


def slope_regime(k) -> SlopeRegime:
    k = Fraction(k)
    if k >= 0:
        return SlopeRegime.INCREASING
    a1, a2 = -k.numerator, k.denominator
    start = 30 + len(str(a1)) + len(str(a2))
    if _certified_sign(lambda: _first_limit_log(a1, a2), start) > 0:
        return SlopeRegime.INCREASING
    if _certified_sign(lambda: _last_limit_log(a1, a2), start) > 0:
        return SlopeRegime.DECREASING
    return SlopeRegime.MIXED
