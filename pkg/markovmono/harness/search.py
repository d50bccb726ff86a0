"""Bracketing of a line by the family lines, and empirical shift thresholds."""
import math
from fractions import Fraction
from typing import Optional

from ..errors import DomainError, FamilyCoincidenceError
from ..lattice_lines import Family, RationalLine, ShiftMode, endpoints, family_line, shift
from ..ratio_analysis import ExactRatio, markov_at
from ..utils.logging import get_logger
from ..utils.numeric import Ordering

logger = get_logger()


def _family_intercept_form(k: Fraction, family: Family):
    """(offset, growth) with the n-th family intercept equal to offset + growth * n."""
    if Family(family) is Family.LOWER:
        return Fraction(1), -k
    return Fraction(-1), 1 - k


def covers_lattice_lines(k, family: Family) -> bool:
    """Whether every line of slope k through a lattice point is a family line."""
    _, growth = _family_intercept_form(Fraction(k), family)
    return growth.numerator == 1


def bracket_index(line: RationalLine, family: Family) -> int:
    """The N with `line` strictly between the family lines N-1 and N."""
    k = line.k
    if k >= 0:
        raise DomainError(f"bracketing needs a negative slope, got {k}")
    offset, growth = _family_intercept_form(k, family)
    position = (line.b - offset) / growth
    if position.denominator == 1:
        raise FamilyCoincidenceError(
            f"{line} is the {Family(family).value} family line n={position.numerator}",
            position.numerator)
    return math.floor(position) + 1


def last_ratio(line: RationalLine) -> Optional[ExactRatio]:
    ends = endpoints(line)
    if ends.second_last is None:
        return None
    return ExactRatio(markov_at(ends.last), markov_at(ends.second_last))


def first_ratio(line: RationalLine) -> Optional[ExactRatio]:
    ends = endpoints(line)
    if ends.second is None:
        return None
    return ExactRatio(markov_at(ends.second), markov_at(ends.first))


def empirical_shift_threshold(line: RationalLine, n: int, family: Family,
                              t_cap: int) -> Optional[int]:
    """
    Smallest t in 1..t_cap where the shifted line's end ratio passes the family line's.

    Lower family: the x-shift l[t] must reach a last ratio above that of l_n.
    Upper family: the diagonal shift must reach a first ratio below that of L_n.
    """
    if line.kn >= 0:
        raise DomainError(f"shift thresholds need a negative slope, got {line.k}")
    lower = Family(family) is Family.LOWER
    target_line = family_line(line.k, n, family)
    target = last_ratio(target_line) if lower else first_ratio(target_line)
    if target is None:
        raise DomainError(f"family line n={n} has fewer than two region points")
    for t in range(1, t_cap + 1):
        if lower:
            ratio = last_ratio(shift(line, t, ShiftMode.X_AXIS))
            passed = ratio is not None and ratio.compare(target) is Ordering.GREATER
        else:
            ratio = first_ratio(shift(line, t, ShiftMode.DIAGONAL))
            passed = ratio is not None and ratio.compare(target) is Ordering.LESS
        if passed:
            logger.debug(f"{line}: shift threshold {t} against {Family(family).value} n={n}")
            return t
    return None
