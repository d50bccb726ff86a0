"""
Per-line monotonicity of m(x, y) along the lattice points of a rational line.
"""
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel

from .errors import DomainError, RegimeError, SearchExhaustedError
from .lattice_lines import RationalLine, make_line, region_points
from .markov_core import LatticePoint, MarkovCache
from .ratio_analysis import ExactRatio, SlopeRegime, markov_at, slope_regime, to_decimal
from .utils.logging import get_logger
from .utils.numeric import Ordering

logger = get_logger()

DECIMAL_DIGITS = 6


class Classification(str, Enum):
    INCREASING = 'Increasing'
    DECREASING = 'Decreasing'
    NON_MONOTONIC = 'NonMonotonic'
    SINGLETON = 'Singleton'
    EMPTY = 'Empty'


class PointValue(BaseModel):
    x: int
    y: int
    m: str


class PointModel(BaseModel):
    x: int
    y: int


class MonotonicityReport(BaseModel):
    line: Dict[str, List[int]]
    classification: Classification
    points: List[PointValue]
    ratios: List[str]
    turning_point: Optional[PointModel] = None
    tie_flag: bool = False
    certified: bool = True
    mode: str = 'exhaustive'
    capped: bool = False
    n_points: int = 0
    first_ratio_decimal: Optional[str] = None
    last_ratio_decimal: Optional[str] = None

    def m_values(self) -> List[int]:
        return [int(point.m) for point in self.points]

    def exact_ratios(self) -> List[ExactRatio]:
        return [ExactRatio.parse(text) for text in self.ratios]

    def rational_line(self) -> RationalLine:
        return RationalLine(*self.line['k'], *self.line['b'])

    def csv_row(self) -> list:
        turning = self.turning_point
        return [
            self.rational_line().key(),
            self.classification.value,
            self.n_points,
            turning.x if turning else '',
            turning.y if turning else '',
            self.first_ratio_decimal or '',
            self.last_ratio_decimal or '',
        ]


def _classify_signs(signs: List[Ordering]) -> Classification:
    if all(sign is not Ordering.LESS for sign in signs):
        return Classification.INCREASING
    if all(sign is not Ordering.GREATER for sign in signs):
        return Classification.DECREASING
    return Classification.NON_MONOTONIC


def _is_unimodal(signs: List[Ordering]) -> bool:
    """Ratio signs read LESS* EQUAL? GREATER*."""
    rank = {Ordering.LESS: 0, Ordering.EQUAL: 1, Ordering.GREATER: 2}
    ranks = [rank[sign] for sign in signs]
    return ranks == sorted(ranks) and ranks.count(1) <= 1


def _empty_report(line: RationalLine, points: List[LatticePoint], values: List[int],
                  mode: str, capped: bool) -> MonotonicityReport:
    return MonotonicityReport(
        line=line.to_json(),
        classification=Classification.SINGLETON if points else Classification.EMPTY,
        points=[PointValue(x=p.x, y=p.y, m=str(v)) for p, v in zip(points, values)],
        ratios=[],
        mode=mode,
        capped=capped,
        n_points=len(points),
    )


def _classify_exhaustive(line: RationalLine, points: List[LatticePoint],
                         cache: Optional[MarkovCache], capped: bool) -> MonotonicityReport:
    values = [markov_at(point, cache) for point in points]
    if len(points) < 2:
        return _empty_report(line, points, values, 'exhaustive', capped)
    ratios = [ExactRatio(values[i + 1], values[i]) for i in range(len(values) - 1)]
    signs = [ratio.compare_to_one() for ratio in ratios]
    classification = _classify_signs(signs)
    certified = _is_unimodal(signs)
    if not certified:
        logger.warning(f"Ratio signs along {line} are not unimodal: {[s.value for s in signs]}")

    smallest = min(values)
    minimizers = [i for i, value in enumerate(values) if value == smallest]
    turning = None
    if classification is Classification.NON_MONOTONIC or len(minimizers) > 1:
        turning = PointModel(x=points[minimizers[0]].x, y=points[minimizers[0]].y)

    return MonotonicityReport(
        line=line.to_json(),
        classification=classification,
        points=[PointValue(x=p.x, y=p.y, m=str(v)) for p, v in zip(points, values)],
        ratios=[str(ratio) for ratio in ratios],
        turning_point=turning,
        tie_flag=len(minimizers) > 1,
        certified=certified,
        capped=capped,
        n_points=len(points),
        first_ratio_decimal=to_decimal(ratios[0], DECIMAL_DIGITS),
        last_ratio_decimal=to_decimal(ratios[-1], DECIMAL_DIGITS),
    )


def _classify_fast(line: RationalLine, points: List[LatticePoint],
                   cache: Optional[MarkovCache], capped: bool) -> MonotonicityReport:
    """Trusts that ratios increase along the line: two end ratios and a bisection."""
    evaluated: Dict[int, int] = {}

    def value(i: int) -> int:
        if i not in evaluated:
            evaluated[i] = markov_at(points[i], cache)
        return evaluated[i]

    def ratio(i: int) -> ExactRatio:
        return ExactRatio(value(i + 1), value(i))

    if len(points) < 2:
        return _empty_report(line, points, [value(i) for i in range(len(points))], 'fast', capped)

    first, last = ratio(0), ratio(len(points) - 2)
    classification = _classify_signs([first.compare_to_one(), last.compare_to_one()])
    turning = None
    tie = False
    if classification is Classification.NON_MONOTONIC:
        # first index whose ratio is >= 1 is the minimizer
        lo, hi = 0, len(points) - 2
        while lo < hi:
            mid = (lo + hi) // 2
            if ratio(mid).compare_to_one() is Ordering.LESS:
                lo = mid + 1
            else:
                hi = mid
        tie = ratio(lo).compare_to_one() is Ordering.EQUAL
        turning = PointModel(x=points[lo].x, y=points[lo].y)
    elif first.compare_to_one() is Ordering.EQUAL or last.compare_to_one() is Ordering.EQUAL:
        tie = True
        index = 0 if classification is Classification.INCREASING else len(points) - 2
        turning = PointModel(x=points[index].x, y=points[index].y)

    indices = sorted(evaluated)
    return MonotonicityReport(
        line=line.to_json(),
        classification=classification,
        points=[PointValue(x=points[i].x, y=points[i].y, m=str(evaluated[i])) for i in indices],
        ratios=[str(first), str(last)],
        turning_point=turning,
        tie_flag=tie,
        certified=False,
        mode='fast',
        capped=capped,
        n_points=len(points),
        first_ratio_decimal=to_decimal(first, DECIMAL_DIGITS),
        last_ratio_decimal=to_decimal(last, DECIMAL_DIGITS),
    )


def classify_line(line: RationalLine, cap: Optional[int] = None, fast: bool = False,
                  cache: Optional[MarkovCache] = None) -> MonotonicityReport:
    points = region_points(line, cap)
    capped = line.kn >= 0
    classify = _classify_fast if fast else _classify_exhaustive
    report = classify(line, points, cache, capped)
    logger.debug(f"{line}: {report.classification.value} over {len(points)} point(s)")
    return report


def find_nonmonotonic_intercept(k, search_cap: int,
                                cache: Optional[MarkovCache] = None) -> Tuple[Fraction, MonotonicityReport]:
    """Smallest b = c/a2, c = 1..search_cap, whose line is non-monotonic."""
    k = Fraction(k)
    regime = slope_regime(k)
    if regime is not SlopeRegime.MIXED:
        raise RegimeError(f"slope {k} is in the {regime.value}, not the MixedRegime")
    if search_cap < 1:
        raise DomainError(f"search_cap must be positive, got {search_cap}")
    for c in range(1, search_cap + 1):
        line = make_line(k.numerator, k.denominator, c, k.denominator)
        if len(region_points(line)) < 3:
            continue
        report = classify_line(line, cache=cache)
        if report.classification is Classification.NON_MONOTONIC:
            logger.info(f"First non-monotonic line for k={k}: b={line.b} (c={c})")
            return line.b, report
    raise SearchExhaustedError(f"no non-monotonic line with k={k} and b=c/{k.denominator}, c <= {search_cap}")
