"""Deterministic line corpora used by the suites."""
import math
from fractions import Fraction
from typing import List, NamedTuple, Optional

from ..lattice_lines import RationalLine, make_line, region_points
from ..utils.numeric import parse_rational

NEGATIVE_SLOPES = ['-1', '-1/2', '-2', '-2/3', '-3/2', '-6/5', '-5/4', '-9/8', '-1/3', '-3']
NONNEGATIVE_SLOPES = ['0', '1/3', '1/2', '2/3', '3/4']
ORIGIN_SLOPES = ['1/2', '1/3', '2/3', '1/4', '3/4', '2/5', '3/5', '4/7']
NONNEGATIVE_CAP = 40
INTERCEPT_LIMIT = 20000


class CorpusLine(NamedTuple):
    line: RationalLine
    cap: Optional[int] = None


def lines_with_points(k, count: int, min_points: int = 3, cap: Optional[int] = None,
                      start: int = 1) -> List[CorpusLine]:
    """The first `count` lines y = kx + c/kd (c = start, start+1, ...) with enough points."""
    k = Fraction(k)
    if k >= 0 and cap is None:
        cap = NONNEGATIVE_CAP
    found = []
    for c in range(start, INTERCEPT_LIMIT):
        line = make_line(k.numerator, k.denominator, c, k.denominator)
        if len(region_points(line, cap)) >= min_points:
            found.append(CorpusLine(line, cap if k >= 0 else None))
            if len(found) == count:
                break
    return found


def origin_lines() -> List[CorpusLine]:
    """Lines through the origin with positive slope below 1."""
    corpus = []
    for text in ORIGIN_SLOPES:
        k = parse_rational(text)
        corpus.append(CorpusLine(make_line(k.numerator, k.denominator, 0, 1), 8 * k.denominator))
    return corpus


def line_corpus(size: int) -> List[CorpusLine]:
    """About `size` lines spread over negative and nonnegative slopes, plus origin lines."""
    slopes = NEGATIVE_SLOPES + NONNEGATIVE_SLOPES
    quota = max(1, math.ceil(size / len(slopes)))
    corpus = []
    for text in slopes:
        corpus.extend(lines_with_points(parse_rational(text), quota))
    return corpus[:size] + origin_lines()


def negative_corpus(size: int, min_points: int = 2) -> List[RationalLine]:
    quota = max(1, math.ceil(size / len(NEGATIVE_SLOPES)))
    lines = []
    for text in NEGATIVE_SLOPES:
        lines.extend(entry.line for entry in lines_with_points(parse_rational(text), quota, min_points))
    return lines[:size]
