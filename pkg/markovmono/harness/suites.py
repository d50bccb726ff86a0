"""
Named verification suites.

Each suite scans a bounded box deterministically, decides every inequality exactly
(or, for limits, against a stated relative tolerance) and reports violations with
their witnesses in scan order. Statements that hold only after a correction are also
run as printed when audit mode is on, and recorded as refuted with the first witness.
"""
import functools
import time
from fractions import Fraction
from math import ceil, gcd
from typing import Callable, Dict, List, Optional, Tuple

import mpmath

from ..config import load_config
from ..errors import (FamilyCoincidenceError, MarkovEquationError, OracleError,
                      SearchExhaustedError, UnknownSuiteError)
from ..lattice_lines import (Family, RationalLine, ShiftMode, closed_form_valid, endpoints,
                             family_endpoints, family_line, make_line, region_points, shift)
from ..markov_core import (LatticePoint, MarkovCache, MarkovTriple, cohn_trace_oracle,
                           fibonacci, generalized_markov, growth_alpha, markov_coprime,
                           markov_triple_at, pell, scaled_sequence)
from ..monotonicity import Classification, MonotonicityReport, classify_line, find_nonmonotonic_intercept
from ..ratio_analysis import (ExactRatio, SlopeRegime, limit_first_ratio, limit_last_ratio,
                              line_ratios, markov_at, slope_regime, to_decimal)
from ..utils.logging import get_logger
from ..utils.numeric import (PHI, PHI_SQUARED, SILVER, Ordering, format_real,
                             growth_surd, parse_rational)
from .corpus import INTERCEPT_LIMIT, NEGATIVE_SLOPES, line_corpus, lines_with_points, negative_corpus
from .models import AuditFinding, SuiteBounds, Violation, ViolationReport
from .search import (bracket_index, covers_lattice_lines, empirical_shift_threshold, first_ratio,
                     last_ratio)
from .shards import run_sharded

logger = get_logger()

DECIMAL_DIGITS = 12
SHIFT_THRESHOLD_COUNT = 4
EMPTY_SCAN = 'non-empty-scan'


class SuiteRecorder:
    """Collects checks, violations, audit findings and measurements for one suite run."""

    def __init__(self, name: str, claims: List[str], bounds: SuiteBounds):
        self.name = name
        self.claims = claims
        self.bounds = bounds
        self.violations: List[Violation] = []
        self.violation_count = 0
        self.checks = 0
        self.audits: Dict[str, AuditFinding] = {}
        self.measurements: Dict[str, str] = {}

    def check(self, claim: str, holds: bool, witness: dict, lhs='', rhs='',
              note: Optional[str] = None) -> bool:
        self.checks += 1
        if holds:
            return True
        self.violation_count += 1
        if len(self.violations) < self.bounds.max_violations:
            self.violations.append(Violation(
                claim=claim, witness={key: str(value) for key, value in witness.items()},
                lhs=str(lhs), rhs=str(rhs), note=note))
        return False

    def register_audit(self, claim: str, statement: str) -> None:
        if self.bounds.audit:
            self.audits.setdefault(claim, AuditFinding(claim=claim, statement=statement))

    def audit(self, claim: str, holds: bool, witness: dict, lhs='', rhs='') -> None:
        finding = self.audits.get(claim)
        if finding is None or holds or finding.status == 'refuted':
            return
        finding.status = 'refuted'
        finding.witness = {key: str(value) for key, value in witness.items()}
        finding.lhs = str(lhs)
        finding.rhs = str(rhs)
        logger.warning(f"[{self.name}] printed statement {claim!r} refuted at {finding.witness}")

    def measure(self, key: str, value) -> None:
        self.measurements[key] = str(value)

    def report(self, elapsed: float) -> ViolationReport:
        return ViolationReport(
            suite=self.name,
            claims=self.claims,
            parameters=self.bounds.parameters(),
            violations=self.violations,
            violation_count=self.violation_count,
            audit=list(self.audits.values()),
            measurements=self.measurements,
            checks=self.checks,
            elapsed_seconds=round(elapsed, 6),
        )


def _markov_row(q: int) -> List[int]:
    return [generalized_markov(q, p) for p in range(q + 1)]


def markov_table(qmax: int, workers: int = 1) -> Dict[Tuple[int, int], int]:
    """m(q, p) for 0 <= p <= q <= qmax, rows computed in shards."""
    rows = run_sharded(_markov_row, range(qmax + 1), workers)
    return {(q, p): value for q, row in enumerate(rows) for p, value in enumerate(row)}


def _coprime_interior(qmax: int):
    for q in range(2, qmax + 1):
        for p in range(1, q):
            if gcd(q, p) == 1:
                yield q, p


def _relative_error(value, limit):
    return abs(value - limit) / abs(limit)


def _slope_parts(k: Fraction) -> Tuple[int, int]:
    return -k.numerator, k.denominator


# ---------------------------------------------------------------- exact identities

def suite_identities(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    rec.register_audit('pell-seed-as-printed',
                       'Pell numbers seeded P_1 = 1, P_2 = 1 give m(2,1) = P_3')
    qmax = bounds.identity_qmax
    fib_axis = scaled_sequence(1, 0, qmax).values
    pell_diagonal = scaled_sequence(1, 1, qmax).values
    for q in range(1, qmax + 1):
        witness = {'q': q}
        value = generalized_markov(q, 1)
        rec.check('odd-fibonacci-row', value == fibonacci(2 * q + 1), witness, value, fibonacci(2 * q + 1))
        if q >= 2:
            value = generalized_markov(q, q - 1)
            rec.check('odd-pell-row', value == pell(2 * q - 1), witness, value, pell(2 * q - 1))
        rec.check('even-fibonacci-axis', fib_axis[q] == fibonacci(2 * q), witness,
                  fib_axis[q], fibonacci(2 * q))
        rec.check('even-pell-diagonal', pell_diagonal[q] == pell(2 * q), witness,
                  pell_diagonal[q], pell(2 * q))
    rec.check('origin', generalized_markov(0, 0) == 0, {'q': 0, 'p': 0}, generalized_markov(0, 0), 0)

    printed = [0, 1, 1]
    while len(printed) < 4:
        printed.append(2 * printed[-1] + printed[-2])
    rec.audit('pell-seed-as-printed', printed[3] == generalized_markov(2, 1),
              {'n': 3}, printed[3], generalized_markov(2, 1))

    digits = max(bounds.digits, 30)
    tolerance = mpmath.mpf(10) ** (-digits)
    with mpmath.mp.workdps(digits + 20):
        sqrt5, sqrt2 = mpmath.sqrt(5), mpmath.sqrt(2)
        phi = (1 + sqrt5) / 2
        for n in range(1, 2 * qmax + 2):
            binet = (phi ** n - (-1 / phi) ** n) / sqrt5
            rec.check('binet-closed-form', _relative_error(binet, fibonacci(n)) < tolerance,
                      {'sequence': 'fibonacci', 'n': n}, mpmath.nstr(binet, digits), fibonacci(n))
            binet = ((1 + sqrt2) ** n - (1 - sqrt2) ** n) / (2 * sqrt2)
            rec.check('binet-closed-form', _relative_error(binet, pell(n)) < tolerance,
                      {'sequence': 'pell', 'n': n}, mpmath.nstr(binet, digits), pell(n))


def suite_markov_equation(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    visited = [0]

    def visit(triple: MarkovTriple) -> None:
        visited[0] += 1
        num, den = triple.fraction
        rec.check('mediant-is-largest', triple.mediant > max(triple.left, triple.right),
                  {'fraction': f'{num}/{den}'}, triple.mediant, max(triple.left, triple.right))

    for q, p in _coprime_interior(bounds.qmax):
        try:
            markov_triple_at(q, p, visit=visit)
        except MarkovEquationError as e:
            rec.check('markov-equation', False, {'q': q, 'p': p}, str(e), '3xyz')
    # each visited node was constructed, and construction verifies the equation
    rec.checks += visited[0]
    rec.measure('nodes_visited', visited[0])

    for (q, p), expected in (((5, 2), 194), ((5, 3), 433), ((9, 2), 9077)):
        oracle = cohn_trace_oracle(q, p)
        rec.check('spot-values', oracle == expected, {'q': q, 'p': p, 'source': 'cohn'}, oracle, expected)
        value = generalized_markov(q, p)
        rec.check('spot-values', value == expected, {'q': q, 'p': p, 'source': 'tree'}, value, expected)


def suite_oracle_equivalence(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    for q, p in _coprime_interior(bounds.oracle_qmax):
        tree = markov_triple_at(q, p).mediant
        try:
            oracle = cohn_trace_oracle(q, p)
        except OracleError as e:
            rec.check('cohn-trace-agreement', False, {'q': q, 'p': p}, tree, str(e))
            continue
        rec.check('cohn-trace-agreement', tree == oracle, {'q': q, 'p': p}, tree, oracle)


def _recurrence_bases(qmax: int) -> List[Tuple[int, int]]:
    return [(1, 0), (1, 1)] + list(_coprime_interior(qmax))


def suite_recurrence(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    nmax = bounds.recurrence_nmax
    tolerance = mpmath.mpf(bounds.tolerance)
    digits = max(bounds.digits, 30)
    worst = mpmath.mpf(0)
    for q, p in _recurrence_bases(bounds.recurrence_qmax):
        sequence = scaled_sequence(q, p, nmax)
        rec.check('scaled-recurrence', sequence.satisfies_recurrence(), {'q': q, 'p': p},
                  ' '.join(str(v) for v in sequence.values), 'f_n = 3 f_1 f_{n-1} - f_{n-2}')
        growth = growth_alpha(sequence.f1, digits)
        with mpmath.mp.workdps(digits + 10):
            for n in range(1, nmax + 1):
                value = sequence.values[n]
                direct = generalized_markov(n * q, n * p)
                rec.check('scaled-values', value == direct, {'q': q, 'p': p, 'n': n}, value, direct)
                error = _relative_error(growth.term(n), value)
                worst = max(worst, error)
                rec.check('scaled-closed-form', error < tolerance, {'q': q, 'p': p, 'n': n},
                          mpmath.nstr(error, 5), bounds.tolerance)
    rec.measure('max_closed_form_relative_error', mpmath.nstr(worst, 5))


def suite_scaling_asymptotics(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    """m(qn, pn) / (3^(n-1) m(q, p)^n) lies in [1 - ((1 + 1/(3 f_1 - 1)^2)^(n-1) - 1), 1]."""
    for q in range(2, bounds.recurrence_qmax + 1):
        for p in sorted({1, q - 1}):
            f1 = generalized_markov(q, p)
            for n in range(2, bounds.recurrence_nmax + 1):
                fn = generalized_markov(q * n, p * n)
                deficit = 1 - Fraction(fn, 3 ** (n - 1) * f1 ** n)
                bound = (1 + Fraction(1, (3 * f1 - 1) ** 2)) ** (n - 1) - 1
                rec.check('scaling-asymptotics', 0 <= deficit <= bound, {'q': q, 'p': p, 'n': n},
                          format_real(mpmath.mpf(deficit.numerator) / deficit.denominator, DECIMAL_DIGITS),
                          format_real(mpmath.mpf(bound.numerator) / bound.denominator, DECIMAL_DIGITS))


# ---------------------------------------------------------------- horizontal and vertical ratios

def suite_h_monotonicity(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    table = markov_table(bounds.qmax + 2, bounds.workers)

    def h(q, p):
        return ExactRatio(table[q + 1, p], table[q, p])

    for q in range(1, bounds.qmax + 1):
        for p in range(1, q + 1):
            witness = {'q': q, 'p': p}
            rec.check('h-increases-in-q', h(q + 1, p).compare(h(q, p)) is Ordering.GREATER,
                      witness, h(q + 1, p), h(q, p))
            if p + 1 <= q:
                rec.check('h-decreases-in-p', h(q, p).compare(h(q, p + 1)) is Ordering.GREATER,
                          witness, h(q, p), h(q, p + 1))


def suite_v_monotonicity(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    rec.register_audit('v-increases-in-q-as-printed', 'v(q, p) < v(q + 1, p)')
    table = markov_table(bounds.qmax + 1, bounds.workers)

    def v(q, p):
        return ExactRatio(table[q, p + 1], table[q, p])

    for q in range(1, bounds.qmax + 1):
        for p in range(0, q):
            witness = {'q': q, 'p': p}
            if p + 1 < q:
                rec.check('v-increases-in-p', v(q, p + 1).compare(v(q, p)) is Ordering.GREATER,
                          witness, v(q, p + 1), v(q, p))
            order = v(q, p).compare(v(q + 1, p))
            rec.check('v-decreases-in-q', order is Ordering.GREATER, witness, v(q, p), v(q + 1, p))
            rec.audit('v-increases-in-q-as-printed', order is Ordering.LESS, witness, v(q, p), v(q + 1, p))


def suite_ratio_bounds(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    rec.register_audit('v-below-phi-as-printed', 'm(q, p+1) < phi * m(q, p) on the region')
    table = markov_table(bounds.qmax + 1, bounds.workers)

    def h(q, p):
        return ExactRatio(table[q + 1, p], table[q, p])

    def v(q, p):
        return ExactRatio(table[q, p + 1], table[q, p])

    extremes = {}

    def track(name, ratio):
        low, high = extremes.get(name, (ratio, ratio))
        if ratio.compare(low) is Ordering.LESS:
            low = ratio
        if ratio.compare(high) is Ordering.GREATER:
            high = ratio
        extremes[name] = (low, high)

    for q in range(1, bounds.qmax + 1):
        for p in range(1, q + 1):
            ratio, witness = h(q, p), {'q': q, 'p': p}
            track('h', ratio)
            rec.check('h-above-silver', ratio.compare_to_surd(SILVER) is Ordering.GREATER,
                      witness, ratio, '1+sqrt(2)')
            rec.check('h-below-phi-squared', ratio.compare_to_surd(PHI_SQUARED) is Ordering.LESS,
                      witness, ratio, '(3+sqrt(5))/2')
            rec.check('h-row-extremes',
                      h(q, q).compare(ratio) is not Ordering.GREATER
                      and ratio.compare(h(q, 1)) is not Ordering.GREATER,
                      witness, ratio, f'[{h(q, q)}, {h(q, 1)}]')
        for p in range(0, q):
            ratio, witness = v(q, p), {'q': q, 'p': p}
            track('v', ratio)
            rec.check('v-above-phi', ratio.compare_to_surd(PHI) is Ordering.GREATER,
                      witness, ratio, '(1+sqrt(5))/2')
            rec.check('v-below-silver', ratio.compare_to_surd(SILVER) is Ordering.LESS,
                      witness, ratio, '1+sqrt(2)')
            rec.check('v-column-extremes',
                      v(q, 0).compare(ratio) is not Ordering.GREATER
                      and ratio.compare(v(q, q - 1)) is not Ordering.GREATER,
                      witness, ratio, f'[{v(q, 0)}, {v(q, q - 1)}]')
            if p >= 1:
                rec.audit('v-below-phi-as-printed', ratio.compare_to_surd(PHI) is Ordering.LESS,
                          witness, ratio, '(1+sqrt(5))/2')

    for name, (low, high) in extremes.items():
        rec.measure(f'{name}_min', to_decimal(low, DECIMAL_DIGITS))
        rec.measure(f'{name}_max', to_decimal(high, DECIMAL_DIGITS))


# ---------------------------------------------------------------- ratios along lines

def suite_line_ratio_monotonicity(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    cache = MarkovCache()
    corpus = line_corpus(bounds.corpus_size)
    rec.measure('lines', len(corpus))
    for entry in corpus:
        line = entry.line
        ratios = [ratio for _, ratio in line_ratios(line, entry.cap, cache)]
        through_origin = line.bn == 0
        for i in range(len(ratios) - 1):
            witness = {'line': line.key(), 'index': i}
            order = ratios[i + 1].compare(ratios[i])
            if through_origin:
                rec.check('ratios-decrease-through-origin', order is Ordering.LESS,
                          witness, ratios[i + 1], ratios[i])
            else:
                rec.check('ratios-increase-off-origin', order is Ordering.GREATER,
                          witness, ratios[i + 1], ratios[i])
        if through_origin and ratios:
            f1 = markov_coprime(line.kd, line.kn)
            for i, ratio in enumerate(ratios):
                rec.check('ratios-above-growth-constant',
                          ratio.compare_to_surd(growth_surd(f1)) is Ordering.GREATER,
                          {'line': line.key(), 'index': i}, ratio, f'alpha({f1})')


def suite_parallel_line_comparisons(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    cache = MarkovCache()
    qmax = bounds.qmax
    for text in NEGATIVE_SLOPES:
        a1, a2 = _slope_parts(parse_rational(text))
        step = (a2, -a1)

        def ratio_at(x, y):
            point = LatticePoint(x, y)
            successor = point.shifted(*step)
            if not (point.in_region() and successor.in_region()):
                return None
            return ExactRatio(markov_at(successor, cache), markov_at(point, cache))

        for x in range(2, qmax + 1):
            for y in range(1, x):
                here = ratio_at(x, y)
                if here is None:
                    continue
                witness = {'k': text, 'x': x, 'y': y}
                for claim, other, expected in (
                        ('same-row', ratio_at(x + 1, y) if x + 1 <= qmax else None, Ordering.LESS),
                        ('same-column', ratio_at(x, y + 1), Ordering.GREATER),
                        ('same-diagonal', ratio_at(x + 1, y + 1) if x + 1 <= qmax else None, Ordering.GREATER)):
                    if other is not None:
                        rec.check(claim, here.compare(other) is expected, witness, here, other)


def suite_midpoint_inequality(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    qmax = bounds.midpoint_qmax
    table = markov_table(qmax, bounds.workers)
    points = sorted(table)
    for i, (x1, y1) in enumerate(points):
        for x2, y2 in points[i + 1:]:
            if (x1 + x2) % 2 or (y1 + y2) % 2:
                continue
            middle = ((x1 + x2) // 2, (y1 + y2) // 2)
            lhs = table[x1, y1] + table[x2, y2]
            rhs = 2 * table[middle]
            rec.check('midpoint', lhs >= rhs,
                      {'first': f'{x1},{y1}', 'middle': f'{middle[0]},{middle[1]}', 'last': f'{x2},{y2}'},
                      lhs, rhs)


# ---------------------------------------------------------------- shifts, brackets and tails

def suite_shift_consistency(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    rec.register_audit('diagonal-shift-moves-last-points-as-printed',
                       'last point of the diagonal shift by t is the last point plus (t, 0)')
    for line in negative_corpus(bounds.corpus_size):
        ends = endpoints(line)
        for t in range(1, bounds.shift_t + 1):
            witness = {'line': line.key(), 't': t}
            diagonal = shift(line, t, ShiftMode.DIAGONAL)
            moved = endpoints(diagonal)
            along_x = endpoints(shift(line, t, ShiftMode.X_AXIS))
            rec.check('diagonal-shift-moves-first-points',
                      moved.first == ends.first.shifted(t, t) and moved.second == ends.second.shifted(t, t),
                      witness, (moved.first, moved.second), (ends.first, ends.second))
            rec.check('x-shift-moves-last-points',
                      along_x.last == ends.last.shifted(t, 0)
                      and along_x.second_last == ends.second_last.shifted(t, 0),
                      witness, (along_x.second_last, along_x.last), (ends.second_last, ends.last))
            equivalent = shift(line, t - Fraction(t) / line.k, ShiftMode.X_AXIS)
            rec.check('diagonal-equals-x-shift', diagonal == equivalent, witness,
                      diagonal.key(), equivalent.key())
            rec.audit('diagonal-shift-moves-last-points-as-printed',
                      moved.last == ends.last.shifted(t, 0), witness, moved.last, ends.last.shifted(t, 0))


def _bracketed_lines(k: Fraction, family: Family, count: int) -> List[Tuple[RationalLine, int]]:
    """The first `count` lattice lines of slope k strictly between two family lines past the bound."""
    found = []
    for c in range(1, INTERCEPT_LIMIT):
        line = make_line(k.numerator, k.denominator, c, k.denominator)
        try:
            index = bracket_index(line, family)
        except FamilyCoincidenceError:
            continue
        if not closed_form_valid(k, index, family) or len(region_points(line)) < 2:
            continue
        found.append((line, index))
        if len(found) == count:
            break
    return found


def _shift_thresholds(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    for text in bounds.tail_slopes:
        k = parse_rational(text)
        a1, a2 = _slope_parts(k)
        seeds = lines_with_points(k, 1, min_points=2)
        if not seeds:
            continue
        line = seeds[0].line
        for family, start in ((Family.LOWER, 2 + a1 + a2), (Family.UPPER, 2 + a1)):
            found = [empirical_shift_threshold(line, n, family, bounds.nmax + n)
                     for n in range(start, start + SHIFT_THRESHOLD_COUNT)]
            rec.measure(f'{text}:{family.value}:shift_thresholds',
                        ','.join('none' if t is None else str(t) for t in found))
            reached = [t for t in found if t is not None]
            rec.measure(f'{text}:{family.value}:shift_thresholds_nondecreasing',
                        'yes' if reached == sorted(reached) else 'no')


def suite_bracket_inequalities(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    quota = max(1, ceil(bounds.corpus_size / len(NEGATIVE_SLOPES)))
    for text in NEGATIVE_SLOPES:
        k = parse_rational(text)
        for family in (Family.LOWER, Family.UPPER):
            key = f'{text}:{family.value}:lines'
            if covers_lattice_lines(k, family):
                rec.measure(key, 'every-line-on-family')
                continue
            lines = _bracketed_lines(k, family, quota)
            rec.measure(key, len(lines))
            for line, index in lines:
                bracket = family_line(k, index, family)
                witness = {'line': line.key(), 'family': family.value, 'n': index}
                if family is Family.LOWER:
                    own, other = last_ratio(line), last_ratio(bracket)
                    rec.check('last-ratio-below-lower-bracket', own.compare(other) is Ordering.LESS,
                              witness, own, other)
                else:
                    own, other = first_ratio(line), first_ratio(bracket)
                    rec.check('first-ratio-above-upper-bracket', own.compare(other) is Ordering.GREATER,
                              witness, own, other)
    _shift_thresholds(bounds, rec)


def _tail(rec: SuiteRecorder, name: str, ratios: List[Tuple[int, ExactRatio]], limit,
          increasing: bool, tolerance, slope: str) -> None:
    """Strict monotonicity, the limit as a strict bound, and the final relative error."""
    expected_step = Ordering.GREATER if increasing else Ordering.LESS
    for (n_prev, previous), (n, current) in zip(ratios, ratios[1:]):
        rec.check(f'{name}-{"increasing" if increasing else "decreasing"}',
                  current.compare(previous) is expected_step,
                  {'k': slope, 'n': n}, current, previous)
    for n, ratio in ratios:
        value = ratio.to_mpf()
        on_side = value < limit if increasing else value > limit
        rec.check(f'{name}-{"below" if increasing else "above"}-limit', on_side,
                  {'k': slope, 'n': n}, mpmath.nstr(value, 20), mpmath.nstr(limit, 20))
    if len(ratios) >= 2:
        (n_prev, previous), (n, final) = ratios[-2], ratios[-1]
        error = _relative_error(final.to_mpf(), limit)
        rec.check(f'{name}-limit', error < tolerance, {'k': slope, 'n': n},
                  mpmath.nstr(error, 5), str(tolerance))
        previous_error = _relative_error(previous.to_mpf(), limit)
        rec.measure(f'{slope}:{name}:relative_error', mpmath.nstr(error, 5))
        if previous_error:
            rec.measure(f'{slope}:{name}:rate', mpmath.nstr(error / previous_error, 5))


def suite_tail_convergence(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    rec.register_audit('x-shift-tail-decreasing-as-printed',
                       'the last ratio of l[t] strictly decreases in t')
    digits = max(bounds.digits, 30)
    for text in bounds.tail_slopes:
        k = parse_rational(text)
        a1, a2 = _slope_parts(k)
        # the slowest correction decays like phi^(-4r), r the shortest run of the Christoffel word
        horizon = max(bounds.nmax, 12 * (a1 + a2 + 1))
        rec.measure(f'{text}:horizon', horizon)
        with mpmath.mp.workdps(digits + 40):
            tolerance = mpmath.mpf(bounds.tolerance)
            last_limit = limit_last_ratio(a1, a2, digits + 30)
            first_limit = limit_first_ratio(a1, a2, digits + 30)
            rec.measure(f'{text}:limit_last', format_real(last_limit, DECIMAL_DIGITS))
            rec.measure(f'{text}:limit_first', format_real(first_limit, DECIMAL_DIGITS))

            lower = []
            for n in range(2 + a1 + a2, horizon + 1):
                second_last, last = family_endpoints(k, n, Family.LOWER)
                lower.append((n, ExactRatio(markov_at(last), markov_at(second_last))))
            _tail(rec, 'lower-family', lower, last_limit, True, tolerance, text)

            upper = []
            for n in range(2 + a1, horizon + 1):
                first, second = family_endpoints(k, n, Family.UPPER)
                upper.append((n, ExactRatio(markov_at(second), markov_at(first))))
            _tail(rec, 'upper-family', upper, first_limit, False, tolerance, text)

            for family, sequence, limit in (('lower', lower, last_limit), ('upper', upper, first_limit)):
                for n, ratio in sequence:
                    if n == bounds.nmax:
                        rec.measure(f'{text}:{family}:relative_error_at_nmax',
                                    mpmath.nstr(_relative_error(ratio.to_mpf(), limit), 5))

            seeds = lines_with_points(k, 1, min_points=2)
            if not seeds:
                continue
            line = seeds[0].line
            along_x = [(t, last_ratio(shift(line, t, ShiftMode.X_AXIS))) for t in range(horizon + 1)]
            _tail(rec, 'x-shift-tail', along_x, last_limit, True, tolerance, text)
            for (_, previous), (t, current) in zip(along_x, along_x[1:]):
                rec.audit('x-shift-tail-decreasing-as-printed',
                          current.compare(previous) is Ordering.LESS,
                          {'line': line.key(), 't': t}, current, previous)
            diagonal = [(t, first_ratio(shift(line, t, ShiftMode.DIAGONAL))) for t in range(horizon + 1)]
            _tail(rec, 'diagonal-shift-tail', diagonal, first_limit, False, tolerance, text)


# ---------------------------------------------------------------- classification

def _check_report(rec: SuiteRecorder, report: MonotonicityReport) -> None:
    if report.n_points < 2:
        return
    key = report.rational_line().key()
    ratios = report.exact_ratios()
    criterion = (ratios[0].compare_to_one() is Ordering.LESS
                 and ratios[-1].compare_to_one() is Ordering.GREATER)
    rec.check('end-ratio-criterion',
              criterion == (report.classification is Classification.NON_MONOTONIC),
              {'line': key}, report.classification.value, f'{ratios[0]} .. {ratios[-1]}')
    rec.check('unimodal', report.certified, {'line': key}, ' '.join(report.ratios), 'unimodal')


def _classify_slope(bounds: SuiteBounds, rec: SuiteRecorder, text: str, per_slope: int,
                    regime: SlopeRegime, expected: Classification) -> None:
    k = parse_rational(text)
    predicted = slope_regime(k)
    rec.check('regime-prediction', predicted is regime, {'k': text}, predicted.value, regime.value)
    for entry in lines_with_points(k, per_slope, min_points=2):
        report = classify_line(entry.line, entry.cap)
        rec.check(f'{expected.value.lower()}-lines', report.classification is expected,
                  {'line': entry.line.key()}, report.classification.value, expected.value)
        _check_report(rec, report)


def suite_classifier_regime_agreement(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    slope_count = len(bounds.increasing_slopes) + len(bounds.decreasing_slopes) + len(bounds.mixed_slopes)
    per_slope = max(1, bounds.corpus_size // max(1, slope_count))
    for text in bounds.increasing_slopes:
        _classify_slope(bounds, rec, text, per_slope, SlopeRegime.INCREASING, Classification.INCREASING)
    for text in bounds.decreasing_slopes:
        _classify_slope(bounds, rec, text, per_slope, SlopeRegime.DECREASING, Classification.DECREASING)

    for kn, kd, bn, expected, values in ((-1, 1, 7, Classification.INCREASING, [169, 194, 233]),
                                         (-2, 1, 20, Classification.DECREASING, [33461, 16725, 9077])):
        report = classify_line(make_line(kn, kd, bn, 1))
        rec.check('witness-lines',
                  report.classification is expected and report.m_values() == values,
                  {'line': report.rational_line().key()},
                  f'{report.classification.value} {report.m_values()}', f'{expected.value} {values}')

    for text in bounds.mixed_slopes:
        k = parse_rational(text)
        a1, a2 = _slope_parts(k)
        predicted = slope_regime(k)
        rec.check('regime-prediction', predicted is SlopeRegime.MIXED, {'k': text},
                  predicted.value, SlopeRegime.MIXED.value)
        try:
            intercept, found = find_nonmonotonic_intercept(k, bounds.search_cap)
        except SearchExhaustedError as e:
            rec.check('mixed-regime-nonmonotonic', False, {'k': text}, str(e), 'NonMonotonic')
            continue
        rec.measure(f'{text}:first_nonmonotonic_b', intercept)
        rec.measure(f'{text}:turning_point', f'{found.turning_point.x},{found.turning_point.y}')
        _check_report(rec, found)

        outcomes = set()
        last_c = int(intercept * a2) + per_slope * a2
        for c in range(1, last_c + 1):
            line = make_line(k.numerator, k.denominator, c, k.denominator)
            if len(region_points(line)) < 2:
                continue
            report = classify_line(line)
            outcomes.add(report.classification)
            _check_report(rec, report)
        wanted = {Classification.INCREASING, Classification.DECREASING, Classification.NON_MONOTONIC}
        rec.check('mixed-regime-outcomes', wanted <= outcomes, {'k': text, 'c_max': last_c},
                  sorted(o.value for o in outcomes), sorted(o.value for o in wanted))

        base = found.rational_line()
        shifted = [classify_line(shift(base, t, ShiftMode.X_AXIS)) for t in range(1, bounds.t_cap + 1)]
        settled = None
        for t in range(len(shifted), 0, -1):
            if shifted[t - 1].classification is not Classification.NON_MONOTONIC:
                break
            settled = t
        rec.measure(f'{text}:x_shifts_nonmonotonic_from', settled if settled is not None else 'none')
        if shifted:
            rec.check('right-shifts-nonmonotonic',
                      shifted[-1].classification is Classification.NON_MONOTONIC,
                      {'k': text, 'b': base.b, 't': bounds.t_cap},
                      shifted[-1].classification.value, Classification.NON_MONOTONIC.value)
        for report in shifted:
            _check_report(rec, report)


def suite_uniqueness_scan(bounds: SuiteBounds, rec: SuiteRecorder) -> None:
    table = markov_table(bounds.qmax, bounds.workers)
    seen: Dict[int, Tuple[int, int]] = {}
    for (q, p), value in sorted(table.items()):
        if p < 1:
            continue
        earlier = seen.setdefault(value, (q, p))
        rec.check('distinct-values', earlier == (q, p),
                  {'first': f'{earlier[0]},{earlier[1]}', 'second': f'{q},{p}'}, value, value)
    rec.measure('distinct_values', len(seen))


SUITES: Dict[str, Tuple[Callable[[SuiteBounds, SuiteRecorder], None], List[str]]] = {
    'identities': (suite_identities, ['odd-fibonacci-row', 'odd-pell-row', 'even-fibonacci-axis',
                                      'even-pell-diagonal', 'origin', 'binet-closed-form']),
    'markov_equation': (suite_markov_equation, ['markov-equation', 'mediant-is-largest', 'spot-values']),
    'oracle_equivalence': (suite_oracle_equivalence, ['cohn-trace-agreement']),
    'recurrence': (suite_recurrence, ['scaled-recurrence', 'scaled-values', 'scaled-closed-form']),
    'scaling_asymptotics': (suite_scaling_asymptotics, ['scaling-asymptotics']),
    'h_monotonicity': (suite_h_monotonicity, ['h-increases-in-q', 'h-decreases-in-p']),
    'v_monotonicity': (suite_v_monotonicity, ['v-increases-in-p', 'v-decreases-in-q']),
    'ratio_bounds': (suite_ratio_bounds, ['h-above-silver', 'h-below-phi-squared', 'h-row-extremes',
                                          'v-above-phi', 'v-below-silver', 'v-column-extremes']),
    'line_ratio_monotonicity': (suite_line_ratio_monotonicity,
                                ['ratios-increase-off-origin', 'ratios-decrease-through-origin',
                                 'ratios-above-growth-constant']),
    'parallel_line_comparisons': (suite_parallel_line_comparisons,
                                  ['same-row', 'same-column', 'same-diagonal']),
    'midpoint_inequality': (suite_midpoint_inequality, ['midpoint']),
    'shift_consistency': (suite_shift_consistency, ['diagonal-shift-moves-first-points',
                                                    'x-shift-moves-last-points', 'diagonal-equals-x-shift']),
    'bracket_inequalities': (suite_bracket_inequalities, ['last-ratio-below-lower-bracket',
                                                          'first-ratio-above-upper-bracket']),
    'tail_convergence': (suite_tail_convergence,
                         ['lower-family-increasing', 'lower-family-below-limit', 'lower-family-limit',
                          'upper-family-decreasing', 'upper-family-above-limit', 'upper-family-limit',
                          'x-shift-tail-increasing', 'x-shift-tail-below-limit', 'x-shift-tail-limit',
                          'diagonal-shift-tail-decreasing', 'diagonal-shift-tail-above-limit',
                          'diagonal-shift-tail-limit']),
    'classifier_regime_agreement': (suite_classifier_regime_agreement,
                                    ['regime-prediction', 'increasing-lines', 'decreasing-lines',
                                     'witness-lines', 'mixed-regime-nonmonotonic', 'mixed-regime-outcomes',
                                     'right-shifts-nonmonotonic', 'end-ratio-criterion', 'unimodal']),
    'uniqueness_scan': (suite_uniqueness_scan, ['distinct-values']),
}


def run_suite(name: str, bounds: Optional[SuiteBounds] = None) -> ViolationReport:
    if name not in SUITES:
        raise UnknownSuiteError(f"unknown suite {name!r}; available: {', '.join(SUITES)}")
    bounds = bounds if bounds is not None else SuiteBounds.from_config(load_config())
    suite, claims = SUITES[name]
    recorder = SuiteRecorder(name, claims, bounds)
    logger.info(f"Running suite {name}")
    start = time.perf_counter()
    suite(bounds, recorder)
    if recorder.checks == 0:
        recorder.check(EMPTY_SCAN, False, {'suite': name}, 0, 'at least one check')
    report = recorder.report(time.perf_counter() - start)
    logger.info(f"Suite {name}: {report.checks} checks, {report.violation_count} violation(s) "
                f"in {report.elapsed_seconds:.2f}s")
    return report


def run_suites(names: List[str], bounds: Optional[SuiteBounds] = None) -> List[ViolationReport]:
    """Run several suites; with workers > 1 the suites themselves run in parallel."""
    bounds = bounds if bounds is not None else SuiteBounds.from_config(load_config())
    for name in names:
        if name not in SUITES:
            raise UnknownSuiteError(f"unknown suite {name!r}; available: {', '.join(SUITES)}")
    if bounds.workers <= 1 or len(names) <= 1:
        return [run_suite(name, bounds) for name in names]
    inner = bounds.model_copy(update={'workers': 1})
    return run_sharded(functools.partial(run_suite, bounds=inner), names, bounds.workers)
