import argparse
import sys
from fractions import Fraction
from typing import List, Optional

import mpmath

from .config import load_config
from .emit import (CLASSIFY_COLUMNS, LIMIT_COLUMNS, RATIO_COLUMNS, SUITE_COLUMNS, TABLE_COLUMNS,
                   open_output, write_json, write_plain, write_rows)
from .errors import DomainError, MarkovMonoError, SearchExhaustedError, UnknownSuiteError
from .harness import SUITES, SuiteBounds, markov_table, run_suites
from .lattice_lines import Family, RationalLine, family_endpoints
from .markov_core import MarkovCache, generalized_markov
from .monotonicity import classify_line, find_nonmonotonic_intercept
from .ratio_analysis import (ExactRatio, limit_first_ratio, limit_last_ratio, line_ratios,
                             markov_at, thresholds, to_decimal)
from .utils.logging import get_logger
from .utils.numeric import format_real, parse_rational

logger = get_logger()

RATIONAL_FLAGS = ('--k', '--b', '--slope')


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _slope(text: str) -> Fraction:
    """Accepts a1/a2 (meaning k = -a1/a2) or the negative slope itself."""
    value = _rational(text)
    if value == 0:
        raise argparse.ArgumentTypeError("slope magnitude must be nonzero")
    return -abs(value)


def _normalize_argv(argv: List[str]) -> List[str]:
    """Glue "--k -2/1" into "--k=-2/1" so argparse does not read the value as a flag."""
    merged, i = [], 0
    while i < len(argv):
        token = argv[i]
        if token in RATIONAL_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith('-'):
            merged.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        merged.append(token)
        i += 1
    return merged


def build_parser(config: dict) -> argparse.ArgumentParser:
    bounds = config['bounds']
    digits = int(config['digits'])
    parser = argparse.ArgumentParser(
        prog='markovmono',
        description="Generalized Markov numbers: exact values, ratios along lines, monotonicity and verification")
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    def output_options(p, formats, default):
        p.add_argument('--format', choices=formats, default=default, help='Output format')
        p.add_argument('--output', help='Write to this file instead of standard output')

    p = sub.add_parser('markov', help='Print m(q, p)')
    p.add_argument('q', type=int)
    p.add_argument('p', type=int)
    p.add_argument('--cache', default=config.get('cache_file'), help='q,p,value cache file to read and extend')

    p = sub.add_parser('table', help='m(q, p) over 0 <= p <= q <= QMAX')
    p.add_argument('--qmax', type=int, default=bounds['qmax'])
    p.add_argument('--workers', type=int, default=config['workers'])
    p.add_argument('--cache', default=config.get('cache_file'), help='q,p,value cache file to write')
    output_options(p, ['csv', 'json', 'plain'], 'csv')

    for name, help_text in (('ratios', 'Exact ratios along a line'),
                            ('classify', 'Monotonicity report for a line')):
        p = sub.add_parser(name, help=help_text)
        p.add_argument('--k', type=_rational, required=True, help='slope as kn/kd')
        p.add_argument('--b', type=_rational, required=True, help='intercept as bn/bd')
        p.add_argument('--cap', type=int, help='x cap (required for nonnegative slopes)')
        if name == 'ratios':
            p.add_argument('--digits', type=int, default=digits)
            output_options(p, ['csv', 'json', 'plain'], 'csv')
        else:
            p.add_argument('--fast', action='store_true', help='evaluate only the end ratios and bisect')
            output_options(p, ['json', 'csv', 'plain'], 'json')

    p = sub.add_parser('limits', help='End-ratio sequences of the family lines and their limits')
    p.add_argument('--slope', type=_slope, required=True, help='a1/a2 for k = -a1/a2')
    p.add_argument('--nmax', type=int, default=bounds['nmax'])
    p.add_argument('--digits', type=int, default=digits)
    output_options(p, ['csv', 'json', 'plain'], 'csv')

    p = sub.add_parser('thresholds', help='Threshold slopes between the monotonicity regimes')
    p.add_argument('--digits', type=int, default=digits)
    output_options(p, ['json', 'plain'], 'plain')

    p = sub.add_parser('search-nonmono', help='Smallest intercept giving a non-monotonic line')
    p.add_argument('--slope', type=_slope, required=True, help='a1/a2 for k = -a1/a2')
    p.add_argument('--cap', type=int, default=bounds['search_cap'])
    output_options(p, ['json', 'plain'], 'json')

    p = sub.add_parser('verify', help='Run verification suites')
    p.add_argument('--suite', default='all', help=f"all or one of: {', '.join(SUITES)}")
    p.add_argument('--qmax', type=int)
    p.add_argument('--nmax', type=int)
    p.add_argument('--corpus', type=int, dest='corpus_size')
    p.add_argument('--digits', type=int)
    p.add_argument('--workers', type=int)
    p.add_argument('--no-audit', action='store_true', help='skip checking statements as printed')
    output_options(p, ['json', 'plain'], 'plain')
    return parser


def _line(args) -> RationalLine:
    return RationalLine.from_fractions(args.k, args.b)


def cmd_markov(args) -> int:
    cache = MarkovCache(args.cache) if args.cache else None
    print(generalized_markov(args.q, args.p, cache))
    if cache is not None:
        cache.save()
    return 0


def cmd_table(args) -> int:
    if args.qmax < 0:
        raise DomainError(f"qmax must be nonnegative, got {args.qmax}")
    table = markov_table(args.qmax, args.workers)
    rows = [(q, p, value) for (q, p), value in sorted(table.items())]
    if args.cache:
        cache = MarkovCache(args.cache)
        for q, p, value in rows:
            cache.put(q, p, value)
        cache.save()
    with open_output(args.output) as out:
        write_rows(args.format, TABLE_COLUMNS, rows, out)
    return 0


def cmd_ratios(args) -> int:
    line = _line(args)
    rows = []
    entries = line_ratios(line, args.cap)
    step = (line.kd, line.kn)
    for point, ratio in entries:
        rows.append((point.x, point.y, point.x + step[0], point.y + step[1],
                     ratio.num, ratio.den, to_decimal(ratio, args.digits)))
    with open_output(args.output) as out:
        write_rows(args.format, RATIO_COLUMNS, rows, out)
    return 0


def cmd_classify(args) -> int:
    report = classify_line(_line(args), args.cap, fast=args.fast)
    with open_output(args.output) as out:
        if args.format == 'json':
            write_json(report.model_dump(mode='json'), out)
        else:
            write_rows(args.format, CLASSIFY_COLUMNS, [report.csv_row()], out)
    return 0


def _limit_rows(k: Fraction, nmax: int, digits: int) -> List[list]:
    a1, a2 = -k.numerator, k.denominator
    rows = []
    with mpmath.mp.workdps(digits + 20):
        for family, start, limit in ((Family.LOWER, 2 + a1 + a2, limit_last_ratio(a1, a2, digits + 10)),
                                     (Family.UPPER, 2 + a1, limit_first_ratio(a1, a2, digits + 10))):
            for n in range(start, nmax + 1):
                # lower lines give (second_last, last), upper lines (first, second)
                near, far = family_endpoints(k, n, family)
                ratio = ExactRatio(markov_at(far), markov_at(near))
                error = abs(ratio.to_mpf() - limit) / limit
                rows.append([family.value, n, near.x, near.y, ratio.num, ratio.den,
                             to_decimal(ratio, digits), format_real(limit, digits),
                             mpmath.nstr(error, 6)])
    return rows


def cmd_limits(args) -> int:
    rows = _limit_rows(args.slope, args.nmax, args.digits)
    with open_output(args.output) as out:
        write_rows(args.format, LIMIT_COLUMNS, rows, out)
    return 0


def cmd_thresholds(args) -> int:
    described = thresholds(args.digits).describe()
    with open_output(args.output) as out:
        if args.format == 'json':
            write_json(described, out)
        else:
            for key in ('k_plus', 'k_minus', 'phi', 'silver'):
                out.write(f"{key} = {described[key]}\n")
    return 0


def cmd_search_nonmono(args) -> int:
    try:
        intercept, report = find_nonmonotonic_intercept(args.slope, args.cap)
    except SearchExhaustedError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    with open_output(args.output) as out:
        if args.format == 'json':
            write_json({'b': str(intercept), 'report': report.model_dump(mode='json')}, out)
        else:
            write_plain(CLASSIFY_COLUMNS, [report.csv_row()], out)
    return 0


def cmd_verify(args, config: dict) -> int:
    names = list(SUITES) if args.suite == 'all' else [args.suite]
    bounds = SuiteBounds.from_config(
        config, qmax=args.qmax, nmax=args.nmax, corpus_size=args.corpus_size,
        digits=args.digits, workers=args.workers, audit=False if args.no_audit else None)
    reports = run_suites(names, bounds)
    with open_output(args.output) as out:
        if args.format == 'json':
            write_json([report.payload() for report in reports], out)
        else:
            rows = [(r.suite, 'yes' if r.passed else 'NO', r.checks, r.violation_count,
                     sum(1 for finding in r.audit if finding.status == 'refuted'),
                     f"{r.elapsed_seconds:.3f}") for r in reports]
            write_plain(SUITE_COLUMNS, rows, out)
            for report in reports:
                for violation in report.violations:
                    out.write(f"{report.suite}: {violation.claim} at {violation.witness}: "
                              f"{violation.lhs} vs {violation.rhs}\n")
    return 0 if all(report.passed for report in reports) else 1


COMMANDS = {
    'markov': cmd_markov,
    'table': cmd_table,
    'ratios': cmd_ratios,
    'classify': cmd_classify,
    'limits': cmd_limits,
    'thresholds': cmd_thresholds,
    'search-nonmono': cmd_search_nonmono,
}


def run_cli(argv: Optional[List[str]] = None) -> int:
    config = load_config()
    parser = build_parser(config)
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_normalize_argv(argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        if args.command == 'verify':
            return cmd_verify(args, config)
        return COMMANDS[args.command](args)
    except (DomainError, UnknownSuiteError) as e:
        logger.error(f"{args.command}: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return 2
    except MarkovMonoError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return 1


def main():
    sys.exit(run_cli())


if __name__ == '__main__':
    main()
