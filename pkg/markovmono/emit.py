"""
Writers for the command line's CSV, JSON and plain-table output.

Column orders are part of the interface: new columns are only ever appended.
Big integers are written as decimal strings.
"""
import csv
import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, TextIO

TABLE_COLUMNS = ['q', 'p', 'm']
RATIO_COLUMNS = ['x', 'y', 'next_x', 'next_y', 'num', 'den', 'decimal']
CLASSIFY_COLUMNS = ['line', 'classification', 'n_points', 'turning_x', 'turning_y',
                    'first_ratio_decimal', 'last_ratio_decimal']
LIMIT_COLUMNS = ['family', 'n', 'x', 'y', 'num', 'den', 'decimal', 'limit', 'relative_error']
SUITE_COLUMNS = ['suite', 'passed', 'checks', 'violations', 'refuted_audits', 'elapsed_seconds']


@contextmanager
def open_output(path: Optional[str] = None):
    if path is None or path == '-':
        yield sys.stdout
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, 'w', newline='') as f:
        yield f


def _cells(row: Sequence) -> List[str]:
    return ['' if value is None else str(value) for value in row]


def write_csv(columns: Sequence[str], rows: Iterable[Sequence], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow(_cells(row))


def write_json(payload, out: TextIO) -> None:
    out.write(json.dumps(payload, indent=2))
    out.write('\n')


def write_plain(columns: Sequence[str], rows: Iterable[Sequence], out: TextIO) -> None:
    rows = [_cells(row) for row in rows]
    widths = [max([len(column)] + [len(row[i]) for row in rows]) for i, column in enumerate(columns)]
    out.write('  '.join(column.ljust(width) for column, width in zip(columns, widths)).rstrip() + '\n')
    for row in rows:
        out.write('  '.join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() + '\n')


def write_rows(fmt: str, columns: Sequence[str], rows: Iterable[Sequence], out: TextIO) -> None:
    """Rows as CSV, plain table, or a JSON list of objects keyed by column."""
    rows = list(rows)
    if fmt == 'json':
        write_json([dict(zip(columns, _cells(row))) for row in rows], out)
    elif fmt == 'plain':
        write_plain(columns, rows, out)
    else:
        write_csv(columns, rows, out)
