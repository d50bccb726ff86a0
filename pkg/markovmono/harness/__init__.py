from .models import AuditFinding, SuiteBounds, Violation, ViolationReport
from .search import bracket_index, empirical_shift_threshold
from .suites import SUITES, markov_table, run_suite, run_suites

__all__ = [
    'AuditFinding', 'SuiteBounds', 'Violation', 'ViolationReport',
    'bracket_index', 'empirical_shift_threshold',
    'SUITES', 'markov_table', 'run_suite', 'run_suites',
]
