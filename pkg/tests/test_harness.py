import unittest
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from unittest import mock

from markovmono.config import DEFAULT_CONFIG
from markovmono.errors import DomainError, FamilyCoincidenceError, UnknownSuiteError
from markovmono.harness import (SUITES, SuiteBounds, bracket_index, empirical_shift_threshold,
                                markov_table, run_suite, run_suites)
from markovmono.harness.corpus import line_corpus, lines_with_points, negative_corpus
from markovmono.harness.shards import _make_executor, run_sharded
from markovmono.lattice_lines import Family, make_line
from markovmono.markov_core import generalized_markov


def small_bounds(**overrides):
    values = dict(qmax=8, identity_qmax=12, oracle_qmax=10, midpoint_qmax=8, recurrence_qmax=6,
                  recurrence_nmax=4, nmax=12, corpus_size=10, search_cap=2000, t_cap=4, shift_t=2,
                  tail_slopes=['-1'], mixed_slopes=[])
    values.update(overrides)
    return SuiteBounds(**values)


def thread_executor(max_workers):
    return ThreadPoolExecutor(max_workers=max_workers)


class TestSuiteBounds(unittest.TestCase):
    def test_defaults_follow_config(self):
        bounds = SuiteBounds()
        self.assertEqual(bounds.qmax, DEFAULT_CONFIG['bounds']['qmax'])
        self.assertEqual(bounds.tolerance, '1e-6')
        self.assertEqual(bounds.mixed_slopes, ['-6/5'])

    def test_from_config_ignores_missing_overrides(self):
        config = {'digits': 40, 'bounds': {'qmax': 9}, 'slopes': {'tail': ['-2']}}
        bounds = SuiteBounds.from_config(config, qmax=None, nmax=15)
        self.assertEqual(bounds.qmax, 9)
        self.assertEqual(bounds.nmax, 15)
        self.assertEqual(bounds.digits, 40)
        self.assertEqual(bounds.tail_slopes, ['-2'])

    def test_parameters_leave_out_workers(self):
        parameters = small_bounds(workers=4).parameters()
        self.assertNotIn('workers', parameters)
        self.assertEqual(parameters['qmax'], '8')


class TestSuites(unittest.TestCase):
    def assertPasses(self, name, bounds=None):
        report = run_suite(name, bounds or small_bounds())
        self.assertTrue(report.passed, f"{name}: {[v.model_dump() for v in report.violations[:3]]}")
        self.assertGreater(report.checks, 0)
        return report

    def test_identities(self):
        report = self.assertPasses('identities')
        finding = report.audit[0]
        self.assertEqual(finding.claim, 'pell-seed-as-printed')
        self.assertEqual(finding.status, 'refuted')
        self.assertEqual((finding.lhs, finding.rhs), ('3', '5'))

    def test_markov_equation(self):
        report = self.assertPasses('markov_equation')
        self.assertIn('nodes_visited', report.measurements)

    def test_oracle_equivalence(self):
        self.assertPasses('oracle_equivalence')

    def test_recurrence(self):
        self.assertPasses('recurrence')

    def test_scaling_asymptotics(self):
        self.assertPasses('scaling_asymptotics')

    def test_h_monotonicity(self):
        self.assertPasses('h_monotonicity')

    def test_v_monotonicity(self):
        report = self.assertPasses('v_monotonicity')
        finding = report.audit[0]
        self.assertEqual(finding.status, 'refuted')
        self.assertEqual(finding.witness, {'q': '1', 'p': '0'})

    def test_ratio_bounds(self):
        report = self.assertPasses('ratio_bounds')
        finding = report.audit[0]
        self.assertEqual(finding.claim, 'v-below-phi-as-printed')
        self.assertEqual(finding.status, 'refuted')
        self.assertEqual(finding.witness, {'q': '2', 'p': '1'})
        self.assertEqual(finding.lhs, '12/5')
        self.assertTrue(report.measurements['h_min'].startswith('2.4'))

    def test_audit_can_be_switched_off(self):
        report = run_suite('ratio_bounds', small_bounds(audit=False))
        self.assertEqual(report.audit, [])

    def test_line_ratio_monotonicity(self):
        self.assertPasses('line_ratio_monotonicity')

    def test_parallel_line_comparisons(self):
        self.assertPasses('parallel_line_comparisons')

    def test_midpoint_inequality(self):
        self.assertPasses('midpoint_inequality')

    def test_shift_consistency(self):
        report = self.assertPasses('shift_consistency')
        self.assertEqual(report.audit[0].status, 'refuted')
        self.assertEqual(report.audit[0].witness['t'], '1')

    def test_bracket_inequalities(self):
        report = self.assertPasses('bracket_inequalities')
        measurements = report.measurements
        self.assertEqual(measurements['-1:lower:lines'], 'every-line-on-family')
        self.assertEqual(measurements['-1/3:lower:lines'], 'every-line-on-family')
        for key in ('-1:upper:lines', '-2:lower:lines', '-2:upper:lines', '-3/2:lower:lines'):
            self.assertGreater(int(measurements[key]), 0, key)
        self.assertEqual(measurements['-1:lower:shift_thresholds'], '1,2,3,4')
        self.assertEqual(measurements['-1:lower:shift_thresholds_nondecreasing'], 'yes')
        self.assertIn('-1:upper:shift_thresholds', measurements)

    def test_suite_without_checks_fails(self):
        with mock.patch.dict(SUITES, {'identities': (lambda bounds, rec: None, ['odd-fibonacci-row'])}):
            report = run_suite('identities', small_bounds())
        self.assertFalse(report.passed)
        self.assertEqual(report.violations[0].claim, 'non-empty-scan')

    def test_tail_convergence(self):
        report = self.assertPasses('tail_convergence')
        self.assertEqual(report.measurements['-1:horizon'], '36')
        self.assertEqual(report.audit[0].status, 'refuted')

    def test_classifier_regime_agreement(self):
        self.assertPasses('classifier_regime_agreement')

    def test_uniqueness_scan(self):
        self.assertPasses('uniqueness_scan')

    def test_unknown_suite(self):
        with self.assertRaises(UnknownSuiteError):
            run_suite('no_such_suite', small_bounds())
        with self.assertRaises(UnknownSuiteError):
            run_suites(['identities', 'no_such_suite'], small_bounds())

    def test_payload_is_deterministic(self):
        first = run_suite('oracle_equivalence', small_bounds()).payload()
        second = run_suite('oracle_equivalence', small_bounds()).payload()
        self.assertEqual(first, second)
        self.assertNotIn('elapsed_seconds', first)
        timed = run_suite('oracle_equivalence', small_bounds()).payload(include_timing=True)
        self.assertIn('elapsed_seconds', timed)

    def test_every_suite_lists_its_claims(self):
        for name, (_, claims) in SUITES.items():
            self.assertTrue(claims, name)


class TestSuitesAtDefaultBounds(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        bounds = SuiteBounds(workers=1)
        cls.reports = {name: run_suite(name, bounds) for name in SUITES}

    def test_every_suite_passes(self):
        for name, report in self.reports.items():
            with self.subTest(suite=name):
                self.assertTrue(report.passed, f"{name}: {[v.model_dump() for v in report.violations[:3]]}")
                self.assertGreater(report.checks, 0)

    def test_tail_convergence_covers_every_tail_slope(self):
        measurements = self.reports['tail_convergence'].measurements
        for slope in ('-1', '-6/5', '-2'):
            self.assertIn(f'{slope}:horizon', measurements)
            self.assertIn(f'{slope}:limit_last', measurements)

    def test_mixed_slope_search_runs(self):
        measurements = self.reports['classifier_regime_agreement'].measurements
        self.assertIn('-6/5:first_nonmonotonic_b', measurements)
        self.assertIn('-6/5:turning_point', measurements)

    def test_bracket_checks_run_for_both_families(self):
        measurements = self.reports['bracket_inequalities'].measurements
        self.assertEqual(measurements['-1/2:lower:lines'], 'every-line-on-family')
        self.assertEqual(measurements['-1/2:upper:lines'], '20')
        self.assertEqual(measurements['-6/5:lower:lines'], '20')


class TestParallelRuns(unittest.TestCase):
    def test_run_sharded_keeps_order(self):
        with mock.patch('markovmono.harness.shards._make_executor', side_effect=thread_executor):
            self.assertEqual(run_sharded(str, [3, 1, 2, 5], workers=3), ['3', '1', '2', '5'])
        self.assertEqual(run_sharded(str, [3, 1], workers=1), ['3', '1'])

    def test_falls_back_to_threads(self):
        with mock.patch('multiprocessing.get_context', side_effect=ValueError('no fork')):
            executor = _make_executor(2)
        self.assertIsInstance(executor, ThreadPoolExecutor)
        executor.shutdown()

    def test_markov_table_independent_of_workers(self):
        with mock.patch('markovmono.harness.shards._make_executor', side_effect=thread_executor):
            sharded = markov_table(6, workers=3)
        self.assertEqual(sharded, markov_table(6))
        self.assertEqual(len(sharded), 28)
        self.assertEqual(sharded[5, 2], generalized_markov(5, 2))

    def test_suites_in_parallel_match_serial(self):
        names = ['identities', 'oracle_equivalence']
        serial = [r.payload() for r in run_suites(names, small_bounds())]
        with mock.patch('markovmono.harness.shards._make_executor', side_effect=thread_executor):
            parallel = [r.payload() for r in run_suites(names, small_bounds(workers=2))]
        self.assertEqual(serial, parallel)


class TestBracketIndex(unittest.TestCase):
    def test_lower_family(self):
        self.assertEqual(bracket_index(make_line(-2, 1, 20, 1), Family.LOWER), 10)
        self.assertEqual(bracket_index(make_line(-1, 1, 13, 2), Family.LOWER), 6)

    def test_upper_family(self):
        self.assertEqual(bracket_index(make_line(-2, 1, 19, 1), Family.UPPER), 7)

    def test_coincidence(self):
        with self.assertRaises(FamilyCoincidenceError) as ctx:
            bracket_index(make_line(-1, 1, 7, 1), Family.LOWER)
        self.assertEqual(ctx.exception.index, 6)
        with self.assertRaises(FamilyCoincidenceError) as ctx:
            bracket_index(make_line(-2, 1, 21, 1), Family.LOWER)
        self.assertEqual(ctx.exception.index, 10)
        with self.assertRaises(FamilyCoincidenceError) as ctx:
            bracket_index(make_line(-2, 1, 20, 1), Family.UPPER)
        self.assertEqual(ctx.exception.index, 7)

    def test_needs_negative_slope(self):
        with self.assertRaises(DomainError):
            bracket_index(make_line(0, 1, 3, 1), Family.LOWER)


class TestShiftThreshold(unittest.TestCase):
    def test_zero_cap(self):
        self.assertIsNone(empirical_shift_threshold(make_line(-1, 1, 5, 1), 4, Family.LOWER, 0))

    def test_lower_threshold_tracks_family_index(self):
        line = make_line(-1, 1, 5, 1)
        found = [empirical_shift_threshold(line, n, Family.LOWER, 20) for n in range(4, 10)]
        self.assertEqual(found, [1, 2, 3, 4, 5, 6])

    def test_not_found_within_cap(self):
        self.assertIsNone(empirical_shift_threshold(make_line(-1, 1, 5, 1), 9, Family.LOWER, 3))

    def test_family_line_too_short(self):
        with self.assertRaises(DomainError):
            empirical_shift_threshold(make_line(-1, 1, 5, 1), 2, Family.LOWER, 5)


class TestCorpus(unittest.TestCase):
    def test_lines_with_points(self):
        found = lines_with_points(-1, 2)
        self.assertEqual([entry.line for entry in found], [make_line(-1, 1, 7, 1), make_line(-1, 1, 8, 1)])
        self.assertIsNone(found[0].cap)
        capped = lines_with_points(Fraction(1, 2), 1)
        self.assertIsNotNone(capped[0].cap)

    def test_corpora_are_deterministic(self):
        self.assertEqual(line_corpus(20), line_corpus(20))
        lines = negative_corpus(10)
        self.assertEqual(len(lines), 10)
        self.assertTrue(all(line.kn < 0 for line in lines))


if __name__ == '__main__':
    unittest.main()
