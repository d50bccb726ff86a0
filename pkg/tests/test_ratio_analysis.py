import unittest
from fractions import Fraction

import mpmath

from markovmono.errors import DomainError
from markovmono.lattice_lines import Family, family_endpoints, make_line
from markovmono.markov_core import LatticePoint
from markovmono.ratio_analysis import (ExactRatio, SlopeRegime, compare_exact, horizontal_ratio,
                                       limit_first_ratio, limit_last_ratio, line_ratios, markov_at,
                                       slope_regime, step_ratio, thresholds, to_decimal, vertical_ratio)
from markovmono.utils.numeric import Ordering


class TestExactRatios(unittest.TestCase):
    def test_horizontal_and_vertical(self):
        self.assertEqual(horizontal_ratio(2, 1), ExactRatio(13, 5))
        self.assertEqual(vertical_ratio(2, 1), ExactRatio(12, 5))
        self.assertEqual(vertical_ratio(1, 0), ExactRatio(2, 1))

    def test_domain(self):
        with self.assertRaises(DomainError):
            horizontal_ratio(0, 0)
        with self.assertRaises(DomainError):
            vertical_ratio(2, 2)

    def test_compare_exact(self):
        self.assertIs(compare_exact(ExactRatio(1, 2), ExactRatio(2, 4)), Ordering.EQUAL)
        self.assertIs(compare_exact(ExactRatio(2, 3), ExactRatio(3, 4)), Ordering.LESS)
        self.assertIs(ExactRatio(233, 194).compare(ExactRatio(194, 169)), Ordering.GREATER)

    def test_ratio_helpers(self):
        ratio = ExactRatio(12, 10)
        self.assertEqual(ratio.reduced(), ExactRatio(6, 5))
        self.assertEqual(ratio.to_fraction(), Fraction(6, 5))
        self.assertEqual(str(ratio), '12/10')
        self.assertEqual(ExactRatio.parse('34/29'), ExactRatio(34, 29))
        self.assertIs(ExactRatio(5, 5).compare_to_one(), Ordering.EQUAL)

    def test_to_decimal_truncates(self):
        self.assertEqual(to_decimal(ExactRatio(233, 194), 6), '1.201030')
        self.assertEqual(to_decimal(ExactRatio(5, 5), 3), '1.000')
        self.assertEqual(to_decimal(ExactRatio(9077, 16725), 4), '0.5427')
        self.assertEqual(ExactRatio(2, 3).decimal(5), '0.66666')

    def test_step_ratio(self):
        self.assertEqual(step_ratio(LatticePoint(4, 3), (1, -1)), ExactRatio(194, 169))
        self.assertEqual(markov_at(LatticePoint(9, 2)), 9077)


class TestLineRatios(unittest.TestCase):
    def test_increasing_line(self):
        entries = line_ratios(make_line(-1, 1, 7, 1))
        self.assertEqual(entries, [(LatticePoint(4, 3), ExactRatio(194, 169)),
                                   (LatticePoint(5, 2), ExactRatio(233, 194))])

    def test_decreasing_line(self):
        ratios = [ratio for _, ratio in line_ratios(make_line(-2, 1, 20, 1))]
        self.assertEqual(ratios, [ExactRatio(16725, 33461), ExactRatio(9077, 16725)])

    def test_short_lines_have_no_ratios(self):
        self.assertEqual(line_ratios(make_line(-1, 1, 3, 1)), [])
        self.assertEqual(line_ratios(make_line(-1, 1, 2, 1)), [])

    def test_capped_nonnegative_slope(self):
        ratios = [ratio for _, ratio in line_ratios(make_line(1, 2, 0, 1), 6)]
        self.assertEqual(ratios, [ExactRatio(75, 5), ExactRatio(1120, 75)])


class TestLimits(unittest.TestCase):
    def test_last_ratio_limit_for_slope_minus_one(self):
        with mpmath.mp.workdps(40):
            limit = limit_last_ratio(1, 1, 30)
            self.assertLess(abs(limit - (5 + mpmath.sqrt(5)) / 6), mpmath.mpf('1e-28'))

    def test_first_ratio_limit_for_slope_minus_one(self):
        self.assertEqual(limit_first_ratio(1, 1, 30), mpmath.mpf(9) / 8)

    def test_mixed_slope_limits_straddle_one(self):
        self.assertLess(limit_first_ratio(6, 5, 30), 1)
        self.assertGreater(limit_last_ratio(6, 5, 30), 1)

    def test_rejects_non_coprime_parts(self):
        with self.assertRaises(DomainError):
            limit_last_ratio(2, 2, 30)
        with self.assertRaises(DomainError):
            limit_first_ratio(0, 1, 30)

    def test_lower_family_approaches_limit(self):
        second_last, last = family_endpoints(-1, 30, Family.LOWER)
        ratio = ExactRatio(markov_at(last), markov_at(second_last))
        with mpmath.mp.workdps(40):
            limit = limit_last_ratio(1, 1, 30)
            error = abs(ratio.to_mpf() - limit) / limit
        self.assertLess(error, 1e-6)
        self.assertLess(ratio.to_mpf(), limit)


class TestThresholds(unittest.TestCase):
    def test_values(self):
        constants = thresholds(30)
        self.assertLess(abs(float(constants.k_plus) + 1.143205), 5e-4)
        self.assertLess(abs(float(constants.k_minus) + 1.241670), 5e-4)
        self.assertLess(constants.k_minus, constants.k_plus)

    def test_matches_independent_expression(self):
        constants = thresholds(30)
        with mpmath.mp.workdps(40):
            sqrt2 = mpmath.sqrt(2)
            expected = -mpmath.log(3 * (2 + sqrt2) / 4) / mpmath.log(2 * (2 + sqrt2) / 3)
            self.assertLess(abs(constants.k_plus - expected), mpmath.mpf('1e-12'))

    def test_describe_is_floor_formatted(self):
        described = thresholds(4).describe()
        self.assertEqual(described['k_plus'], '-1.1433')
        self.assertEqual(described['k_minus'], '-1.2417')
        self.assertEqual(described['phi'], '1.6180')
        self.assertEqual(described['silver'], '2.4142')


class TestSlopeRegime(unittest.TestCase):
    def test_regimes(self):
        self.assertIs(slope_regime(-1), SlopeRegime.INCREASING)
        self.assertIs(slope_regime(Fraction(-9, 8)), SlopeRegime.INCREASING)
        self.assertIs(slope_regime(Fraction(-6, 5)), SlopeRegime.MIXED)
        self.assertIs(slope_regime(Fraction(-5, 4)), SlopeRegime.DECREASING)
        self.assertIs(slope_regime(-2), SlopeRegime.DECREASING)

    def test_nonnegative_slopes_increase(self):
        self.assertIs(slope_regime(0), SlopeRegime.INCREASING)
        self.assertIs(slope_regime(Fraction(1, 3)), SlopeRegime.INCREASING)


if __name__ == '__main__':
    unittest.main()
