import unittest
from fractions import Fraction
from unittest import mock

from markovmono.errors import DomainError, MissingCapError, OracleError
from markovmono.lattice_lines import (Family, RationalLine, ShiftMode, closed_form_points,
                                      closed_form_valid, endpoints, family_endpoints,
                                      family_line, make_line, region_points, shift)
from markovmono.markov_core import LatticePoint


class TestRationalLine(unittest.TestCase):
    def test_make_line_normalizes(self):
        line = make_line(2, -4, 3, 6)
        self.assertEqual(line, RationalLine(-1, 2, 1, 2))
        self.assertEqual(line.k, Fraction(-1, 2))
        self.assertEqual(line.b, Fraction(1, 2))
        self.assertEqual(line.slope_parts, (1, 2))

    def test_zero_denominator(self):
        with self.assertRaises(DomainError):
            make_line(1, 0, 3, 1)
        with self.assertRaises(DomainError):
            make_line(-1, 1, 3, 0)

    def test_key_and_json(self):
        line = make_line(-1, 1, 7, 1)
        self.assertEqual(line.key(), '-1/1,7/1')
        self.assertEqual(line.to_json(), {'k': [-1, 1], 'b': [7, 1]})
        self.assertTrue(line.contains(LatticePoint(5, 2)))
        self.assertFalse(line.contains(LatticePoint(5, 3)))

    def test_slope_parts_need_negative_slope(self):
        with self.assertRaises(DomainError):
            make_line(1, 2, 0, 1).slope_parts


class TestRegionPoints(unittest.TestCase):
    def test_negative_slope(self):
        self.assertEqual(region_points(make_line(-1, 1, 7, 1)),
                         [LatticePoint(4, 3), LatticePoint(5, 2), LatticePoint(6, 1)])
        self.assertEqual(region_points(make_line(-2, 1, 20, 1)),
                         [LatticePoint(7, 6), LatticePoint(8, 4), LatticePoint(9, 2)])

    def test_positive_slope_with_cap(self):
        self.assertEqual(region_points(make_line(1, 2, 0, 1), 6),
                         [LatticePoint(2, 1), LatticePoint(4, 2), LatticePoint(6, 3)])

    def test_positive_slope_without_cap(self):
        with self.assertRaises(MissingCapError):
            region_points(make_line(1, 2, 0, 1))
        with self.assertRaises(MissingCapError):
            region_points(make_line(0, 1, 3, 1))

    def test_horizontal_line(self):
        self.assertEqual(region_points(make_line(0, 1, 3, 1), 6),
                         [LatticePoint(4, 3), LatticePoint(5, 3), LatticePoint(6, 3)])

    def test_fractional_slope_steps(self):
        points = region_points(make_line(-6, 5, 83, 5))
        self.assertEqual(points, [LatticePoint(8, 7), LatticePoint(13, 1)])
        self.assertEqual(region_points(make_line(-6, 5, 71, 5)), [LatticePoint(11, 1)])
        points = region_points(make_line(-6, 5, 200, 5))
        for a, b in zip(points, points[1:]):
            self.assertEqual((b.x - a.x, b.y - a.y), (5, -6))

    def test_no_integral_points(self):
        self.assertEqual(region_points(make_line(1, 2, 1, 3), 40), [])

    def test_empty_and_singleton(self):
        self.assertEqual(region_points(make_line(-1, 1, 2, 1)), [])
        self.assertEqual(region_points(make_line(-1, 1, 3, 1)), [LatticePoint(2, 1)])

    def test_all_points_lie_in_region(self):
        for bn in range(1, 60):
            line = make_line(-2, 3, bn, 3)
            for point in region_points(line):
                self.assertTrue(point.in_region())
                self.assertTrue(line.contains(point))


class TestEndpoints(unittest.TestCase):
    def test_negative_slope(self):
        ends = endpoints(make_line(-1, 1, 7, 1))
        self.assertEqual(ends.first, LatticePoint(4, 3))
        self.assertEqual(ends.second, LatticePoint(5, 2))
        self.assertEqual(ends.last, LatticePoint(6, 1))
        self.assertEqual(ends.second_last, LatticePoint(5, 2))

    def test_unbounded_line_has_no_last(self):
        ends = endpoints(make_line(1, 2, 0, 1))
        self.assertEqual((ends.first, ends.second), (LatticePoint(2, 1), LatticePoint(4, 2)))
        self.assertIsNone(ends.last)
        self.assertIsNone(ends.second_last)

    def test_empty_line(self):
        self.assertEqual(tuple(endpoints(make_line(-1, 1, 2, 1))), (None, None, None, None))


class TestShift(unittest.TestCase):
    def test_x_axis(self):
        self.assertEqual(shift(make_line(-1, 1, 10, 1), 1, ShiftMode.X_AXIS), make_line(-1, 1, 11, 1))
        self.assertEqual(shift(make_line(-6, 5, 4, 1), 5, ShiftMode.X_AXIS), make_line(-6, 5, 10, 1))

    def test_diagonal(self):
        self.assertEqual(shift(make_line(-1, 1, 10, 1), 1, ShiftMode.DIAGONAL), make_line(-1, 1, 12, 1))

    def test_rational_amount(self):
        shifted = shift(make_line(-1, 1, 10, 1), Fraction(1, 2), 'x_axis')
        self.assertEqual(shifted.b, Fraction(21, 2))

    def test_diagonal_moves_first_points(self):
        line = make_line(-1, 1, 7, 1)
        moved = shift(line, 1, ShiftMode.DIAGONAL)
        self.assertEqual(endpoints(moved).first, endpoints(line).first.shifted(1, 1))


class TestFamilies(unittest.TestCase):
    def test_family_lines(self):
        self.assertEqual(family_line(-1, 6, Family.LOWER), make_line(-1, 1, 7, 1))
        self.assertEqual(family_line(-1, 6, Family.UPPER), make_line(-1, 1, 11, 1))
        self.assertEqual(family_line(Fraction(-6, 5), 11, Family.LOWER).b, Fraction(71, 5))

    def test_needs_negative_slope(self):
        with self.assertRaises(DomainError):
            family_line(0, 5, Family.LOWER)

    def test_closed_form_bounds(self):
        k = Fraction(-6, 5)
        self.assertFalse(closed_form_valid(k, 12, Family.LOWER))
        self.assertTrue(closed_form_valid(k, 13, Family.LOWER))
        self.assertFalse(closed_form_valid(k, 7, Family.UPPER))
        self.assertTrue(closed_form_valid(k, 8, Family.UPPER))

    def test_family_endpoints(self):
        k = Fraction(-6, 5)
        self.assertEqual(family_endpoints(k, 13, Family.LOWER), (LatticePoint(8, 7), LatticePoint(13, 1)))
        self.assertEqual(family_endpoints(k, 11, Family.UPPER), (LatticePoint(11, 10), LatticePoint(16, 4)))
        self.assertEqual(family_endpoints(-1, 6, Family.LOWER), (LatticePoint(5, 2), LatticePoint(6, 1)))

    def test_family_endpoints_accepts_plain_names(self):
        self.assertEqual(family_endpoints(-1, 6, 'lower'), (LatticePoint(5, 2), LatticePoint(6, 1)))
        wrong = (LatticePoint(1, 1), LatticePoint(2, 1))
        with mock.patch('markovmono.lattice_lines.closed_form_points', return_value=wrong):
            with self.assertRaises(OracleError) as ctx:
                family_endpoints(-1, 6, 'lower')
        self.assertIn('lower family line n=6', str(ctx.exception))

    def test_enumeration_matches_closed_forms(self):
        for k in (Fraction(-1), Fraction(-2), Fraction(-1, 2), Fraction(-6, 5), Fraction(-2, 3)):
            for family in Family:
                for n in range(2, 30):
                    if closed_form_valid(k, n, family):
                        self.assertEqual(family_endpoints(k, n, family),
                                         closed_form_points(k, n, family))


if __name__ == '__main__':
    unittest.main()
