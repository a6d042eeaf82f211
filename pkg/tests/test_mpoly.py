"""Tests for trivariate polynomials."""

import unittest
from fractions import Fraction

from src.algebra.mpoly import MPoly3, X, Y, Z, format_mpoly
from src.algebra.rational import get_degree_cap, set_degree_cap
from src.errors import DegreeOverflowError, ValidationError


class TestMPoly3(unittest.TestCase):
    """Test sparse polynomial arithmetic and calculus."""

    def test_zero_terms_dropped(self):
        p = MPoly3({(1, 0, 0): 1, (0, 1, 0): 0})
        self.assertEqual(p.terms, {(1, 0, 0): Fraction(1)})
        self.assertTrue((X - X).is_zero())

    def test_bad_exponent(self):
        with self.assertRaises(ValidationError):
            MPoly3({(1, 0): 1})
        with self.assertRaises(ValidationError):
            MPoly3({(-1, 0, 0): 1})

    def test_arithmetic(self):
        p = (X + Y) * (X - Y)
        self.assertEqual(p, X ** 2 - Y ** 2)
        self.assertEqual(p.total_degree, 2)
        self.assertEqual(p.degree_in('z'), 0)
        self.assertEqual(p.degree_in('x'), 2)

    def test_degree_of_zero_polynomial(self):
        self.assertEqual(MPoly3().degree_in('x'), -1)
        self.assertEqual(MPoly3().total_degree, -1)
        self.assertEqual(MPoly3.constant(4).degree_in('y'), 0)

    def test_partial_and_antiderivative(self):
        p = X ** 2 * Y + Z * 3
        self.assertEqual(p.partial(0), X * Y * 2)
        self.assertEqual(p.partial('z'), MPoly3.constant(3))
        self.assertEqual(p.antiderivative(0).partial(0), p)

    def test_substitute(self):
        p = X * Y
        result = p.substitute([X + 1, Z, MPoly3()])
        self.assertEqual(result, X * Z + Z)

    def test_set_axis(self):
        p = X * Z + Y * Z ** 2 + 1
        self.assertEqual(p.set_axis(2, 0), MPoly3.constant(1))
        self.assertEqual(p.set_axis('z', 2), X * 2 + Y * 4 + 1)

    def test_evaluate(self):
        p = X * Y - Z
        self.assertEqual(p.evaluate((Fraction(1, 2), 4, 1)), Fraction(1))

    def test_uses_axes(self):
        self.assertEqual((Y * Z).uses_axes(), (1, 2))
        self.assertEqual(MPoly3.constant(5).uses_axes(), ())

    def test_from_univariate(self):
        self.assertEqual(MPoly3.from_univariate([1, 0, 2], 'y'), Y ** 2 * 2 + 1)

    def test_degree_cap(self):
        cap = get_degree_cap()
        try:
            set_degree_cap(3)
            with self.assertRaises(DegreeOverflowError):
                X ** 2 * Y ** 2
        finally:
            set_degree_cap(cap)

    def test_unknown_axis(self):
        with self.assertRaises(ValidationError):
            X.partial('w')

    def test_format(self):
        self.assertEqual(format_mpoly(X ** 2 * Y * Fraction(1, 2) - X * Z), "1/2*x^2*y - x*z")
        self.assertEqual(format_mpoly(MPoly3()), "0")
        self.assertEqual(format_mpoly(-Z + 3), "-z + 3")


if __name__ == '__main__':
    unittest.main()
