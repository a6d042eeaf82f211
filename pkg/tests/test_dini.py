"""Tests for the Dini transform."""

import random
import unittest
from fractions import Fraction

from src.algebra.mpoly import MPoly3, X, Y, Z, format_mpoly
from src.dini.transform import (
    X1, X2, X3, check_L, dini_u, dini_v, parse_phi, parse_psi, parse_theta,
    random_polynomial, run_suite, solve_case,
)
from src.errors import IncompatibleInputError, ValidationError

A, B = X, Y  # phi is stored on the first two axes


class TestOperators(unittest.TestCase):
    """Test the first-order operators and the residual."""

    def test_operators(self):
        f = X * Y * Z
        self.assertEqual(X1(f), Y * Z)
        self.assertEqual(X2(f), X * Z + X * X * Y)
        self.assertEqual(X3(f), X * Y)

    def test_residual_of_z(self):
        self.assertEqual(check_L(Z), MPoly3.constant(-1))

    def test_factorisation(self):
        rng = random.Random(41)
        for _ in range(10):
            u = random_polynomial(rng, (0, 1, 2), 4)
            self.assertEqual(check_L(u), X2(X1(u)) - X3(u))


class TestDini(unittest.TestCase):
    """Test v and u on known and random inputs."""

    def test_constant_phi(self):
        self.assertEqual(dini_v(MPoly3.constant(1), MPoly3()), X)

    def test_linear_phi(self):
        v = dini_v(B, MPoly3())
        self.assertEqual(format_mpoly(v), "1/2*x^2*y - x*z")
        u = dini_u(v, MPoly3())
        self.assertEqual(u, X ** 3 * Y * Fraction(1, 6) - X ** 2 * Z * Fraction(1, 2))
        self.assertTrue(check_L(u).is_zero())

    def test_u_relations(self):
        rng = random.Random(42)
        for _ in range(10):
            phi = random_polynomial(rng, (0, 1), 3)
            psi = random_polynomial(rng, (1, 2), 3)
            v = dini_v(phi, psi)
            u = dini_u(v, parse_theta("y^2 - 3"))
            self.assertEqual(X1(u), v)
            self.assertEqual(X3(u), X2(v))

    def test_suite(self):
        cases = run_suite(trials=50, max_degree=4, seed=0)
        self.assertEqual(len(cases), 50)
        self.assertTrue(all(case.passed for case in cases))
        again = run_suite(trials=50, max_degree=4, seed=0)
        self.assertEqual([c.u for c in cases], [c.u for c in again])

    def test_case_to_dict(self):
        case = solve_case(parse_phi("b"), MPoly3(), MPoly3())
        data = case.to_dict()
        self.assertEqual(data["phi"], "b")
        self.assertEqual(data["residual"], "0")

    def test_axis_checks(self):
        with self.assertRaises(ValidationError):
            dini_v(Z, MPoly3())
        with self.assertRaises(ValidationError):
            dini_v(MPoly3(), X)
        with self.assertRaises(ValidationError):
            dini_u(MPoly3(), Z)

    def test_incompatible_v(self):
        with self.assertRaises(IncompatibleInputError):
            dini_u(X * Y, MPoly3())


class TestParsing(unittest.TestCase):
    """Test polynomial input parsing."""

    def test_phi(self):
        self.assertEqual(parse_phi("a*b - 1/2*b^2"), A * B - B ** 2 * Fraction(1, 2))

    def test_psi_and_theta(self):
        self.assertEqual(parse_psi("y*z + 2"), Y * Z + 2)
        self.assertEqual(parse_theta("3*y^2"), Y ** 2 * 3)

    def test_rejects(self):
        for text in ("a*x", "sin(a)", "1/a", "a**", "a + sqrt(2)"):
            with self.assertRaises(ValidationError):
                parse_phi(text)


if __name__ == '__main__':
    unittest.main()
