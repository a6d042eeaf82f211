"""Tests for the characteristic form of 2x2 systems."""

import random
import unittest
from fractions import Fraction

import sympy

from src.algebra.rational import RationalFunction, UPoly
from src.cascade.charform import (
    FirstOrderSystem2, commutator_coeffs, eigendata, is_divergence_row, master_system,
    matrix, reconstruct, system_to_dict, to_characteristic, verhulst_polynomials,
)
from src.errors import IrrationalSpeedsError, NotHyperbolicError, ValidationError
from tests.sample_systems import random_master, random_pq

x = RationalFunction.x()
ZERO = RationalFunction.constant(0)


class TestEigendata(unittest.TestCase):
    """Test characteristic speeds and left eigenvectors."""

    def test_master_matrix(self):
        p, q = verhulst_polynomials(1, Fraction(-2), Fraction(1, 2))
        p, q = RationalFunction(p), RationalFunction(q)
        lam1, lam2, l1, l2 = eigendata(matrix(-p, -q, -q, -p))
        self.assertEqual(lam1, q - p)
        self.assertEqual(lam2, -p - q)
        self.assertEqual(l1, (RationalFunction.constant(1), RationalFunction.constant(-1)))
        self.assertEqual(l2, (RationalFunction.constant(1), RationalFunction.constant(1)))

    def test_diagonal(self):
        lam1, lam2, l1, l2 = eigendata(matrix(1, 0, 0, 2))
        self.assertEqual((lam1, lam2), (RationalFunction.constant(1), RationalFunction.constant(2)))
        self.assertEqual(l1, (RationalFunction.constant(1), ZERO))
        self.assertEqual(l2, (ZERO, RationalFunction.constant(1)))

    def test_square_discriminant(self):
        lam1, lam2, _, _ = eigendata(matrix(0, x, x, 0))
        self.assertEqual(lam1, x)
        self.assertEqual(lam2, -x)

    def test_left_eigenvector_property(self):
        A = matrix(2 * x, 1, 2 * x + 1, 0)
        (a11, a12), (a21, a22) = A
        lam1, lam2, l1, l2 = eigendata(A)
        self.assertEqual(lam1, 2 * x + 1)
        self.assertEqual(lam2, RationalFunction.constant(-1))
        for lam, (l_a, l_b) in ((lam1, l1), (lam2, l2)):
            self.assertEqual(l_a * a11 + l_b * a21, lam * l_a)
            self.assertEqual(l_a * a12 + l_b * a22, lam * l_b)

    def test_irrational_speeds(self):
        with self.assertRaises(IrrationalSpeedsError):
            eigendata(matrix(0, 1, 2, 0))

    def test_not_hyperbolic(self):
        with self.assertRaises(NotHyperbolicError):
            eigendata(matrix(1, 0, 0, 1))
        with self.assertRaises(NotHyperbolicError):
            eigendata(matrix(x, 1, 0, x))


class TestCommutator(unittest.TestCase):
    """Test commutator coefficients of the characteristic operators."""

    def test_constant_speeds(self):
        P, Q = commutator_coeffs(RationalFunction.constant(1), RationalFunction.constant(-1))
        self.assertTrue(P.is_zero())
        self.assertTrue(Q.is_zero())

    def test_opposite_linear_speeds(self):
        P, Q = commutator_coeffs(x, -x)
        self.assertTrue(P.is_zero())
        self.assertTrue(Q.is_zero())

    def test_equal_speeds_rejected(self):
        with self.assertRaises(NotHyperbolicError):
            commutator_coeffs(x, x)

    def test_identities_on_random_systems(self):
        rng = random.Random(21)
        for _ in range(20):
            _, _, _, cs = random_master(rng)
            self.assertTrue((cs.P + cs.Q).is_zero())
            lhs = -(cs.P * cs.lambda1) - cs.Q * cs.lambda2
            self.assertEqual(lhs, cs.lambda1 * cs.lambda2.diff() - cs.lambda2 * cs.lambda1.diff())
            dt_part, dx_part = cs.commutator_residual()
            self.assertTrue(dt_part.is_zero())
            self.assertTrue(dx_part.is_zero())

    def test_against_direct_commutator(self):
        t, xs = sympy.symbols('t x')
        lam1, lam2 = x * x + 1, 1 / (x - 3)
        mu1, mu2 = 1, 2
        P, Q = commutator_coeffs(lam1, lam2, mu1, mu2)

        def operator(mu, lam):
            return lambda f: mu * sympy.diff(f, t) - lam.as_expr() * sympy.diff(f, xs)

        X1, X2 = operator(mu1, lam1), operator(mu2, lam2)
        F = sympy.exp(t) * xs ** 3 + sympy.sin(xs) * t ** 2
        residual = X1(X2(F)) - X2(X1(F)) - P.as_expr() * X1(F) - Q.as_expr() * X2(F)
        self.assertEqual(sympy.simplify(residual), 0)
        self.assertEqual(Q, -P / 2)

    def test_verhulst_nonzero(self):
        p, q = verhulst_polynomials(1, Fraction(-2), Fraction(1, 2))
        cs = to_characteristic(master_system(p, q, 1))
        self.assertFalse(cs.P.is_zero())
        self.assertEqual(cs.Q, -cs.P)


class TestCharacteristicForm(unittest.TestCase):
    """Test conversion of systems to characteristic form and back."""

    def test_master_alpha(self):
        rng = random.Random(22)
        for _ in range(10):
            p, q = random_pq(rng)
            nu = Fraction(rng.randint(1, 9), rng.randint(1, 4))
            cs = to_characteristic(master_system(p, q, nu))
            dp, dq = RationalFunction(p.deriv()), RationalFunction(q.deriv())
            self.assertEqual(cs.a11, -(dp - dq + nu))
            self.assertEqual(cs.a12, RationalFunction.constant(nu))
            self.assertEqual(cs.a21, RationalFunction.constant(nu))
            self.assertEqual(cs.a22, -(dp + dq + nu))

    def test_constant_diagonal_without_sources(self):
        sys = FirstOrderSystem2(A=matrix(1, 0, 0, 2), B=matrix(0, 0, 0, 0))
        cs = to_characteristic(sys)
        for row in cs.alpha:
            for entry in row:
                self.assertTrue(entry.is_zero())

    def test_round_trip(self):
        rng = random.Random(23)
        for _ in range(10):
            p, q = random_pq(rng)
            sys = master_system(p, q, Fraction(rng.randint(0, 5)))
            self.assertEqual(reconstruct(to_characteristic(sys)), sys)

    def test_round_trip_non_constant_eigenvectors(self):
        sys = FirstOrderSystem2(A=matrix(2 * x, 1, 2 * x + 1, 0), B=matrix(1, x, 0, x * x))
        self.assertEqual(reconstruct(to_characteristic(sys)), sys)

    def test_reconstruct_needs_eigenvectors(self):
        cs = to_characteristic(FirstOrderSystem2(A=matrix(1, 0, 0, 2), B=matrix(0, 0, 0, 0)))
        with self.assertRaises(ValidationError):
            reconstruct(cs.with_alpha(cs.alpha))

    def test_master_system_entries(self):
        p, q = verhulst_polynomials(1, Fraction(-2), Fraction(1, 2))
        sys = master_system(p, q, 2)
        P, Q = RationalFunction(p), RationalFunction(q)
        self.assertEqual(sys.A, matrix(-P, -Q, -Q, -P))
        self.assertEqual(sys.B, matrix(-P.diff(), -Q.diff(), -Q.diff(), -(P.diff() + 4)))

    def test_noiseless_b_symmetric(self):
        p, q = verhulst_polynomials(1, Fraction(-2), Fraction(1, 2))
        sys = master_system(p, q, 0)
        self.assertEqual(sys.B[0][0], sys.B[1][1])
        self.assertEqual(sys.B[0][1], sys.B[1][0])

    def test_zero_noise_rejected(self):
        with self.assertRaises(NotHyperbolicError):
            to_characteristic(master_system(UPoly([0, 1, -2]), UPoly(), 1))

    def test_first_row_is_divergence(self):
        rng = random.Random(24)
        for _ in range(10):
            p, q = random_pq(rng)
            self.assertTrue(is_divergence_row(master_system(p, q, 1), 0))
            self.assertFalse(is_divergence_row(master_system(p, q, 1), 1))

    def test_system_to_dict(self):
        p, q = verhulst_polynomials(1, Fraction(-2), Fraction(1, 2))
        data = system_to_dict(to_characteristic(master_system(p, q, 1)))
        self.assertEqual(data["alpha"][0][1], "1")
        self.assertEqual(data["leftvecs"], [["1", "-1"], ["1", "1"]])
        self.assertEqual(data["mu"], ["1", "1"])


if __name__ == '__main__':
    unittest.main()
