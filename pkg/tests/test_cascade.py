"""Tests for Laplace invariants and the invariant chain."""

import random
import unittest
from fractions import Fraction

from src.algebra.rational import RationalFunction
from src.cascade.charform import matrix
from src.cascade.laplace import (
    STATUS_CAP, STATUS_TERMINATED, build_chain, explicit_h, gauge, invariants, is_triangular,
    k_invariant, rescale, verhulst_chain_value, x1_transform, x2_transform,
)
from src.errors import TransformUndefinedError, ValidationError, ZeroDivisorError
from tests.sample_systems import random_gauge, random_master, random_scale, verhulst_system


def const(value):
    return RationalFunction.constant(value)


class TestInvariants(unittest.TestCase):
    """Test h and k on the Verhulst and random master systems."""

    def test_verhulst_values(self):
        for nu in (1, 2, 3):
            pair = invariants(verhulst_system(nu=nu))
            self.assertEqual(pair.k, const(nu * nu))
            self.assertEqual(pair.h, const(nu * nu - 1))

    def test_explicit_h_matches(self):
        rng = random.Random(31)
        for _ in range(20):
            p, q, nu, cs = random_master(rng)
            self.assertEqual(explicit_h(p, q, nu), invariants(cs).h)

    def test_explicit_h_verhulst(self):
        x = RationalFunction.x()
        p = x - 2 * x * x
        q = x * x / 2
        self.assertEqual(explicit_h(p, q, 2), const(3))

    def test_to_dict(self):
        self.assertEqual(invariants(verhulst_system(nu=1)).to_dict(), {"h": "0", "k": "1"})


class TestTransforms(unittest.TestCase):
    """Test the X1- and X2-transforms."""

    def test_x1_maps_h_to_k(self):
        rng = random.Random(32)
        for _ in range(10):
            _, _, _, cs = random_master(rng)
            self.assertEqual(k_invariant(x1_transform(cs)), invariants(cs).h)

    def test_verhulst_x1_and_x2(self):
        cs = verhulst_system(nu=3)
        self.assertEqual(invariants(x1_transform(cs)).h, const(5))
        self.assertEqual(k_invariant(x2_transform(cs)), const(8))

    def test_speeds_unchanged(self):
        cs = verhulst_system(nu=2)
        moved = x1_transform(cs)
        self.assertEqual(moved.lambda1, cs.lambda1)
        self.assertEqual(moved.lambda2, cs.lambda2)

    def test_triangular(self):
        cs = verhulst_system(nu=2)
        self.assertFalse(is_triangular(cs))
        upper = cs.with_alpha(matrix(cs.a11, 0, cs.a21, cs.a22))
        self.assertTrue(is_triangular(upper))
        with self.assertRaises(TransformUndefinedError):
            x1_transform(upper)
        with self.assertRaises(TransformUndefinedError):
            invariants(upper)
        self.assertIsNone(invariants(upper, strict=False).h)

    def test_x2_undefined(self):
        cs = verhulst_system(nu=2)
        lower = cs.with_alpha(matrix(cs.a11, cs.a12, 0, cs.a22))
        with self.assertRaises(TransformUndefinedError):
            x2_transform(lower)


class TestGaugeAndScale(unittest.TestCase):
    """Test invariance under gauge changes and rescaling."""

    def test_gauge_invariance(self):
        rng = random.Random(33)
        for _ in range(10):
            _, _, _, cs = random_master(rng)
            before = invariants(cs)
            after = invariants(gauge(cs, random_gauge(rng), random_gauge(rng)))
            self.assertEqual(after.h, before.h)
            self.assertEqual(after.k, before.k)

    def test_gauge_by_x_keeps_verhulst_invariants(self):
        x = RationalFunction.x()
        for nu in (2, 3):
            cs = gauge(verhulst_system(nu=nu), x, 1)
            self.assertFalse(cs.a12.diff().is_zero())
            pair = invariants(cs)
            self.assertEqual(pair.h, const(nu * nu - 1))
            self.assertEqual(pair.k, const(nu * nu))

    def test_transforms_of_gauged_system(self):
        x = RationalFunction.x()
        cs = gauge(verhulst_system(nu=3), x, x * x + 1)
        moved = x1_transform(cs)
        self.assertEqual(k_invariant(moved), const(8))
        self.assertEqual(invariants(moved).h, const(5))
        self.assertEqual(k_invariant(x2_transform(cs)), const(8))

    def test_zero_gauge(self):
        with self.assertRaises(ZeroDivisorError):
            gauge(verhulst_system(), 0, 1)

    def test_rescale_multiplies_invariants(self):
        rng = random.Random(34)
        for _ in range(10):
            _, _, _, cs = random_master(rng)
            g1, g2 = random_scale(rng), random_scale(rng)
            before = invariants(cs)
            after = invariants(rescale(cs, g1, g2))
            self.assertEqual(after.k, before.k * (g1 * g2))
            self.assertEqual(after.h, before.h * (g1 * g2))

    def test_zero_scale(self):
        with self.assertRaises(ZeroDivisorError):
            rescale(verhulst_system(), 1, 0)


class TestChain(unittest.TestCase):
    """Test the forward and backward invariant chains."""

    def test_nu_three(self):
        chain = build_chain(verhulst_system(nu=3), 6)
        self.assertEqual(chain.forward, [const(8), const(5), const(0)])
        self.assertTrue(chain.terminated_forward)
        self.assertEqual(chain.status_forward, STATUS_TERMINATED)
        self.assertEqual(chain.to_dict()["forward"], ["9", "8", "5", "0"])

    def test_nu_one(self):
        chain = build_chain(verhulst_system(nu=1), 6)
        self.assertEqual(chain.forward, [const(0)])
        self.assertTrue(chain.terminated)

    def test_closed_form_entries(self):
        chain = build_chain(verhulst_system(nu=5, p1=1), 8)
        for m, entry in enumerate(chain.forward):
            self.assertEqual(entry, const(verhulst_chain_value(5, 1, m)))
        self.assertEqual(len(chain.forward), 5)

    def test_verhulst_chain_value(self):
        self.assertEqual(verhulst_chain_value(3, 1, 0), 8)
        self.assertEqual(verhulst_chain_value(Fraction(1, 2), Fraction(1, 4), 1), 0)

    def test_cap(self):
        chain = build_chain(verhulst_system(nu=3), 1)
        self.assertEqual(chain.forward, [const(8)])
        self.assertFalse(chain.terminated_forward)
        self.assertEqual(chain.status_forward, STATUS_CAP)
        empty = build_chain(verhulst_system(nu=3), 0)
        self.assertEqual(empty.forward, [])
        self.assertEqual(empty.status_backward, STATUS_CAP)

    def test_triangular_start(self):
        cs = verhulst_system(nu=2)
        chain = build_chain(cs.with_alpha(matrix(cs.a11, 0, cs.a21, cs.a22)), 4)
        self.assertEqual(chain.forward, [])
        self.assertTrue(chain.terminated_forward)
        self.assertIsNone(chain.to_dict()["h"])

    def test_negative_steps(self):
        with self.assertRaises(ValidationError):
            build_chain(verhulst_system(), -1)


if __name__ == '__main__':
    unittest.main()
