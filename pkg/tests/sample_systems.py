"""Seeded generators of sample inputs for the test suite.

Produces random polynomials, admissible characteristic systems, gauges and
parameter sets. Every generator takes a random.Random so tests are repeatable.
"""

import random
from fractions import Fraction

from src.algebra.rational import RationalFunction, UPoly
from src.cascade.charform import master_system, to_characteristic, verhulst_polynomials

# the parameter set used throughout the closed-form tests
P2 = -2.0
Q2 = 0.5


def random_fraction(rng: random.Random, bound: int = 9, nonzero: bool = False) -> Fraction:
    """Small rational num/den with |num| <= bound."""
    while True:
        value = Fraction(rng.randint(-bound, bound), rng.randint(1, 5))
        if value != 0 or not nonzero:
            return value


def random_upoly(rng: random.Random, degree: int, nonzero_lead: bool = True) -> UPoly:
    coeffs = [random_fraction(rng) for _ in range(degree)]
    coeffs.append(random_fraction(rng, nonzero=nonzero_lead))
    return UPoly(coeffs)


def random_ratfun(rng: random.Random, max_degree: int = 2) -> RationalFunction:
    """Nonzero rational function with a monic-able nonzero denominator."""
    num = random_upoly(rng, rng.randint(0, max_degree))
    den = random_upoly(rng, rng.randint(0, max_degree))
    return RationalFunction(num, den)


def random_pq(rng: random.Random):
    """Random p (degree <= 2) and q (degree 1 or 2, positive leading coefficient)."""
    p = random_upoly(rng, rng.randint(1, 2), nonzero_lead=False)
    q = random_upoly(rng, rng.randint(1, 2))
    if q.lc < 0:
        q = -q
    return p, q


def random_master(rng: random.Random):
    """Characteristic form of a random master system with nonzero nu."""
    p, q = random_pq(rng)
    nu = random_fraction(rng, nonzero=True)
    return p, q, nu, to_characteristic(master_system(p, q, nu))


def verhulst_system(nu=1, p1=1, p2=Fraction(-2), q2=Fraction(1, 2)):
    """Characteristic form of the Verhulst master system."""
    p, q = verhulst_polynomials(p1, p2, q2)
    return to_characteristic(master_system(p, q, nu))


def random_gauge(rng: random.Random):
    """Nonzero rational function suitable for a gauge factor."""
    while True:
        g = random_ratfun(rng, max_degree=2)
        if not g.is_zero():
            return g


def random_scale(rng: random.Random) -> Fraction:
    return random_fraction(rng, bound=5, nonzero=True)
