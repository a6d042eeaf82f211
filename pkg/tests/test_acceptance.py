"""End-to-end accuracy checks at the reference parameters p2 = -2, q2 = 1/2.

These runs are heavier than the unit tests: they cross-check the closed form
against finite differences, 10^5 Monte-Carlo paths and the upwind solver.
"""

import json
import math
import unittest

import numpy as np
from click.testing import CliRunner

from src.pde.upwind import Grid1D, l1_distance, solve as pde_solve
from src.telegraph.compare import kolmogorov_distance
from src.telegraph.simulator import McConfig, noise_autocorrelation, simulate
from src.ui.cli import cli
from src.verhulst.distribution import total_mass
from src.verhulst.exact import forward_branch, solve, solve_delta, solve_distribution
from src.verhulst.initial import delta, polynomial_bump
from src.verhulst.params import VerhulstParams
from tests.sample_systems import P2, Q2

STEP = 1e-4


def _derivative(fn, h=STEP):
    """Fourth-order central difference of a vectorised function."""
    return (-fn(2 * h) + 8 * fn(h) - 8 * fn(-h) + fn(-2 * h)) / (12 * h)


class TestClosedForm(unittest.TestCase):
    """The closed form solves the master equations and keeps its mass."""

    def setUp(self):
        self.params = VerhulstParams(P2, Q2)
        self.bump = polynomial_bump(0.2, 0.1)

    def _sample_points(self, rng, count):
        """Random (x, tau) inside the moving support, away from its kinks."""
        xs, taus = [], []
        while len(xs) < count:
            tau = rng.uniform(0.2, 2.0)
            kinks = [float(forward_branch(end, tau, c))
                     for end in (0.1, 0.3) for c in (self.params.c_minus, self.params.c_plus)]
            x = rng.uniform(min(kinks), max(kinks))
            if min(abs(x - k) for k in kinks) > 5e-3:
                xs.append(x)
                taus.append(tau)
        return np.array(xs), np.array(taus)

    def test_finite_difference_residual(self):
        x, tau = self._sample_points(np.random.default_rng(17), 200)
        p2, q2 = self.params.p2, self.params.q2

        def at(dx=0.0, dt=0.0):
            return solve(self.bump, x + dx, tau + dt, self.params)

        def drift(s):
            return s + p2 * s ** 2

        W_t = _derivative(lambda h: at(dt=h).W)
        W1_t = _derivative(lambda h: at(dt=h).W1)
        flux_W = _derivative(lambda h: drift(x + h) * at(dx=h).W)
        flux_W1 = _derivative(lambda h: drift(x + h) * at(dx=h).W1)
        cross_W = _derivative(lambda h: q2 * (x + h) ** 2 * at(dx=h).W)
        cross_W1 = _derivative(lambda h: q2 * (x + h) ** 2 * at(dx=h).W1)
        W1 = at().W1

        first = W_t + flux_W + cross_W1
        second = W1_t + 2 * W1 + flux_W1 + cross_W
        scale1 = np.abs(W_t) + np.abs(flux_W) + np.abs(cross_W1) + 1.0
        scale2 = np.abs(W1_t) + np.abs(2 * W1) + np.abs(flux_W1) + np.abs(cross_W) + 1.0
        self.assertLess(float(np.max(np.abs(first) / scale1)), 1e-6)
        self.assertLess(float(np.max(np.abs(second) / scale2)), 1e-6)

    def test_normalised_for_all_times(self):
        xs = np.linspace(0.11, 0.29, 25)
        point = solve(self.bump, xs, 0.0, self.params)
        np.testing.assert_allclose(point.W, self.bump(xs), atol=1e-9)
        np.testing.assert_allclose(point.W1, 0.0, atol=1e-9)
        for tau in (0.5, 1.0, 2.0, 5.0):
            self.assertAlmostEqual(total_mass(solve_distribution(self.bump, tau, self.params)),
                                   1.0, delta=1e-6)

    def test_delta_bookkeeping(self):
        for tau in (0.1, 0.5, 1.0, 3.0):
            dist = solve_delta(0.5, tau, self.params)
            masses = [mass for _, mass in dist.atoms]
            np.testing.assert_allclose(masses, [0.5 * math.exp(-tau)] * 2, rtol=0, atol=1e-12)
            self.assertAlmostEqual(dist.continuous_mass(), 1.0 - math.exp(-tau), delta=1e-12)

    def test_stationary_limit(self):
        lower, upper = self.params.stationary_interval
        for tau in (2.0, 4.0, 8.0):
            dist = solve_delta(0.5, tau, self.params)
            (x_minus, _), (x_plus, _) = dist.atoms
            self.assertLessEqual(abs(x_minus - lower), math.exp(-tau))
            self.assertLessEqual(abs(x_plus - upper), math.exp(-tau))
            self.assertAlmostEqual(dist.atom_mass, math.exp(-tau), delta=1e-12)
            mid = 0.5 * (x_minus + x_plus)
            self.assertAlmostEqual(float(dist.density_values(np.array([mid]))[0]),
                                    1.0 / (2.0 * Q2 * mid ** 2), places=12)


class TestMonteCarlo(unittest.TestCase):
    """The simulator reproduces the exact law for point-mass initial data."""

    def test_kolmogorov_distance(self):
        params = VerhulstParams(P2, Q2)
        taus = (0.5, 1.0, 2.0)
        ensemble = simulate(McConfig(params=params, init=delta(0.5), paths=100000,
                                     checkpoints=taus, seed=7, threads=4))
        for tau in taus:
            distance = kolmogorov_distance(ensemble.at(tau), solve_delta(0.5, tau, params))
            self.assertLessEqual(distance, 0.01)

    def test_noise_decay_rate(self):
        lags = np.array([0.25, 0.5, 0.75])
        corr = noise_autocorrelation(lags, paths=100000, seed=11)
        rates = -np.log(corr) / lags
        np.testing.assert_allclose(rates, 2.0, rtol=0.1)

    def test_cli_compare(self):
        runner = CliRunner(mix_stderr=False)
        result = runner.invoke(cli, ['--seed', '7', 'compare', '--p1', '1', '--p2', '-2',
                                     '--q2', '0.5', '--mode', 'exact-vs-mc',
                                     '--init', 'delta:x=0.5', '--tau', '1', '--paths', '100000'])
        self.assertEqual(result.exit_code, 0)
        payload = json.loads(result.stdout)
        self.assertLessEqual(payload['kolmogorov'], 0.01)
        self.assertEqual(payload['paths'], 100000)


class TestUpwind(unittest.TestCase):
    """The upwind solver converges to the closed form at first order."""

    def test_first_order_convergence(self):
        params = VerhulstParams(P2, Q2)
        bump = polynomial_bump(0.2, 0.1)

        # the bump support stays inside [0.19, 0.46] up to tau = 1
        def error(cells):
            grid = Grid1D(0.1, 0.5, cells)
            state = pde_solve(bump, [1.0], params, grid=grid, cfl=0.5)[0]
            return l1_distance(state, lambda x: solve(bump, x, 1.0, params).W)

        coarse, fine = error(1000), error(2000)
        self.assertLess(fine, coarse)
        self.assertLessEqual(fine, 0.02)
        self.assertTrue(1.8 <= coarse / fine <= 2.2, f"ratio {coarse / fine:.3f}")


class TestDeterminism(unittest.TestCase):
    """Identical invocations give byte-identical output across thread counts."""

    def test_mc_output(self):
        runner = CliRunner(mix_stderr=False)
        base = ['mc', '--p2', '-2', '--q2', '1/2', '--nu', '1', '--init', 'delta:x=0.5',
                '--tau', '0.5', '--tau', '1', '--paths', '2000']
        outputs = {runner.invoke(cli, ['--seed', '5', '--threads', str(n), *base,
                                       '--batch-size', str(size)]).stdout
                   for n, size in ((1, 4096), (4, 300), (2, 999))}
        self.assertEqual(len(outputs), 1)


if __name__ == '__main__':
    unittest.main()
