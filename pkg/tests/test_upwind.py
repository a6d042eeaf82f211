"""Tests for the upwind finite-volume solver."""

import unittest

import numpy as np

from src.errors import CflViolationError, ValidationError
from src.pde.upwind import (
    Grid1D, UpwindSolver, l1_distance, project_initial, solve, step,
)
from src.verhulst.exact import solve_distribution, stationary
from src.verhulst.initial import delta, polynomial_bump, uniform
from src.verhulst.params import VerhulstParams
from tests.sample_systems import P2, Q2


class TestGrid(unittest.TestCase):
    """Test grid construction and projection."""

    def setUp(self):
        self.params = VerhulstParams(P2, Q2)

    def test_for_params(self):
        grid = Grid1D.for_params(self.params, cells=400)
        self.assertEqual(grid.x_lo, 0.0)
        self.assertAlmostEqual(grid.x_hi, 1.0)
        self.assertAlmostEqual(grid.dx, 0.0025)
        self.assertEqual(grid.centers.size, 400)
        self.assertEqual(grid.faces.size, 401)

    def test_validation(self):
        for args in ((-0.1, 1.0, 10), (0.5, 0.5, 10), (0.0, 1.0, 0)):
            with self.assertRaises(ValidationError):
                Grid1D(*args)

    def test_projection_conserves_mass(self):
        grid = Grid1D(0.0, 1.0, 400)
        state = project_initial(uniform(0.1, 0.3), grid)
        self.assertAlmostEqual(state.mass, 1.0)
        self.assertAlmostEqual(float(state.W[100]), 5.0)
        self.assertEqual(float(state.W[0]), 0.0)
        self.assertTrue(np.all(state.W1 == 0))

    def test_projection_of_point_mass(self):
        grid = Grid1D(0.0, 1.0, 10)
        state = project_initial(delta(0.55), grid)
        self.assertEqual(int(np.count_nonzero(state.W)), 1)
        self.assertAlmostEqual(float(state.W[5]), 10.0)
        self.assertAlmostEqual(state.mass, 1.0)


class TestSolver(unittest.TestCase):
    """Test stepping, stability and conservation."""

    def setUp(self):
        self.params = VerhulstParams(P2, Q2)
        self.grid = Grid1D.for_params(self.params, cells=400)
        self.bump = polynomial_bump(0.2, 0.1)

    def test_tau_zero(self):
        states = solve(self.bump, [0.0], self.params, grid=self.grid)
        np.testing.assert_array_equal(states[0].W, project_initial(self.bump, self.grid).W)

    def test_mass_conserved(self):
        for nu_ratio in (0.25, 1.0, 3.0):
            states = solve(self.bump, [0.5, 1.0], self.params, nu_ratio=nu_ratio, grid=self.grid)
            for state in states:
                self.assertAlmostEqual(state.mass, 1.0, places=10)
            self.assertEqual(states[-1].tau, 1.0)

    def test_positivity(self):
        state = solve(self.bump, [1.0], self.params, grid=self.grid)[0]
        self.assertGreaterEqual(state.min_W, -1e-12)

    def test_max_dtau(self):
        solver = UpwindSolver(self.params, self.grid, nu_ratio=3.0, cfl=0.5)
        self.assertAlmostEqual(solver.courant(solver.max_dtau()), 0.5)
        fast = UpwindSolver(self.params, self.grid, nu_ratio=1e4, cfl=0.5)
        self.assertAlmostEqual(fast.max_dtau(), 0.5 / 2e4)

    def test_cfl_violation(self):
        solver = UpwindSolver(self.params, self.grid, cfl=0.5)
        state = project_initial(self.bump, self.grid)
        with self.assertRaises(CflViolationError):
            solver.step(state, 10 * solver.max_dtau())
        with self.assertRaises(CflViolationError):
            step(state, 1.0, self.params)

    def test_bad_arguments(self):
        with self.assertRaises(ValidationError):
            UpwindSolver(self.params, self.grid, cfl=0.0)
        with self.assertRaises(ValidationError):
            UpwindSolver(self.params, self.grid, nu_ratio=-1.0)
        solver = UpwindSolver(self.params, self.grid)
        state = project_initial(self.bump, self.grid)
        with self.assertRaises(ValidationError):
            solver.advance(solver.advance(state, 0.5), 0.25)
        with self.assertRaises(ValidationError):
            solver.solve(state, [1.0, 0.5])

    def test_relaxes_to_stationary_density(self):
        grid = Grid1D.for_params(self.params, cells=800)
        state = solve(self.bump, [8.0], self.params, nu_ratio=1.0, grid=grid)[0]
        self.assertLess(l1_distance(state, stationary(self.params).density_values), 0.1)
        lower, upper = self.params.stationary_interval
        outside = (grid.centers < lower - 0.02) | (grid.centers > upper + 0.02)
        self.assertLess(float(np.sum(state.W[outside]) * grid.dx), 0.01)

    def test_close_to_exact(self):
        grid = Grid1D.for_params(self.params, cells=1000)
        state = solve(self.bump, [1.0], self.params, grid=grid)[0]
        exact = solve_distribution(self.bump, 1.0, self.params)
        self.assertLess(l1_distance(state, exact.density_values), 0.15)


if __name__ == '__main__':
    unittest.main()
