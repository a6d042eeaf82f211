# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""First-order upwind finite-volume solver for the Verhulst master equations.

Works for any flip rate r = nu/p1. In characteristic variables u1 = W - W1,
u2 = W + W1 the system is

    u1_tau + (a1 u1)_x = r (u2 - u1),    a1 = p - q
    u2_tau + (a2 u2)_x = r (u1 - u2),    a2 = p + q

with p = x + p2 x^2, q = q2 x^2. Each transport is upwinded at cell faces by
the sign of the face velocity; boundary faces carry no flux, so sum(W) dx is
conserved to round-off.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..errors import CflViolationError, ValidationError
from ..verhulst.initial import InitialDensity
from ..verhulst.params import VerhulstParams

logger = logging.getLogger(__name__)

DEFAULT_CFL = 0.5
DEFAULT_CELLS = 2000
DEFAULT_MARGIN = 1.5


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid of `cells` cells on [x_lo, x_hi]."""

    x_lo: float
    x_hi: float
    cells: int

    def __post_init__(self):
        if not self.x_lo >= 0:
            raise ValidationError(f"x_lo must be >= 0, got {self.x_lo}")
        if not self.x_hi > self.x_lo:
            raise ValidationError(f"empty grid [{self.x_lo}, {self.x_hi}]")
        if self.cells < 1:
            raise ValidationError(f"cells must be >= 1, got {self.cells}")

    @property
    def dx(self) -> float:
        return (self.x_hi - self.x_lo) / self.cells

    @property
    def faces(self) -> np.ndarray:
        return np.linspace(self.x_lo, self.x_hi, self.cells + 1)

    @property
    def centers(self) -> np.ndarray:
        faces = self.faces
        return 0.5 * (faces[:-1] + faces[1:])

    @classmethod
    def for_params(cls, params: VerhulstParams, cells: int = DEFAULT_CELLS,
                   margin: float = DEFAULT_MARGIN) -> "Grid1D":
        """[0, margin / (|p2| - q2)]; velocities point inward beyond the outer equilibrium."""
        return cls(x_lo=0.0, x_hi=margin * params.outer_equilibrium, cells=int(cells))


@dataclass(frozen=True)
class PdeGridState:
    """Cell averages of W and W1 at time tau, with diagnostics."""

    tau: float
    W: np.ndarray
    W1: np.ndarray
    grid: Grid1D

    @property
    def mass(self) -> float:
        return float(np.sum(self.W) * self.grid.dx)

    @property
    def min_W(self) -> float:
        """Most negative cell value; the scheme undershoot."""
        return float(np.min(self.W))


def project_initial(W0: InitialDensity, grid: Grid1D) -> PdeGridState:
    """Cell averages of W0 from I1 differences; a point mass fills one cell."""
    if W0.is_delta:
        W = np.zeros(grid.cells)
        index = int(np.clip((W0.atom - grid.x_lo) // grid.dx, 0, grid.cells - 1))
        W[index] = 1.0 / grid.dx
    else:
        cumulative = np.asarray(W0.I1(grid.faces), dtype=float)
        W = np.diff(cumulative) / grid.dx
    lost = 1.0 - float(np.sum(W) * grid.dx)
    if abs(lost) > 1e-9:
        logger.warning(f"Initial density loses mass {lost:.3g} outside the grid")
    return PdeGridState(tau=0.0, W=W, W1=np.zeros(grid.cells), grid=grid)


class UpwindSolver:
    """Explicit upwind stepping on a fixed grid."""

    def __init__(self, params: VerhulstParams, grid: Grid1D, nu_ratio: float = 1.0,
                 cfl: float = DEFAULT_CFL):
        if not 0 < cfl <= 1:
            raise ValidationError(f"CFL number must be in (0, 1], got {cfl}")
        if nu_ratio < 0:
            raise ValidationError(f"nu_ratio must be >= 0, got {nu_ratio}")
        self.params = params
        self.grid = grid
        self.nu_ratio = float(nu_ratio)
        self.cfl = float(cfl)

        faces = grid.faces
        p = faces + params.p2 * faces ** 2
        q = params.q2 * faces ** 2
        self.a1 = p - q
        self.a2 = p + q
        self.max_speed = float(max(np.max(np.abs(self.a1)), np.max(np.abs(self.a2))))

    def max_dtau(self) -> float:
        """Largest step allowed by the CFL number and by the exchange term."""
        limits = []
        if self.max_speed > 0:
            limits.append(self.cfl * self.grid.dx / self.max_speed)
        if self.nu_ratio > 0:
            limits.append(self.cfl / (2.0 * self.nu_ratio))
        return min(limits) if limits else np.inf

    def courant(self, dtau: float) -> float:
        return dtau * self.max_speed / self.grid.dx

    @staticmethod
    def _divergence(u: np.ndarray, a: np.ndarray, dx: float) -> np.ndarray:
        flux = np.zeros_like(a)
        inner = a[1:-1]
        flux[1:-1] = np.where(inner > 0, inner * u[:-1], inner * u[1:])
        return (flux[1:] - flux[:-1]) / dx

    def step(self, state: PdeGridState, dtau: float) -> PdeGridState:
        """Advance by dtau.

        Raises:
            CflViolationError: If dtau breaks the CFL restriction
        """
        courant = self.courant(dtau)
        if courant > self.cfl * (1 + 1e-12):
            raise CflViolationError(courant, self.cfl, operation="pde.step")
        dx = self.grid.dx
        u1 = state.W - state.W1
        u2 = state.W + state.W1
        exchange = self.nu_ratio * (u2 - u1)
        u1_new = u1 - dtau * self._divergence(u1, self.a1, dx) + dtau * exchange
        u2_new = u2 - dtau * self._divergence(u2, self.a2, dx) - dtau * exchange
        return PdeGridState(tau=state.tau + dtau, W=0.5 * (u1_new + u2_new),
                            W1=0.5 * (u2_new - u1_new), grid=self.grid)

    def advance(self, state: PdeGridState, tau_end: float) -> PdeGridState:
        """Step from state.tau to tau_end with equal steps not above max_dtau."""
        span = tau_end - state.tau
        if span < 0:
            raise ValidationError(f"cannot step back from {state.tau} to {tau_end}")
        if span == 0:
            return state
        n_steps = int(np.ceil(span / self.max_dtau()))
        dtau = span / n_steps
        for _ in range(n_steps):
            state = self.step(state, dtau)
        return PdeGridState(tau=float(tau_end), W=state.W, W1=state.W1, grid=self.grid)

    def solve(self, initial: PdeGridState, checkpoints: Sequence[float]) -> List[PdeGridState]:
        """States at the sorted checkpoints."""
        checkpoints = [float(t) for t in checkpoints]
        if checkpoints != sorted(checkpoints) or any(t < 0 for t in checkpoints):
            raise ValidationError("checkpoints must be sorted and >= 0")
        mass0 = initial.mass
        states = []
        state = initial
        for tau in checkpoints:
            state = self.advance(state, tau)
            drift = abs(state.mass - mass0)
            logger.debug(f"tau={tau:g}: mass {state.mass:.12g} (drift {drift:.3g}), "
                         f"min W {state.min_W:.3g}")
            states.append(state)
        logger.info(f"Upwind solve on {self.grid.cells} cells: {len(states)} checkpoints, "
                    f"final mass drift {abs(state.mass - mass0):.3g}")
        return states


def step(state: PdeGridState, dtau: float, params: VerhulstParams, nu_ratio: float = 1.0,
         cfl: float = 1.0) -> PdeGridState:
    """Single upwind step on the state's own grid."""
    return UpwindSolver(params, state.grid, nu_ratio, cfl).step(state, dtau)


def solve(W0: InitialDensity, checkpoints: Sequence[float], params: VerhulstParams,
          nu_ratio: float = 1.0, grid: Optional[Grid1D] = None,
          cfl: float = DEFAULT_CFL) -> List[PdeGridState]:
    """Project W0 and return the states at the checkpoints."""
    grid = grid or Grid1D.for_params(params)
    solver = UpwindSolver(params, grid, nu_ratio, cfl)
    return solver.solve(project_initial(W0, grid), checkpoints)


def l1_distance(state: PdeGridState, reference: Callable) -> float:
    """sum |W - reference(x)| dx over cell centres."""
    values = np.asarray(reference(state.grid.centers), dtype=float)
    return float(np.sum(np.abs(state.W - values)) * state.grid.dx)
