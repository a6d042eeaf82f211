# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Workflow orchestration behind the CLI subcommands.

Each run_* function takes validated user-scale parameters, drives one module
and returns a RunOutput holding a CSV table and/or a JSON payload. Nothing
here prints; the CLI renders and writes the output.

The exact solution and the two numerical oracles (Monte-Carlo, upwind) are
computed independently; compare never feeds one into another.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra.rational import format_rat, format_ratfun, parse_rat
from .cascade.charform import master_system, to_characteristic, verhulst_polynomials
from .cascade.laplace import build_chain, explicit_h, invariants, is_triangular
from .dini.transform import parse_phi, parse_psi, parse_theta, run_suite, solve_case
from .errors import ValidationError
from .pde.upwind import Grid1D, UpwindSolver, l1_distance, project_initial
from .reporting.writers import csv_text, json_text
from .telegraph.compare import histogram, kolmogorov_distance
from .telegraph.simulator import McConfig, simulate
from .verhulst.exact import reachable, solve, solve_delta, solve_delta_w1, solve_distribution
from .verhulst.initial import InitialDensity
from .verhulst.params import UserParams, VerhulstParams

logger = logging.getLogger(__name__)

MODE_EXACT_VS_MC = "exact-vs-mc"
MODE_EXACT_VS_PDE = "exact-vs-pde"

POINT_HEADER = ["x", "W", "W1"]
LONG_HEADER = ["tau", "x", "W", "W1", "reachable"]


@dataclass
class RunOutput:
    """Result of one subcommand: an optional CSV table and a JSON payload.

    Closed-form runs also carry one x,W,W1 table per tau in per_tau; header
    and rows then hold the long table with tau and reachable columns.
    """

    payload: Dict[str, Any] = field(default_factory=dict)
    header: Optional[List[str]] = None
    rows: List[Sequence[Any]] = field(default_factory=list)
    per_tau: Dict[float, List[Sequence[Any]]] = field(default_factory=dict)

    @property
    def tabular(self) -> bool:
        return self.header is not None

    def render(self, fmt: str = "csv", digits: int = 12) -> str:
        """CSV when requested and available, JSON otherwise."""
        if fmt == "csv" and self.tabular:
            return csv_text(self.header, self.rows, digits)
        return json_text(self.payload, digits)

    def render_parts(self, fmt: str = "csv", digits: int = 12,
                     long: bool = False) -> List[Tuple[Optional[float], str]]:
        """(tau, text) per output part: one x,W,W1 CSV per tau, or a single (None, text)."""
        if fmt == "csv" and self.per_tau and not long:
            return [(tau, csv_text(POINT_HEADER, rows, digits)) for tau, rows in self.per_tau.items()]
        return [(None, self.render(fmt, digits))]


def _require_closed_form(user: UserParams) -> None:
    if user.nu != user.p1:
        raise ValidationError(
            f"closed form needs nu = p1 (got nu={format_rat(user.nu)}, p1={format_rat(user.p1)}); "
            "use the 'pde' subcommand for other flip rates")


def default_x_grid(params: VerhulstParams, points: int, x_max: Optional[float] = None) -> np.ndarray:
    """points evenly spaced positive abscissae up to x_max (default 1.5 / (|p2| - q2))."""
    if points < 1:
        raise ValidationError(f"points must be >= 1, got {points}")
    upper = x_max if x_max is not None else 1.5 * params.outer_equilibrium
    return np.linspace(upper / points, upper, points)


def _flag_unreachable(xs: np.ndarray, params: VerhulstParams) -> np.ndarray:
    ok = reachable(xs, params)
    if not np.all(ok):
        logger.warning(f"{int(np.sum(~ok))} points lie above the outer equilibrium "
                       f"{params.outer_equilibrium:.6g} and are not physically reachable")
    return ok


# --- symbolic ----------------------------------------------------------------

def run_invariants(user: UserParams) -> RunOutput:
    """Laplace invariants of the Verhulst master system."""
    p, q = verhulst_polynomials(user.p1, user.p2, user.q2)
    cs = to_characteristic(master_system(p, q, user.nu))
    pair = invariants(cs, strict=False)
    payload = pair.to_dict()
    payload.update({
        "params": user.to_dict(),
        "triangular": is_triangular(cs),
        "explicit_h": format_ratfun(explicit_h(p, q, user.nu)),
        "closed_form": pair.h is not None and pair.h.is_zero(),
    })
    logger.info(f"Invariants: h = {payload['h']}, k = {payload['k']}")
    return RunOutput(payload=payload)


def run_chain(user: UserParams, steps: int) -> RunOutput:
    """Forward and backward invariant chains."""
    p, q = verhulst_polynomials(user.p1, user.p2, user.q2)
    cs = to_characteristic(master_system(p, q, user.nu))
    chain = build_chain(cs, steps)
    payload = chain.to_dict()
    payload["params"] = user.to_dict()
    payload["steps"] = steps
    return RunOutput(payload=payload)


# --- closed form -------------------------------------------------------------

def run_exact(user: UserParams, init: InitialDensity, taus: Sequence[float],
              xs: Optional[np.ndarray] = None, points: int = 200) -> RunOutput:
    """W and W1 on an x grid for each tau (nu = p1 only)."""
    _require_closed_form(user)
    if init.is_delta:
        return run_delta(user, init.atom, taus, xs, points)
    params = user.dimensionless()
    xs = default_x_grid(params, points) if xs is None else np.asarray(xs, dtype=float)
    ok = _flag_unreachable(xs, params)

    rows = []
    per_tau = {}
    blocks = []
    for tau in taus:
        point = solve(init, xs, tau, params)
        rows.extend(zip([tau] * xs.size, xs, point.W, point.W1, ok))
        per_tau[tau] = list(zip(xs, point.W, point.W1))
        blocks.append({"tau": tau, "x": xs, "W": point.W, "W1": point.W1, "reachable": ok})
    payload = {"params": user.to_dict(), "init": init.description, "atoms": [],
               "density_grid": blocks}
    return RunOutput(payload=payload, header=LONG_HEADER, rows=rows, per_tau=per_tau)


def run_delta(user: UserParams, x_star: float, taus: Sequence[float],
              xs: Optional[np.ndarray] = None, points: int = 200) -> RunOutput:
    """Point-mass initial data: atoms kept apart from the density grid."""
    _require_closed_form(user)
    params = user.dimensionless()
    xs = default_x_grid(params, points) if xs is None else np.asarray(xs, dtype=float)
    ok = _flag_unreachable(xs, params)

    rows = []
    per_tau = {}
    atoms = []
    blocks = []
    for tau in taus:
        dist = solve_delta(x_star, tau, params)
        W = dist.density_values(xs)
        W1 = solve_delta_w1(xs, x_star, tau, params)
        rows.extend(zip([tau] * xs.size, xs, W, W1, ok))
        per_tau[tau] = list(zip(xs, W, W1))
        blocks.append({"tau": tau, "x": xs, "W": W, "W1": W1, "reachable": ok})
        for n, (loc, mass) in enumerate(dist.atoms):
            # the upper atom rides the alpha = +1 branch
            sign = 0.0 if len(dist.atoms) == 1 else (1.0 if n == len(dist.atoms) - 1 else -1.0)
            atoms.append({"tau": tau, "x": loc, "mass": mass, "w1_mass": sign * mass})
    payload = {"params": user.to_dict(), "init": f"delta:x={x_star}", "atoms": atoms,
               "density_grid": blocks}
    return RunOutput(payload=payload, header=LONG_HEADER, rows=rows, per_tau=per_tau)


# --- numerical oracles -------------------------------------------------------

def run_mc(user: UserParams, init: InitialDensity, taus: Sequence[float], paths: int,
           seed: int, batch_size: int = 4096, threads: int = 1,
           bins: Optional[int] = None) -> RunOutput:
    """Monte-Carlo samples per checkpoint, raw or binned."""
    params = user.dimensionless()
    config = McConfig(params=params, init=init, paths=paths, checkpoints=sorted(taus), seed=seed,
                      batch_size=batch_size, threads=threads, flip_rate=float(user.nu_ratio))
    ensemble = simulate(config)

    rows = []
    summary = []
    for tau in config.checkpoints:
        samples = ensemble.at(tau)
        summary.append({"tau": tau, "mean": float(np.mean(samples)),
                        "std": float(np.std(samples)), "paths": samples.size})
        if bins:
            mids, density = histogram(samples, bins)
            rows.extend(zip([tau] * mids.size, mids, density))
        else:
            rows.extend(zip([tau] * samples.size, samples))
    header = ["tau", "x_mid", "density"] if bins else ["tau", "sample"]
    payload = {"params": user.to_dict(), "init": init.description, "seed": seed,
               "paths": paths, "checkpoints": summary}
    return RunOutput(payload=payload, header=header, rows=rows)


def run_pde(user: UserParams, init: InitialDensity, taus: Sequence[float], cells: int,
            cfl: float, margin: float = 1.5) -> RunOutput:
    """Upwind solution for any flip rate."""
    params = user.dimensionless()
    grid = Grid1D.for_params(params, cells, margin)
    solver = UpwindSolver(params, grid, float(user.nu_ratio), cfl)
    states = solver.solve(project_initial(init, grid), sorted(taus))

    rows = []
    diagnostics = []
    centers = grid.centers
    for state in states:
        rows.extend(zip([state.tau] * centers.size, centers, state.W, state.W1))
        diagnostics.append({"tau": state.tau, "mass": state.mass, "min_W": state.min_W})
    payload = {"params": user.to_dict(), "init": init.description, "cells": cells,
               "cfl": cfl, "nu_ratio": format_rat(user.nu_ratio), "diagnostics": diagnostics}
    return RunOutput(payload=payload, header=["tau", "x", "W", "W1"], rows=rows)


def run_compare(user: UserParams, mode: str, init: InitialDensity, taus: Sequence[float],
                paths: int = 10000, seed: int = 0, batch_size: int = 4096, threads: int = 1,
                cells: int = 2000, cfl: float = 0.5, margin: float = 1.5,
                epsabs: float = 1e-10, limit: int = 200) -> RunOutput:
    """Distance between the closed form and one numerical oracle per checkpoint."""
    _require_closed_form(user)
    params = user.dimensionless()
    taus = sorted(float(t) for t in taus)
    results = []

    if mode == MODE_EXACT_VS_MC:
        config = McConfig(params=params, init=init, paths=paths, checkpoints=taus, seed=seed,
                          batch_size=batch_size, threads=threads)
        ensemble = simulate(config)
        for tau in taus:
            exact = solve_distribution(init, tau, params)
            distance = kolmogorov_distance(ensemble.at(tau), exact, epsabs, limit)
            logger.info(f"tau={tau:g}: Kolmogorov distance {distance:.6g}")
            results.append({"tau": tau, "kolmogorov": distance, "paths": paths})
    elif mode == MODE_EXACT_VS_PDE:
        if init.is_delta:
            raise ValidationError("exact-vs-pde needs a smooth initial density")
        grid = Grid1D.for_params(params, cells, margin)
        states = UpwindSolver(params, grid, 1.0, cfl).solve(project_initial(init, grid), taus)
        for state in states:
            distance = l1_distance(state, lambda x, tau=state.tau: solve(init, x, tau, params).W)
            logger.info(f"tau={state.tau:g}: L1 distance {distance:.6g}")
            results.append({"tau": state.tau, "l1": distance, "cells": cells})
    else:
        raise ValidationError(f"unknown compare mode {mode!r}")

    payload = {"mode": mode, "params": user.to_dict(), "init": init.description,
               "results": results}
    if len(results) == 1:
        payload.update(results[0])
    return RunOutput(payload=payload)


# --- dini --------------------------------------------------------------------

def run_dini(demo: bool = True, phi: Optional[str] = None, psi: Optional[str] = None,
             theta: Optional[str] = None, trials: int = 50, max_degree: int = 4,
             seed: int = 0) -> RunOutput:
    """Randomised suite or a single user-supplied case."""
    if demo:
        cases = run_suite(trials, max_degree, seed)
        payload = {
            "trials": trials,
            "max_degree": max_degree,
            "seed": seed,
            "all_zero": all(case.passed for case in cases),
            "residuals": [case.to_dict()["residual"] for case in cases],
        }
        return RunOutput(payload=payload)

    case = solve_case(parse_phi(phi or "0"), parse_psi(psi or "0"), parse_theta(theta or "0"))
    payload = case.to_dict()
    payload["all_zero"] = case.passed
    return RunOutput(payload=payload)


def parse_user_params(p1: Any, p2: Any, q2: Any, nu: Any) -> UserParams:
    """Exact parameters from strings such as "-2" or "1/2"."""
    values = {name: parse_rat(value) for name, value in
              (("p1", p1), ("p2", p2), ("q2", q2), ("nu", nu))}
    user = UserParams(**values)
    logger.debug(f"Parameters: {user.to_dict()}")
    return user


# Entry point for CLI
def main():
    """Main entry point."""
    from .ui.cli import cli
    cli()


if __name__ == '__main__':
    main()
