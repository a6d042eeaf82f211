# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Comparison of Monte-Carlo ensembles with exact mixed distributions."""

import logging
from typing import Sequence, Tuple

import numpy as np

from ..errors import ValidationError
from ..verhulst.distribution import DEFAULT_EPSABS, DEFAULT_LIMIT, MixedDistribution1D, cdf

logger = logging.getLogger(__name__)

# above this many evaluation points a CDF without closed form is tabulated
TABULATE_ABOVE = 2000
TABLE_POINTS = 4001
# samples this close to an atom (relative) are counted at the atom
ATOM_SNAP_RTOL = 1e-9


def _model_cdf(dist: MixedDistribution1D, points: np.ndarray, epsabs: float, limit: int) -> np.ndarray:
    """CDF of dist at sorted points; right limits."""
    if dist.density_cdf is not None or not dist.has_density or points.size <= TABULATE_ABOVE:
        return cdf(dist, points, epsabs, limit)

    # density part tabulated on a grid with the breakpoints, atoms added exactly
    lo, hi = dist.support
    grid = np.union1d(np.linspace(lo, hi, TABLE_POINTS), np.asarray(dist.breakpoints, dtype=float))
    continuous = MixedDistribution1D(density=dist.density, support=dist.support,
                                     breakpoints=dist.breakpoints)
    table = cdf(continuous, grid, epsabs, limit)
    locs = np.array([loc for loc, _ in dist.atoms], dtype=float)
    masses = np.array([mass for _, mass in dist.atoms], dtype=float)
    cum_mass = np.concatenate([[0.0], np.cumsum(masses)])
    logger.debug(f"Tabulated CDF on {grid.size} points for {points.size} samples")
    return cum_mass[np.searchsorted(locs, points, side='right')] + np.interp(points, grid, table)


def kolmogorov_distance(samples: Sequence[float], dist: MixedDistribution1D,
                        epsabs: float = DEFAULT_EPSABS, limit: int = DEFAULT_LIMIT) -> float:
    """sup |F_n - F| over sample values and atom locations, both one-sided limits.

    Both CDFs are step-or-continuous and right-continuous, so the supremum is
    reached at a jump of either one, from the left or from the right.
    """
    samples = np.sort(np.asarray(samples, dtype=float))
    n = samples.size
    if n == 0:
        raise ValidationError("no samples to compare", operation="kolmogorov_distance")

    # flows computed in several segments differ from the atom position by rounding
    for loc, _ in dist.atoms:
        near = np.abs(samples - loc) <= ATOM_SNAP_RTOL * max(1.0, abs(loc))
        samples[near] = loc
    samples = np.sort(samples)

    atom_locs = np.array([loc for loc, _ in dist.atoms], dtype=float)
    points = np.union1d(np.unique(samples), atom_locs)

    emp_right = np.searchsorted(samples, points, side='right') / n
    emp_left = np.searchsorted(samples, points, side='left') / n

    model_right = _model_cdf(dist, points, epsabs, limit)
    # left limits differ only by the atom jumps at those points
    jump = np.zeros_like(points)
    for loc, mass in dist.atoms:
        jump[np.searchsorted(points, loc)] += mass
    model_left = model_right - jump

    distance = max(float(np.max(np.abs(emp_right - model_right))),
                   float(np.max(np.abs(emp_left - model_left))))
    logger.debug(f"Kolmogorov distance over {n} samples: {distance:.6g}")
    return distance


def histogram(samples: Sequence[float], bins: int = 50,
              bounds: Tuple[float, float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Normalised histogram of samples.

    Returns:
        (bin midpoints, density values)
    """
    samples = np.asarray(samples, dtype=float)
    if bins < 1:
        raise ValidationError(f"bins must be >= 1, got {bins}")
    density, edges = np.histogram(samples, bins=bins, range=bounds, density=True)
    return 0.5 * (edges[:-1] + edges[1:]), density
