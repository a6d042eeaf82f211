# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Mixed probability laws: point masses plus a density on an interval."""

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from ..errors import QuadratureError, ValidationError

logger = logging.getLogger(__name__)

DEFAULT_EPSABS = 1e-10
DEFAULT_LIMIT = 200
# error estimates above tolerance by more than this factor count as failure
QUAD_SLACK = 1e3


def _zero_density(x):
    return np.zeros_like(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class MixedDistribution1D:
    """Atoms (location, mass) plus a density on support = (lo, hi).

    density_cdf, when given, is the closed-form integral of the density from
    lo to x; otherwise cdf and moment integrate numerically, splitting at
    breakpoints.
    """

    atoms: Tuple[Tuple[float, float], ...] = ()
    density: Callable = _zero_density
    support: Tuple[float, float] = (0.0, 0.0)
    breakpoints: Tuple[float, ...] = ()
    density_cdf: Optional[Callable] = field(default=None, compare=False)

    def __post_init__(self):
        atoms = tuple(sorted((float(loc), float(mass)) for loc, mass in self.atoms))
        if any(mass <= 0 for _, mass in atoms):
            raise ValidationError("atom masses must be positive")
        object.__setattr__(self, 'atoms', atoms)
        lo, hi = float(self.support[0]), float(self.support[1])
        if hi < lo:
            raise ValidationError(f"empty support ({lo}, {hi})")
        object.__setattr__(self, 'support', (lo, hi))
        inner = tuple(sorted(b for b in self.breakpoints if lo < b < hi))
        object.__setattr__(self, 'breakpoints', inner)

    @property
    def atom_mass(self) -> float:
        return sum(mass for _, mass in self.atoms)

    @property
    def has_density(self) -> bool:
        return self.support[1] > self.support[0]

    def density_values(self, x) -> np.ndarray:
        """Density at x, zero outside the support."""
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        inside = (x > lo) & (x < hi)
        out = np.zeros_like(x)
        if np.any(inside):
            out[inside] = self.density(x[inside])
        return out

    def continuous_mass(self, epsabs: float = DEFAULT_EPSABS, limit: int = DEFAULT_LIMIT) -> float:
        if not self.has_density:
            return 0.0
        return float(_density_integral(self, self.support[1], epsabs, limit))


def _quad(fn: Callable[[float], float], a: float, b: float, points: Sequence[float],
          epsabs: float, limit: int) -> float:
    """Adaptive quadrature over [a, b] split at the given points."""
    if b <= a:
        return 0.0
    edges = [a] + [p for p in points if a < p < b] + [b]
    total = 0.0
    for left, right in zip(edges[:-1], edges[1:]):
        value, err = integrate.quad(fn, left, right, epsabs=epsabs, epsrel=epsabs, limit=limit)
        if err > QUAD_SLACK * max(epsabs, epsabs * abs(value)):
            raise QuadratureError(err, epsabs, operation="quad")
        total += value
    return total


def _density_integral(dist: MixedDistribution1D, x: float, epsabs: float, limit: int) -> float:
    lo, hi = dist.support
    upper = min(max(x, lo), hi)
    if upper <= lo:
        return 0.0
    if dist.density_cdf is not None:
        return float(dist.density_cdf(upper))
    return _quad(lambda s: float(dist.density(np.array([s]))[0]), lo, upper,
                 dist.breakpoints, epsabs, limit)


def cdf(dist: MixedDistribution1D, x, epsabs: float = DEFAULT_EPSABS,
        limit: int = DEFAULT_LIMIT):
    """Right-continuous CDF including atom jumps.

    Args:
        dist: Mixed distribution
        x: Point or array of points

    Returns:
        float for scalar x, numpy array otherwise
    """
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    locs = np.array([loc for loc, _ in dist.atoms], dtype=float)
    masses = np.array([mass for _, mass in dist.atoms], dtype=float)
    cum_mass = np.concatenate([[0.0], np.cumsum(masses)])
    out = cum_mass[np.searchsorted(locs, xs, side='right')]

    if dist.has_density:
        lo, hi = dist.support
        if dist.density_cdf is not None:
            upper = np.clip(xs, lo, hi)
            cont = np.where(xs > lo, np.asarray(dist.density_cdf(upper), dtype=float), 0.0)
        else:
            cont = _sorted_density_integrals(dist, xs, epsabs, limit)
        out = out + cont
    return float(out[0]) if np.ndim(x) == 0 else out


def _sorted_density_integrals(dist: MixedDistribution1D, xs: np.ndarray,
                              epsabs: float, limit: int) -> np.ndarray:
    """Integral of the density from lo to each x, accumulated in sorted order."""
    lo, hi = dist.support
    order = np.argsort(xs, kind='stable')
    out = np.empty_like(xs)
    previous, running = lo, 0.0

    def fn(s):
        return float(dist.density(np.array([s]))[0])

    for idx in order:
        upper = min(max(xs[idx], lo), hi)
        if upper > previous:
            running += _quad(fn, previous, upper, dist.breakpoints, epsabs, limit)
            previous = upper
        out[idx] = running
    return out


def cdf_left(dist: MixedDistribution1D, x: float, epsabs: float = DEFAULT_EPSABS,
             limit: int = DEFAULT_LIMIT) -> float:
    """Left limit F(x-) of the CDF."""
    locs = np.array([loc for loc, _ in dist.atoms], dtype=float)
    masses = np.array([mass for _, mass in dist.atoms], dtype=float)
    jump = float(np.sum(masses[locs < x]))
    cont = _density_integral(dist, x, epsabs, limit) if dist.has_density else 0.0
    return jump + cont


def moment(dist: MixedDistribution1D, k: int, epsabs: float = DEFAULT_EPSABS,
           limit: int = DEFAULT_LIMIT) -> float:
    """k-th raw moment: atom sum plus quadrature of x^k times the density."""
    total = sum(mass * loc ** k for loc, mass in dist.atoms)
    if dist.has_density:
        lo, hi = dist.support
        total += _quad(lambda s: s ** k * float(dist.density(np.array([s]))[0]),
                       lo, hi, dist.breakpoints, epsabs, limit)
    return float(total)


def total_mass(dist: MixedDistribution1D, epsabs: float = DEFAULT_EPSABS,
               limit: int = DEFAULT_LIMIT) -> float:
    return dist.atom_mass + dist.continuous_mass(epsabs, limit)


def empirical(samples: Sequence[float]) -> MixedDistribution1D:
    """Distribution with mass 1/n at every sample."""
    samples = np.sort(np.asarray(samples, dtype=float))
    if samples.size == 0:
        raise ValidationError("no samples")
    locs, counts = np.unique(samples, return_counts=True)
    n = samples.size
    return MixedDistribution1D(atoms=tuple((float(loc), c / n) for loc, c in zip(locs, counts)))
