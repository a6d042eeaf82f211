# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Closed-form solution of the Verhulst master equations at nu = p1.

Dimensionless form (p1 = 1, tau = nu t):

    W_tau  + ((x + p2 x^2) W)_x + (q2 x^2 W1)_x = 0
    W1_tau + 2 W1 + ((x + p2 x^2) W1)_x + (q2 x^2 W)_x = 0

The cascade ends after one step at nu = p1, so the general solution is given
by two functions F, G of the characteristic variables. Write c = p2 + q2 and
e = p2 - q2 for the quadratic coefficients of the two noise branches.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from ..errors import CharacteristicDomainError, ValidationError
from .distribution import MixedDistribution1D, DEFAULT_EPSABS, DEFAULT_LIMIT
from .initial import InitialDensity
from .params import VerhulstParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolutionPoint:
    """(W, W1) at one point or on an array of points."""

    W: np.ndarray
    W1: np.ndarray


@dataclass(frozen=True)
class BackwardMap:
    """Feet of the two characteristics through (x, tau).

    x_hat follows the alpha = +1 branch, y_hat the alpha = -1 branch. A
    denominator <= 0 means the characteristic left through infinity; the
    matching foot is +inf and its `beyond` flag is set.
    """

    x_hat: np.ndarray
    y_hat: np.ndarray
    denom_x: np.ndarray
    denom_y: np.ndarray

    @property
    def x_beyond(self) -> np.ndarray:
        return self.denom_x <= 0

    @property
    def y_beyond(self) -> np.ndarray:
        return self.denom_y <= 0


@dataclass(frozen=True)
class CharacteristicFunction:
    """A function of one characteristic variable together with its derivative."""

    value: Callable
    deriv: Callable


def forward_branch(x0, tau, c: float):
    """Logistic flow dx/dtau = x + c x^2 started at x0, evaluated at tau."""
    x0 = np.asarray(x0, dtype=float)
    growth = np.exp(np.asarray(tau, dtype=float))
    return growth * x0 / (1.0 - c * (growth - 1.0) * x0)


def char_inverse(s, c: float):
    """Inverse of s = ln(x/(1 + c x)) at tau = 0."""
    es = np.exp(np.asarray(s, dtype=float))
    return es / (1.0 - c * es)


def char_vars(x, tau, params: VerhulstParams) -> Tuple[np.ndarray, np.ndarray]:
    """Characteristic variables (x_bar, y_bar).

    x_bar = -tau + ln(x/(1 + c x)) is constant along the alpha = +1 branch
    (annihilated by X2), y_bar = -tau + ln(x/(1 + e x)) along alpha = -1.

    Raises:
        CharacteristicDomainError: If x is outside (0, 1/(|p2| + q2))
    """
    x = np.asarray(x, dtype=float)
    tau = np.asarray(tau, dtype=float)
    bad = (x <= 0) | (1.0 + params.c_plus * x <= 0) | (1.0 + params.c_minus * x <= 0)
    if np.any(bad):
        raise CharacteristicDomainError(float(np.atleast_1d(x[bad] if x.ndim else x)[0]),
                                        operation="char_vars")
    x_bar = -tau + np.log(x / (1.0 + params.c_plus * x))
    y_bar = -tau + np.log(x / (1.0 + params.c_minus * x))
    return x_bar, y_bar


def backward_map(x, tau, params: VerhulstParams) -> BackwardMap:
    """Carry (x, tau) back to tau = 0 along both characteristic families.

    x_hat = x / (e^tau (1 + c x) - c x), y_hat likewise with e. Where both
    denominators are positive, x_hat <= y_hat.
    """
    x = np.asarray(x, dtype=float)
    growth = np.exp(np.asarray(tau, dtype=float))
    denom_x = growth * (1.0 + params.c_plus * x) - params.c_plus * x
    denom_y = growth * (1.0 + params.c_minus * x) - params.c_minus * x
    with np.errstate(divide='ignore', invalid='ignore'):
        x_hat = np.where(denom_x > 0, x / np.where(denom_x > 0, denom_x, 1.0), np.inf)
        y_hat = np.where(denom_y > 0, x / np.where(denom_y > 0, denom_y, 1.0), np.inf)
    return BackwardMap(x_hat=x_hat, y_hat=y_hat, denom_x=denom_x, denom_y=denom_y)


def general_solution(F: CharacteristicFunction, G: CharacteristicFunction, x, tau,
                     params: VerhulstParams) -> SolutionPoint:
    """Evaluate the two-function general solution.

    W  = (q2/x^2) [F'(x_bar) - F(x_bar) + G'(y_bar) - G(y_bar)]
    W1 = (1/x^3) [-q2 x G'(y_bar) + (1 + p2 x) G(y_bar) + q2 x F'(x_bar) + (1 + p2 x) F(x_bar)]

    Raises:
        CharacteristicDomainError: From char_vars
    """
    x = np.asarray(x, dtype=float)
    x_bar, y_bar = char_vars(x, tau, params)
    q2, p2 = params.q2, params.p2
    f, df = F.value(x_bar), F.deriv(x_bar)
    g, dg = G.value(y_bar), G.deriv(y_bar)
    W = q2 / x ** 2 * (df - f + dg - g)
    W1 = (-q2 * x * dg + (1.0 + p2 * x) * g + q2 * x * df + (1.0 + p2 * x) * f) / x ** 3
    return SolutionPoint(W=W, W1=W1)


def fit_cauchy(W0: InitialDensity, params: VerhulstParams, c0: Optional[float] = None,
               c1: Optional[float] = None) -> Tuple[CharacteristicFunction, CharacteristicFunction]:
    """F and G matching W(x, 0) = W0, W1(x, 0) = 0.

    With I1(z) = int_{c1}^z W0 and I2(z) = int_{c0}^z W0(s)/s ds:
        F = [-x I2 + (1 + q2 x) I1] / (2 q2^2 (1 + c x))
        G = [ x I2 + (q2 x - 1) I1] / (2 q2^2 (1 + e x))
    composed with x = char_inverse(s). The lower limits default to inf(support)
    and do not change the resulting (W, W1).

    Raises:
        ValidationError: For point-mass initial data
    """
    if W0.is_delta:
        raise ValidationError("point-mass initial data has no Cauchy fit; use solve_delta",
                              operation="fit_cauchy")
    a = W0.support[0]
    base1 = float(W0.I1(np.array([c1]))[0]) if c1 is not None else 0.0
    base2 = float(W0.I2(np.array([c0]))[0]) if c0 is not None else 0.0
    q2 = params.q2
    scale = 2.0 * q2 * q2
    logger.debug(f"Fitting Cauchy data on support {W0.support} (c0={c0 or a}, c1={c1 or a})")

    def I1(z):
        return W0.I1(z) - base1

    def I2(z):
        return W0.I2(z) - base2

    def make(c: float, sign: float) -> CharacteristicFunction:
        # sign = -1 gives F (coefficient c), +1 gives G (coefficient e)
        def numerator(x):
            return sign * x * I2(x) + (q2 * x - sign) * I1(x)

        def numerator_x(x):
            return sign * I2(x) + q2 * I1(x) + q2 * x * W0(x)

        def value(s):
            x = char_inverse(s, c)
            return numerator(x) / (scale * (1.0 + c * x))

        def deriv(s):
            x = char_inverse(s, c)
            return x * (numerator_x(x) * (1.0 + c * x) - c * numerator(x)) / (scale * (1.0 + c * x))

        return CharacteristicFunction(value=value, deriv=deriv)

    return make(params.c_plus, -1.0), make(params.c_minus, 1.0)


def _ends(W0: InitialDensity, z, beyond, total: float, integral: Callable):
    z_safe = np.where(beyond, W0.support[1], z)
    return np.where(beyond, total, integral(z_safe))


def solve(W0: InitialDensity, x, tau, params: VerhulstParams) -> SolutionPoint:
    """Explicit (W, W1) at (x, tau) for smooth initial data.

    A foot that left through infinity contributes I(+inf) to the integral
    terms and nothing to the point terms.

    Raises:
        ValidationError: For point-mass initial data (see solve_delta)
    """
    if W0.is_delta:
        raise ValidationError("point-mass initial data: use solve_delta", operation="solve")
    x = np.asarray(x, dtype=float)
    tau = np.asarray(tau, dtype=float)
    if np.any(x <= 0) or np.any(tau < 0):
        raise ValidationError("solve needs x > 0 and tau >= 0", operation="solve")
    q2, p2 = params.q2, params.p2
    bm = backward_map(x, tau, params)
    xb, yb = bm.x_beyond, bm.y_beyond

    I1x = _ends(W0, bm.x_hat, xb, W0.total_I1, W0.I1)
    I1y = _ends(W0, bm.y_hat, yb, W0.total_I1, W0.I1)
    I2x = _ends(W0, bm.x_hat, xb, W0.total_I2, W0.I2)
    I2y = _ends(W0, bm.y_hat, yb, W0.total_I2, W0.I2)

    with np.errstate(divide='ignore', invalid='ignore'):
        point_x = np.where(xb, 0.0, W0(np.where(xb, 0.0, bm.x_hat)) / (2.0 * bm.denom_x ** 2))
        point_y = np.where(yb, 0.0, W0(np.where(yb, 0.0, bm.y_hat)) / (2.0 * bm.denom_y ** 2))

    decay = np.exp(-tau)
    d1 = I1y - I1x
    W = d1 / (2.0 * q2 * x ** 2) + point_y + point_x
    W1 = (d1 * ((decay - 1.0) * p2 * x - 1.0) / (2.0 * q2 * q2 * x ** 3)
          + decay * (I2y - I2x) / (2.0 * q2 * q2 * x ** 2)
          - point_y + point_x)
    return SolutionPoint(W=W, W1=W1)


def reachable(x, params: VerhulstParams) -> np.ndarray:
    """True where x does not exceed the outer equilibrium 1/(|p2| - q2)."""
    return np.asarray(x, dtype=float) <= params.outer_equilibrium


def solve_delta(x_star: float, tau: float, params: VerhulstParams) -> MixedDistribution1D:
    """Exact law for W0 = delta(x - x_star).

    Atoms sit at X+- = forward flows of x_star along the two branches, each
    with mass e^-tau/2; between them the density is 1/(2 q2 x^2).
    """
    x_star, tau = float(x_star), float(tau)
    if not x_star > 0:
        raise ValidationError(f"x_star must be positive, got {x_star}", operation="solve_delta")
    if tau < 0:
        raise ValidationError(f"tau must be >= 0, got {tau}", operation="solve_delta")
    q2 = params.q2
    lower = float(forward_branch(x_star, tau, params.c_minus))
    upper = float(forward_branch(x_star, tau, params.c_plus))
    if tau == 0 or lower == upper:
        return MixedDistribution1D(atoms=((x_star, 1.0),), support=(x_star, x_star))

    half = 0.5 * np.exp(-tau)
    return MixedDistribution1D(
        atoms=((lower, half), (upper, half)),
        density=lambda x: 1.0 / (2.0 * q2 * np.asarray(x, dtype=float) ** 2),
        support=(lower, upper),
        density_cdf=lambda x: (1.0 / lower - 1.0 / np.asarray(x, dtype=float)) / (2.0 * q2))


def stationary(params: VerhulstParams) -> MixedDistribution1D:
    """Limit law: density 1/(2 q2 x^2) on (1/|p2 - q2|, 1/|p2 + q2|)."""
    q2 = params.q2
    lower, upper = params.stationary_interval
    return MixedDistribution1D(
        density=lambda x: 1.0 / (2.0 * q2 * np.asarray(x, dtype=float) ** 2),
        support=(lower, upper),
        density_cdf=lambda x: (1.0 / lower - 1.0 / np.asarray(x, dtype=float)) / (2.0 * q2))


def solve_distribution(W0: InitialDensity, tau: float, params: VerhulstParams,
                       epsabs: float = DEFAULT_EPSABS,
                       limit: int = DEFAULT_LIMIT) -> MixedDistribution1D:
    """Law of x at tau as a MixedDistribution1D, for any initial density.

    The support runs from the alpha = -1 image of inf(support) to the
    alpha = +1 image of sup(support); W has kinks at the images of both ends
    along both branches, which become quadrature breakpoints.
    """
    if W0.is_delta:
        return solve_delta(W0.atom, tau, params)
    a, b = W0.support
    if tau == 0:
        return MixedDistribution1D(density=lambda x: W0(x), support=(a, b))
    lower = float(forward_branch(a, tau, params.c_minus))
    upper = float(forward_branch(b, tau, params.c_plus))
    breaks = tuple(float(forward_branch(end, tau, c))
                   for end in (a, b) for c in (params.c_minus, params.c_plus))

    def density(x):
        return solve(W0, x, tau, params).W

    return MixedDistribution1D(density=density, support=(lower, upper), breakpoints=breaks)


def solve_delta_w1(x, x_star: float, tau: float, params: VerhulstParams) -> np.ndarray:
    """Continuous part of W1 for W0 = delta(x - x_star), zero outside (X-, X+).

    The atoms carry W1 masses +e^-tau/2 at X+ and -e^-tau/2 at X-.
    """
    x = np.asarray(x, dtype=float)
    q2, p2 = params.q2, params.p2
    lower = float(forward_branch(x_star, tau, params.c_minus))
    upper = float(forward_branch(x_star, tau, params.c_plus))
    decay = np.exp(-tau)
    inside = (x > lower) & (x < upper)
    xs = np.where(inside, x, 1.0)
    value = (((decay - 1.0) * p2 * xs - 1.0) / (2.0 * q2 * q2 * xs ** 3)
             + decay / (2.0 * q2 * q2 * xs ** 2 * x_star))
    return np.where(inside, value, 0.0)
