# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Initial densities W0 with their mass integrals.

Every density carries I1(z) = int_{a}^{z} W0 and I2(z) = int_{a}^{z} W0(s)/s ds
with a = inf(support), plus an inverse-CDF sampler for Monte-Carlo. Closed
forms are used where they exist; otherwise scipy quadrature.
"""

import logging
import re
from dataclasses import dataclass, field
from tokenize import TokenError
from typing import Callable, Dict, Optional, Tuple

import numpy as np
import sympy
from numpy.polynomial import Polynomial
from scipy import integrate
from sympy.parsing.sympy_parser import parse_expr

from ..errors import ValidationError, QuadratureError
from .distribution import DEFAULT_EPSABS, DEFAULT_LIMIT, QUAD_SLACK

logger = logging.getLogger(__name__)

KIND_DELTA = "delta"
KIND_UNIFORM = "uniform"
KIND_BUMP = "bump"
KIND_GRID = "grid"
KIND_ANALYTIC = "analytic"

# samples of the CDF used to invert it numerically
INVERSE_CDF_POINTS = 20001


@dataclass(frozen=True)
class InitialDensity:
    """Normalised initial density W0 on support (a, b) with a > 0."""

    kind: str
    support: Tuple[float, float]
    evaluator: Callable = field(compare=False)
    I1: Callable = field(compare=False)
    I2: Callable = field(compare=False)
    sampler: Callable = field(compare=False)
    atom: Optional[float] = None
    description: str = ""

    @property
    def is_delta(self) -> bool:
        return self.kind == KIND_DELTA

    @property
    def total_I1(self) -> float:
        """I1 at +infinity (the total mass)."""
        return float(self.I1(np.array([self.support[1]]))[0])

    @property
    def total_I2(self) -> float:
        """I2 at +infinity."""
        return float(self.I2(np.array([self.support[1]]))[0])

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        inside = (x > lo) & (x < hi)
        out = np.zeros_like(x)
        if np.any(inside):
            out[inside] = self.evaluator(x[inside])
        return out


def _check_support(a: float, b: float) -> Tuple[float, float]:
    a, b = float(a), float(b)
    if not a > 0:
        raise ValidationError(f"initial support must be bounded away from 0, got a={a}")
    if not b > a:
        raise ValidationError(f"empty initial support ({a}, {b})")
    return a, b


def _tabulated_sampler(I1: Callable, a: float, b: float) -> Callable:
    grid = np.linspace(a, b, INVERSE_CDF_POINTS)
    cdf_values = np.asarray(I1(grid), dtype=float)
    cdf_values = np.maximum.accumulate(cdf_values / cdf_values[-1])

    def sample(u):
        return np.interp(np.asarray(u, dtype=float), cdf_values, grid)

    return sample


def delta(x_star: float) -> InitialDensity:
    """Point mass at x_star; handled exactly by solve_delta."""
    x_star = float(x_star)
    if not x_star > 0:
        raise ValidationError(f"delta location must be positive, got {x_star}")

    def heaviside(z):
        return (np.asarray(z, dtype=float) >= x_star).astype(float)

    def heaviside_over_x(z):
        return heaviside(z) / x_star

    return InitialDensity(
        kind=KIND_DELTA, support=(x_star, x_star),
        evaluator=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        I1=heaviside, I2=heaviside_over_x,
        sampler=lambda u: np.full_like(np.asarray(u, dtype=float), x_star),
        atom=x_star, description=f"delta:x={x_star}")


def uniform(a: float, b: float) -> InitialDensity:
    """Uniform density on (a, b)."""
    a, b = _check_support(a, b)
    width = b - a

    def I1(z):
        return (np.clip(np.asarray(z, dtype=float), a, b) - a) / width

    def I2(z):
        return np.log(np.clip(np.asarray(z, dtype=float), a, b) / a) / width

    return InitialDensity(
        kind=KIND_UNIFORM, support=(a, b),
        evaluator=lambda x: np.full_like(np.asarray(x, dtype=float), 1.0 / width),
        I1=I1, I2=I2, sampler=lambda u: a + width * np.asarray(u, dtype=float),
        description=f"uniform:a={a},b={b}")


def polynomial_bump(center: float, half_width: float, power: int = 4) -> InitialDensity:
    """Normalised C * (1 - u^2)^power with u = (x - center)/half_width.

    I1 comes from the polynomial antiderivative. For I2 the polynomial R(s)
    is split as R(0) + s S(s), so int R(s)/s ds = S_int(s) + R(0) ln s.
    """
    a, b = _check_support(center - half_width, center + half_width)
    shape = Polynomial([1.0, 0.0, -1.0]) ** int(power)
    shape_int = shape.integ()
    norm = 1.0 / (half_width * (shape_int(1.0) - shape_int(-1.0)))

    # the same polynomial in the variable s = x
    R = shape(Polynomial([-center / half_width, 1.0 / half_width])) * norm
    r0 = R.coef[0]
    S_int = Polynomial(R.coef[1:]).integ() if R.coef.size > 1 else Polynomial([0.0])

    def evaluator(x):
        return norm * shape((np.asarray(x, dtype=float) - center) / half_width)

    def I1(z):
        u = (np.clip(np.asarray(z, dtype=float), a, b) - center) / half_width
        return norm * half_width * (shape_int(u) - shape_int(-1.0))

    def I2(z):
        zc = np.clip(np.asarray(z, dtype=float), a, b)
        return S_int(zc) - S_int(a) + r0 * np.log(zc / a)

    return InitialDensity(
        kind=KIND_BUMP, support=(a, b), evaluator=evaluator, I1=I1, I2=I2,
        sampler=_tabulated_sampler(I1, a, b),
        description=f"bump:center={center},width={half_width},power={power}")


def grid(xs, values) -> InitialDensity:
    """Piecewise-linear density through (xs, values), normalised."""
    xs = np.asarray(xs, dtype=float)
    values = np.asarray(values, dtype=float)
    if xs.ndim != 1 or xs.shape != values.shape or xs.size < 2:
        raise ValidationError("grid density needs matching 1-D arrays of length >= 2")
    if np.any(np.diff(xs) <= 0):
        raise ValidationError("grid abscissae must increase")
    if np.any(values < 0):
        raise ValidationError("density values must be nonnegative")
    a, b = _check_support(xs[0], xs[-1])

    mass = integrate.trapezoid(values, xs)
    if not mass > 0:
        raise ValidationError("grid density has zero mass")
    values = values / mass
    cum1 = integrate.cumulative_trapezoid(values, xs, initial=0.0)
    cum2 = integrate.cumulative_trapezoid(values / xs, xs, initial=0.0)

    return InitialDensity(
        kind=KIND_GRID, support=(a, b),
        evaluator=lambda x: np.interp(np.asarray(x, dtype=float), xs, values),
        I1=lambda z: np.interp(np.asarray(z, dtype=float), xs, cum1),
        I2=lambda z: np.interp(np.asarray(z, dtype=float), xs, cum2),
        sampler=lambda u: np.interp(np.asarray(u, dtype=float), cum1, xs),
        description=f"grid:{xs.size} points")


def analytic(fn: Callable[[float], float], support: Tuple[float, float],
             epsabs: float = DEFAULT_EPSABS, limit: int = DEFAULT_LIMIT,
             description: str = "analytic") -> InitialDensity:
    """Density given by a callable; integrals by adaptive quadrature.

    Raises:
        QuadratureError: If the normalising integral fails to converge
    """
    a, b = _check_support(*support)

    def quad(g, lo, hi):
        value, err = integrate.quad(g, lo, hi, epsabs=epsabs, epsrel=epsabs, limit=limit)
        if err > QUAD_SLACK * max(epsabs, epsabs * abs(value)):
            raise QuadratureError(err, epsabs, operation="initial density")
        return value

    mass = quad(fn, a, b)
    if not mass > 0:
        raise ValidationError("analytic density has zero mass")
    if abs(mass - 1.0) > 1e-6:
        logger.info(f"Normalising analytic density (mass {mass:.6g})")

    def density(s):
        return fn(s) / mass

    def I1(z):
        z = np.atleast_1d(np.clip(np.asarray(z, dtype=float), a, b))
        return np.array([quad(density, a, v) if v > a else 0.0 for v in z])

    def I2(z):
        z = np.atleast_1d(np.clip(np.asarray(z, dtype=float), a, b))
        return np.array([quad(lambda s: density(s) / s, a, v) if v > a else 0.0 for v in z])

    evaluator = np.vectorize(density, otypes=[float])
    # trapezoid CDF table for the sampler
    xs = np.linspace(a, b, INVERSE_CDF_POINTS)
    cdf = integrate.cumulative_trapezoid(evaluator(xs), xs, initial=0.0)

    return InitialDensity(
        kind=KIND_ANALYTIC, support=(a, b), evaluator=evaluator,
        I1=I1, I2=I2, sampler=_tabulated_sampler(lambda z: np.interp(z, xs, cdf), a, b),
        description=description)


_INIT_RE = re.compile(r'^\s*(\w+)\s*(?::(.*))?$')
_DENSITY_VAR = sympy.Symbol('x')


def density_function(text: str) -> Callable[[float], float]:
    """Scalar callable from an expression in x such as "x*(0.3 - x)".

    Raises:
        ValidationError: If the text is not an expression in x alone
    """
    try:
        expr = parse_expr(text.replace('^', '**'), local_dict={'x': _DENSITY_VAR})
    except (sympy.SympifyError, SyntaxError, TokenError, TypeError) as e:
        raise ValidationError(f"cannot parse density {text!r}", original_error=e)
    extra = expr.free_symbols - {_DENSITY_VAR}
    if extra:
        raise ValidationError(f"density {text!r} depends on {sorted(map(str, extra))}, only x is allowed")
    fn = sympy.lambdify(_DENSITY_VAR, expr, 'math')
    return lambda s: float(fn(s))


def parse_initial(text: str) -> InitialDensity:
    """Parse CLI forms such as "delta:x=0.5", "uniform:a=0.1,b=0.3",
    "bump:center=0.2,width=0.1[,power=4]" and "analytic:f=x*(0.3-x),a=0.1,b=0.3".

    The analytic expression may not contain commas.

    Raises:
        ValidationError: If the text is not understood
    """
    match = _INIT_RE.match(text or "")
    if not match:
        raise ValidationError(f"cannot parse initial density {text!r}")
    kind = match.group(1).lower()
    raw: Dict[str, str] = {}
    if match.group(2):
        for item in match.group(2).split(','):
            if '=' not in item:
                raise ValidationError(f"expected key=value in {text!r}")
            key, value = item.split('=', 1)
            raw[key.strip()] = value.strip()

    def number(key: str) -> float:
        try:
            return float(raw[key])
        except ValueError as e:
            raise ValidationError(f"bad number {raw[key]!r} in {text!r}", original_error=e)

    try:
        if kind == KIND_DELTA:
            return delta(number('x'))
        if kind == KIND_UNIFORM:
            return uniform(number('a'), number('b'))
        if kind == KIND_BUMP:
            power = int(number('power')) if 'power' in raw else 4
            return polynomial_bump(number('center'), number('width'), power)
        if kind == KIND_ANALYTIC:
            return analytic(density_function(raw['f']), (number('a'), number('b')),
                            description=f"analytic:f={raw['f']}")
    except KeyError as e:
        raise ValidationError(f"missing parameter {e} in {text!r}", original_error=e)
    raise ValidationError(f"unknown initial density kind {kind!r}")
