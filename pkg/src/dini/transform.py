# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Dini transform for L u = u_xy + x u_xz - u_z = 0 on polynomial data.

With X1 = D_x, X2 = D_y + x D_z, X3 = D_z the operator factors as
L = X2 X1 - X3. The complete solution is built from two functions of two
variables (phi, psi) and one function of one variable (theta):

    v = int phi(x, x y - z) dx + psi(y, z)
    u = int_0^x v(s, y, 0) ds + int_0^z (X2 v)(x, y, s) ds + theta(y)

All integrals are exact on polynomials.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from tokenize import TokenError
from typing import List, Optional, Sequence

import sympy
from sympy.parsing.sympy_parser import parse_expr

from ..algebra.mpoly import MPoly3, X, Y, Z, format_mpoly
from ..errors import IncompatibleInputError, ValidationError

logger = logging.getLogger(__name__)

PHI_NAMES = ('a', 'b')


def X1(f: MPoly3) -> MPoly3:
    return f.partial(0)


def X2(f: MPoly3) -> MPoly3:
    """D_y + x D_z."""
    return f.partial(1) + X * f.partial(2)


def X3(f: MPoly3) -> MPoly3:
    return f.partial(2)


def _require_axes(f: MPoly3, allowed: Sequence[int], name: str):
    extra = [a for a in f.uses_axes() if a not in allowed]
    if extra:
        raise ValidationError(f"{name} depends on axes {extra}, allowed {list(allowed)}")


def dini_v(phi: MPoly3, psi: MPoly3) -> MPoly3:
    """v = int phi(x, x y - z) dx + psi(y, z).

    Args:
        phi: Polynomial in its first two axes (a, b)
        psi: Polynomial in y and z
    """
    _require_axes(phi, (0, 1), "phi")
    _require_axes(psi, (1, 2), "psi")
    composed = phi.substitute([X, X * Y - Z, MPoly3()])
    return composed.antiderivative(0) + psi


def dini_u(v: MPoly3, theta: MPoly3) -> MPoly3:
    """u with X1 u = v and X3 u = X2 v, anchored at (0, y, 0).

    Raises:
        IncompatibleInputError: If X2 X1 v is not zero
    """
    _require_axes(theta, (1,), "theta")
    if not X2(X1(v)).is_zero():
        raise IncompatibleInputError(operation="dini_u")
    along_x = v.set_axis(2, 0).antiderivative(0)
    along_z = X2(v).antiderivative(2)
    return along_x + along_z + theta


def check_L(u: MPoly3) -> MPoly3:
    """u_xy + x u_xz - u_z; zero exactly when u solves L u = 0."""
    ux = u.partial(0)
    return ux.partial(1) + X * ux.partial(2) - u.partial(2)


def parse_polynomial(text: str, variables: Sequence[str], axes: Sequence[int]) -> MPoly3:
    """Parse a polynomial string into an MPoly3.

    Args:
        text: Expression such as "a*b - 1/2*b^2"
        variables: Variable names in the text
        axes: Axis receiving each variable

    Raises:
        ValidationError: If the text is not a polynomial with rational coefficients
    """
    if len(variables) != len(axes):
        raise ValidationError("one axis per variable is required")
    symbols = [sympy.Symbol(name) for name in variables]
    try:
        expr = parse_expr(text.replace('^', '**'), local_dict=dict(zip(variables, symbols)))
        poly = sympy.Poly(expr, *symbols)
    except (sympy.SympifyError, sympy.PolynomialError, SyntaxError, TokenError, TypeError) as e:
        raise ValidationError(f"not a polynomial in {list(variables)}: {text!r}",
                              operation="parse_polynomial", original_error=e)

    terms = {}
    for monomial, coeff in poly.as_dict().items():
        if not coeff.is_Rational:
            raise ValidationError(f"coefficient {coeff} is not rational in {text!r}",
                                  operation="parse_polynomial")
        exp = [0, 0, 0]
        for power, axis in zip(monomial, axes):
            exp[axis] += int(power)
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + Fraction(int(coeff.p), int(coeff.q))
    return MPoly3(terms)


def parse_phi(text: str) -> MPoly3:
    return parse_polynomial(text, PHI_NAMES, (0, 1))


def parse_psi(text: str) -> MPoly3:
    return parse_polynomial(text, ('y', 'z'), (1, 2))


def parse_theta(text: str) -> MPoly3:
    return parse_polynomial(text, ('y',), (1,))


def random_polynomial(rng: random.Random, axes: Sequence[int], max_degree: int,
                      density: float = 0.6) -> MPoly3:
    """Random polynomial on the given axes, total degree <= max_degree, small rational coefficients."""
    terms = {}
    for degree in range(max_degree + 1):
        for exp in _exponents(len(axes), degree):
            if rng.random() > density:
                continue
            full = [0, 0, 0]
            for axis, power in zip(axes, exp):
                full[axis] = power
            terms[tuple(full)] = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
    return MPoly3(terms)


def _exponents(n_vars: int, degree: int):
    if n_vars == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in _exponents(n_vars - 1, degree - first):
            yield (first,) + rest


@dataclass(frozen=True)
class DiniCase:
    """One (phi, psi, theta) input with the resulting u and its residual."""

    phi: MPoly3
    psi: MPoly3
    theta: MPoly3
    u: MPoly3
    residual: MPoly3

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()

    def to_dict(self) -> dict:
        return {
            "phi": format_mpoly(self.phi, names=('a', 'b', 'c')),
            "psi": format_mpoly(self.psi),
            "theta": format_mpoly(self.theta),
            "u": format_mpoly(self.u),
            "residual": format_mpoly(self.residual),
        }


def solve_case(phi: MPoly3, psi: MPoly3, theta: MPoly3) -> DiniCase:
    u = dini_u(dini_v(phi, psi), theta)
    return DiniCase(phi=phi, psi=psi, theta=theta, u=u, residual=check_L(u))


def run_suite(trials: int = 50, max_degree: int = 4, seed: Optional[int] = 0) -> List[DiniCase]:
    """Randomised check of the complete solution; every residual should be zero."""
    rng = random.Random(seed)
    cases = []
    for _ in range(trials):
        phi = random_polynomial(rng, (0, 1), max_degree)
        psi = random_polynomial(rng, (1, 2), max_degree)
        theta = random_polynomial(rng, (1,), max_degree)
        cases.append(solve_case(phi, psi, theta))
    failed = sum(1 for case in cases if not case.passed)
    logger.info(f"Dini suite: {trials} cases, {failed} nonzero residuals")
    return cases
