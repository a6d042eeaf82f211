# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Sparse trivariate polynomials in (x, y, z) with exact rational coefficients.

MPoly3 wraps a sympy Poly in x, y, z over QQ; exponents and coefficients are
exposed as (i, j, k) triples and Fractions.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

import sympy
from sympy import QQ, Poly

from ..errors import DegreeOverflowError, ValidationError
from .rational import format_rat, from_sympy, get_degree_cap, to_sympy

logger = logging.getLogger(__name__)

Exponent = Tuple[int, int, int]
AXES = ('x', 'y', 'z')
SYMBOLS = sympy.symbols('x y z')


def _axis_index(axis: Union[int, str]) -> int:
    if isinstance(axis, str):
        if axis not in AXES:
            raise ValidationError(f"unknown axis {axis!r}")
        return AXES.index(axis)
    if axis not in (0, 1, 2):
        raise ValidationError(f"unknown axis {axis!r}")
    return axis


def _poly(expr) -> Poly:
    return Poly(expr, *SYMBOLS, domain=QQ)


class MPoly3:
    """Immutable polynomial in x, y, z."""

    __slots__ = ('poly',)

    def __init__(self, terms: Union[Mapping[Exponent, Union[int, Fraction]],
                                    Iterable[Tuple[Exponent, Union[int, Fraction]]],
                                    Poly, None] = None):
        """Initialize polynomial.

        Args:
            terms: Mapping or iterable of ((i, j, k), coefficient), repeated
                exponents summed; or a sympy Poly in x, y, z

        Raises:
            DegreeOverflowError: If the total degree exceeds the configured cap
        """
        if isinstance(terms, Poly):
            poly = terms.set_domain(QQ)
        else:
            acc: Dict[Exponent, Fraction] = {}
            items = terms.items() if isinstance(terms, Mapping) else (terms or ())
            for exp, c in items:
                exp = tuple(int(e) for e in exp)
                if len(exp) != 3 or min(exp) < 0:
                    raise ValidationError(f"bad exponent {exp}")
                acc[exp] = acc.get(exp, Fraction(0)) + Fraction(c)
            poly = Poly.from_dict({e: to_sympy(c) for e, c in acc.items() if c != 0} or {(0, 0, 0): 0},
                                  *SYMBOLS, domain=QQ)
        if not poly.is_zero:
            cap = get_degree_cap()
            if poly.total_degree() > cap:
                raise DegreeOverflowError(poly.total_degree(), cap, operation="MPoly3")
        object.__setattr__(self, 'poly', poly)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly3 is immutable")

    @classmethod
    def constant(cls, c: Union[int, Fraction]) -> 'MPoly3':
        return cls({(0, 0, 0): c})

    @classmethod
    def variable(cls, axis: Union[int, str]) -> 'MPoly3':
        exp = [0, 0, 0]
        exp[_axis_index(axis)] = 1
        return cls({tuple(exp): 1})

    @classmethod
    def from_univariate(cls, coeffs: Sequence[Union[int, Fraction]], axis: Union[int, str]) -> 'MPoly3':
        """Lift a dense univariate coefficient list onto one axis."""
        ax = _axis_index(axis)
        terms = {}
        for k, c in enumerate(coeffs):
            exp = [0, 0, 0]
            exp[ax] = k
            terms[tuple(exp)] = c
        return cls(terms)

    @classmethod
    def from_expr(cls, expr: sympy.Expr) -> 'MPoly3':
        return cls(_poly(expr))

    # --- properties -------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        """Nonzero coefficients by exponent triple."""
        if self.poly.is_zero:
            return {}
        return {tuple(e): from_sympy(c) for e, c in self.poly.terms()}

    def is_zero(self) -> bool:
        return self.poly.is_zero

    @property
    def total_degree(self) -> int:
        """Total degree, -1 for the zero polynomial."""
        return -1 if self.poly.is_zero else self.poly.total_degree()

    def degree_in(self, axis: Union[int, str]) -> int:
        """Degree in one variable: 0 if it does not occur, -1 for the zero polynomial."""
        ax = _axis_index(axis)
        return -1 if self.poly.is_zero else self.poly.degree(SYMBOLS[ax])

    def uses_axes(self) -> Tuple[int, ...]:
        return tuple(a for a in range(3) if self.degree_in(a) > 0)

    def as_expr(self) -> sympy.Expr:
        return self.poly.as_expr()

    # --- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, MPoly3):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly3.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return MPoly3(self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return MPoly3(-self.poly)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return MPoly3(self.poly - other.poly)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.is_zero() and not other.is_zero():
            degree = self.total_degree + other.total_degree
            if degree > get_degree_cap():
                raise DegreeOverflowError(degree, get_degree_cap(), operation="MPoly3.mul")
        return MPoly3(self.poly * other.poly)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValidationError("negative power of a polynomial")
        if n and self.total_degree * n > get_degree_cap():
            raise DegreeOverflowError(self.total_degree * n, get_degree_cap(), operation="MPoly3.pow")
        return MPoly3(self.poly ** n)

    # --- calculus ---------------------------------------------------------

    def partial(self, axis: Union[int, str]) -> 'MPoly3':
        """Partial derivative along an axis."""
        return MPoly3(self.poly.diff(SYMBOLS[_axis_index(axis)]))

    def antiderivative(self, axis: Union[int, str]) -> 'MPoly3':
        """Antiderivative along an axis with no constant term in that axis."""
        return MPoly3(self.poly.integrate(SYMBOLS[_axis_index(axis)]))

    def substitute(self, maps: Sequence['MPoly3']) -> 'MPoly3':
        """Compose: replace x, y, z by the three given polynomials."""
        if len(maps) != 3:
            raise ValidationError("substitute needs one polynomial per axis")
        replace = {s: m.as_expr() for s, m in zip(SYMBOLS, maps)}
        return MPoly3(_poly(self.as_expr().xreplace(replace)))

    def set_axis(self, axis: Union[int, str], value: Union[int, Fraction]) -> 'MPoly3':
        """Evaluate one axis at a rational value, keeping the others symbolic."""
        symbol = SYMBOLS[_axis_index(axis)]
        return MPoly3(_poly(self.as_expr().xreplace({symbol: to_sympy(value)})))

    def evaluate(self, point: Sequence[Union[int, Fraction]]) -> Fraction:
        """Exact value at a point of three rationals."""
        return from_sympy(self.poly.eval(dict(zip(SYMBOLS, (to_sympy(v) for v in point)))))

    # --- comparison and output --------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"MPoly3({str(self)!r})"

    def __str__(self):
        return format_mpoly(self)


def format_mpoly(p: MPoly3, names: Sequence[str] = AXES) -> str:
    """Sparse "c*x^i*y^j*z^k" rendering in graded lexicographic order."""
    if p.is_zero():
        return "0"
    text = ""
    for exp, c in p.poly.terms(order='grlex'):
        c = from_sympy(c)
        factors = []
        for name, power in zip(names, exp):
            if power == 1:
                factors.append(name)
            elif power > 1:
                factors.append(f"{name}^{power}")
        mag = abs(c)
        if not factors:
            body = format_rat(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_rat(mag)] + factors)
        if not text:
            text = ('-' if c < 0 else '') + body
        else:
            text += f" {'-' if c < 0 else '+'} {body}"
    return text


X = MPoly3.variable(0)
Y = MPoly3.variable(1)
Z = MPoly3.variable(2)
