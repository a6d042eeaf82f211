# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Exact univariate algebra over the rationals.

UPoly wraps a sympy Poly in x over QQ. RationalFunction is a reduced ratio of
two UPolys with a monic denominator, cancelled with sympy's gcd. Rat is
fractions.Fraction and is what the rest of the package sees for coefficients.

All coefficient work is exact; the only float entry point is evaluate_float,
which the numeric modules use.
"""

import logging
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ, Poly

from ..errors import DegreeOverflowError, ZeroDivisorError, ValidationError

logger = logging.getLogger(__name__)

Rat = Fraction

DEFAULT_DEGREE_CAP = 512
_degree_cap = DEFAULT_DEGREE_CAP

Scalar = Union[int, Fraction]

SYMBOL_X = sympy.Symbol('x')


def set_degree_cap(cap: int) -> None:
    """Set the maximum polynomial degree accepted by UPoly and MPoly3."""
    global _degree_cap
    if cap < 1:
        raise ValidationError(f"degree cap must be positive, got {cap}")
    _degree_cap = int(cap)


def get_degree_cap() -> int:
    """Get the current polynomial degree cap."""
    return _degree_cap


def to_sympy(value: Scalar) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def from_sympy(value) -> Fraction:
    """Fraction from a sympy Rational or a QQ domain element."""
    if hasattr(value, 'p'):
        return Fraction(int(value.p), int(value.q))
    return Fraction(int(value.numerator), int(value.denominator))


def parse_rat(text: Union[str, int, Fraction]) -> Fraction:
    """Parse an exact rational from "p", "p/q" or a decimal string.

    Args:
        text: Input such as "-2", "1/2" or "0.5"

    Returns:
        Fraction equal to the input

    Raises:
        ValidationError: If the text is not a rational literal
    """
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValidationError(f"not a rational number: {text!r}", original_error=e)


def format_rat(value: Fraction) -> str:
    """Format a rational as "p/q", or "p" for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rat_sqrt(value: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None if irrational."""
    value = Fraction(value)
    if value < 0:
        return None
    root = sympy.sqrt(to_sympy(value))
    return from_sympy(root) if root.is_Rational else None


def _check_degree(degree: int, operation: str) -> None:
    if degree > _degree_cap:
        raise DegreeOverflowError(degree, _degree_cap, operation=operation)


class UPoly:
    """Immutable univariate polynomial with exact rational coefficients."""

    __slots__ = ('poly',)

    def __init__(self, coeffs: Union[Sequence[Scalar], Poly] = ()):
        """Initialize polynomial.

        Args:
            coeffs: Coefficients, lowest degree first, or a sympy Poly in x

        Raises:
            DegreeOverflowError: If the degree exceeds the configured cap
        """
        if isinstance(coeffs, Poly):
            poly = coeffs.set_domain(QQ)
        else:
            values = [to_sympy(c) for c in coeffs]
            poly = Poly.from_list(values[::-1] or [0], SYMBOL_X, domain=QQ)
        if not poly.is_zero:
            _check_degree(poly.degree(), "UPoly")
        object.__setattr__(self, 'poly', poly)

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @classmethod
    def constant(cls, c: Scalar) -> 'UPoly':
        return cls((c,))

    @classmethod
    def x(cls) -> 'UPoly':
        return cls((0, 1))

    @classmethod
    def monomial(cls, c: Scalar, k: int) -> 'UPoly':
        return cls([0] * k + [c])

    # --- basic properties -------------------------------------------------

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        """Coefficients lowest degree first, without trailing zeros."""
        if self.poly.is_zero:
            return ()
        return tuple(from_sympy(c) for c in reversed(self.poly.all_coeffs()))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return -1 if self.poly.is_zero else self.poly.degree()

    @property
    def lc(self) -> Fraction:
        """Leading coefficient (0 for the zero polynomial)."""
        return from_sympy(self.poly.LC())

    def is_zero(self) -> bool:
        return self.poly.is_zero

    def is_constant(self) -> bool:
        return self.degree <= 0

    def coeff(self, k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        return from_sympy(self.poly.coeff_monomial(SYMBOL_X ** k))

    def as_expr(self) -> sympy.Expr:
        return self.poly.as_expr()

    # --- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional['UPoly']:
        if isinstance(other, UPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return UPoly(self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return UPoly(-self.poly)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return UPoly(self.poly - other.poly)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return UPoly()
        _check_degree(self.degree + other.degree, "UPoly.mul")
        return UPoly(self.poly * other.poly)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValidationError("negative power of a polynomial")
        if n and not self.is_zero():
            _check_degree(self.degree * n, "UPoly.pow")
        return UPoly(self.poly ** n)

    def scale(self, c: Scalar) -> 'UPoly':
        return UPoly(self.poly.mul_ground(to_sympy(c)))

    def divmod(self, other: 'UPoly') -> Tuple['UPoly', 'UPoly']:
        """Euclidean division over Q.

        Returns:
            (quotient, remainder) with deg remainder < deg other

        Raises:
            ZeroDivisorError: If other is zero
        """
        if other.is_zero():
            raise ZeroDivisorError(operation="UPoly.divmod")
        quotient, remainder = self.poly.div(other.poly)
        return UPoly(quotient), UPoly(remainder)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> 'UPoly':
        if self.is_zero():
            return self
        return UPoly(self.poly.monic())

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if self.is_zero():
            return Fraction(0)
        denom, integral = self.poly.clear_denoms(convert=True)
        cont, _ = integral.primitive()
        return abs(from_sympy(cont) / from_sympy(denom))

    def primitive(self) -> 'UPoly':
        """Primitive integer part with positive leading coefficient."""
        if self.is_zero():
            return self
        prim = self.scale(1 / self.content())
        return -prim if prim.lc < 0 else prim

    # --- calculus ---------------------------------------------------------

    def deriv(self) -> 'UPoly':
        return UPoly(self.poly.diff(SYMBOL_X))

    def integral(self) -> 'UPoly':
        """Antiderivative with zero constant term."""
        return UPoly(self.poly.integrate(SYMBOL_X))

    def compose(self, inner: 'UPoly') -> 'UPoly':
        """Return self(inner(x))."""
        if not self.is_zero() and not inner.is_zero():
            _check_degree(self.degree * max(inner.degree, 0), "UPoly.compose")
        return UPoly(self.poly.compose(inner.poly))

    # --- evaluation -------------------------------------------------------

    def __call__(self, x):
        """Exact for Fraction input, float/numpy otherwise."""
        if isinstance(x, (int, Fraction)):
            return from_sympy(self.poly.eval(to_sympy(x)))
        return self.evaluate_float(x)

    def evaluate_float(self, x):
        result = 0.0
        for c in reversed(self.coeffs):
            result = result * x + float(c)
        return result

    # --- comparison and output --------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(('UPoly', self.coeffs))

    def __repr__(self):
        return f"UPoly({[format_rat(c) for c in self.coeffs]})"

    def __str__(self):
        return format_poly(self)


def format_poly(p: UPoly, var: str = 'x') -> str:
    """Sparse "c*x^k" rendering, highest degree first."""
    if p.is_zero():
        return "0"
    text = ""
    for (k,), c in p.poly.terms():
        c = from_sympy(c)
        mag = abs(c)
        if k == 0:
            body = format_rat(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{format_rat(mag)}*{mono}"
        if not text:
            text = ('-' if c < 0 else '') + body
        else:
            text += f" {'-' if c < 0 else '+'} {body}"
    return text


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over Q."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    return UPoly(a.poly.gcd(b.poly)).monic()


def poly_sqrt(p: UPoly) -> Optional[UPoly]:
    """Exact square root with positive leading coefficient, or None.

    p is a square iff every square-free factor has even multiplicity and the
    leading coefficient is a rational square.
    """
    if p.is_zero():
        return UPoly()
    lead, factors = p.poly.sqf_list()
    top = rat_sqrt(from_sympy(lead))
    if top is None or any(m % 2 for _, m in factors):
        return None
    root = UPoly.constant(top)
    for factor, m in factors:
        root = root * UPoly(factor) ** (m // 2)
    if root.lc < 0:
        root = -root
    return root if root * root == p else None


class RationalFunction:
    """Reduced ratio num/den of UPolys with monic denominator."""

    __slots__ = ('num', 'den')

    def __init__(self, num: Union[UPoly, Scalar], den: Union[UPoly, Scalar, None] = None):
        """Initialize and canonicalize.

        Args:
            num: Numerator polynomial or scalar
            den: Denominator polynomial or scalar (default 1)

        Raises:
            ZeroDivisorError: If den is zero
        """
        num = num if isinstance(num, UPoly) else UPoly.constant(num)
        if den is None:
            den = UPoly.constant(1)
        elif not isinstance(den, UPoly):
            den = UPoly.constant(den)
        if den.is_zero():
            raise ZeroDivisorError(operation="RationalFunction")

        if num.is_zero():
            n, d = Poly(0, SYMBOL_X, domain=QQ), Poly(1, SYMBOL_X, domain=QQ)
        else:
            g = num.poly.gcd(den.poly)
            n, d = num.poly.exquo(g), den.poly.exquo(g)
            lc = d.LC()
            n, d = n.exquo_ground(lc), d.monic()
        object.__setattr__(self, 'num', UPoly(n))
        object.__setattr__(self, 'den', UPoly(d))

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def constant(cls, c: Scalar) -> 'RationalFunction':
        return cls(UPoly.constant(c))

    @classmethod
    def x(cls) -> 'RationalFunction':
        return cls(UPoly.x())

    @classmethod
    def from_coeffs(cls, num: Sequence[Scalar], den: Sequence[Scalar] = (1,)) -> 'RationalFunction':
        return cls(UPoly(num), UPoly(den))

    # --- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def constant_value(self) -> Fraction:
        """Value of a constant rational function."""
        if not self.is_constant():
            raise ValidationError(f"{self} is not constant")
        return self.num.coeff(0)

    def as_expr(self) -> sympy.Expr:
        return self.num.as_expr() / self.den.as_expr()

    # --- field operations -------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional['RationalFunction']:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (UPoly, int, Fraction)):
            return RationalFunction(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisorError(operation="RationalFunction.div")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            if self.is_zero():
                raise ZeroDivisorError(operation="RationalFunction.pow")
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction(self.num ** n, self.den ** n)

    # --- calculus ---------------------------------------------------------

    def diff(self) -> 'RationalFunction':
        """Exact derivative d/dx."""
        if self.den.is_constant():
            return RationalFunction(self.num.deriv(), self.den)
        return RationalFunction(
            self.num.deriv() * self.den - self.num * self.den.deriv(),
            self.den * self.den)

    def log_deriv(self) -> 'RationalFunction':
        """f'/f, the derivative of ln f without forming the logarithm."""
        if self.is_zero():
            raise ZeroDivisorError(operation="log_deriv")
        # (n/d)'/(n/d) = n'/n - d'/d
        return (RationalFunction(self.num.deriv(), self.num)
                - RationalFunction(self.den.deriv(), self.den))

    # --- evaluation -------------------------------------------------------

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            d = self.den(x)
            if d == 0:
                raise ZeroDivisorError(operation=f"evaluate at {x}")
            return self.num(x) / d
        return self.evaluate_float(x)

    def evaluate_float(self, x):
        """Float (or numpy array) view by Horner on num and den."""
        return self.num.evaluate_float(x) / self.den.evaluate_float(x)

    # --- comparison and output --------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(('RationalFunction', self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        return format_ratfun(self)


def format_ratfun(f: RationalFunction, var: str = 'x') -> str:
    """Canonical string: "num" or "(num)/(den)"."""
    if f.den.is_constant():
        return format_poly(f.num, var)
    return f"({format_poly(f.num, var)})/({format_poly(f.den, var)})"


def ratfun_sqrt(f: RationalFunction) -> Optional[RationalFunction]:
    """Square root with positive leading coefficient in the numerator, or None.

    The canonical form makes the square root unique: den is monic and coprime
    to num, so f is a square iff num and den are squares separately.
    """
    num_root = poly_sqrt(f.num)
    if num_root is None:
        return None
    den_root = poly_sqrt(f.den)
    if den_root is None:
        return None
    return RationalFunction(num_root, den_root)


def ratfun_diff(f: RationalFunction) -> RationalFunction:
    """Exact derivative of a rational function."""
    return f.diff()


def log_deriv(f: RationalFunction) -> RationalFunction:
    """Logarithmic derivative f'/f.

    Raises:
        ZeroDivisorError: If f is zero
    """
    return f.log_deriv()


ZERO = RationalFunction.constant(0)
ONE = RationalFunction.constant(1)
X = RationalFunction.x()
