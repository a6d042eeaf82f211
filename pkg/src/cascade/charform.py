# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Characteristic form of 2x2 first-order systems with x-dependent coefficients.

Orientation is (t, x) = (evolution, space). A system v_t = A(x) v_x + B(x) v
is rewritten with u_i = l_i . v as

    X_i u_i = sum_k alpha_ik u_k,    X_i = mu_i D_t - lambda_i D_x

where l_i are left eigenvectors of A and mu_i are constant time coefficients
(1 unless the system has been rescaled). On functions of x alone the
operators act as X_i g = -lambda_i g'.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from ..algebra.rational import (
    RationalFunction, UPoly, Rat, ratfun_sqrt, format_ratfun, format_rat,
)
from ..errors import NotHyperbolicError, IrrationalSpeedsError, ValidationError, ZeroDivisorError

logger = logging.getLogger(__name__)

Vector2 = Tuple[RationalFunction, RationalFunction]
Matrix2 = Tuple[Vector2, Vector2]


def _rf(value) -> RationalFunction:
    return value if isinstance(value, RationalFunction) else RationalFunction(value)


def matrix(a11, a12, a21, a22) -> Matrix2:
    """Build a 2x2 matrix of rational functions from polynomials or scalars."""
    return ((_rf(a11), _rf(a12)), (_rf(a21), _rf(a22)))


def directional(lam: RationalFunction, g: RationalFunction) -> RationalFunction:
    """Apply X = mu D_t - lam D_x to a function of x alone."""
    return -(lam * g.diff())


@dataclass(frozen=True)
class FirstOrderSystem2:
    """v_t = A(x) v_x + B(x) v for a two-component state v."""

    A: Matrix2
    B: Matrix2

    def __post_init__(self):
        object.__setattr__(self, 'A', matrix(*self.A[0], *self.A[1]))
        object.__setattr__(self, 'B', matrix(*self.B[0], *self.B[1]))


@dataclass(frozen=True)
class CharacteristicSystem:
    """X_i u_i = sum_k alpha_ik u_k with [X1, X2] = P X1 + Q X2."""

    lambda1: RationalFunction
    lambda2: RationalFunction
    alpha: Matrix2
    P: RationalFunction
    Q: RationalFunction
    leftvec1: Optional[Vector2] = None
    leftvec2: Optional[Vector2] = None
    mu1: Fraction = Fraction(1)
    mu2: Fraction = Fraction(1)

    @property
    def a11(self) -> RationalFunction:
        return self.alpha[0][0]

    @property
    def a12(self) -> RationalFunction:
        return self.alpha[0][1]

    @property
    def a21(self) -> RationalFunction:
        return self.alpha[1][0]

    @property
    def a22(self) -> RationalFunction:
        return self.alpha[1][1]

    def X1(self, g: RationalFunction) -> RationalFunction:
        return directional(self.lambda1, g)

    def X2(self, g: RationalFunction) -> RationalFunction:
        return directional(self.lambda2, g)

    def with_alpha(self, alpha: Matrix2) -> 'CharacteristicSystem':
        """Same operators, new coefficients; eigenvector rows no longer apply."""
        return CharacteristicSystem(
            lambda1=self.lambda1, lambda2=self.lambda2, alpha=alpha,
            P=self.P, Q=self.Q, mu1=self.mu1, mu2=self.mu2)

    def commutator_residual(self) -> Tuple[RationalFunction, RationalFunction]:
        """Residuals of the D_t and D_x parts of [X1, X2] - P X1 - Q X2 (both zero)."""
        dt_part = self.P * self.mu1 + self.Q * self.mu2
        dx_part = (-(self.P * self.lambda1) - self.Q * self.lambda2
                   - (self.lambda1 * self.lambda2.diff() - self.lambda2 * self.lambda1.diff()))
        return dt_part, dx_part


def eigendata(A: Matrix2) -> Tuple[RationalFunction, RationalFunction, Vector2, Vector2]:
    """Characteristic speeds and left eigenvectors of a 2x2 matrix.

    A triangular matrix keeps its diagonal order. Otherwise
    lambda_1 = (tr A + s)/2 with s the square root of the discriminant whose
    numerator has positive leading coefficient.

    Args:
        A: Advection matrix

    Returns:
        (lambda1, lambda2, leftvec1, leftvec2)

    Raises:
        NotHyperbolicError: If the eigenvalues coincide
        IrrationalSpeedsError: If the discriminant is not a square
    """
    (a11, a12), (a21, a22) = matrix(*A[0], *A[1])
    if a12.is_zero() or a21.is_zero():
        lam1, lam2 = a11, a22
        if lam1 == lam2:
            raise NotHyperbolicError(operation="eigendata")
    else:
        trace = a11 + a22
        disc = (a11 - a22) ** 2 + 4 * a12 * a21
        if disc.is_zero():
            raise NotHyperbolicError(operation="eigendata")
        root = ratfun_sqrt(disc)
        if root is None:
            raise IrrationalSpeedsError(operation="eigendata")
        lam1 = (trace + root) * Fraction(1, 2)
        lam2 = (trace - root) * Fraction(1, 2)

    l1 = left_eigenvector(((a11, a12), (a21, a22)), lam1)
    l2 = left_eigenvector(((a11, a12), (a21, a22)), lam2)
    logger.debug(f"eigendata: lambda1={lam1}, lambda2={lam2}")
    return lam1, lam2, l1, l2


def left_eigenvector(A: Matrix2, lam: RationalFunction) -> Vector2:
    """Left eigenvector for lam with the first nonzero entry scaled to 1."""
    (a11, a12), (a21, a22) = A
    vec = (a21, lam - a11)
    if vec[0].is_zero() and vec[1].is_zero():
        vec = (lam - a22, a12)
    pivot = vec[0] if not vec[0].is_zero() else vec[1]
    return (vec[0] / pivot, vec[1] / pivot)


def commutator_coeffs(lambda1: RationalFunction, lambda2: RationalFunction,
                      mu1: Union[int, Fraction] = 1,
                      mu2: Union[int, Fraction] = 1) -> Tuple[RationalFunction, RationalFunction]:
    """Coefficients of [X1, X2] = P X1 + Q X2 for x-only speeds.

    P = mu2 (lambda2 lambda1' - lambda1 lambda2') / (mu2 lambda1 - mu1 lambda2),
    Q = -(mu1/mu2) P. For mu1 = mu2 = 1 this is Q = -P.

    Raises:
        NotHyperbolicError: If the operators are proportional
    """
    mu1, mu2 = Fraction(mu1), Fraction(mu2)
    denominator = lambda1 * mu2 - lambda2 * mu1
    if denominator.is_zero():
        raise NotHyperbolicError(operation="commutator_coeffs")
    P = (lambda2 * lambda1.diff() - lambda1 * lambda2.diff()) * mu2 / denominator
    Q = -(P * (mu1 / mu2))
    return P, Q


def _mat_vec_left(row: Vector2, M: Matrix2) -> Vector2:
    return (row[0] * M[0][0] + row[1] * M[1][0],
            row[0] * M[0][1] + row[1] * M[1][1])


def _mat_mul(M: Matrix2, N: Matrix2) -> Matrix2:
    return (_mat_vec_left(M[0], N), _mat_vec_left(M[1], N))


def _mat_inverse(M: Matrix2) -> Matrix2:
    (a, b), (c, d) = M
    det = a * d - b * c
    if det.is_zero():
        raise ZeroDivisorError(operation="matrix inverse")
    return ((d / det, -b / det), (-c / det, a / det))


def to_characteristic(sys: FirstOrderSystem2) -> CharacteristicSystem:
    """Rewrite a system in characteristic form.

    Row i of alpha is (l_i B + X_i l_i) L^-1, where L stacks the left
    eigenvectors and X_i acts entrywise on l_i.

    Raises:
        NotHyperbolicError, IrrationalSpeedsError: From eigendata
    """
    lam1, lam2, l1, l2 = eigendata(sys.A)
    L_inv = _mat_inverse((l1, l2))

    rows = []
    for lam, vec in ((lam1, l1), (lam2, l2)):
        lb = _mat_vec_left(vec, sys.B)
        row = (lb[0] + directional(lam, vec[0]), lb[1] + directional(lam, vec[1]))
        rows.append(_mat_vec_left(row, L_inv))

    P, Q = commutator_coeffs(lam1, lam2)
    cs = CharacteristicSystem(
        lambda1=lam1, lambda2=lam2, alpha=(rows[0], rows[1]),
        P=P, Q=Q, leftvec1=l1, leftvec2=l2)
    logger.debug(f"characteristic form: alpha={[[str(a) for a in r] for r in cs.alpha]}")
    return cs


def reconstruct(cs: CharacteristicSystem) -> FirstOrderSystem2:
    """Invert to_characteristic: A = L^-1 diag(lambda) L, B = L^-1 (alpha L - D).

    D row i is X_i l_i. Requires the eigenvector rows and unit time coefficients.

    Raises:
        ValidationError: If the system carries no eigenvector rows
    """
    if cs.leftvec1 is None or cs.leftvec2 is None:
        raise ValidationError("system has no eigenvector rows to reconstruct from",
                              operation="reconstruct")
    if cs.mu1 != 1 or cs.mu2 != 1:
        raise ValidationError("reconstruct needs unit time coefficients",
                              operation="reconstruct")
    L = (cs.leftvec1, cs.leftvec2)
    L_inv = _mat_inverse(L)
    lam_L = ((cs.lambda1 * L[0][0], cs.lambda1 * L[0][1]),
             (cs.lambda2 * L[1][0], cs.lambda2 * L[1][1]))
    A = _mat_mul(L_inv, lam_L)

    alpha_L = _mat_mul(cs.alpha, L)
    D = ((directional(cs.lambda1, L[0][0]), directional(cs.lambda1, L[0][1])),
         (directional(cs.lambda2, L[1][0]), directional(cs.lambda2, L[1][1])))
    diff = tuple(tuple(alpha_L[i][k] - D[i][k] for k in range(2)) for i in range(2))
    B = _mat_mul(L_inv, diff)
    return FirstOrderSystem2(A=A, B=B)


def master_system(p: Union[UPoly, RationalFunction], q: Union[UPoly, RationalFunction],
                  nu: Union[int, Fraction]) -> FirstOrderSystem2:
    """Master equations for dx/dt = p(x) + alpha(t) q(x) with telegraph noise.

    For v = (W, W1):
        W_t  = -(p W)_x - (q W1)_x
        W1_t = -2 nu W1 - (p W1)_x - (q W)_x
    """
    p, q = _rf(p), _rf(q)
    nu = Rat(nu)
    dp, dq = p.diff(), q.diff()
    A = matrix(-p, -q, -q, -p)
    B = matrix(-dp, -dq, -dq, -(dp + 2 * nu))
    return FirstOrderSystem2(A=A, B=B)


def verhulst_polynomials(p1: Union[int, Fraction], p2: Union[int, Fraction],
                         q2: Union[int, Fraction]) -> Tuple[UPoly, UPoly]:
    """p(x) = p1 x + p2 x^2 and q(x) = q2 x^2."""
    return UPoly((0, p1, p2)), UPoly((0, 0, q2))


def is_divergence_row(sys: FirstOrderSystem2, row: int = 0) -> bool:
    """True if row `row` of the system is an exact x-divergence (B row = A row')."""
    return all(sys.B[row][k] == sys.A[row][k].diff() for k in range(2))


def system_to_dict(cs: CharacteristicSystem) -> Dict[str, object]:
    """JSON-ready view with rational functions as canonical strings."""
    out = {
        "lambda1": format_ratfun(cs.lambda1),
        "lambda2": format_ratfun(cs.lambda2),
        "alpha": [[format_ratfun(a) for a in row] for row in cs.alpha],
        "P": format_ratfun(cs.P),
        "Q": format_ratfun(cs.Q),
        "mu": [format_rat(cs.mu1), format_rat(cs.mu2)],
    }
    if cs.leftvec1 is not None and cs.leftvec2 is not None:
        out["leftvecs"] = [[format_ratfun(a) for a in cs.leftvec1],
                           [format_ratfun(a) for a in cs.leftvec2]]
    return out
