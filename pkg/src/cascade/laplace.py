# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Laplace invariants and the Laplace cascade for characteristic systems.

Eliminating u2 from X1 u1 = a11 u1 + a12 u2, X2 u2 = a21 u1 + a22 u2 gives a
second-order operator that factors as (X1 + b2)(X2 + b1) - h with

    b1 = -P - X2 ln a12 - a22,    b2 = -Q - a11.

h and k = a12 a21 are the Laplace invariants. The X1-transform takes
w = (X2 + b1) u1 and u1 as the new unknowns, which yields a system of the same
shape whose k equals the old h.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Union

from ..algebra.rational import RationalFunction, Rat, format_ratfun
from ..errors import (
    TransformUndefinedError, DegreeOverflowError, ValidationError, ZeroDivisorError,
)
from .charform import CharacteristicSystem, commutator_coeffs, matrix

logger = logging.getLogger(__name__)

STATUS_TERMINATED = "terminated"
STATUS_CAP = "cap"
STATUS_TRUNCATED = "truncated"

DEFAULT_MAX_STEPS = 16


@dataclass(frozen=True)
class InvariantPair:
    """Laplace invariants; h is None when a12 = 0 leaves it undefined."""

    h: Optional[RationalFunction]
    k: RationalFunction

    @property
    def h_defined(self) -> bool:
        return self.h is not None

    def to_dict(self) -> dict:
        return {
            "h": format_ratfun(self.h) if self.h is not None else None,
            "k": format_ratfun(self.k),
        }


@dataclass
class InvariantChain:
    """Invariants of the systems reached by repeated X1- and X2-transforms.

    forward holds k of the 1, 2, ... times X1-transformed systems, backward
    the same for X2. A direction is terminated when its last entry is 0 or
    the next transform is undefined.
    """

    center: InvariantPair
    forward: List[RationalFunction] = field(default_factory=list)
    backward: List[RationalFunction] = field(default_factory=list)
    terminated_forward: bool = False
    terminated_backward: bool = False
    status_forward: str = STATUS_CAP
    status_backward: str = STATUS_CAP

    @property
    def terminated(self) -> bool:
        return self.terminated_forward or self.terminated_backward

    def to_dict(self) -> dict:
        """JSON view; both lists start from the center k."""
        center_k = format_ratfun(self.center.k)
        return {
            "h": format_ratfun(self.center.h) if self.center.h is not None else None,
            "k": center_k,
            "forward": [center_k] + [format_ratfun(e) for e in self.forward],
            "backward": [center_k] + [format_ratfun(e) for e in self.backward],
            "terminated": self.terminated,
            "terminated_forward": self.terminated_forward,
            "terminated_backward": self.terminated_backward,
            "status_forward": self.status_forward,
            "status_backward": self.status_backward,
        }


def k_invariant(cs: CharacteristicSystem) -> RationalFunction:
    """k = a12 a21; always defined."""
    return cs.a12 * cs.a21


def h_invariant(cs: CharacteristicSystem) -> RationalFunction:
    """h = X2(a11) - X1(a22) - X1 X2 ln a12 - X1(P) + P a11 + a12 a21 + (a22 + X2 ln a12 + P) Q.

    Raises:
        TransformUndefinedError: If a12 = 0
    """
    if cs.a12.is_zero():
        raise TransformUndefinedError("alpha12", operation="invariants")
    x2_ln_a12 = -(cs.lambda2 * cs.a12.log_deriv())
    x1_x2_ln_a12 = cs.X1(x2_ln_a12)
    return (cs.X2(cs.a11) - cs.X1(cs.a22) - x1_x2_ln_a12 - cs.X1(cs.P)
            + cs.P * cs.a11 + cs.a12 * cs.a21
            + (cs.a22 + x2_ln_a12 + cs.P) * cs.Q)


def invariants(cs: CharacteristicSystem, strict: bool = True) -> InvariantPair:
    """Laplace invariants (h, k) of a characteristic system.

    Args:
        cs: Characteristic system
        strict: If False, a12 = 0 gives h = None instead of raising

    Returns:
        InvariantPair

    Raises:
        TransformUndefinedError: If a12 = 0 and strict
    """
    k = k_invariant(cs)
    if cs.a12.is_zero() and not strict:
        return InvariantPair(h=None, k=k)
    return InvariantPair(h=h_invariant(cs), k=k)


def x1_transform(cs: CharacteristicSystem) -> CharacteristicSystem:
    """Laplace X1-transform.

    The new unknowns are (X2 + b1) u1, carried by X1, and u1, carried by X2,
    so the speeds stay in place and the new k is the old h.

    Raises:
        TransformUndefinedError: If a12 = 0
    """
    if cs.a12.is_zero():
        raise TransformUndefinedError("alpha12", operation="x1_transform")
    h = h_invariant(cs)
    x2_ln_a12 = -(cs.lambda2 * cs.a12.log_deriv())
    alpha = matrix(cs.a11 + cs.Q, h,
                   1, cs.a22 + cs.P + x2_ln_a12)
    return cs.with_alpha(alpha)


def swap(cs: CharacteristicSystem) -> CharacteristicSystem:
    """Exchange the roles of the two characteristic families.

    [X2, X1] = -Q X2 - P X1, so the swapped commutator coefficients are (-Q, -P).
    """
    return CharacteristicSystem(
        lambda1=cs.lambda2, lambda2=cs.lambda1,
        alpha=matrix(cs.a22, cs.a21, cs.a12, cs.a11),
        P=-cs.Q, Q=-cs.P,
        leftvec1=cs.leftvec2, leftvec2=cs.leftvec1,
        mu1=cs.mu2, mu2=cs.mu1)


def x2_transform(cs: CharacteristicSystem) -> CharacteristicSystem:
    """Laplace X2-transform, the reverse of x1_transform.

    Computed as swap . x1_transform . swap, giving
    alpha' = [[a11 - Q + X1 ln a21, 1], [h~, a22 - P]].

    Raises:
        TransformUndefinedError: If a21 = 0
    """
    if cs.a21.is_zero():
        raise TransformUndefinedError("alpha21", operation="x2_transform")
    return swap(x1_transform(swap(cs)))


def is_triangular(cs: CharacteristicSystem) -> bool:
    """True iff a12 = 0 or a21 = 0."""
    return cs.a12.is_zero() or cs.a21.is_zero()


def _walk(cs: CharacteristicSystem, step, coupling: str, max_steps: int):
    entries: List[RationalFunction] = []
    current = cs
    for n in range(max_steps):
        coeff = current.a12 if coupling == "alpha12" else current.a21
        if coeff.is_zero():
            return entries, True, STATUS_TERMINATED
        try:
            current = step(current)
        except DegreeOverflowError as e:
            logger.warning(f"Chain truncated after {n} steps: {e}")
            return entries, False, STATUS_TRUNCATED
        entry = k_invariant(current)
        entries.append(entry)
        logger.debug(f"chain step {n + 1}: k = {format_ratfun(entry)}")
        if entry.is_zero():
            return entries, True, STATUS_TERMINATED
    return entries, False, STATUS_CAP


def build_chain(cs: CharacteristicSystem, max_steps: int = DEFAULT_MAX_STEPS) -> InvariantChain:
    """Collect the forward and backward invariant chains.

    Args:
        cs: Starting system
        max_steps: Cap on transforms per direction

    Returns:
        InvariantChain with termination flags and per-direction status
    """
    if max_steps < 0:
        raise ValidationError(f"max_steps must be >= 0, got {max_steps}", operation="build_chain")

    center = invariants(cs, strict=False)
    forward, term_f, status_f = _walk(cs, x1_transform, "alpha12", max_steps)
    backward, term_b, status_b = _walk(cs, x2_transform, "alpha21", max_steps)

    chain = InvariantChain(
        center=center, forward=forward, backward=backward,
        terminated_forward=term_f, terminated_backward=term_b,
        status_forward=status_f, status_backward=status_b)
    logger.info(f"Built invariant chain: {len(forward)} forward, {len(backward)} backward steps "
                f"({status_f}/{status_b})")
    return chain


def gauge(cs: CharacteristicSystem, g1: Union[RationalFunction, int, Fraction],
          g2: Union[RationalFunction, int, Fraction]) -> CharacteristicSystem:
    """Gauge transform u_i = g_i u~_i.

    a'_ii = a_ii + lambda_i g_i'/g_i and a'_ik = a_ik g_k/g_i for i != k.

    Raises:
        ZeroDivisorError: If g1 or g2 is zero
    """
    g1 = g1 if isinstance(g1, RationalFunction) else RationalFunction(g1)
    g2 = g2 if isinstance(g2, RationalFunction) else RationalFunction(g2)
    if g1.is_zero() or g2.is_zero():
        raise ZeroDivisorError(operation="gauge")
    alpha = matrix(cs.a11 + cs.lambda1 * g1.log_deriv(), cs.a12 * g2 / g1,
                   cs.a21 * g1 / g2, cs.a22 + cs.lambda2 * g2.log_deriv())
    return cs.with_alpha(alpha)


def rescale(cs: CharacteristicSystem, gamma1: Union[int, Fraction],
            gamma2: Union[int, Fraction]) -> CharacteristicSystem:
    """Constant rescaling X_i -> gamma_i X_i.

    Row i of alpha and the operator coefficients mu_i, lambda_i scale by
    gamma_i; the invariants pick up the factor gamma1 gamma2.

    Raises:
        ZeroDivisorError: If a factor is zero
    """
    gamma1, gamma2 = Rat(gamma1), Rat(gamma2)
    if gamma1 == 0 or gamma2 == 0:
        raise ZeroDivisorError(operation="rescale")
    lam1, lam2 = cs.lambda1 * gamma1, cs.lambda2 * gamma2
    mu1, mu2 = cs.mu1 * gamma1, cs.mu2 * gamma2
    P, Q = commutator_coeffs(lam1, lam2, mu1, mu2)
    alpha = matrix(cs.a11 * gamma1, cs.a12 * gamma1,
                   cs.a21 * gamma2, cs.a22 * gamma2)
    return CharacteristicSystem(lambda1=lam1, lambda2=lam2, alpha=alpha, P=P, Q=Q,
                                mu1=mu1, mu2=mu2)


def explicit_h(p: RationalFunction, q: RationalFunction,
               nu: Union[int, Fraction]) -> RationalFunction:
    """Closed form of h for the master system of dx/dt = p + alpha q.

    h = nu^2 - [p'' q^2 (p+q) + p'^2 q^2 - p' q' q (3p+q) - q'' p q (p+q)
                + q'^2 p (2p+q)] / q^2
    """
    p = p if isinstance(p, RationalFunction) else RationalFunction(p)
    q = q if isinstance(q, RationalFunction) else RationalFunction(q)
    nu = Rat(nu)
    dp, dq = p.diff(), q.diff()
    ddp, ddq = dp.diff(), dq.diff()
    bracket = (ddp * q * q * (p + q) + dp * dp * q * q - dp * dq * q * (3 * p + q)
               - ddq * p * q * (p + q) + dq * dq * p * (2 * p + q))
    return nu * nu - bracket / (q * q)


def verhulst_chain_value(nu: Union[int, Fraction], p1: Union[int, Fraction], m: int) -> Fraction:
    """Forward chain entry m (0-based) for p = p1 x + p2 x^2, q = q2 x^2: nu^2 - (m+1)^2 p1^2."""
    nu, p1 = Rat(nu), Rat(p1)
    return nu * nu - (m + 1) ** 2 * p1 * p1
