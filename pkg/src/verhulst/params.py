# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Verhulst model parameters in user scale and in dimensionless form.

User scale: dx/dt = p1 x + p2 x^2 + alpha(t) q2 x^2 with telegraph noise of
switching frequency 2 nu. With tau = p1 t the drift becomes
x + (p2/p1) x^2 + alpha (q2/p1) x^2 and flips happen at rate nu/p1.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Tuple, Union

from ..algebra.rational import format_rat
from ..errors import ParameterDomainError

logger = logging.getLogger(__name__)

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class VerhulstParams:
    """Dimensionless parameters (p1 = 1, flip rate 1 at nu = p1)."""

    p2: float
    q2: float
    strict: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "p2", float(self.p2))
        object.__setattr__(self, "q2", float(self.q2))
        # strict=False admits degenerate limits such as q2 = 0 in tests
        if self.strict:
            validate_domain(self.p2, self.q2)

    @property
    def c_plus(self) -> float:
        """Quadratic coefficient of the alpha = +1 branch."""
        return self.p2 + self.q2

    @property
    def c_minus(self) -> float:
        """Quadratic coefficient of the alpha = -1 branch."""
        return self.p2 - self.q2

    @property
    def char_domain_upper(self) -> float:
        """Upper end of the domain where both characteristic variables exist."""
        return 1.0 / (abs(self.p2) + self.q2)

    @property
    def stationary_interval(self) -> Tuple[float, float]:
        """(1/|p2 - q2|, 1/|p2 + q2|), the equilibria of the two branches."""
        return 1.0 / abs(self.c_minus), 1.0 / abs(self.c_plus)

    @property
    def outer_equilibrium(self) -> float:
        """1/(|p2| - q2); points above it are not reachable from below."""
        return 1.0 / (abs(self.p2) - self.q2)

    def to_dict(self) -> Dict[str, float]:
        return {"p2": self.p2, "q2": self.q2}


def validate_domain(p2: Number, q2: Number) -> None:
    """Check p2 < 0 and |p2| > q2 > 0.

    Raises:
        ParameterDomainError: If the constraints fail
    """
    if not p2 < 0:
        raise ParameterDomainError(f"p2 must be negative, got {p2}")
    if not q2 > 0:
        raise ParameterDomainError(f"q2 must be positive, got {q2}")
    if not abs(p2) > q2:
        raise ParameterDomainError(f"need |p2| > q2, got p2={p2}, q2={q2}")


@dataclass(frozen=True)
class UserParams:
    """Exact user-scale parameters as typed on the command line."""

    p1: Fraction
    p2: Fraction
    q2: Fraction
    nu: Fraction

    def __post_init__(self):
        for name in ('p1', 'p2', 'q2', 'nu'):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not self.p1 > 0:
            raise ParameterDomainError(f"p1 must be positive, got {format_rat(self.p1)}")
        if not self.nu > 0:
            raise ParameterDomainError(f"nu must be positive, got {format_rat(self.nu)}")
        validate_domain(self.p2, self.q2)

    @property
    def nu_ratio(self) -> Fraction:
        """nu/p1, the flip rate in dimensionless time."""
        return self.nu / self.p1

    def dimensionless(self) -> VerhulstParams:
        """Divide the quadratic coefficients by p1."""
        params = VerhulstParams(p2=float(self.p2 / self.p1), q2=float(self.q2 / self.p1))
        logger.debug(f"Dimensionless parameters: p2={params.p2}, q2={params.q2}, "
                     f"nu_ratio={format_rat(self.nu_ratio)}")
        return params

    def to_dict(self) -> Dict[str, str]:
        return {name: format_rat(getattr(self, name)) for name in ('p1', 'p2', 'q2', 'nu')}
