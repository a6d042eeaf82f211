# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Error taxonomy for the cascade toolkit.

Errors fall into two families that map onto CLI exit codes:
- Validation (exit 2) - bad parameters, inputs outside an operation's domain
- Numerical (exit 3) - degree overflow, quadrature failure, blow-up
"""

import logging
from typing import Optional

logger = logging.getLogger(__name__)

EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


class CascadeError(Exception):
    """Base exception for all toolkit errors."""

    def __init__(self, message: str, operation: Optional[str] = None,
                 original_error: Optional[Exception] = None):
        """Initialize error.

        Args:
            message: Error message
            operation: Operation that failed
            original_error: Original exception if wrapped
        """
        super().__init__(message)
        self.message = message
        self.operation = operation
        self.original_error = original_error

    def exit_code(self) -> int:
        """Get the process exit code for this error.

        Returns:
            2 for validation failures, 3 for numerical failures
        """
        return EXIT_VALIDATION


# --- validation family ---------------------------------------------------

class ValidationError(CascadeError):
    """Invalid user input or parameter set."""


class ParameterDomainError(ValidationError):
    """Parameters violate p1 > 0, p2 < 0, |p2| > q2 > 0, nu > 0."""

    def __init__(self, detail: str, **kwargs):
        super().__init__(f"Invalid parameter domain: {detail}", **kwargs)
        self.detail = detail


class ZeroDivisorError(ValidationError):
    """Division by the zero rational function."""

    def __init__(self, **kwargs):
        super().__init__("zero divisor", **kwargs)


class NotHyperbolicError(ValidationError):
    """Advection matrix has a repeated eigenvalue."""

    def __init__(self, **kwargs):
        super().__init__("not strictly hyperbolic", **kwargs)


class IrrationalSpeedsError(ValidationError):
    """Discriminant of the advection matrix is not a square."""

    def __init__(self, **kwargs):
        super().__init__("irrational characteristic speeds", **kwargs)


class TransformUndefinedError(ValidationError):
    """Laplace transform or invariant undefined because a coupling vanishes."""

    def __init__(self, coefficient: str, **kwargs):
        message = f"transform undefined: {coefficient} = 0"
        if coefficient == "alpha12":
            message = ("h undefined; system already triangular in this direction "
                       f"(transform undefined: {coefficient} = 0)")
        super().__init__(message, **kwargs)
        self.coefficient = coefficient


class CharacteristicDomainError(ValidationError):
    """Characteristic variable requested outside its domain."""

    def __init__(self, x: float, **kwargs):
        super().__init__(
            f"characteristic variable undefined at x={x}; use backward_map", **kwargs)
        self.x = x


class IncompatibleInputError(ValidationError):
    """Dini input v violates the compatibility condition X2 X1 v = 0."""

    def __init__(self, **kwargs):
        super().__init__("incompatible v", **kwargs)


class CflViolationError(ValidationError):
    """Time step breaks the CFL restriction."""

    def __init__(self, courant: float, limit: float, **kwargs):
        super().__init__(
            f"CFL violation: courant number {courant:.4g} exceeds {limit:.4g}", **kwargs)
        self.courant = courant
        self.limit = limit


# --- numerical family ----------------------------------------------------

class NumericalError(CascadeError):
    """Base class for numerical failures."""

    def exit_code(self) -> int:
        return EXIT_NUMERICAL


class DegreeOverflowError(NumericalError):
    """Polynomial degree exceeded the configured cap."""

    def __init__(self, degree: int, cap: int, **kwargs):
        super().__init__(f"degree {degree} exceeds cap {cap}", **kwargs)
        self.degree = degree
        self.cap = cap


class QuadratureError(NumericalError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, achieved: float, requested: float, **kwargs):
        super().__init__(
            f"quadrature failed: error estimate {achieved:.3g} above tolerance {requested:.3g}",
            **kwargs)
        self.achieved = achieved
        self.requested = requested


class BlowUpError(NumericalError):
    """Logistic flow crossed its pole inside a segment."""

    def __init__(self, x0: float = None, c: float = None, dt: float = None, **kwargs):
        super().__init__("blow-up in segment", **kwargs)
        self.x0 = x0
        self.c = c
        self.dt = dt


class SimulationError(NumericalError):
    """Monte-Carlo run failed as a whole."""


def classify_error(error: Exception, operation: Optional[str] = None) -> CascadeError:
    """Classify an arbitrary exception into the toolkit taxonomy.

    Args:
        error: Exception to classify
        operation: Operation that failed

    Returns:
        CascadeError subclass (the error itself if already classified)
    """
    if isinstance(error, CascadeError):
        if error.operation is None:
            error.operation = operation
        return error

    if isinstance(error, (ArithmeticError, FloatingPointError, OverflowError)):
        return NumericalError(str(error) or type(error).__name__,
                              operation=operation, original_error=error)

    if isinstance(error, (ValueError, TypeError, KeyError, OSError)):
        return ValidationError(str(error) or type(error).__name__,
                               operation=operation, original_error=error)

    error_str = str(error).lower()
    if any(keyword in error_str for keyword in ['overflow', 'nan', 'diverge', 'singular']):
        return NumericalError(str(error), operation=operation, original_error=error)

    return ValidationError(str(error), operation=operation, original_error=error)
