"""Tests for the error taxonomy and exit-code classification.

Verifies that library failures map onto the validation (2) and numerical (3)
exit codes used by the CLI.
"""

import unittest
from src.errors import (
    BlowUpError, CascadeError, CflViolationError, DegreeOverflowError, NumericalError,
    ParameterDomainError, QuadratureError, SimulationError, TransformUndefinedError,
    ValidationError, classify_error,
)


class TestExitCodes(unittest.TestCase):
    """Test exit codes of the two error families."""

    def test_validation_family(self):
        """Test that input errors exit with 2."""
        for error in (ValidationError("bad"), ParameterDomainError("p2 must be negative"),
                      TransformUndefinedError("alpha21"), CflViolationError(2.0, 0.5)):
            self.assertIsInstance(error, ValidationError)
            self.assertEqual(error.exit_code(), 2)

    def test_numerical_family(self):
        """Test that numerical failures exit with 3."""
        for error in (DegreeOverflowError(600, 512), QuadratureError(1e-3, 1e-10),
                      BlowUpError(x0=1.0, c=1.0, dt=1.0), SimulationError("3 non-finite samples")):
            self.assertIsInstance(error, NumericalError)
            self.assertEqual(error.exit_code(), 3)

    def test_messages(self):
        """Test that messages carry the offending values."""
        self.assertIn("p2 must be negative", str(ParameterDomainError("p2 must be negative")))
        self.assertIn("600", str(DegreeOverflowError(600, 512)))
        self.assertIn("triangular", str(TransformUndefinedError("alpha12")))
        self.assertEqual(TransformUndefinedError("alpha21").coefficient, "alpha21")


class TestClassification(unittest.TestCase):
    """Test classification of foreign exceptions."""

    def test_keeps_classified_errors(self):
        """Test that toolkit errors pass through and gain an operation."""
        error = BlowUpError()
        classified = classify_error(error, operation="mc")
        self.assertIs(classified, error)
        self.assertEqual(classified.operation, "mc")

    def test_existing_operation_kept(self):
        """Test that an operation set at raise time is not overwritten."""
        error = ValidationError("bad", operation="exact")
        self.assertEqual(classify_error(error, operation="cli").operation, "exact")

    def test_arithmetic_is_numerical(self):
        """Test classification of arithmetic failures."""
        classified = classify_error(ZeroDivisionError("division by zero"), operation="pde")
        self.assertIsInstance(classified, NumericalError)
        self.assertIsInstance(classified.original_error, ZeroDivisionError)

    def test_value_error_is_validation(self):
        """Test classification of bad values."""
        classified = classify_error(ValueError("not a number"))
        self.assertIsInstance(classified, ValidationError)
        self.assertEqual(classified.exit_code(), 2)

    def test_keyword_classification(self):
        """Test classification by message keywords."""
        self.assertIsInstance(classify_error(RuntimeError("matrix is singular")), NumericalError)
        unknown = classify_error(RuntimeError("something else"))
        self.assertIsInstance(unknown, CascadeError)
        self.assertEqual(unknown.exit_code(), 2)


if __name__ == '__main__':
    unittest.main()
