"""Tests for CSV and JSON output."""

import json
import tempfile
import unittest
from pathlib import Path

import numpy as np

from src.reporting.writers import csv_text, format_float, json_text, write_text


class TestWriters(unittest.TestCase):
    """Test number formatting and deterministic text output."""

    def test_format_float(self):
        self.assertEqual(format_float(1.0 / 3.0, 4), "0.3333")
        self.assertEqual(format_float(np.float64(2.5)), "2.5")
        self.assertEqual(format_float(np.int64(7)), "7")
        self.assertEqual(format_float(True), "1")
        self.assertEqual(format_float(float("nan")), "nan")
        self.assertEqual(format_float(float("-inf")), "-inf")
        self.assertEqual(format_float("x"), "x")

    def test_csv(self):
        text = csv_text(["x", "W"], [(0.1, 2.0), (0.2, np.float64(1.0) / 3.0)], digits=3)
        self.assertEqual(text, "x,W\n0.1,2\n0.2,0.333\n")

    def test_json(self):
        text = json_text({"b": np.array([1.0, 2.0]), "a": (np.int64(1), float("inf"))}, digits=3)
        self.assertEqual(json.loads(text), {"a": [1, None], "b": [1.0, 2.0]})
        self.assertTrue(text.index('"a"') < text.index('"b"'))
        self.assertTrue(text.endswith("\n"))

    def test_json_rounding(self):
        self.assertEqual(json.loads(json_text({"v": 1.0 / 3.0}, digits=4))["v"], 0.3333)

    def test_write_text(self):
        self.assertIsNone(write_text("x", None))
        with tempfile.TemporaryDirectory() as tmp:
            target = Path(tmp) / "nested" / "out.csv"
            self.assertEqual(write_text("a,b\n", str(target)), str(target))
            self.assertEqual(target.read_text(), "a,b\n")


if __name__ == '__main__':
    unittest.main()
