"""Tests for the Excel cascade report."""

import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from openpyxl import load_workbook

from src.reporting.excel import ExcelReportGenerator
from src.verhulst.params import UserParams


class TestExcelReport(unittest.TestCase):
    """Test workbook layout and the values written to it."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.path = Path(self.tmp.name) / "report.xlsx"

    def tearDown(self):
        self.tmp.cleanup()

    def _workbook(self, **kwargs):
        user = UserParams(1, -2, Fraction(1, 2), kwargs.pop('nu', 1))
        ExcelReportGenerator(user, **kwargs).generate(str(self.path))
        return load_workbook(self.path)

    def test_sheets(self):
        wb = self._workbook()
        self.assertEqual(wb.sheetnames, ["Summary", "Chain", "Delta Solution", "Stationary"])

    def test_summary_invariants(self):
        ws = self._workbook()["Summary"]
        values = {ws.cell(row=r, column=1).value: ws.cell(row=r, column=2).value
                  for r in range(1, ws.max_row + 1)}
        self.assertEqual(values["k"], "1")
        self.assertEqual(values["h"], "0")
        self.assertEqual(values["Closed form available:"], "yes (h = 0)")

    def test_chain_rows(self):
        ws = self._workbook(chain_multiples=3, max_steps=6)["Chain"]
        self.assertEqual(ws.max_row, 1 + 2 * 3)
        # nu = 3 p1, forward direction
        row = [ws.cell(row=6, column=c).value for c in range(1, 8)]
        self.assertEqual(row, ["3", "forward", "terminated", "9", "8", "5", "0"])

    def test_delta_masses(self):
        ws = self._workbook(taus=(0.0, 1.0))["Delta Solution"]
        self.assertAlmostEqual(ws.cell(row=3, column=6).value, 1.0)
        self.assertAlmostEqual(ws.cell(row=4, column=6).value, 1.0, places=8)
        self.assertAlmostEqual(ws.cell(row=4, column=5).value, 1.0 - 0.36787944117144233,
                               places=9)


if __name__ == '__main__':
    unittest.main()
