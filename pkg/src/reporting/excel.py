# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Excel report tying the Laplace cascade to the closed-form solution.

Generates a workbook with:
- Summary sheet with parameters and the invariants h, k
- Invariant chains for nu = m p1
- Atom positions and masses of the point-mass solution over time
- The stationary density on its support
"""

import logging
from datetime import datetime
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from openpyxl import Workbook
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side

from ..algebra.rational import format_rat, format_ratfun
from ..cascade.charform import master_system, to_characteristic, verhulst_polynomials
from ..cascade.laplace import build_chain, invariants
from ..verhulst.distribution import total_mass
from ..verhulst.exact import solve_delta, stationary
from ..verhulst.params import UserParams

logger = logging.getLogger(__name__)

DEFAULT_TAUS = (0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0)


class ExcelReportGenerator:
    """Generates the cascade / closed-form workbook."""

    def __init__(self, user: UserParams, chain_multiples: int = 4, max_steps: int = 16,
                 x_star: Optional[float] = None, taus: Sequence[float] = DEFAULT_TAUS):
        """Initialize report generator.

        Args:
            user: User-scale parameters
            chain_multiples: Chains are listed for nu = m p1, m = 1..chain_multiples
            max_steps: Chain step cap
            x_star: Point-mass location for the delta sheet (default: midpoint of
                the stationary interval)
            taus: Dimensionless times for the delta sheet
        """
        self.user = user
        self.params = user.dimensionless()
        self.chain_multiples = chain_multiples
        self.max_steps = max_steps
        lower, upper = self.params.stationary_interval
        self.x_star = x_star if x_star is not None else 0.5 * (lower + upper)
        self.taus = tuple(taus)

        # Styling
        self.header_font = Font(bold=True, color="FFFFFF", size=12)
        self.header_fill = PatternFill(start_color="366092", end_color="366092", fill_type="solid")
        self.total_font = Font(bold=True, size=11)
        self.total_fill = PatternFill(start_color="D9E1F2", end_color="D9E1F2", fill_type="solid")
        self.border = Border(
            left=Side(style='thin'),
            right=Side(style='thin'),
            top=Side(style='thin'),
            bottom=Side(style='thin')
        )

    def generate(self, output_path: Optional[str] = None) -> str:
        """Build and save the workbook.

        Args:
            output_path: Optional output file path

        Returns:
            Path to generated Excel file
        """
        logger.info(f"Generating cascade report for {self.user.to_dict()}")

        wb = Workbook()
        if "Sheet" in wb.sheetnames:
            wb.remove(wb["Sheet"])

        self._create_summary_sheet(wb)
        self._create_chain_sheet(wb)
        self._create_delta_sheet(wb)
        self._create_stationary_sheet(wb)

        if output_path is None:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            output_path = f"cascade_report_{timestamp}.xlsx"
        Path(output_path).parent.mkdir(parents=True, exist_ok=True)

        wb.save(output_path)
        logger.info(f"Report saved to {output_path}")
        return str(output_path)

    def _header_row(self, ws, row: int, headers: Sequence[str]) -> None:
        for col_num, header in enumerate(headers, 1):
            cell = ws.cell(row=row, column=col_num, value=header)
            cell.font = self.header_font
            cell.fill = self.header_fill
            cell.alignment = Alignment(horizontal='center')

    def _create_summary_sheet(self, wb: Workbook) -> None:
        """Parameters, invariants and whether the closed form applies."""
        ws = wb.create_sheet("Summary", 0)

        ws['A1'] = "Laplace Cascade Report - Verhulst Master Equations"
        ws['A1'].font = Font(bold=True, size=14)
        ws['A3'] = "Report Generated:"
        ws['B3'] = datetime.now().strftime('%Y-%m-%d %H:%M:%S')

        row = 5
        self._header_row(ws, row, ["Parameter", "Value"])
        row += 1
        for name, value in self.user.to_dict().items():
            ws.cell(row=row, column=1, value=name)
            ws.cell(row=row, column=2, value=value).alignment = Alignment(horizontal='right')
            row += 1

        p, q = verhulst_polynomials(self.user.p1, self.user.p2, self.user.q2)
        cs = to_characteristic(master_system(p, q, self.user.nu))
        pair = invariants(cs, strict=False)
        h_text = format_ratfun(pair.h) if pair.h is not None else "undefined"

        row += 1
        self._header_row(ws, row, ["Invariant", "Value"])
        row += 1
        for label, value in (("k", format_ratfun(pair.k)), ("h", h_text)):
            ws.cell(row=row, column=1, value=label)
            ws.cell(row=row, column=2, value=value).alignment = Alignment(horizontal='right')
            row += 1

        closed = pair.h is not None and pair.h.is_zero()
        ws.cell(row=row, column=1, value="Closed form available:")
        cell = ws.cell(row=row, column=2, value="yes (h = 0)" if closed else "no (h != 0)")
        for col in (1, 2):
            ws.cell(row=row, column=col).font = self.total_font
            ws.cell(row=row, column=col).fill = self.total_fill
        cell.alignment = Alignment(horizontal='right')

        ws.column_dimensions['A'].width = 30
        ws.column_dimensions['B'].width = 40

    def _create_chain_sheet(self, wb: Workbook) -> None:
        """Forward and backward chains for nu = m p1."""
        ws = wb.create_sheet("Chain")
        self._header_row(ws, 1, ["nu", "Direction", "Status", "Invariants (from k)"])

        p, q = verhulst_polynomials(self.user.p1, self.user.p2, self.user.q2)
        row = 2
        for m in range(1, self.chain_multiples + 1):
            nu = m * self.user.p1
            chain = build_chain(to_characteristic(master_system(p, q, nu)), self.max_steps)
            data = chain.to_dict()
            for direction, status in (("forward", chain.status_forward),
                                      ("backward", chain.status_backward)):
                ws.cell(row=row, column=1, value=format_rat(nu))
                ws.cell(row=row, column=2, value=direction)
                ws.cell(row=row, column=3, value=status).alignment = Alignment(horizontal='center')
                for offset, entry in enumerate(data[direction]):
                    ws.cell(row=row, column=4 + offset, value=entry)
                row += 1

        ws.column_dimensions['A'].width = 10
        ws.column_dimensions['B'].width = 12
        ws.column_dimensions['C'].width = 14
        ws.column_dimensions['D'].width = 20

    def _create_delta_sheet(self, wb: Workbook) -> None:
        """Atom positions and masses of the point-mass solution."""
        ws = wb.create_sheet("Delta Solution")
        ws['A1'] = f"Initial point mass at x* = {self.x_star:.6g}"
        ws['A1'].font = self.total_font
        headers = ['tau', 'X- (atom)', 'X+ (atom)', 'Atom mass each', 'Continuous mass', 'Total']
        self._header_row(ws, 2, headers)

        row = 3
        for tau in self.taus:
            dist = solve_delta(self.x_star, tau, self.params)
            locs = [loc for loc, _ in dist.atoms]
            each = dist.atoms[0][1]
            values = [tau, locs[0], locs[-1], each, dist.continuous_mass(), total_mass(dist)]
            for col_num, value in enumerate(values, 1):
                cell = ws.cell(row=row, column=col_num, value=float(value))
                cell.number_format = '0.000000000'
                cell.border = self.border
            row += 1

        for col in 'ABCDEF':
            ws.column_dimensions[col].width = 18

    def _create_stationary_sheet(self, wb: Workbook, points: int = 101) -> None:
        """Stationary density 1/(2 q2 x^2) on its support."""
        ws = wb.create_sheet("Stationary")
        self._header_row(ws, 1, ['x', 'W_inf'])
        dist = stationary(self.params)
        lower, upper = dist.support
        xs = np.linspace(lower, upper, points)
        values = 1.0 / (2.0 * self.params.q2 * xs ** 2)
        for row, (x, w) in enumerate(zip(xs, values), 2):
            ws.cell(row=row, column=1, value=float(x)).number_format = '0.000000'
            ws.cell(row=row, column=2, value=float(w)).number_format = '0.000000'

        ws.column_dimensions['A'].width = 14
        ws.column_dimensions['B'].width = 14


def generate_report(user: UserParams, output_path: Optional[str] = None,
                    chain_multiples: int = 4, max_steps: int = 16) -> str:
    """Convenience function to generate the cascade report.

    Args:
        user: User-scale parameters
        output_path: Optional output path
        chain_multiples: Number of nu = m p1 chains to list
        max_steps: Chain step cap

    Returns:
        Path to generated report
    """
    generator = ExcelReportGenerator(user, chain_multiples=chain_multiples, max_steps=max_steps)
    return generator.generate(output_path)
