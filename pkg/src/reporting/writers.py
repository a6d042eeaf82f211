# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""CSV and JSON output.

CSV: header row, '.' decimal separator, '\\n' line ends, floats with a fixed
number of significant digits. JSON: sorted keys, 2-space indent. Identical
inputs give byte-identical text.
"""

import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import numpy as np

logger = logging.getLogger(__name__)

DEFAULT_DIGITS = 12


def format_float(value: Any, digits: int = DEFAULT_DIGITS) -> str:
    """Numbers with `digits` significant digits; other values via str()."""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.{digits}g}"
    return str(value)


def _plain(value: Any, digits: int) -> Any:
    """Make numpy values and tuples JSON-serialisable, rounding floats."""
    if isinstance(value, dict):
        return {str(k): _plain(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v, digits) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return None
        return float(f"{value:.{digits}g}")
    return value


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]],
             digits: int = DEFAULT_DIGITS) -> str:
    """Render rows as CSV text with a header line."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v, digits) for v in row])
    return buffer.getvalue()


def json_text(payload: Any, digits: int = DEFAULT_DIGITS) -> str:
    return json.dumps(_plain(payload, digits), indent=2, sort_keys=True) + "\n"


def write_text(text: str, output_path: Optional[str]) -> Optional[str]:
    """Write text to a file, creating parent directories.

    Returns:
        The path written, or None if output_path is None
    """
    if output_path is None:
        return None
    output_file = Path(output_path)
    output_file.parent.mkdir(parents=True, exist_ok=True)
    with open(output_file, 'w', newline='') as f:
        f.write(text)
    logger.info(f"Output written to {output_path}")
    return str(output_file)
