"""CSV helpers shared by telemetry, reports and synthetic sequences."""

import csv
import io
from pathlib import Path
from typing import Iterable, List, Sequence, Union

from .errors import DataError
from .fileops import read_text, safe_write


def format_value(value: Union[float, int]) -> str:
    """Shortest text that parses back to the same number."""
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def write_csv(path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[object]]) -> Path:
    """
    Write a header and rows as CSV with ``\\n`` line endings.

    Raises
    ------
    FileOperationError
        If the file cannot be written
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return safe_write(path, buffer.getvalue())


def read_csv(path: Union[str, Path], header: Sequence[str]) -> List[List[str]]:
    """
    Read a CSV written by ``write_csv`` and return its data rows.

    Raises
    ------
    DataError
        If the header differs from the expected one
    """
    rows = list(csv.reader(io.StringIO(read_text(path))))
    if not rows or rows[0] != list(header):
        raise DataError(f"Unexpected CSV header in {path}")
    return rows[1:]
