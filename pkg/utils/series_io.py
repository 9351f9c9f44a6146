"""
Reading numeric series and tables from delimited text, and parsing grid strings
"""
import csv
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from utils.errors import DataError, DomainError, SizeError

logger = logging.getLogger(__name__)

Column = Union[int, str, None]


@dataclass(frozen=True, eq=False)
class Table:
    """Rows of finite reals; names is None for a headerless file"""
    names: Optional[Tuple[str, ...]]
    rows: np.ndarray
    line_numbers: Tuple[int, ...]

    @property
    def width(self) -> int:
        return self.rows.shape[1]

    def column_index(self, column: Column) -> int:
        if column is None:
            return 0
        if isinstance(column, str) and self.names is not None and column in self.names:
            return self.names.index(column)
        try:
            index = int(column)
        except (TypeError, ValueError):
            raise DataError(f"no column named {column!r}") from None
        if not 0 <= index < self.width:
            raise DataError(f"column index {index} out of range for {self.width} column(s)")
        return index


def _split(line: str, comma: bool) -> List[str]:
    if comma:
        return [cell.strip() for cell in next(csv.reader([line]))]
    return line.split()


def _parse_float(cell: str, line: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise DataError(f"cannot parse {cell!r} as a number", line=line) from None
    if not math.isfinite(value):
        raise DataError(f"value {cell!r} is not finite", line=line)
    return value


def _is_header(cells: Sequence[str]) -> bool:
    for cell in cells:
        try:
            float(cell)
        except ValueError:
            return True
    return False


def load_table(path: str) -> Table:
    """
    Comma or whitespace delimited numbers, delimiter picked from the first
    non-blank line; that line is a header if any cell is not a number.
    Missing files raise OSError; bytes that are not UTF-8 raise DataError.
    """
    with open(path, 'rb') as f:
        content = f.read()
    try:
        lines = content.decode('utf-8').splitlines()
    except UnicodeDecodeError as exc:
        line = content.count(b'\n', 0, exc.start) + 1
        raise DataError(f"not valid UTF-8 at byte {exc.start}", line=line) from exc

    names: Optional[Tuple[str, ...]] = None
    comma: Optional[bool] = None
    width: Optional[int] = None
    rows: List[List[float]] = []
    line_numbers: List[int] = []

    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        if comma is None:
            comma = ',' in line
            cells = _split(line, comma)
            if _is_header(cells):
                names = tuple(cells)
                width = len(cells)
                continue
        else:
            cells = _split(line, comma)

        if width is None:
            width = len(cells)
        if len(cells) != width:
            raise DataError(f"expected {width} field(s), found {len(cells)}", line=number)
        rows.append([_parse_float(cell, number) for cell in cells])
        line_numbers.append(number)

    data = np.array(rows, dtype=float).reshape(len(rows), width or 0)
    logger.debug("loaded %d row(s) x %d column(s) from %s", data.shape[0], data.shape[1], path)
    return Table(names=names, rows=data, line_numbers=tuple(line_numbers))


def load_series(path: str, column: Column = None) -> List[float]:
    """One column of a file as floats in file order"""
    table = load_table(path)
    if table.rows.shape[0] < 2:
        raise SizeError(f"{path}: need at least 2 values, found {table.rows.shape[0]}")
    index = table.column_index(column)
    return [float(v) for v in table.rows[:, index]]


def parse_grid(text: str) -> Tuple[float, ...]:
    """
    "start:stop:step", both endpoints included when stop is within step/2 of
    a grid point; "-2:4:0.5" gives 13 points
    """
    parts = text.split(':')
    if len(parts) != 3:
        raise DomainError(f"grid must look like start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise DomainError(f"grid must look like start:stop:step, got {text!r}") from None
    if not all(math.isfinite(v) for v in (start, stop, step)):
        raise DomainError(f"grid values must be finite, got {text!r}")
    if step <= 0.0:
        raise DomainError(f"grid step must be positive, got {step}")
    if stop < start:
        raise DomainError(f"grid stop {stop} is below start {start}")

    count = int(math.floor((stop - start) / step + 0.5)) + 1
    return tuple(start + k * step for k in range(count))
