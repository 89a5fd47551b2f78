"""Rectangular result tables with deterministic CSV emission.

Floats are rendered with 12 significant digits so that identical inputs
produce byte-identical output; complex quantities are split into re/im
columns by the callers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["ResultTable"]


def _cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".12g")
    return str(value)


@dataclass(frozen=True)
class ResultTable:
    columns: tuple
    rows: tuple

    def __post_init__(self):
        columns = tuple(str(c) for c in self.columns)
        rows = tuple(tuple(row) for row in self.rows)
        for row in rows:
            if len(row) != len(columns):
                raise ValueError(
                    f"row of width {len(row)} in a table with "
                    f"{len(columns)} columns")
        object.__setattr__(self, "columns", columns)
        object.__setattr__(self, "rows", rows)

    def column(self, name: str) -> list:
        if name not in self.columns:
            raise KeyError(f"no column named '{name}'")
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        lines.extend(",".join(_cell(v) for v in row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def write(self, stream) -> None:
        stream.write(self.to_csv())
