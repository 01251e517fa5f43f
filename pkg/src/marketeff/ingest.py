"""Turn a CSV column of prices or returns into one exact pattern block."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .core import DeterministicPattern, format_rational, to_rational

PERIODICITY_NOTE = (
    "the series is treated as a single pattern block that repeats; "
    "gains and efficiency refer to that periodic market"
)


class IngestError(ValueError):
    pass


@dataclass(frozen=True)
class IngestSpec:
    source: Union[str, Path]
    column: Union[str, int]
    mode: str = "returns"  # "prices" | "returns"
    quantum: Optional[Fraction] = None

    def __post_init__(self):
        if self.mode not in ("prices", "returns"):
            raise IngestError(f"mode must be 'prices' or 'returns', got {self.mode!r}")
        if self.quantum is not None:
            q = to_rational(self.quantum)
            if q <= 0:
                raise IngestError("quantum must be positive")
            object.__setattr__(self, "quantum", q)


def quantize(x: Fraction, q: Fraction) -> Fraction:
    """Nearest multiple of ``q``; exact halves round away from zero."""
    k, rem = divmod(abs(x), q)
    if 2 * rem >= q:
        k += 1
    return (k if x >= 0 else -k) * q


def _read_column(path: Path, column) -> list:
    # first row is a header; ``column`` is a header name or a 0-based index
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise IngestError(f"{path} is empty")
    header = [h.strip() for h in rows[0]]
    if isinstance(column, int) or str(column).isdigit():
        idx = int(column)
        if idx >= len(header):
            raise IngestError(f"column index {idx} out of range for header {header}")
    elif column in header:
        idx = header.index(column)
    else:
        raise IngestError(f"column {column!r} not in header {header}")
    cells = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if idx >= len(row):
            raise IngestError(f"line {lineno}: missing column {column!r}")
        cell = row[idx].strip()
        try:
            cells.append(to_rational(cell))
        except (ValueError, TypeError) as exc:
            raise IngestError(f"line {lineno}: non-numeric cell {cell!r}") from exc
    return cells


def ingest(spec: IngestSpec):
    """Return ``(pattern, provenance)`` for the requested column.

    Decimal cells are parsed exactly (``"0.4"`` is 2/5). Prices are
    first-differenced; a quantum rounds each return onto its grid.
    """
    series = _read_column(Path(spec.source), spec.column)
    if spec.mode == "prices":
        returns = [b - a for a, b in zip(series, series[1:])]
    else:
        returns = series
    if not returns:
        raise IngestError("series is empty")
    if spec.quantum is not None:
        returns = [quantize(r, spec.quantum) for r in returns]
    provenance = {
        "source": str(spec.source),
        "column": spec.column,
        "mode": spec.mode,
        "quantum": None if spec.quantum is None else format_rational(spec.quantum),
        "observations": len(series),
        "first_price": format_rational(series[0]) if spec.mode == "prices" else None,
        "note": PERIODICITY_NOTE,
    }
    return DeterministicPattern(tuple(returns)), provenance
