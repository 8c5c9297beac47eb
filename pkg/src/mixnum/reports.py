"""CSV/JSON emitters for curves, beta surfaces, matrices and experiment reports.

All numbers are written as 15-significant-digit scientific decimals so that
repeated runs produce byte-identical files on any locale.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, ValidationError
from .ini import (
    CONTINUOUS,
    DISCRETE,
    WIDE_FROM_NARROW,
    IniMatrix,
    beta,
    continuous_magnitude_from_d,
    discrete_magnitude_from_d,
)

FLOAT_FORMAT = ".14e"


def fmt(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"refusing to emit non-finite value {x!r}")
    return format(x, FLOAT_FORMAT)


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON with floats in :data:`FLOAT_FORMAT`."""
    pad = " " * (indent * (_level + 1))
    close = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{to_json(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
        if not text.endswith("\n"):
            fh.write("\n")


def _write_rows(path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def d_grid(start: float, stop: float, step: float) -> np.ndarray:
    """``start, start + step, ...`` up to and including ``stop`` (to 1e-9 steps)."""
    if not step > 0:
        raise ValidationError(f"step must be positive, got {step}")
    if not start < stop:
        raise ValidationError(f"start {start} must be below stop {stop}")
    count = math.floor((stop - start) / step + 1e-9) + 1
    return start + step * np.arange(count)


def parse_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"expected start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise ValidationError(f"bad range {text!r}") from exc
    return start, stop, step


@dataclass(frozen=True)
class CurveSpec:
    nu_values: tuple[int, ...]
    d_range: tuple[float, float, float]
    mode: str = CONTINUOUS
    n1: int | None = None

    def __post_init__(self):
        if not self.nu_values:
            raise ValidationError("at least one nu value is required")
        for nu in self.nu_values:
            if nu < 1:
                raise ValidationError(f"nu must be positive, got {nu}")
        start, stop, step = self.d_range
        d_grid(start, stop, step)
        if self.mode not in (CONTINUOUS, DISCRETE):
            raise ValidationError(f"unknown mode {self.mode!r}")
        if self.mode == DISCRETE:
            if self.n1 is None or self.n1 < 1:
                raise ValidationError("discrete mode needs n1 >= 1")
            if max(abs(start), abs(stop)) >= self.n1:
                raise ValidationError(f"discrete mode needs |d| < n1={self.n1} over the range")

    def grid(self) -> np.ndarray:
        return d_grid(*self.d_range)


def magnitude_curve(spec: CurveSpec) -> tuple[list[str], np.ndarray]:
    """Columns ``d`` and one ``nu=<v>_<mode>`` per nu; discrete mode adds the
    continuous columns alongside for comparison."""
    d = spec.grid()
    header = ["d"]
    columns = [d]
    modes = [CONTINUOUS] if spec.mode == CONTINUOUS else [CONTINUOUS, DISCRETE]
    for mode in modes:
        for nu in spec.nu_values:
            header.append(f"nu={nu}_{mode}")
            if mode == CONTINUOUS:
                columns.append(continuous_magnitude_from_d(d, nu))
            else:
                columns.append(discrete_magnitude_from_d(d, nu, spec.n1))
    return header, np.column_stack(columns)


def emit_magnitude_curve(spec: CurveSpec, out) -> Path:
    header, table = magnitude_curve(spec)
    _write_rows(out, header, ([fmt(v) for v in row] for row in table))
    return Path(out)


def beta_surface(n1_values, d_range) -> tuple[np.ndarray, np.ndarray]:
    """``table[i, j] = beta(d[i], n1_values[j])``."""
    d = d_grid(*d_range)
    if not n1_values:
        raise ValidationError("at least one n1 value is required")
    return d, np.column_stack([beta(d, n1) for n1 in n1_values])


def transposed_path(out) -> Path:
    out = Path(out)
    return out.with_name(f"{out.stem}_by_n1{out.suffix or '.csv'}")


def emit_beta_surface(n1_values, d_range, out) -> tuple[Path, Path]:
    """Write beta vs d (one column per n1) and the transposed beta vs n1 table.

    The second file sits next to ``out`` with ``_by_n1`` appended to the stem.
    """
    n1_values = list(n1_values)
    d, table = beta_surface(n1_values, d_range)
    _write_rows(out, ["d"] + [f"beta_n1={n}" for n in n1_values],
                ([fmt(di)] + [fmt(v) for v in row] for di, row in zip(d, table)))
    second = transposed_path(out)
    _write_rows(second, ["n1"] + [f"beta_d={fmt(di)}" for di in d],
                ([str(n)] + [fmt(v) for v in table[:, j]] for j, n in enumerate(n1_values)))
    return Path(out), second


def emit_matrix(matrix: IniMatrix, out, phase: bool = False) -> Path:
    """Long-form CSV, one row per (m, n) in row-major order."""
    first, second = ("m", "n") if matrix.direction == WIDE_FROM_NARROW else ("n", "m")
    header = [first, second, "d", "magnitude"] + (["phase"] if phase else [])
    mags = matrix.magnitudes
    angles = np.angle(matrix.values)
    rows = []
    for i in range(mags.shape[0]):
        for j in range(mags.shape[1]):
            row = [str(i), str(j), fmt(matrix.d[i, j]), fmt(mags[i, j])]
            if phase:
                row.append(fmt(angles[i, j]))
            rows.append(row)
    _write_rows(out, header, rows)
    return Path(out)
