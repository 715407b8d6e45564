"""Sampled 2-d fields and their CSV / PGM exporters.

CSV layout: two '#' header lines describing the axes and units, then a matrix
whose first row holds the axis-2 coordinates and whose first column holds the
axis-1 coordinates. All numbers are printed with 12 significant digits so
output is byte-stable across runs.

PGM (P5, 8 bit) layout: axis-1 indexes rows (row 0 = first axis-1 sample),
axis-2 indexes columns. Unsigned fields are scaled by their global maximum and
gamma-compressed; signed fields are mapped symmetrically around mid-gray. The
mapping constants are recorded on the comment line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

FLOAT_FMT = "%.12g"


@dataclass(frozen=True)
class Field2D:
    """Real values sampled on the rectangular grid axis1 x axis2."""

    axis1: np.ndarray
    axis2: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        a1 = np.asarray(self.axis1, dtype=float)
        a2 = np.asarray(self.axis2, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if v.shape != (len(a1), len(a2)):
            raise ValueError(
                f"values shape {v.shape} does not match axes ({len(a1)}, {len(a2)})"
            )
        for arr in (a1, a2, v):
            arr.setflags(write=False)
        object.__setattr__(self, "axis1", a1)
        object.__setattr__(self, "axis2", a2)
        object.__setattr__(self, "values", v)


def field_csv_text(f: Field2D) -> str:
    """Render a field as CSV with a 2-line header (axis descriptions, units)."""
    lines = [
        "# axis1 (rows): {}; axis2 (columns): {}; values: {}".format(
            f.meta.get("axis1", "axis1"),
            f.meta.get("axis2", "axis2"),
            f.meta.get("values", "values"),
        ),
        "# first data row lists axis2 coordinates; first column lists axis1 coordinates",
    ]
    lines.append("," + ",".join(FLOAT_FMT % v for v in f.axis2))
    for t, row in zip(f.axis1, f.values):
        lines.append(FLOAT_FMT % t + "," + ",".join(FLOAT_FMT % v for v in row))
    return "\n".join(lines) + "\n"


def write_field_csv(path, f: Field2D) -> None:
    Path(path).write_text(field_csv_text(f))


def read_field_csv(path) -> Field2D:
    """Parse a field written by write_field_csv (used for audits and tests)."""
    lines = Path(path).read_text().splitlines()
    data = [ln for ln in lines if ln and not ln.startswith("#")]
    axis2 = np.array([float(v) for v in data[0].split(",")[1:]])
    axis1 = []
    values = []
    for ln in data[1:]:
        cells = ln.split(",")
        axis1.append(float(cells[0]))
        values.append([float(v) for v in cells[1:]])
    return Field2D(np.array(axis1), axis2, np.array(values))


def _pgm_bytes(quantized: np.ndarray, comment: str) -> bytes:
    h, w = quantized.shape
    header = f"P5\n# {comment}\n{w} {h}\n255\n".encode("ascii")
    return header + quantized.astype(np.uint8).tobytes()


def write_field_pgm(path, f: Field2D, *, signed: bool = False, gamma: float = 0.5) -> None:
    """8-bit grayscale export.

    Unsigned (density) fields: v -> (v / max)^gamma, then quantized.
    Signed (quasiprobability) fields: v -> 0.5 + 0.5 v / max|v|, no gamma.
    """
    v = f.values
    if signed:
        scale = float(np.max(np.abs(v)))
        mapped = 0.5 + 0.5 * (v / scale if scale > 0.0 else v)
        comment = f"mapping=symmetric offset=0.5 absmax={FLOAT_FMT % scale}"
    else:
        if np.min(v) < 0.0:
            raise ValueError("unsigned export requested for a field with negative values")
        scale = float(np.max(v))
        mapped = (v / scale if scale > 0.0 else v) ** gamma
        comment = f"mapping=unsigned gamma={FLOAT_FMT % gamma} max={FLOAT_FMT % scale}"
    quantized = np.clip(np.rint(mapped * 255.0), 0, 255)
    Path(path).write_bytes(_pgm_bytes(quantized, comment))


def trapezoid_2d(axis1, axis2, values) -> float:
    """Double trapezoid integral of values over the grid."""
    return float(np.trapezoid(np.trapezoid(values, axis2, axis=1), axis1))
