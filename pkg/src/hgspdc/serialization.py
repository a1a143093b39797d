"""CSV / JSON emission and parsing for probability matrices and sweeps.

CSV matrices carry '#'-prefixed key=value header lines (wavelength_m,
distance_m, pump_waist_m, rytov, gamma, w_variant, normalization, ...), a
label row/column, and cells with 12 significant digits. JSON carries full
float precision (round-trips bit-exactly through json) with params, ordering,
matrix and normalization objects.
"""

from __future__ import annotations

import io
import json
import math

from .engine import ModeIndex, ProbabilityMatrix

CSV_SIGNIFICANT_DIGITS = 12
_CSV_FMT = f"%.{CSV_SIGNIFICANT_DIGITS}g"


def matrix_params(matrix: ProbabilityMatrix) -> dict:
    c = matrix.consts
    t = matrix.turbulence
    params = {
        "wavelength_m": c.wavelength,
        "distance_m": c.distance,
        "pump_waist_m": c.w0 / math.sqrt(2.0),
        "cn2": t.cn2 if t is not None else None,
        "rytov": t.rytov if t is not None else None,
        "gamma": c.gamma,
        "strength_coeff": t.strength_coeff if t is not None else None,
        "w_variant": c.w_variant,
        "normalization": matrix.normalization.mode,
    }
    return params


def _normalization_obj(matrix: ProbabilityMatrix) -> dict:
    n = matrix.normalization
    return {
        "mode": n.mode,
        "reference_pair": n.reference_pair.label() if n.reference_pair else None,
        "reference_value": n.reference_value,
        "calibration_factor": n.calibration_factor,
        "raw_reference_value": n.raw_reference_value,
    }


def matrix_to_json(matrix: ProbabilityMatrix) -> str:
    doc = {
        "params": matrix_params(matrix),
        "ordering": [m.label() for m in matrix.ordering],
        "matrix": [list(row) for row in matrix.values],
        "normalization": _normalization_obj(matrix),
    }
    return json.dumps(doc, indent=2)


def matrix_to_csv(matrix: ProbabilityMatrix) -> str:
    out = io.StringIO()
    for key, val in matrix_params(matrix).items():
        if val is None:
            continue
        out.write(f"# {key}={val!r}\n" if isinstance(val, str) else f"# {key}={val}\n")
    norm = _normalization_obj(matrix)
    if norm["reference_value"] is not None:
        out.write(f"# reference_pair={norm['reference_pair']}\n")
        out.write(f"# reference_value={norm['reference_value']}\n")
    out.write(f"# calibration_factor={norm['calibration_factor']}\n")
    out.write(f"# raw_reference_value={norm['raw_reference_value']}\n")
    labels = [m.label() for m in matrix.ordering]
    out.write("signal\\idler," + ",".join(labels) + "\n")
    for label, row in zip(labels, matrix.values):
        out.write(label + "," + ",".join(_CSV_FMT % v for v in row) + "\n")
    return out.getvalue()


def parse_matrix_json(text: str) -> dict:
    """Parse a matrix JSON document back into plain python structures."""
    doc = json.loads(text)
    doc["ordering"] = [str(label) for label in doc["ordering"]]
    return doc


def parse_matrix_csv(text: str) -> dict:
    """Parse the CSV emission: header params, labels, and the value grid."""
    params: dict = {}
    labels: list[str] = []
    rows: list[list[float]] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, val = line[1:].strip().partition("=")
            params[key.strip()] = val.strip()
            continue
        cells = line.split(",")
        if not labels:
            labels = cells[1:]
            continue
        rows.append([float(v) for v in cells[1:]])
    return {"params": params, "ordering": labels, "matrix": rows}


def format_matrix_table(matrix: ProbabilityMatrix, decimals: int = 5) -> str:
    """Human-readable fixed-point table (reference tables use 5 decimals)."""
    labels = [m.label() for m in matrix.ordering]
    width = max(decimals + 3, max(len(s) for s in labels) + 1)
    head = " " * 6 + "".join(f"{s:>{width}}" for s in labels)
    lines = [head]
    for label, row in zip(labels, matrix.values):
        lines.append(f"{label:>5} " + "".join(f"{v:>{width}.{decimals}f}" for v in row))
    return "\n".join(lines)


def sweep_to_csv(grid: list[float], series: dict[str, list[float]],
                 params: dict | None = None) -> str:
    out = io.StringIO()
    for key, val in (params or {}).items():
        if val is not None:
            out.write(f"# {key}={val}\n")
    out.write("rytov," + ",".join(series.keys()) + "\n")
    for i, s2 in enumerate(grid):
        out.write(_CSV_FMT % s2 + ","
                  + ",".join(_CSV_FMT % series[k][i] for k in series) + "\n")
    return out.getvalue()


def sweep_to_json(grid: list[float], series: dict[str, list[float]],
                  params: dict | None = None) -> str:
    return json.dumps({"params": params or {}, "grid": list(grid),
                       "series": series}, indent=2)


def mode_from_label(label: str) -> ModeIndex:
    from .engine import parse_mode

    return parse_mode(label)
