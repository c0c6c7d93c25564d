"""File formats: mechanism JSON and curve CSV/JSON.

Mechanism JSON::

    {"type": "cq", "v": 4, "eps": 1.0, "dim": 2,
     "outputs": [[[[re, im], ...], ...], ...]}          # v x dim x dim
    {"type": "classical", "v": 2, "eps": 1.386, "cols": 2,
     "matrix": [[0.8, 0.2], [0.2, 0.8]]}                # v x cols

Optional keys: ``mu`` (cq), ``label``. Decompositions are written as
``{"type": "extremal_decomposition", "v", "eps", "theta", "post_processing",
"residual"}``.
"""
from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .errors import ValidationError
from .mechanisms import CQMechanism, as_stochastic

CSV_COLUMNS = ("v", "eta", "eps", "s_quantum", "s_classical_upper", "ratio_s",
               "a_quantum", "a_classical", "ratio_a", "k_opt_s", "k_opt_a",
               "quantum_provenance")


class FormatError(ValidationError):
    pass


def mechanism_to_dict(mech, eps: float, label: str | None = None) -> dict:
    if isinstance(mech, CQMechanism):
        out = {"type": "cq", "v": mech.v, "eps": eps, "dim": mech.dim,
               "outputs": [[[[float(z.real), float(z.imag)] for z in row] for row in rho]
                           for rho in mech.outputs]}
        if mech.mu is not None:
            out["mu"] = mech.mu
    else:
        q = as_stochastic(mech)
        out = {"type": "classical", "v": q.shape[0], "eps": eps, "cols": q.shape[1],
               "matrix": q.tolist()}
    if label:
        out["label"] = label
    return out


def mechanism_from_dict(data: dict):
    """Inverse of :func:`mechanism_to_dict`; raises FormatError on bad input."""
    try:
        kind = data["type"]
        v = int(data["v"])
        if kind == "cq":
            raw = np.asarray(data["outputs"], dtype=float)
            dim = int(data["dim"])
            if raw.shape != (v, dim, dim, 2):
                raise FormatError(f"outputs have shape {raw.shape[:3]}, expected {(v, dim, dim)}")
            return CQMechanism(raw[..., 0] + 1j * raw[..., 1], mu=data.get("mu"),
                               eps=data.get("eps"))
        if kind == "classical":
            q = as_stochastic(np.asarray(data["matrix"], dtype=float))
            if q.shape != (v, int(data.get("cols", q.shape[1]))):
                raise FormatError(f"matrix has shape {q.shape}, header says {(v, data.get('cols'))}")
            return q
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed mechanism file: {exc}") from exc
    raise FormatError(f"unknown mechanism type {kind!r}")


def load_mechanism(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise FormatError(f"{path}: top level must be an object")
    return mechanism_from_dict(data)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, str):
        return x
    if math.isnan(x):
        return "nan"
    return f"{x:.12g}"


def curve_rows(points) -> list[dict]:
    rows = []
    for p in points:
        d = p.as_dict()
        rows.append({c: d[c] for c in CSV_COLUMNS})
    return rows


def curves_to_csv(points) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in curve_rows(points):
        w.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def curves_to_json(points) -> str:
    return json.dumps(curve_rows(points), indent=1)


def read_curves_csv(text: str) -> list[dict]:
    """Parse curve CSV text back into typed rows (empty cells become None)."""
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise FormatError(f"unexpected CSV header {reader.fieldnames}")
    rows = []
    for raw in reader:
        row = {}
        for c in CSV_COLUMNS:
            cell = raw[c]
            if c == "quantum_provenance":
                row[c] = cell
            elif cell == "":
                row[c] = None
            elif c in ("v", "k_opt_s", "k_opt_a"):
                row[c] = int(cell)
            else:
                row[c] = float(cell)
        rows.append(row)
    return rows
