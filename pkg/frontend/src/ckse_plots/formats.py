"""Readers for the solver's on-disk formats.

These parse the files directly from their documented layout rather than
importing the solver package:

* snapshot payload ``<name>.bin``: raw little-endian float64 physical values,
  row-major, components concatenated; sidecar ``<name>.bin.meta`` is
  line-oriented key=value text with layout_version, n, components, shape,
  and the run parameters (form, lambda, epsilon, kind, t, dt).
* error CSV: header ``epsilon,err_linf_l2,err_linf_linf,err_l2_h2``,
  one row per epsilon.
"""

from __future__ import annotations

import csv
import os

import numpy as np

LAYOUT_VERSION = 1

ERROR_CSV_HEADER = ["epsilon", "err_linf_l2", "err_linf_linf", "err_l2_h2"]

_INT_KEYS = ("layout_version", "n", "components")
_FLOAT_KEYS = ("lambda", "epsilon", "t", "dt")


def read_keyvalue(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def load_snapshot(path: str) -> tuple[np.ndarray, dict]:
    """Return (values, meta); values has shape (n, n) or (components, n, n)."""
    meta_path = path + ".meta"
    if not os.path.exists(path):
        raise FileNotFoundError(f"snapshot payload not found: {path}")
    if not os.path.exists(meta_path):
        raise FileNotFoundError(f"snapshot sidecar not found: {meta_path}")
    meta: dict = dict(read_keyvalue(meta_path))
    for key in _INT_KEYS:
        if key in meta:
            meta[key] = int(meta[key])
    for key in _FLOAT_KEYS:
        if key in meta:
            meta[key] = float(meta[key])
    if meta.get("layout_version") != LAYOUT_VERSION:
        raise ValueError(f"{meta_path}: unsupported layout_version {meta.get('layout_version')!r}")
    n = meta["n"]
    components = meta["components"]
    payload = open(path, "rb").read()
    expected = components * n * n * 8
    if len(payload) != expected:
        raise ValueError(f"{path}: payload is {len(payload)} bytes, metadata implies {expected}")
    values = np.frombuffer(payload, dtype="<f8").astype(np.float64)
    shape = (n, n) if components == 1 else (components, n, n)
    return values.reshape(shape), meta


def read_error_csv(path: str) -> list[dict[str, float]]:
    """Rows of the error CSV; requires the exact documented header."""
    with open(path, "r", newline="", encoding="ascii") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ERROR_CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        rows = [{key: float(row[key]) for key in ERROR_CSV_HEADER} for row in reader]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return rows
