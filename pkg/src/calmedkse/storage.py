"""On-disk formats: binary field snapshots, error CSVs, key=value text.

Snapshot payload (``<name>.bin``): raw little-endian float64 physical values
at the n x n collocation points, row-major (x index outermost), with vector
components concatenated (component 0 first).  No header; the sidecar
``<name>.bin.meta`` is line-oriented ``key=value`` text carrying
layout_version, n, components, shape, form, lambda, epsilon, kind, t, dt.

Error CSV: header ``epsilon,err_linf_l2,err_linf_linf,err_l2_h2``, one row
per epsilon, floats printed with full round-trip precision.
"""

from __future__ import annotations

import csv
import os
from typing import Any

import numpy as np

from .spectral import Field

LAYOUT_VERSION = 1

ERROR_CSV_HEADER = ["epsilon", "err_linf_l2", "err_linf_linf", "err_l2_h2"]

_FLOAT_META_KEYS = ("lambda", "epsilon", "t", "dt")
_INT_META_KEYS = ("layout_version", "n", "components")


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_keyvalue(path: str, entries: dict[str, Any]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for key, value in entries.items():
            fh.write(f"{key}={_fmt(value)}\n")


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


def sidecar_path(payload_path: str) -> str:
    return payload_path + ".meta"


def write_snapshot(path: str, field: Field, meta: dict[str, Any]) -> None:
    """Write the physical values of ``field`` plus the metadata sidecar."""
    if field.physical is None:
        raise ValueError("write_snapshot needs a valid physical representation")
    phys = np.ascontiguousarray(field.physical, dtype="<f8")
    n = phys.shape[-1]
    entries: dict[str, Any] = {
        "layout_version": LAYOUT_VERSION,
        "n": n,
        "components": field.components,
        "shape": field.shape_name,
    }
    entries.update(meta)
    with open(path, "wb") as fh:
        fh.write(phys.tobytes())
    write_keyvalue(sidecar_path(path), entries)


def load_snapshot(path: str) -> tuple[Field, dict[str, Any]]:
    """Load a snapshot payload and its sidecar; fails on any inconsistency."""
    meta_path = sidecar_path(path)
    if not os.path.exists(path):
        raise FileNotFoundError(f"snapshot payload not found: {path}")
    if not os.path.exists(meta_path):
        raise FileNotFoundError(f"snapshot sidecar not found: {meta_path}")
    raw_meta = read_keyvalue(meta_path)
    meta: dict[str, Any] = dict(raw_meta)
    for key in _INT_META_KEYS:
        if key in meta:
            meta[key] = int(meta[key])
    for key in _FLOAT_META_KEYS:
        if key in meta:
            meta[key] = float(meta[key])
    version = meta.get("layout_version")
    if version != LAYOUT_VERSION:
        raise ValueError(f"{meta_path}: unsupported layout_version {version!r}")
    n = meta["n"]
    components = meta["components"]
    expected = components * n * n * 8
    payload = open(path, "rb").read()
    if len(payload) != expected:
        raise ValueError(
            f"{path}: payload is {len(payload)} bytes, metadata implies {expected} "
            f"(components={components}, n={n})"
        )
    arr = np.frombuffer(payload, dtype="<f8").astype(np.float64)
    shape = (n, n) if components == 1 else (components, n, n)
    return Field(components=components, physical=arr.reshape(shape)), meta


def write_error_csv(path: str, rows) -> None:
    """Write ErrorSeries rows (or a report carrying ``.series``) with full
    float64 round-trip precision."""
    rows = getattr(rows, "series", rows)
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh)
        writer.writerow(ERROR_CSV_HEADER)
        for row in rows:
            writer.writerow(
                [repr(row.epsilon), repr(row.err_linf_l2), repr(row.err_linf_linf), repr(row.err_l2_h2)]
            )


def read_error_csv(path: str) -> list[dict[str, float]]:
    with open(path, "r", newline="", encoding="ascii") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ERROR_CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        return [{key: float(row[key]) for key in ERROR_CSV_HEADER} for row in reader]
