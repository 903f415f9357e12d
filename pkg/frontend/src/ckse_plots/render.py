"""Rendering: field-magnitude heatmaps and log-log convergence-rate charts."""

from __future__ import annotations

import os
import tempfile

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .formats import load_snapshot, read_error_csv

NORM_LABELS = {
    "err_linf_l2": r"$L^\infty(0,T;L^2)$",
    "err_linf_linf": r"$L^\infty(0,T;L^\infty)$",
    "err_l2_h2": r"$L^2(0,T;H^2)$",
}


def _atomic_save(fig, out_path: str) -> None:
    """Write the image to a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(out_path)) or "."
    suffix = os.path.splitext(out_path)[1] or ".png"
    fd, tmp = tempfile.mkstemp(suffix=suffix, dir=directory)
    os.close(fd)
    try:
        fig.savefig(tmp, dpi=150, bbox_inches="tight")
        os.replace(tmp, out_path)
    finally:
        plt.close(fig)
        if os.path.exists(tmp):
            os.remove(tmp)


def _title_from_meta(meta: dict, magnitude_note: str = "") -> str:
    bits = []
    if "t" in meta:
        bits.append(f"t = {meta['t']:g}")
    kind = meta.get("kind", "")
    if kind and kind != "identity":
        bits.append(f"{kind}, $\\epsilon$ = {meta.get('epsilon', float('nan')):g}")
    elif kind == "identity":
        bits.append("uncalmed")
    if "lambda" in meta:
        bits.append(f"$\\lambda$ = {meta['lambda']:g}")
    title = ", ".join(bits)
    return f"{magnitude_note}{title}" if magnitude_note else title


def plot_field(snapshot_path: str, out_path: str) -> str:
    """Heatmap of the pointwise magnitude of a stored field.

    Vector snapshots are drawn as sqrt(u^2 + v^2); scalar ones fall back to
    |phi| with a note in the title.  Rows of the array (the x index) run
    along the vertical axis, so the horizontal axis is y.
    """
    values, meta = load_snapshot(snapshot_path)
    if values.ndim == 3:
        magnitude = np.sqrt(values[0] ** 2 + values[1] ** 2)
        note = "$|u|$: "
    else:
        magnitude = np.abs(values)
        note = "$|\\phi|$ (scalar snapshot): "

    fig, ax = plt.subplots(figsize=(5.4, 4.6))
    image = ax.imshow(
        magnitude,
        origin="lower",
        extent=(-np.pi, np.pi, -np.pi, np.pi),
        cmap="viridis",
        interpolation="nearest",
    )
    ax.set_xlabel("y")
    ax.set_ylabel("x")
    ax.set_title(_title_from_meta(meta, note))
    fig.colorbar(image, ax=ax)
    _atomic_save(fig, out_path)
    return out_path


def plot_rates(csv_path: str, out_path: str, overlay_slopes: tuple[float, ...] = ()) -> str:
    """Log-log error-vs-epsilon curves with optional slope guide lines.

    Needs at least 3 rows so a rate is visible.  Guide lines are anchored at
    the largest-epsilon point of the first norm.
    """
    rows = read_error_csv(csv_path)
    if len(rows) < 3:
        raise ValueError(f"{csv_path}: need at least 3 rows to chart a rate, got {len(rows)}")
    eps = np.array([r["epsilon"] for r in rows])
    order = np.argsort(eps)
    eps = eps[order]

    fig, ax = plt.subplots(figsize=(5.8, 4.4))
    for name, label in NORM_LABELS.items():
        errs = np.array([r[name] for r in rows])[order]
        ax.loglog(eps, errs, marker="o", label=label)

    anchor_err = np.array([r["err_linf_l2"] for r in rows])[order][-1]
    for slope in overlay_slopes:
        guide = anchor_err * (eps / eps[-1]) ** slope
        ax.loglog(eps, guide, "k--", linewidth=0.9)
        ax.annotate(
            f"slope {slope:g}",
            xy=(eps[0], guide[0]),
            textcoords="offset points",
            xytext=(4, -4),
            fontsize=8,
        )

    ax.set_xlabel(r"$\epsilon$")
    ax.set_ylabel(r"$\|u^\epsilon - u\|$")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=9)
    _atomic_save(fig, out_path)
    return out_path
