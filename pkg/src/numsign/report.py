"""Debug overlays and matplotlib report figures."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from matplotlib.figure import Figure

from .harness import EvalReport
from .pipeline import Analysis

# overlay colours (RGB)
EDGE = (255, 255, 255)
PALM = (0, 255, 0)
SEGMENT = (255, 0, 0)
JOINT = (0, 0, 255)
THUMB = (255, 255, 0)


def _line(canvas, r0, c0, r1, c1, color):
    n = max(abs(r1 - r0), abs(c1 - c0)) + 1
    rows = np.rint(np.linspace(r0, r1, n)).astype(int)
    cols = np.rint(np.linspace(c0, c1, n)).astype(int)
    canvas[rows, cols] = color


def _square(canvas, r, c, radius, color):
    h, w = canvas.shape[:2]
    canvas[max(r - radius, 0):min(r + radius + 1, h), max(c - radius, 0):min(c + radius + 1, w)] = color


def thumb_marker(analysis: Analysis) -> tuple[int, int] | None:
    """Pixel where the thumb marker is drawn: just right of the palm at mid-height."""
    model = analysis.classification.model
    if model is None or not model.thumb:
        return None
    palm = model.palm
    w = analysis.edges.shape[1]
    return (palm.top + palm.bottom) // 2, min(palm.right + 4, w - 3)


def draw_overlay(analysis: Analysis) -> np.ndarray:
    """RGB overlay of edges, palm rectangle, tip-to-joint segments, joints and thumb.

    White edges, green palm, red finger segments, blue joints, yellow thumb.
    Without a palm only the edge layer is drawn.
    """
    edges = analysis.edges
    canvas = np.zeros((*edges.shape, 3), dtype=np.uint8)
    canvas[edges] = EDGE
    model = analysis.classification.model
    if model is None:
        return canvas
    p = model.palm
    _line(canvas, p.top, p.left, p.top, p.right, PALM)
    _line(canvas, p.bottom, p.left, p.bottom, p.right, PALM)
    _line(canvas, p.top, p.left, p.bottom, p.left, PALM)
    _line(canvas, p.top, p.right, p.bottom, p.right, PALM)
    for finger in model.fingers:
        jr, jc = model.joints[finger.joint]
        _line(canvas, finger.tip.row, finger.tip.column, jr, jc, SEGMENT)
    for jr, jc in model.joints:
        _square(canvas, jr, jc, 1, JOINT)
    marker = thumb_marker(analysis)
    if marker is not None:
        _square(canvas, *marker, 2, THUMB)
    return canvas


def _skeleton_axes(ax, analysis: Analysis) -> None:
    ax.imshow(analysis.edges, cmap="gray_r", interpolation="nearest")
    model = analysis.classification.model
    if model is not None:
        p = model.palm
        ax.plot([p.left, p.right, p.right, p.left, p.left],
                [p.top, p.top, p.bottom, p.bottom, p.top], color="tab:green", lw=1)
        for f in model.fingers:
            jr, jc = model.joints[f.joint]
            ax.plot([f.tip.column, jc], [f.tip.row, jr], color="tab:red", lw=2)
        ax.scatter([c for _, c in model.joints], [r for r, _ in model.joints],
                   s=12, color="tab:blue", zorder=3)
        marker = thumb_marker(analysis)
        if marker is not None:
            ax.plot([p.right, marker[1] + 12], [marker[0], marker[0]], color="gold", lw=2)
    digit = analysis.classification.digit
    ax.set_title("unknown" if digit is None else f"digit {digit}")


def plot_analysis(analysis: Analysis, path: str | Path) -> None:
    """Three panels: input, contour, skeletal model."""
    fig = Figure(figsize=(9, 3), constrained_layout=True)
    axes = fig.subplots(1, 3)
    axes[0].imshow(analysis.grey, cmap="gray", vmin=0, vmax=255)
    axes[0].set_title("input")
    axes[1].imshow(analysis.edges, cmap="gray_r", interpolation="nearest")
    axes[1].set_title("contour")
    _skeleton_axes(axes[2], analysis)
    for ax in axes:
        ax.set_xticks([])
        ax.set_yticks([])
    fig.savefig(path, dpi=100)


def plot_eval(report: EvalReport, path: str | Path) -> None:
    """Grouped bars of valid / invalid success rate per set plus the overall row."""
    rows = report.rows()
    names = [name for name, _, _ in rows]
    valid = [float(v) if v is not None else np.nan for _, v, _ in rows]
    invalid = [float(i) if i is not None else np.nan for _, _, i in rows]
    x = np.arange(len(rows))

    fig = Figure(figsize=(max(4, 1.2 * len(rows) + 2), 3.5), constrained_layout=True)
    ax = fig.subplots()
    ax.bar(x - 0.2, valid, 0.4, label="within vocabulary")
    ax.bar(x + 0.2, invalid, 0.4, label="outside vocabulary")
    ax.set_xticks(x, names)
    ax.set_ylim(0, 105)
    ax.set_ylabel("success rate (%)")
    ax.legend(loc="lower right", fontsize=8)
    fig.savefig(path, dpi=100)
