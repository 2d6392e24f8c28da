"""Rendering of scan grids, boundary traces and prediction overlays.

Scan heatmaps are drawn cell-by-cell into a pixel buffer (one flat
color per period, background for empty cells) so the color count in the
output equals the number of distinct periods plus one.  Traces and
overlays are polylines drawn into the same pixel space.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
from PIL import Image, ImageDraw

from .io import PlotError, kind_of, read_csv

BACKGROUND = (255, 255, 255)
OVERLAY_COLOR = (255, 0, 0)
MARKER_COLOR = (0, 0, 0)

# 20-color cyclic palette (flat, saturated, no two entries equal)
PALETTE = [
    (31, 119, 180), (255, 127, 14), (44, 160, 44), (214, 39, 40),
    (148, 103, 189), (140, 86, 75), (227, 119, 194), (127, 127, 127),
    (188, 189, 34), (23, 190, 207), (174, 199, 232), (255, 187, 120),
    (152, 223, 138), (255, 152, 150), (197, 176, 213), (196, 156, 148),
    (247, 182, 210), (199, 199, 199), (219, 219, 141), (158, 218, 229),
]


@dataclasses.dataclass(frozen=True)
class PlotSpec:
    """What to render: inputs, output, coloring, overlays, framing."""

    inputs: tuple
    output: str
    color_by: str = "period"  # or "rotnum"
    overlays: tuple = ()
    labels: tuple = ("", "")
    window: tuple = None  # ((xlo, xhi), (ylo, yhi)) or None for data bounds

    def __post_init__(self):
        if self.color_by not in ("period", "rotnum"):
            raise PlotError(f"color_by must be period|rotnum, "
                            f"got {self.color_by!r}")
        if not self.inputs:
            raise PlotError("at least one input CSV is required")


def _grid_axes(rows):
    xs = sorted({r["x"] for r in rows})
    ys = sorted({r["y"] for r in rows})
    return xs, ys


def _color_for(value, rank):
    if value is None:
        return BACKGROUND
    return PALETTE[rank[value] % len(PALETTE)]


def _scan_image(rows, color_by, scale):
    xs, ys = _grid_axes(rows)
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: i for i, y in enumerate(ys)}
    values = sorted({r[color_by] for r in rows if r[color_by] is not None})
    if color_by == "period":
        # cyclic palette indexed by the period itself
        rank = {v: int(v) for v in values}
    else:
        rank = {v: i for i, v in enumerate(values)}
    img = Image.new("RGB", (len(xs) * scale, len(ys) * scale), BACKGROUND)
    draw = ImageDraw.Draw(img)
    for r in rows:
        color = _color_for(r[color_by], rank)
        cx, cy = xi[r["x"]], len(ys) - 1 - yi[r["y"]]  # y grows upward
        draw.rectangle([cx * scale, cy * scale,
                        (cx + 1) * scale - 1, (cy + 1) * scale - 1],
                       fill=color)
    return img, xs, ys


def _to_pixels(x, y, window, size):
    (xlo, xhi), (ylo, yhi) = window
    w, h = size
    px = (x - xlo) / (xhi - xlo) * (w - 1)
    py = (1.0 - (y - ylo) / (yhi - ylo)) * (h - 1)
    return px, py


def _draw_polyline(img, pts, window, color, width=1):
    draw = ImageDraw.Draw(img)
    pix = [_to_pixels(x, y, window, img.size) for x, y in pts]
    if len(pix) == 1:
        draw.point(pix[0], fill=color)
    else:
        draw.line(pix, fill=color, width=width)


def _draw_markers(img, pts, window, color, half=2):
    draw = ImageDraw.Draw(img)
    for x, y in pts:
        px, py = _to_pixels(x, y, window, img.size)
        draw.rectangle([px - half, py - half, px + half, py + half],
                       fill=color)


def _overlay_points(path):
    """Curve samples from a prediction/nearby/trace CSV as (x, y) pairs."""
    _, columns, rows = read_csv(path)
    kind = kind_of(columns)
    if kind == "points":
        return [(r["xi1"], r["xi2"]) for r in rows
                if r["xi1"] is not None and r["xi2"] is not None]
    if kind == "trace":
        return [(r["x"], r["y"]) for r in rows]
    raise PlotError(f"{path}: cannot overlay a {kind} file")


def _data_window(pts):
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    padx = 0.05 * (max(xs) - min(xs)) or 1e-3
    pady = 0.05 * (max(ys) - min(ys)) or 1e-3
    return ((min(xs) - padx, max(xs) + padx),
            (min(ys) - pady, max(ys) + pady))


def render_scan(spec: PlotSpec, scale=16):
    """Period- (or rotation-number-) colored heatmap, plus overlays."""
    _, columns, rows = read_csv(spec.inputs[0])
    if kind_of(columns) != "scan":
        raise PlotError(f"{spec.inputs[0]} is not a scan CSV")
    if not rows:
        raise PlotError(f"{spec.inputs[0]}: no data rows")
    img, xs, ys = _scan_image(rows, spec.color_by, scale)
    if spec.overlays:
        # cell centers span half a cell beyond the first/last centers
        dx = (xs[-1] - xs[0]) / max(len(xs) - 1, 1) or 1e-3
        dy = (ys[-1] - ys[0]) / max(len(ys) - 1, 1) or 1e-3
        window = spec.window or ((xs[0] - dx / 2, xs[-1] + dx / 2),
                                 (ys[0] - dy / 2, ys[-1] + dy / 2))
        for path in spec.overlays:
            _draw_polyline(img, _overlay_points(path), window,
                           OVERLAY_COLOR, width=max(1, scale // 8))
    img.save(spec.output)
    return spec.output


def render_trace(spec: PlotSpec, size=(512, 384)):
    """Boundary polylines with event markers at monitor sign changes."""
    traces = []
    for path in spec.inputs:
        _, columns, rows = read_csv(path)
        if kind_of(columns) != "trace":
            raise PlotError(f"{path} is not a trace CSV")
        traces.append(rows)
    img = Image.new("RGB", size, BACKGROUND)
    all_pts = [(r["x"], r["y"]) for rows in traces for r in rows]
    if not all_pts:
        img.save(spec.output)  # axes-free empty canvas
        return spec.output
    window = spec.window or _data_window(all_pts)
    for i, rows in enumerate(traces):
        pts = [(r["x"], r["y"]) for r in rows]
        _draw_polyline(img, pts, window,
                       PALETTE[i % len(PALETTE)], width=2)
        events = []
        for prev, cur in zip(rows, rows[1:]):
            for col in ("detImM", "nearest_multiplier_to_minus1"):
                a = prev[col] + (1.0 if col.endswith("minus1") else 0.0)
                b = cur[col] + (1.0 if col.endswith("minus1") else 0.0)
                if a * b < 0.0:
                    events.append((cur["x"], cur["y"]))
        _draw_markers(img, events, window, MARKER_COLOR)
    img.save(spec.output)
    return spec.output


def render(spec: PlotSpec):
    """Dispatch on the first input's column set."""
    _, columns, _ = read_csv(spec.inputs[0])
    if kind_of(columns) == "scan":
        return render_scan(spec)
    return render_trace(spec)


def average_hash(path, hash_size=8):
    """8x8 average hash of an image file, as a 16-hex-digit string."""
    img = Image.open(path).convert("L").resize(
        (hash_size, hash_size), Image.LANCZOS)
    px = np.asarray(img, dtype=float)
    bits = (px > px.mean()).flatten()
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return f"{value:0{hash_size * hash_size // 4}x}"


def hash_distance(a, b):
    """Hamming distance between two hex hash strings."""
    return bin(int(a, 16) ^ int(b, 16)).count("1")
