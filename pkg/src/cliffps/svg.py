"""Plain-text SVG output: per-cell heatmaps, zero-set overlays and curve polylines."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .schema import COLOR_RAMP

CELL = 4  # pixels per lattice cell
MARGIN = 24


def ramp_color(step: int) -> str:
    step = min(max(int(step), 0), 255)
    low, mid, high = (np.array(COLOR_RAMP[k], dtype=float) for k in ("low", "mid", "high"))
    if step < 128:
        c = low + (mid - low) * step / 127.0
    else:
        c = mid + (high - mid) * (step - 128) / 127.0
    r, g, b = (int(round(v)) for v in c)
    return f"#{r:02x}{g:02x}{b:02x}"


def ramp_steps(values: np.ndarray, vmax: float | None = None) -> np.ndarray:
    v = np.nan_to_num(np.asarray(values, dtype=float), nan=0.0)
    top = float(np.max(v)) if vmax is None else float(vmax)
    if top <= 0:
        return np.zeros(v.shape, dtype=int)
    return np.floor(255 * np.minimum(v / top, 1.0)).astype(int)


def _panel(field: np.ndarray, mask: np.ndarray | None, x0: float, y0: float, vmax: float, title: str) -> list[str]:
    """One 2-D panel; field[i, j] is axis-0 index i (left to right), axis-1 index j (bottom to top)."""
    nx, ny = field.shape
    steps = ramp_steps(field, vmax)
    out = [f'<g transform="translate({x0:g},{y0:g})">', f'<text x="0" y="-6" font-size="11">{title}</text>']
    for i in range(nx):
        for j in range(ny):
            y = (ny - 1 - j) * CELL
            out.append(f'<rect x="{i * CELL}" y="{y}" width="{CELL}" height="{CELL}" fill="{ramp_color(steps[i, j])}"/>')
    if mask is not None:
        for i, j in zip(*np.nonzero(mask)):
            cx, cy = i * CELL + CELL / 2, (ny - 1 - j) * CELL + CELL / 2
            out.append(f'<circle cx="{cx:g}" cy="{cy:g}" r="{CELL / 2:g}" fill="none" stroke="#000" stroke-width="0.8"/>')
    out.append("</g>")
    return out


def heatmap(
    field: np.ndarray,
    mask: np.ndarray | None = None,
    axis_labels: Sequence[str] = ("x", "y"),
    extent: tuple[float, float, float, float] | None = None,
    title: str = "",
) -> str:
    """Heatmap of a 2-D field, or a montage of z-slices for a 3-D field."""
    field = np.asarray(field, dtype=float)
    if field.ndim == 1:
        field = field[:, None]
        mask = None if mask is None else np.asarray(mask)[:, None]
    vmax = float(np.nanmax(field)) if np.any(np.isfinite(field)) else 1.0
    if field.ndim == 2:
        panels = [(field, mask, title)]
    elif field.ndim == 3:
        nz = field.shape[2]
        picks = sorted(set(np.linspace(0, nz - 1, min(nz, 9)).round().astype(int)))
        panels = [(field[:, :, k], None if mask is None else mask[:, :, k], f"{title} slice {k}") for k in picks]
    else:
        raise ValueError("heatmap supports 1, 2 or 3 axes")
    nx, ny = panels[0][0].shape
    cols = min(len(panels), 3)
    rows = math.ceil(len(panels) / cols)
    pw, ph = nx * CELL + MARGIN, ny * CELL + 2 * MARGIN
    width, height = cols * pw + MARGIN, rows * ph + 2 * MARGIN
    body = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#fff"/>',
    ]
    for n, (f, m, t) in enumerate(panels):
        body += _panel(f, m, MARGIN + (n % cols) * pw, 2 * MARGIN + (n // cols) * ph, vmax, t)
    label = f"{axis_labels[0]} right, {axis_labels[1]} up; color 0..{vmax:.4g}"
    if extent is not None:
        label += f"; {axis_labels[0]} in [{extent[0]:g}, {extent[1]:g}], {axis_labels[1]} in [{extent[2]:g}, {extent[3]:g}]"
    body.append(f'<text x="{MARGIN}" y="{MARGIN}" font-size="11">{label}</text>')
    body.append("</svg>")
    return "\n".join(body) + "\n"


def curves(
    series: Sequence[tuple[str, np.ndarray, np.ndarray]],
    extent: tuple[float, float, float, float],
    size: int = 400,
) -> str:
    """Polylines for (label, x, z) series in the (x, z) plane."""
    x0, x1, z0, z1 = extent
    palette = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e")

    def px(x):
        return MARGIN + (x - x0) / (x1 - x0) * size

    def pz(z):
        return MARGIN + (z1 - z) / (z1 - z0) * size

    total = size + 2 * MARGIN
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total + 16 * len(series)}">',
        '<rect width="100%" height="100%" fill="#fff"/>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{size}" height="{size}" fill="none" stroke="#888"/>',
    ]
    for k, (label, xs, zs) in enumerate(series):
        color = palette[k % len(palette)]
        xs, zs = np.asarray(xs, dtype=float), np.asarray(zs, dtype=float)
        ok = np.isfinite(xs) & np.isfinite(zs)
        pts = " ".join(f"{px(x):.2f},{pz(z):.2f}" for x, z in zip(xs[ok], zs[ok]))
        if pts:
            out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        out.append(f'<text x="{MARGIN}" y="{total + 12 + 16 * k}" font-size="11" fill="{color}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
