"""Deterministic CSV, JSON and SVG emission.

Floats are written with 17 significant digits (``%.17g``), JSON keys keep
insertion order, and SVG coordinates are rounded to 2 decimals, so identical
inputs always produce identical bytes.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")
VIEW_W, VIEW_H = 800, 500
MARGIN = (70, 30, 40, 60)  # left, right, top, bottom


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    return "%.17g" % float(v)


def write_csv(path, columns: dict, footer: dict | None = None) -> None:
    """Header row, one row per sample, optional ``# key=value`` footer lines."""
    names = list(columns)
    n = len(next(iter(columns.values())))
    lines = [",".join(names)]
    for i in range(n):
        lines.append(",".join(fmt(columns[c][i]) for c in names))
    for k, v in (footer or {}).items():
        lines.append(f"# {k}={fmt(v)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_csv(path):
    """Parse a file written by :func:`write_csv`.

    Returns ``(columns, footer)``: columns map header names to float arrays
    (empty cells become NaN; non-numeric columns stay strings), footer maps
    ``# key=value`` comments to strings.
    """
    header = None
    rows, footer = [], {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line:
            continue
        if line.startswith("#"):
            key, _, val = line[1:].strip().partition("=")
            footer[key.strip()] = val.strip()
            continue
        cells = line.split(",")
        if header is None:
            header = cells
        else:
            if len(cells) != len(header):
                raise ValueError(f"row has {len(cells)} cells, header has {len(header)}")
            rows.append(cells)
    if header is None:
        raise ValueError("missing header row")
    cols = {}
    for j, name in enumerate(header):
        raw = [r[j] for r in rows]
        try:
            cols[name] = np.array([float(c) if c else math.nan for c in raw])
        except ValueError:
            cols[name] = raw
    return cols, footer


def _clean(obj):
    if isinstance(obj, float):
        if math.isfinite(obj):
            return obj
        return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.generic):
        return _clean(obj.item())
    return obj


def dumps_json(obj) -> str:
    return json.dumps(_clean(obj), indent=2, allow_nan=False) + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dumps_json(obj), encoding="utf-8")


# ---------------------------------------------------------------------------
# SVG


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def svg_plot(series, title="", xlabel="", ylabel="", normalize=False, logx=False) -> str:
    """Static line chart, one ``<polyline>`` per series.

    Parameters
    ----------
    series : list of (label, x, y)
    normalize : bool
        Rescale each series to [0, 1] independently (profile overlays of fields
        with different units).
    logx : bool
        Plot log10(x).
    """
    left, right, top, bottom = MARGIN
    pw, ph = VIEW_W - left - right, VIEW_H - top - bottom
    prepared = []
    for label, x, y in series:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        ok = np.isfinite(x) & np.isfinite(y)
        if logx:
            ok &= x > 0
        x, y = x[ok], y[ok]
        if logx:
            x = np.log10(x)
        if normalize and y.size:
            lo, hi = float(y.min()), float(y.max())
            y = (y - lo) / (hi - lo) if hi > lo else np.zeros_like(y)
        prepared.append((label, x, y))
    allx = np.concatenate([p[1] for p in prepared]) if prepared else np.zeros(0)
    ally = np.concatenate([p[2] for p in prepared]) if prepared else np.zeros(0)
    x0, x1 = (float(allx.min()), float(allx.max())) if allx.size else (0.0, 1.0)
    y0, y1 = (float(ally.min()), float(ally.max())) if ally.size else (0.0, 1.0)
    if x1 <= x0:
        x0, x1 = x0 - 0.5, x0 + 0.5
    if y1 <= y0:
        y0, y1 = y0 - 0.5, y0 + 0.5

    def px(v):
        return left + (v - x0) / (x1 - x0) * pw

    def py(v):
        return top + (1.0 - (v - y0) / (y1 - y0)) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEW_W} {VIEW_H}" '
        f'width="{VIEW_W}" height="{VIEW_H}">',
        f'<rect x="0" y="0" width="{VIEW_W}" height="{VIEW_H}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#444"/>',
    ]
    if title:
        out.append(f'<text x="{VIEW_W / 2:.2f}" y="24" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="16">{_esc(title)}</text>')
    for frac in (0.0, 0.5, 1.0):
        xv = x0 + frac * (x1 - x0)
        yv = y0 + frac * (y1 - y0)
        xt = f"1e{xv:.2g}" if logx else f"{xv:.4g}"
        out.append(f'<text x="{px(xv):.2f}" y="{top + ph + 18}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="11">{_esc(xt)}</text>')
        out.append(f'<text x="{left - 6}" y="{py(yv) + 4:.2f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11">{yv:.4g}</text>')
    if xlabel:
        out.append(f'<text x="{left + pw / 2:.2f}" y="{VIEW_H - 15}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="13">{_esc(xlabel)}</text>')
    if ylabel:
        out.append(f'<text x="16" y="{top + ph / 2:.2f}" text-anchor="middle" '
                   f'transform="rotate(-90 16 {top + ph / 2:.2f})" font-family="sans-serif" '
                   f'font-size="13">{_esc(ylabel)}</text>')
    for i, (label, x, y) in enumerate(prepared):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y))
        out.append(f'<polyline data-label="{_esc(label)}" fill="none" stroke="{color}" '
                   f'stroke-width="1.5" points="{pts}"/>')
        ly = top + 16 + 16 * i
        out.append(f'<line x1="{left + pw - 120}" y1="{ly - 4}" x2="{left + pw - 100}" '
                   f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{left + pw - 95}" y="{ly}" font-family="sans-serif" '
                   f'font-size="11">{_esc(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, *args, **kwargs) -> None:
    Path(path).write_text(svg_plot(*args, **kwargs), encoding="utf-8")


def polyline_points(svg_text: str, label: str):
    """Recover the (px, py) points of the polyline with ``data-label=label``."""
    key = f'data-label="{label}"'
    i = svg_text.index(key)
    j = svg_text.index('points="', i) + len('points="')
    k = svg_text.index('"', j)
    pts = [tuple(map(float, p.split(","))) for p in svg_text[j:k].split()]
    return np.array(pts)
