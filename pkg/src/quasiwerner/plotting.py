"""Figure output for sweep tables.

``emit_svg_plot`` writes a small self-contained SVG by hand so the markup is
stable and regression-testable (one ``<polyline>`` per series).
``render_figure`` draws the same curves with matplotlib for raster output.
"""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np
from matplotlib.ticker import MaxNLocator

from .sweep import SweepTable

WIDTH, HEIGHT = 800, 600
MARGIN = dict(left=80, right=30, top=60, bottom=70)
SERIES_STYLE = {
    "discord": ("#1f77b4", "Quantum discord"),
    "concurrence": ("#d62728", "Concurrence"),
    "mutual_information": ("#2ca02c", "Mutual information"),
    "classical_correlation": ("#9467bd", "Classical correlation"),
}
DEFAULT_SERIES = ("discord", "concurrence")


class PlotError(ValueError):
    """The table cannot be drawn along the requested axis."""


def _fixed_value(values, what):
    first = values[0]
    for v in values[1:]:
        if (v is None) != (first is None) or (v is not None and abs(v - first) > 1e-12):
            raise PlotError(f"rows mix different values of {what}; cannot plot a single curve")
    return first


def plot_axes(table: SweepTable, axis: str):
    """Return ``(x values, title)`` after checking the table has one free parameter."""
    if axis not in ("a", "r"):
        raise PlotError(f"axis must be 'a' or 'r', got {axis!r}")
    if len(table) < 2:
        raise PlotError("need at least two rows to draw a curve")
    if axis == "a":
        r = _fixed_value(table.column("r"), "r")
        title = "Perfect-Werner state" if r is None else f"Quasi-Werner state, r = {r:g}"
    else:
        if table.family != "quasi":
            raise PlotError("r axis needs a quasi-Werner sweep")
        a = _fixed_value(table.column("a"), "a")
        title = f"Quasi-Werner state, a = {a:g}"
    x = np.array(table.column(axis), dtype=float)
    if np.ptp(x) <= 0:
        raise PlotError(f"{axis} does not vary across rows")
    return x, title


def _check_series(series):
    series = tuple(series)
    if not series:
        raise PlotError("no series selected")
    unknown = [s for s in series if s not in SERIES_STYLE]
    if unknown:
        raise PlotError(f"unknown series {unknown}; choose from {sorted(SERIES_STYLE)}")
    return series


def _ticks(lo, hi):
    return [t for t in MaxNLocator(nbins=5).tick_values(lo, hi) if lo - 1e-12 <= t <= hi + 1e-12]


def svg_plot(table: SweepTable, axis: str = "a", series=DEFAULT_SERIES) -> str:
    x, title = plot_axes(table, axis)
    series = _check_series(series)
    ys = {name: np.array(table.column(name), dtype=float) for name in series}

    x_lo, x_hi = float(x.min()), float(x.max())
    y_lo = 0.0
    y_top = max(1e-9, max(float(v.max()) for v in ys.values()))
    # the locator's last tick always covers y_top
    y_hi = float(MaxNLocator(nbins=5).tick_values(0.0, y_top)[-1])

    pl, pr = MARGIN["left"], WIDTH - MARGIN["right"]
    pt, pb = MARGIN["top"], HEIGHT - MARGIN["bottom"]

    def sx(v):
        return pl + (v - x_lo) / (x_hi - x_lo) * (pr - pl)

    def sy(v):
        return pb - (v - y_lo) / (y_hi - y_lo) * (pb - pt)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="{pt / 2 + 6:.1f}" text-anchor="middle" font-size="20">'
        f"{escape(title)}</text>",
        f'<g id="axes" stroke="black" stroke-width="1">'
        f'<line x1="{pl}" y1="{pb}" x2="{pr}" y2="{pb}"/>'
        f'<line x1="{pl}" y1="{pb}" x2="{pl}" y2="{pt}"/></g>',
    ]
    ticks = ['<g id="ticks" font-size="13">']
    for t in _ticks(x_lo, x_hi):
        px = sx(t)
        ticks.append(f'<line x1="{px:.2f}" y1="{pb}" x2="{px:.2f}" y2="{pb + 6}" stroke="black"/>')
        ticks.append(f'<text x="{px:.2f}" y="{pb + 22}" text-anchor="middle">{t:g}</text>')
    for t in _ticks(y_lo, y_hi):
        py = sy(t)
        ticks.append(f'<line x1="{pl - 6}" y1="{py:.2f}" x2="{pl}" y2="{py:.2f}" stroke="black"/>')
        ticks.append(f'<text x="{pl - 10}" y="{py + 4:.2f}" text-anchor="end">{t:g}</text>')
    ticks.append("</g>")
    out.extend(ticks)
    out.append(
        f'<text x="{(pl + pr) / 2:.1f}" y="{HEIGHT - 20}" text-anchor="middle" font-size="16">{axis}</text>'
    )

    for name in series:
        color, _ = SERIES_STYLE[name]
        pts = " ".join(f"{sx(u):.2f},{sy(v):.2f}" for u, v in zip(x, ys[name]))
        out.append(
            f'<polyline id="series-{name}" fill="none" stroke="{color}" stroke-width="2" points="{pts}"/>'
        )

    legend = ['<g id="legend" font-size="14">']
    for k, name in enumerate(series):
        color, label = SERIES_STYLE[name]
        ly = pt + 20 + 22 * k
        legend.append(
            f'<line x1="{pl + 20}" y1="{ly}" x2="{pl + 50}" y2="{ly}" stroke="{color}" stroke-width="2"/>'
        )
        legend.append(f'<text x="{pl + 58}" y="{ly + 5}">{escape(label)}</text>')
    legend.append("</g>")
    out.extend(legend)
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg_plot(table: SweepTable, path, axis: str = "a", series=DEFAULT_SERIES) -> Path:
    text = svg_plot(table, axis, series)
    path = Path(path)
    path.write_text(text, encoding="utf-8")
    return path


def render_figure(table: SweepTable, path, axis: str = "a", series=DEFAULT_SERIES, dpi: int = 100) -> Path:
    """Draw the selected series with matplotlib; the format follows ``path``'s suffix."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    x, title = plot_axes(table, axis)
    series = _check_series(series)
    fig, ax = plt.subplots(figsize=(WIDTH / 100, HEIGHT / 100))
    for name in series:
        color, label = SERIES_STYLE[name]
        ax.plot(x, table.column(name), color=color, lw=2, label=label)
    ax.set_xlabel(axis)
    ax.set_xlim(x.min(), x.max())
    ax.set_ylim(bottom=0)
    ax.set_title(title)
    ax.legend(loc="upper left", frameon=False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=dpi, metadata={"Software": None} if path.suffix == ".png" else None)
    plt.close(fig)
    return path
