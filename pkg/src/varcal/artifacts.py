"""CSV and SVG writers for sampled curves."""

from __future__ import annotations

from typing import Iterable, Sequence

from .brach import CurveSamples

PALETTE = ("blue", "black", "red", "green", "orange", "purple", "brown", "gray")
MARGIN = 0.05


def csv_text(curve: CurveSamples) -> str:
    lines = ["x,y"]
    lines += [f"{x!r},{y!r}" for x, y in curve.points]
    return "\n".join(lines) + "\n"


def combined_csv_text(curves: Iterable[CurveSamples]) -> str:
    lines = ["label,x,y"]
    for c in curves:
        label = '"' + c.label.replace('"', '""') + '"'
        lines += [f"{label},{x!r},{y!r}" for x, y in c.points]
    return "\n".join(lines) + "\n"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def svg_text(curves: Sequence[CurveSamples], width: int = 640) -> str:
    """Overlay polylines in one equal-aspect viewBox with a 5% margin.

    The first curve is stroked blue, the rest black, red, then cycling.
    SVG's y axis points down, so y is negated.
    """
    xs = [x for c in curves for x in c.x.tolist()]
    ys = [-y for c in curves for y in c.y.tolist()]
    x_lo, x_hi, y_lo, y_hi = min(xs), max(xs), min(ys), max(ys)
    span = max(x_hi - x_lo, y_hi - y_lo) or 1.0
    pad = MARGIN * span
    vx, vy = x_lo - pad, y_lo - pad
    vw, vh = (x_hi - x_lo) + 2 * pad, (y_hi - y_lo) + 2 * pad
    height = max(1, round(width * vh / vw))
    stroke = span / 200.0
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{vx!r} {vy!r} {vw!r} {vh!r}" preserveAspectRatio="xMidYMid meet">',
    ]
    for i, c in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{x!r},{-y!r}" for x, y in c.points)
        out.append(f'  <polyline fill="none" stroke="{color}" stroke-width="{stroke!r}" '
                   f'points="{pts}"><title>{_esc(c.label)}</title></polyline>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
