"""SVG debug drawing: top view (x-z) beside side view (x-y)."""
from __future__ import annotations

from xml.sax.saxutils import quoteattr

import numpy as np

from .chain import Chain

PANEL = 400.0
MARGIN = 20.0


def _panel(pts2: np.ndarray, x_off: float, title: str, c: Chain) -> list[str]:
    lo = pts2.min(axis=0)
    span = float(max((pts2.max(axis=0) - lo).max(), 1e-12))
    scale = (PANEL - 2 * MARGIN) / span

    def sx(p):
        return x_off + MARGIN + (p[0] - lo[0]) * scale

    def sy(p):
        return PANEL - MARGIN - (p[1] - lo[1]) * scale  # SVG y grows downwards

    def xy(p):
        return f"{sx(p):.6f},{sy(p):.6f}"

    out = [
        f'<g class="view" data-view={quoteattr(title)}>',
        f'<text x="{x_off + MARGIN:.1f}" y="{MARGIN - 6:.1f}" font-size="12">{title}</text>',
        f'<polyline class="chain" fill="none" stroke="black" stroke-width="1" points="{" ".join(xy(p) for p in pts2)}"/>',
    ]
    for k in sorted({s for pair in c.allowed_overlaps for s in pair}):
        a, b = pts2[k], pts2[k + 1]
        out.append(
            f'<line class="overlap" x1="{sx(a):.6f}" y1="{sy(a):.6f}" x2="{sx(b):.6f}" y2="{sy(b):.6f}" '
            'stroke="red" stroke-width="2" stroke-dasharray="4 2"/>'
        )
    out.append("</g>")
    return out


def render_svg(c: Chain) -> str:
    v = c.vertices
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{2 * PANEL:.0f}" height="{PANEL:.0f}" '
        f'viewBox="0 0 {2 * PANEL:.0f} {PANEL:.0f}">'
    ]
    lines += _panel(v[:, [0, 2]], 0.0, "top (x-z)", c)
    lines += _panel(v[:, [0, 1]], PANEL, "side (x-y)", c)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
