"""SVG drawings of tracked curves: the base curve on the left, strand trajectories on the right."""
from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

PANEL = 400
MARGIN = 20
COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


class _Frame:
    def __init__(self, pts, x0):
        pts = np.asarray(pts, dtype=complex)
        lo = complex(pts.real.min(), pts.imag.min())
        hi = complex(pts.real.max(), pts.imag.max())
        span = max(hi.real - lo.real, hi.imag - lo.imag, 1e-12)
        self.lo, self.scale, self.x0 = lo, (PANEL - 2 * MARGIN) / span, x0

    def __call__(self, z: complex) -> tuple[float, float]:
        x = self.x0 + MARGIN + (z.real - self.lo.real) * self.scale
        y = PANEL - MARGIN - (z.imag - self.lo.imag) * self.scale
        return round(x, 3), round(y, 3)


def _polyline(points, frame, color, width=1.0):
    coords = " ".join(f"{x},{y}" for x, y in (frame(z) for z in points))
    return f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="{width}"/>'


def curve_svg(motion, special) -> str:
    verts = np.asarray(motion.curve.vertices, dtype=complex)
    pts = np.concatenate([verts, np.asarray(special.all_points, dtype=complex)])
    left = _Frame(pts, 0)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{2 * PANEL}" height="{PANEL}">',
           f'<title>{escape(motion.curve.label)}: {escape(str(motion.word))}</title>',
           _polyline(verts, left, "#333333", 1.5)]
    for z in special.removed:
        x, y = left(z)
        out.append(f'<circle cx="{x}" cy="{y}" r="4" fill="none" stroke="black"/>')
    for z in special.critical:
        x, y = left(z)
        out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="black"/>')
    x, y = left(special.base_point)
    out.append(f'<rect x="{x - 3}" y="{y - 3}" width="6" height="6" fill="#888888"/>')
    if motion.samples:
        tracks = np.array([s[1] for s in motion.samples])
        right = _Frame(tracks.ravel(), PANEL)
        for k in range(tracks.shape[1]):
            out.append(_polyline(tracks[:, k], right, COLORS[k % len(COLORS)]))
    out.append(f'<text x="{MARGIN}" y="{MARGIN}" font-size="12">{escape(motion.curve.label)}  '
               f'{escape(str(motion.word)) or "(trivial)"}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svgs(run, directory) -> list[Path]:
    """One file per tracked curve, named ``<embedding>_<label>.svg``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for m in run.motions:
        name = "".join(ch if ch.isalnum() else "_" for ch in m.curve.label).strip("_")
        p = directory / f"{run.embedding}_{name}.svg"
        p.write_text(curve_svg(m, run.special))
        paths.append(p)
    return paths
