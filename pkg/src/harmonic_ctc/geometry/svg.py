"""Deterministic SVG rendering of a polar grid under a harmonic map.

One path per circle image and one per ray image. Coordinates are written with
six decimals and y is flipped so the picture reads in the usual orientation.
"""

import math
from typing import Iterable, List, Optional, Sequence

import numpy as np

from harmonic_ctc.common.exceptions import BadInputException
from harmonic_ctc.config.settings import get_settings
from harmonic_ctc.geometry.shape import image_boundary, image_ray
from harmonic_ctc.series.polynomial import HarmonicPolynomialMap

SVG_NS = "http://www.w3.org/2000/svg"
CIRCLE_STROKE = "#1f4e79"
RAY_STROKE = "#9c3d2c"
PADDING = 0.05
STROKE_FRACTION = 0.005
CANVAS_PX = 800


def fmt_num(value: float) -> str:
    text = f"{value:.6f}"
    # -0.000000 and 0.000000 must not depend on rounding noise
    return "0.000000" if text == "-0.000000" else text


def _path_data(points: np.ndarray, close: bool) -> str:
    coords = [f"{fmt_num(p.real)},{fmt_num(-p.imag)}" for p in points]
    data = "M" + coords[0] + "".join(" L" + c for c in coords[1:])
    return data + " Z" if close else data


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _check_radii(radii: Sequence[float]) -> List[float]:
    radii = [float(r) for r in radii]
    if not radii:
        raise BadInputException("at least one radius is required")
    if any(not 0.0 < r < 1.0 for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
        raise BadInputException(f"radii must be ascending in (0, 1), got {radii}")
    return radii


def render_svg(f: HarmonicPolynomialMap, radii: Optional[Iterable[float]] = None,
               rays: Optional[int] = None, samples: int = 720, ray_samples: int = 200,
               title: str = "") -> str:
    """Render images of |z| = r_i and of ``rays`` radial segments as an SVG 1.1 document."""
    settings = get_settings()
    radii = _check_radii(settings.render_radii if radii is None else tuple(radii))
    rays = settings.render_rays if rays is None else int(rays)
    if rays < 0:
        raise BadInputException(f"rays must be non-negative, got {rays}")

    circles = [image_boundary(f, r, samples).points for r in radii]
    segments = [image_ray(f, 2.0 * math.pi * j / rays, radii[-1], ray_samples) for j in range(rays)]

    everything = np.concatenate(circles + segments)
    xs, ys = everything.real, -everything.imag
    span = max(float(xs.max() - xs.min()), float(ys.max() - ys.min()), 1e-12)
    pad = PADDING * span
    x0, y0 = float(xs.min()) - pad, float(ys.min()) - pad
    width = float(xs.max() - xs.min()) + 2 * pad
    height = float(ys.max() - ys.min()) + 2 * pad
    stroke = STROKE_FRACTION * max(width, height)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="{SVG_NS}" version="1.1" width="{CANVAS_PX}" height="{CANVAS_PX}" '
        f'viewBox="{fmt_num(x0)} {fmt_num(y0)} {fmt_num(width)} {fmt_num(height)}">',
    ]
    if title:
        lines.append(f'  <title>{_escape(title)}</title>')
    lines.append(f'  <g id="circles" fill="none" stroke="{CIRCLE_STROKE}" '
                 f'stroke-width="{fmt_num(stroke)}" stroke-linejoin="round">')
    for r, points in zip(radii, circles):
        lines.append(f'    <path data-r="{fmt_num(r)}" d="{_path_data(points, close=True)}"/>')
    lines.append('  </g>')
    lines.append(f'  <g id="rays" fill="none" stroke="{RAY_STROKE}" '
                 f'stroke-width="{fmt_num(stroke)}" stroke-linecap="round">')
    for j, points in enumerate(segments):
        lines.append(f'    <path data-ray="{j}" d="{_path_data(points, close=False)}"/>')
    lines.append('  </g>')
    lines.append('</svg>')
    return "\n".join(lines) + "\n"
