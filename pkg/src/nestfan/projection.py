"""Stereographic plots of 3-dimensional fans as SVG.

Rays are normalized onto the unit sphere and projected from a pole (default
the direction opposite the all-ones vector) onto the plane through the
origin orthogonal to it.  All combinatorics stay exact; floats appear only
in the 2D coordinates.  Cone boundaries are drawn as straight segments,
which is faithful combinatorially if not metrically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .fans import Fan, key_label
from .graphs import GraphError

DEFAULT_POLE = (-1.0, -1.0, -1.0)
POLE_JITTER = 1e-9


class ProjectionError(GraphError):
    pass


@dataclass(frozen=True)
class PlotSpec:
    pole: tuple[float, float, float] = DEFAULT_POLE
    size: int = 640
    labels: bool = True


def _normalize(v: Sequence[float]) -> tuple[float, float, float]:
    norm = math.sqrt(sum(float(x) * float(x) for x in v))
    if norm == 0:
        raise ProjectionError("zero ray cannot be projected")
    return tuple(float(x) / norm for x in v)


def stereographic_project(
    rays: Sequence[Sequence], pole: Sequence[float] = DEFAULT_POLE
) -> list[tuple[float, float]]:
    """Project unit-sphere ray directions from the pole onto the plane
    through the origin orthogonal to the pole, in an orthonormal 2D frame.

    A ray parallel to the pole aborts; a near-degenerate configuration is
    retried once with a slightly jittered pole.
    """
    p = _normalize(pole)
    units = [_normalize(r) for r in rays]
    for u in units:
        if all(abs(a - b) < 1e-12 for a, b in zip(u, p)):
            raise ProjectionError("ray at the projection pole")
    # 2D frame of the plane orthogonal to the pole
    seed = (1.0, 0.0, 0.0)
    if abs(p[0]) > 0.9:
        seed = (0.0, 1.0, 0.0)
    e1 = _normalize(_cross(p, seed))
    e2 = _normalize(_cross(p, e1))
    out = []
    for u in units:
        denom = 1.0 - _dot(u, p)
        if abs(denom) < 1e-12:
            raise ProjectionError("ray at the projection pole")
        x = tuple(p[i] + (u[i] - p[i]) / denom for i in range(3))
        out.append((_dot(x, e1), _dot(x, e2)))
    return out


def _dot(a, b) -> float:
    return sum(x * y for x, y in zip(a, b))


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def fan_to_svg(f: Fan, spec: Optional[PlotSpec] = None) -> str:
    """SVG drawing of a 3-dimensional fan: one polygon per maximal cone,
    one dot per ray, structural metadata in data attributes."""
    spec = spec or PlotSpec()
    if f.dimension != 3:
        raise ProjectionError("only 3-dimensional fans can be plotted")
    rays = f.reduced_rays()
    try:
        pts = stereographic_project(rays, spec.pole)
        jittered = False
    except ProjectionError:
        pole = tuple(c + POLE_JITTER * (i + 1) for i, c in enumerate(spec.pole))
        pts = stereographic_project(rays, pole)  # may raise again: genuine abort
        jittered = True

    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    pad = 0.08 * span
    scale = spec.size / (span + 2 * pad)

    def to_px(pt):
        return (
            (pt[0] - min(xs) + pad) * scale,
            (pt[1] - min(ys) + pad) * scale,
        )

    px = [to_px(pt) for pt in pts]
    labels = [key_label(f, k) for k in f.ray_keys]
    meta = {
        "kind": f.provenance.kind,
        "cones": len(f.cones),
        "rays": len(f.rays),
        "pole_jittered": jittered,
    }
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.size}" '
        f'height="{spec.size}" viewBox="0 0 {spec.size} {spec.size}">',
        f"<desc>{json.dumps(meta)}</desc>",
    ]
    for ci, cone in enumerate(f.cones):
        coords = " ".join(f"{px[i][0]:.2f},{px[i][1]:.2f}" for i in cone)
        names = "|".join(labels[i] for i in cone)
        parts.append(
            f'<polygon data-cone="{names}" points="{coords}" '
            'fill="none" stroke="#444" stroke-width="1"/>'
        )
    for i, (x, y) in enumerate(px):
        parts.append(
            f'<circle data-ray="{labels[i]}" cx="{x:.2f}" cy="{y:.2f}" '
            'r="3" fill="#c33"/>'
        )
        if spec.labels:
            parts.append(
                f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" font-size="10">'
                f"{labels[i]}</text>"
            )
    parts.append("</svg>")
    return "\n".join(parts)
