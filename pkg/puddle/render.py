"""
SVG drawings of curves, with disks and points drawn over them.

Arcs are drawn with native SVG arc commands, so the picture is exact at any
zoom. The world frame has y up, and the drawing is flipped to the SVG frame
with a margin of 5% of the bounding box on every side. Coordinates are
rounded to six decimals, so the same input always gives the same bytes.
"""

from dataclasses import dataclass, field
import math
from typing import Callable, Tuple

import svgwrite
import svgwrite.path

from .curves import Circle, ClosedArcSpline, Point2
from .errors import ParameterError

MARGIN = 0.05

@dataclass(frozen=True)
class Overlay(object):
    """
    Things drawn above the curve. ``labels[i]`` is written next to
    ``points[i]``, and any extra labels are stacked in the top left corner.
    """
    circles: Tuple[Circle, ...] = ()
    points: Tuple[Point2, ...] = ()
    labels: Tuple[str, ...] = ()
    color: str = '#c03030'
    def __post_init__(self) -> None:
        object.__setattr__(self, 'circles', tuple(self.circles))
        object.__setattr__(self, 'points', tuple(self.points))
        object.__setattr__(self, 'labels', tuple(self.labels))

@dataclass(frozen=True)
class RenderSpec(object):
    width_px: int = 600
    height_px: int = 600
    stroke: float = 2.0
    overlays: Tuple[Overlay, ...] = field(default=())
    def __post_init__(self) -> None:
        object.__setattr__(self, 'overlays', tuple(self.overlays))
        if self.width_px <= 0 or self.height_px <= 0:
            raise ParameterError(f'positive size required, got {self.width_px}x{self.height_px}')
        if not (math.isfinite(self.stroke) and self.stroke > 0):
            raise ParameterError(f'stroke > 0 required, got {self.stroke}')

def _frame(
    curve: ClosedArcSpline, spec: RenderSpec,
) -> Tuple[Callable[[float, float], Tuple[float, float]], float]:
    """Map from world to SVG coordinates, and the scale factor."""
    xmin, ymin, xmax, ymax = curve.bounding_box()
    for overlay in spec.overlays:
        for c in overlay.circles:
            xmin, xmax = min(xmin, c.center.x - c.radius), max(xmax, c.center.x + c.radius)
            ymin, ymax = min(ymin, c.center.y - c.radius), max(ymax, c.center.y + c.radius)
    pad_x = MARGIN * (xmax - xmin)
    pad_y = MARGIN * (ymax - ymin)
    scale = min(
        spec.width_px / (xmax - xmin + 2 * pad_x),
        spec.height_px / (ymax - ymin + 2 * pad_y),
    )
    def to_svg(x: float, y: float) -> Tuple[float, float]:
        return (
            round((x - xmin + pad_x) * scale, 6),
            round((ymax + pad_y - y) * scale, 6),
        )
    return to_svg, scale

def curve_path(
    curve: ClosedArcSpline,
    to_svg: Callable[[float, float], Tuple[float, float]],
    scale: float,
    **attribs: object,
) -> svgwrite.path.Path:
    """One closed path: a line or arc command per segment."""
    path = svgwrite.path.Path(**attribs)
    first = curve.pieces[0]
    path.push('M', *to_svg(first.x0, first.y0))
    for piece in curve.pieces:
        target = to_svg(piece.x1, piece.y1)
        if piece.straight:
            path.push('L', *target)
            continue
        # Flipping y turns counterclockwise into the SVG positive direction.
        path.push_arc(
            target, 0, round(piece.rho * scale, 6),
            large_arc=abs(piece.sweep) > math.pi,
            angle_dir='+' if piece.kappa > 0 else '-',
            absolute=True,
        )
    path.push('Z')
    return path

def render_svg(curve: ClosedArcSpline, spec: RenderSpec = RenderSpec()) -> str:
    """The SVG document for `curve` and the overlays of `spec`, as text."""
    to_svg, scale = _frame(curve, spec)
    drawing = svgwrite.Drawing(size=(spec.width_px, spec.height_px), profile='full')
    drawing.add(curve_path(
        curve, to_svg, scale, stroke='black', fill='none', stroke_width=spec.stroke,
    ))
    for overlay in spec.overlays:
        group = drawing.g(fill='none', stroke=overlay.color, stroke_width=spec.stroke / 2)
        for c in overlay.circles:
            group.add(drawing.circle(center=to_svg(c.center.x, c.center.y), r=round(c.radius * scale, 6)))
        for p in overlay.points:
            group.add(drawing.circle(center=to_svg(p.x, p.y), r=2 * spec.stroke, fill=overlay.color))
        for i, label in enumerate(overlay.labels):
            if i < len(overlay.points):
                x, y = to_svg(overlay.points[i].x, overlay.points[i].y)
                insert = (round(x + 4 * spec.stroke, 6), round(y - 4 * spec.stroke, 6))
            else:
                insert = (10, 20 * (i - len(overlay.points) + 1))
            group.add(drawing.text(label, insert=insert, stroke='none', fill=overlay.color, font_size=14))
        drawing.add(group)
    return str(drawing.tostring())

def save_svg(
    curve: ClosedArcSpline, path: str, spec: RenderSpec = RenderSpec(),
) -> None:
    """
    Write :func:`render_svg` output to `path`.

    :raises OSError: if the file cannot be written.
    """
    with open(path, 'w', encoding='utf-8', newline='\n') as fout:
        fout.write(render_svg(curve, spec))
