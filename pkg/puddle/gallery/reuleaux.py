"""
Rounded Reuleaux triangles, and the arc exchange which turns them into other
curves of the same length.

A Reuleaux triangle with corners rounded by radius `rho` has constant width,
so by Barbier's theorem its length is ``pi * width``. With width 4 and
``rho >= 1`` the curvature is at most 1, so these are all curves of length
exactly 4pi with two unit disks inside.

:func:`arc_exchange` replaces one of the large arcs by three unit arcs
(convex, concave, convex) with the same end points and end headings. For
``rho = 1`` this preserves length exactly, and exchanging all three large
arcs gives ``three_circle_border(0)``.
"""

import logging
import math
from typing import List, Optional, Tuple

from puddle import curves
from puddle.curves import (
    ClosedArcSpline, DEFAULT_TOLERANCES, Point2, Segment, ToleranceConfig,
    segments_from_arrays, validate,
)
from puddle.errors import CurveError, ParameterError

logger = logging.getLogger(__name__)

#: Indices of the large arcs in a rounded Reuleaux triangle.
LARGE_ARCS = (1, 3, 5)

def rounded_reuleaux(width: float = 4.0, rho: float = 1.0) -> ClosedArcSpline:
    """
    Corner arcs of radius `rho` about the vertices of a Reuleaux triangle of
    side ``width - 2 rho``, alternating with arcs of radius ``width - rho``
    about the opposite vertices. The first segment is the top corner.

    ``rho = width / 2`` gives the circle of diameter `width`.

    :raises ParameterError: unless ``1 <= rho <= width / 2``.
    """
    if not 1 <= rho <= width / 2:
        raise ParameterError(f'1 <= rho <= width/2 required, got rho={rho}, width={width}')
    side = width - 2 * rho
    top = Point2(0, side / math.sqrt(3))
    sixth = math.pi / 3
    big = width - rho
    kappas = [1 / rho, 1 / big] * 3
    lengths = [rho * sixth, big * sixth] * 3
    return validate(ClosedArcSpline(
        Point2(top.x + rho * math.cos(sixth), top.y + rho * math.sin(sixth)),
        sixth + math.pi / 2,
        segments_from_arrays(kappas, lengths),
    ))

def _ccw_angle(a: Tuple[float, float], b: Tuple[float, float]) -> float:
    """Counterclockwise angle from direction `a` to direction `b`, in [0, 2pi)."""
    return (math.atan2(b[1], b[0]) - math.atan2(a[1], a[0])) % curves.TAU

def _unit_arcs(
    start: Tuple[float, float],
    end: Tuple[float, float],
    centers: Tuple[Tuple[float, float], Tuple[float, float], Tuple[float, float]],
    sign: float,
) -> List[float]:
    """Sweeps of the three unit arcs through the given centres."""
    c1, c2, c3 = centers
    def vec(p: Tuple[float, float], q: Tuple[float, float]) -> Tuple[float, float]:
        return q[0] - p[0], q[1] - p[1]
    def swept(a: Tuple[float, float], b: Tuple[float, float], direction: float) -> float:
        angle = _ccw_angle(a, b) if direction > 0 else _ccw_angle(b, a)
        return 0.0 if angle > curves.TAU - 1e-12 else angle
    return [
        swept(vec(c1, start), vec(c1, c2), sign),
        swept(vec(c2, c1), vec(c2, c3), -sign),
        swept(vec(c3, c2), vec(c3, end), sign),
    ]

def arc_exchange(
    curve: ClosedArcSpline,
    seg_index: int,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> ClosedArcSpline:
    """
    Replace segment `seg_index`, which must have curvature ``+-1/3``, by
    three unit arcs with curvature signs ``(+, -, +)`` relative to it.

    The outer arcs are fixed by the end points and headings of the removed
    arc. The middle arc is tangent to both from outside, which leaves two
    choices of centre. The one whose sweeps reproduce the original turning
    is used, the shorter if both do. The change in length is logged, not
    assumed to be zero.

    :raises ParameterError: if the segment does not have curvature ``+-1/3``.
    :raises CurveError: if no such three arcs exist, or the result is not a
      valid curve.
    """
    if not 0 <= seg_index < len(curve.segments):
        raise ParameterError(f'0 <= seg_index < {len(curve.segments)} required, got {seg_index}')
    piece = curve.pieces[seg_index]
    if abs(abs(piece.kappa) - 1 / 3) > tol.tol_geom:
        raise ParameterError(f'|kappa| = 1/3 required, got {piece.kappa}')
    sign = math.copysign(1.0, piece.kappa)
    start = (piece.x0, piece.y0)
    end = (piece.x1, piece.y1)
    c1 = (piece.x0 - sign * math.sin(piece.h0), piece.y0 + sign * math.cos(piece.h0))
    c3 = (piece.x1 - sign * math.sin(piece.h1), piece.y1 + sign * math.cos(piece.h1))
    gap = math.hypot(c3[0] - c1[0], c3[1] - c1[1])
    if gap > 4 or gap == 0:
        raise CurveError(f'outer arc centres are {gap:.6g} apart, need 0 < gap <= 4', 'segment', seg_index)
    ux, uy = (c3[0] - c1[0]) / gap, (c3[1] - c1[1]) / gap
    across = math.sqrt(max(4 - (gap / 2) ** 2, 0.0))
    mx, my = (c1[0] + c3[0]) / 2, (c1[1] + c3[1]) / 2
    best: Optional[List[float]] = None
    for side in (1.0, -1.0):
        c2 = (mx - side * across * uy, my + side * across * ux)
        sweeps = _unit_arcs(start, end, (c1, c2, c3), sign)
        turn = sign * (sweeps[0] - sweeps[1] + sweeps[2])
        if abs(turn - piece.sweep) > 1e-9:
            continue
        if best is None or sum(sweeps) < sum(best):
            best = sweeps
    if best is None:
        raise CurveError('no three-arc interpolation reproduces the turning', 'segment', seg_index)
    replacement = [
        Segment(kappa, swept) for kappa, swept in zip((sign, -sign, sign), best)
        if swept > 0
    ]
    segments = curve.segments[:seg_index] + tuple(replacement) + curve.segments[seg_index + 1:]
    result = validate(ClosedArcSpline(curve.start, curve.heading0, segments), tol)
    logger.info(
        'exchanged segment %d: length %.12g -> %.12g',
        seg_index, curve.total_length, result.total_length,
    )
    return result
