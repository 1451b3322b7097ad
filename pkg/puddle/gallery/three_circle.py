"""
The border of three nearly touching unit circles.

The circles are centred at the vertices of an equilateral triangle of side
``s = 2 - l``, and consecutive circles are joined by concave unit arcs from
circles tangent to both of them from outside. Each vertex arc sweeps
``2pi/3 + phi`` and each connector sweeps ``phi = 2 asin(s/4)``, so the
length is ``2pi + 12 asin(s/4)``. This increases to 4pi as `l` decreases to
0, where the three unit disks touch each other.

`l` ranges over ``[0, 2)``. At ``l = 2`` the triangle collapses to a point.
"""

import math
from typing import List, Tuple

from puddle.curves import ClosedArcSpline, Point2, segments_from_arrays, validate
from puddle.errors import ParameterError

L_MAX = 2.0

def vertices(l: float) -> List[Point2]:
    """Centres of the three unit circles, counterclockwise from the top."""
    radius = (2 - l) / math.sqrt(3)
    return [
        Point2(radius * math.cos(angle), radius * math.sin(angle))
        for angle in (math.pi / 2, 7 * math.pi / 6, 11 * math.pi / 6)
    ]

def sweeps(l: float) -> Tuple[float, float]:
    """Angles swept by each vertex arc and each connector arc."""
    phi = 2 * math.asin((2 - l) / 4)
    return 2 * math.pi / 3 + phi, phi

def three_circle_border(l: float = 0.2) -> ClosedArcSpline:
    """
    :raises ParameterError: unless ``0 <= l < 2``.
    """
    if not 0 <= l < L_MAX:
        raise ParameterError(f'0 <= l < {L_MAX} required, got {l}')
    convex, concave = sweeps(l)
    top = vertices(l)[0]
    # The top arc starts where it meets the connector on the right.
    angle = math.pi / 2 - convex / 2
    return validate(ClosedArcSpline(
        Point2(top.x + math.cos(angle), top.y + math.sin(angle)),
        angle + math.pi / 2,
        segments_from_arrays([1.0, -1.0] * 3, [convex, concave] * 3),
    ))
