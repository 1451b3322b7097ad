"""
The round examples: the circle of radius 2, which has length exactly 4pi
and holds two unit disks touching each other, and the stadium, which is the
shortest curve of diameter 4 with curvature at most 1.
"""

import math

from puddle.curves import ClosedArcSpline, Point2, segments_from_arrays, validate
from puddle.errors import ParameterError

def circle(r: float = 2.0) -> ClosedArcSpline:
    """
    The circle of radius `r` about the origin, as two semicircles starting
    from ``(r, 0)``.
    """
    if not r > 0:
        raise ParameterError(f'r > 0 required, got {r}')
    half = math.pi * r
    return validate(ClosedArcSpline(
        Point2(r, 0), math.pi / 2, segments_from_arrays([1 / r] * 2, [half] * 2),
    ))

def stadium(a: float = 2.0) -> ClosedArcSpline:
    """
    Two unit semicircles centred on ``(0, 0)`` and ``(a, 0)``, joined by
    straight segments of length `a`. For ``a = 2`` this has diameter 4 and
    length ``2pi + 4``. For ``a = 0`` it is the unit circle.
    """
    if not a >= 0:
        raise ParameterError(f'a >= 0 required, got {a}')
    if a == 0:
        kappas, lengths = [1.0, 1.0], [math.pi, math.pi]
    else:
        kappas, lengths = [0.0, 1.0, 0.0, 1.0], [a, math.pi, a, math.pi]
    return validate(ClosedArcSpline(
        Point2(0, -1), 0.0, segments_from_arrays(kappas, lengths),
    ))
