"""
Two unit lobes joined by a narrow concave neck. Such a curve holds the two
lobe disks and nothing else: pulling the lobes further apart (increasing
`d`) never makes room for a third unit disk.

The neck is made of two arcs of radius `R`, centred at ``(0, +-y0)`` and
tangent to both lobes from outside, so ``|(d/2, -y0)| = R + 1``.
"""

import math

from puddle.curves import ClosedArcSpline, Point2, segments_from_arrays, validate
from puddle.errors import ParameterError

def neck_offset(d: float, R: float) -> float:
    """Height ``y0`` of the connector centres above the axis."""
    return math.sqrt((R + 1) ** 2 - (d / 2) ** 2)

def dumbbell(d: float = 6.0, R: float = 4.8) -> ClosedArcSpline:
    """
    Unit lobes centred at ``(+-d/2, 0)`` and concave connectors of radius
    `R`. The defaults give a neck of half-width about 0.164 and diameter 8.

    :raises ParameterError: unless ``d > 2``, ``R >= 1``, ``R + 1 > d/2``
      (the connector can reach both lobes) and ``2R + 1 > d^2/4`` (the
      connectors do not cross each other).
    """
    if not d > 2:
        raise ParameterError(f'd > 2 required, got {d}')
    if not R >= 1:
        raise ParameterError(f'R >= 1 required, got {R}')
    if not R + 1 > d / 2:
        raise ParameterError(f'R + 1 > d/2 required, got R={R}, d={d}')
    if not 2 * R + 1 > d * d / 4:
        raise ParameterError(f'2R + 1 > d^2/4 required, got R={R}, d={d}')
    y0 = neck_offset(d, R)
    beta = math.atan2(d / 2, y0)
    # Polar angle, about the right lobe centre, of its junction with the
    # upper connector.
    alpha = math.pi / 2 + beta
    psi = 2 * beta
    kappas = [1.0, -1 / R, 1.0, -1 / R, 1.0]
    lengths = [alpha, R * psi, 2 * alpha, R * psi, alpha]
    return validate(ClosedArcSpline(
        Point2(d / 2 + 1, 0), math.pi / 2, segments_from_arrays(kappas, lengths),
    ))
