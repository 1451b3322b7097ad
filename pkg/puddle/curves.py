"""
Closed arc-spline curves and the geometric predicates built on them.

A :class:`ClosedArcSpline` is a loop made of circular arcs and straight
segments, described by a start point, a start heading, and a list of
:class:`Segment` objects each giving a signed curvature and an arclength.
Everything here is evaluated in closed form: points, distances, winding
numbers, intersections and the diameter come from circle and line formulas,
never from numerical integration.

Curves are normalised to counterclockwise orientation by :func:`validate`,
so the interior is always on the left and a positive curvature means the
curve bends towards the interior.

.. code-block:: pycon

    >>> from puddle.gallery import circle
    >>> from puddle import curves
    >>> curves.length(circle(2))
    12.566370614359172
    >>> curves.diameter(circle(2))[0]
    4.0
"""

from bisect import bisect_right
from dataclasses import dataclass
import functools
import math
import os
from typing import (
    Any, Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional,
    Sequence, Tuple,
)

import numpy as np

from .errors import BoundaryPointError, CurveError, ParameterError

TAU = 2 * math.pi

#: Curvatures smaller than this in magnitude are treated as straight lines.
#: Otherwise the centre of the supporting circle is too far away to be
#: computed accurately.
STRAIGHT_KAPPA = 1e-12

#: Two pieces meeting at a junction may touch within this distance of the
#: shared endpoint without the curve counting as self-intersecting.
JUNCTION_SLACK = 1e-6

@dataclass(frozen=True)
class ToleranceConfig(object):
    """
    Numerical tolerances shared by every operation.

    :param tol_close: Slack allowed in closure and total turning.
    :param tol_geom: Slack for distance comparisons.
    :param tol_radius: Stopping width of the incircle radius search.
    :param eps_arc: Span length at which the lemma procedure stops halving.
    :param grid_h: Grid step of the feasible-centre oracle.
    """
    tol_close: float = 1e-9
    tol_geom: float = 1e-9
    tol_radius: float = 1e-9
    eps_arc: float = 1e-6
    grid_h: float = 0.01
    def __post_init__(self) -> None:
        for name in ('tol_close', 'tol_geom', 'tol_radius', 'eps_arc', 'grid_h'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ParameterError(f'{name} > 0 required, got {value!r}')
    @property
    def tol_contact(self) -> float:
        """Distance slack within which a curve point counts as a contact."""
        return 100 * (self.tol_geom + self.tol_radius)
    @classmethod
    def from_env(
        cls, environ: Mapping[str, str] = os.environ,
    ) -> 'ToleranceConfig':
        """
        Default tolerances, except that ``PUDDLE_TOL`` (if set) overrides
        `tol_geom`.
        """
        value = environ.get('PUDDLE_TOL')
        if value is None:
            return cls()
        try:
            return cls(tol_geom=float(value))
        except ValueError:
            raise ParameterError(f'PUDDLE_TOL is not a positive number: {value!r}')

DEFAULT_TOLERANCES = ToleranceConfig()

@dataclass(frozen=True)
class Point2(object):
    """A point in the plane. Coordinates must be finite."""
    x: float
    y: float
    def __post_init__(self) -> None:
        object.__setattr__(self, 'x', float(self.x))
        object.__setattr__(self, 'y', float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise CurveError(f'non-finite point ({self.x}, {self.y})', 'finite')
    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y
    def dist(self, other: 'Point2') -> float:
        return math.hypot(self.x - other.x, self.y - other.y)
    def as_list(self) -> List[float]:
        return [self.x, self.y]

@dataclass(frozen=True)
class Segment(object):
    """
    One piece of an arc-spline.

    :param kappa: Signed curvature. Positive turns left along the direction
      of travel, 0 is a straight line.
    :param length: Arclength, strictly positive. A segment may not wrap a
      full circle.
    """
    kappa: float
    length: float
    def __post_init__(self) -> None:
        object.__setattr__(self, 'kappa', float(self.kappa))
        object.__setattr__(self, 'length', float(self.length))
        if not (math.isfinite(self.kappa) and math.isfinite(self.length)):
            raise CurveError('non-finite segment', 'finite')
        if self.length <= 0:
            raise CurveError(f'len > 0 required, got {self.length}', 'segment')
        if abs(self.kappa) * self.length >= TAU:
            raise CurveError(
                f'|kappa| * len < 2pi required, got {abs(self.kappa) * self.length}',
                'segment',
            )
    @property
    def turn(self) -> float:
        return self.kappa * self.length

@dataclass(frozen=True)
class Circle(object):
    center: Point2
    radius: float
    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ParameterError(f'radius > 0 required, got {self.radius}')
    def to_json_dict(self) -> Dict[str, Any]:
        return {'center': self.center.as_list(), 'radius': self.radius}

class Piece(NamedTuple):
    """
    A segment placed in the plane. For a straight piece `rho` is infinite
    and the centre fields are NaN.
    """
    index: int
    t0: float
    length: float
    kappa: float
    x0: float
    y0: float
    h0: float
    x1: float
    y1: float
    h1: float
    cx: float
    cy: float
    rho: float
    psi0: float
    sweep: float
    @property
    def straight(self) -> bool:
        return abs(self.kappa) < STRAIGHT_KAPPA
    @property
    def t1(self) -> float:
        return self.t0 + self.length
    def at(self, s: float) -> Tuple[float, float, float]:
        """Point and heading at arclength `s` from the start of the piece."""
        if self.straight:
            return (
                self.x0 + s * math.cos(self.h0),
                self.y0 + s * math.sin(self.h0),
                self.h0,
            )
        psi = self.psi0 + self.kappa * s
        return (
            self.cx + self.rho * math.cos(psi),
            self.cy + self.rho * math.sin(psi),
            self.h0 + self.kappa * s,
        )
    def param_of_angle(self, psi: float, slack: float = 0.0) -> Optional[float]:
        """
        Arclength from the start of this arc to the point at polar angle
        `psi` about the centre, or None if that point is not on the arc.
        `slack` is a distance allowed beyond either end.
        """
        rel = ((psi - self.psi0) * math.copysign(1.0, self.kappa)) % TAU
        s = rel * self.rho
        if s > TAU * self.rho - slack:
            s -= TAU * self.rho
        if -slack <= s <= self.length + slack:
            return min(max(s, 0.0), self.length)
        return None
    def contains(self, x: float, y: float, slack: float) -> bool:
        """
        True if a point known to lie on the supporting line or circle of
        this piece is within the piece (up to `slack` past the ends).
        """
        if self.straight:
            u = (x - self.x0) * math.cos(self.h0) + (y - self.y0) * math.sin(self.h0)
            return -slack <= u <= self.length + slack
        psi = math.atan2(y - self.cy, x - self.cx)
        return self.param_of_angle(psi, slack) is not None
    def ccw_interval(self) -> Tuple[float, float]:
        """Start angle and width of this arc, measured counterclockwise."""
        if self.kappa > 0:
            return self.psi0, self.sweep
        return self.psi0 + self.sweep, -self.sweep

@dataclass(frozen=True)
class ArcSpan(object):
    """
    A sub-arc of a closed curve, running forwards from `t_lo` to `t_hi`.
    Parameters are read cyclically, so the span may pass through the start
    point of the curve.
    """
    t_lo: float
    t_hi: float
    def check(self, total: float) -> None:
        """
        :raises ParameterError: unless both ends are in ``[0, total)`` and
          the span is not empty.
        """
        for t in (self.t_lo, self.t_hi):
            if not 0 <= t < total:
                raise ParameterError(f'0 <= t < {total} required, got {t}')
        if self.t_lo == self.t_hi:
            raise ParameterError('span length > 0 required')
    def length(self, total: float) -> float:
        return (self.t_hi - self.t_lo) % total
    def offset(self, t: float, total: float) -> float:
        """Arclength from `t_lo` forwards to `t`."""
        return (t - self.t_lo) % total
    def contains(self, t: float, total: float) -> bool:
        return self.offset(t, total) <= self.length(total)
    def at_fraction(self, fraction: float, total: float) -> float:
        return (self.t_lo + fraction * self.length(total)) % total
    def midpoint(self, total: float) -> float:
        return self.at_fraction(0.5, total)

def _trace(
    start: Point2, heading: float, segments: Sequence[Segment],
) -> Tuple[Piece, ...]:
    pieces = []
    x, y, h, t = start.x, start.y, heading, 0.0
    for index, seg in enumerate(segments):
        k = seg.kappa
        if abs(k) < STRAIGHT_KAPPA:
            x1 = x + seg.length * math.cos(h)
            y1 = y + seg.length * math.sin(h)
            cx = cy = psi0 = math.nan
            rho = math.inf
        else:
            rho = 1 / abs(k)
            cx = x - math.sin(h) / k
            cy = y + math.cos(h) / k
            psi0 = h - math.copysign(math.pi / 2, k)
            x1 = cx + rho * math.cos(psi0 + k * seg.length)
            y1 = cy + rho * math.sin(psi0 + k * seg.length)
        h1 = h + k * seg.length
        pieces.append(Piece(
            index, t, seg.length, k, x, y, h, x1, y1, h1, cx, cy, rho, psi0,
            k * seg.length,
        ))
        x, y, h, t = x1, y1, h1, t + seg.length
    return tuple(pieces)

def _wrap_angle(angle: float) -> float:
    """Reduce an angle to the range [-pi, pi)."""
    return (angle + math.pi) % TAU - math.pi

@dataclass(frozen=True)
class ClosedArcSpline(object):
    """
    A piecewise circular-arc / straight-segment loop.

    Construction checks each segment (positive length, no full wraps) but not
    the global invariants, so that open or self-intersecting segment lists
    can still be inspected with :func:`report`. Use :func:`validate` to check
    closure, turning number and simplicity, and to normalise orientation.

    :param start: Start point of the first segment.
    :param heading0: Tangent direction at `start`, in radians.
    :param segments: The segments in traversal order.
    """
    start: Point2
    heading0: float
    segments: Tuple[Segment, ...]
    def __post_init__(self) -> None:
        object.__setattr__(self, 'segments', tuple(self.segments))
        object.__setattr__(self, 'heading0', float(self.heading0))
        if not self.segments:
            raise CurveError('at least one segment required', 'segment')
        if not math.isfinite(self.heading0):
            raise CurveError('non-finite heading', 'finite')
    @functools.cached_property
    def pieces(self) -> Tuple[Piece, ...]:
        return _trace(self.start, self.heading0, self.segments)
    @functools.cached_property
    def _starts(self) -> Tuple[float, ...]:
        return tuple(piece.t0 for piece in self.pieces)
    @property
    def total_length(self) -> float:
        return math.fsum(seg.length for seg in self.segments)
    @property
    def turning(self) -> float:
        """Total signed curvature, 2pi times the turning number."""
        return math.fsum(seg.turn for seg in self.segments)
    def closure_gap(self) -> Tuple[float, float]:
        """
        Return the distance from the end point back to the start, and the
        difference between end and start headings reduced to [-pi, pi).
        """
        last = self.pieces[-1]
        gap = math.hypot(last.x1 - self.start.x, last.y1 - self.start.y)
        return gap, _wrap_angle(last.h1 - self.heading0)
    def is_closed(self, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
        gap, heading_gap = self.closure_gap()
        return gap <= tol.tol_close and abs(heading_gap) <= tol.tol_close
    def piece_at(self, t: float) -> Piece:
        """The piece containing arclength parameter `t` (not range-checked)."""
        idx = bisect_right(self._starts, t) - 1
        return self.pieces[max(0, min(idx, len(self.pieces) - 1))]
    def rotated(self, k: int) -> 'ClosedArcSpline':
        """
        The same closed curve, with traversal starting at segment `k`.
        """
        k %= len(self.segments)
        piece = self.pieces[k]
        return ClosedArcSpline(
            Point2(piece.x0, piece.y0),
            piece.h0 % TAU,
            self.segments[k:] + self.segments[:k],
        )
    def reversed(self) -> 'ClosedArcSpline':
        """The same closed curve traversed in the opposite direction."""
        return ClosedArcSpline(
            self.start,
            (self.heading0 + math.pi) % TAU,
            tuple(Segment(-seg.kappa, seg.length) for seg in reversed(self.segments)),
        )
    def scaled(self, factor: float) -> 'ClosedArcSpline':
        """
        The curve enlarged by `factor` about the origin. Curvatures are
        divided by `factor`, so enlarging never breaks a curvature bound.
        """
        if not factor > 0:
            raise ParameterError(f'scale factor > 0 required, got {factor}')
        return ClosedArcSpline(
            Point2(self.start.x * factor, self.start.y * factor),
            self.heading0,
            tuple(Segment(seg.kappa / factor, seg.length * factor) for seg in self.segments),
        )
    def bounding_box(self) -> Tuple[float, float, float, float]:
        """Exact ``(xmin, ymin, xmax, ymax)`` of the curve."""
        xs: List[float] = []
        ys: List[float] = []
        for piece in self.pieces:
            xs += [piece.x0, piece.x1]
            ys += [piece.y0, piece.y1]
            if piece.straight:
                continue
            for quarter in range(4):
                psi = quarter * math.pi / 2
                if piece.param_of_angle(psi) is not None:
                    xs.append(piece.cx + piece.rho * math.cos(psi))
                    ys.append(piece.cy + piece.rho * math.sin(psi))
        return min(xs), min(ys), max(xs), max(ys)

def validate(
    curve: ClosedArcSpline, tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> ClosedArcSpline:
    """
    Check closure, turning number and simplicity. Return the curve oriented
    counterclockwise (which is `curve` itself when it already is).

    :raises CurveError: naming the first violated invariant.
    """
    gap, heading_gap = curve.closure_gap()
    if gap > tol.tol_close:
        raise CurveError(f'end point misses start by {gap:.3g}', 'closure')
    if abs(heading_gap) > tol.tol_close:
        raise CurveError(f'end heading misses start by {heading_gap:.3g}', 'closure')
    turning = curve.turning
    if abs(abs(turning) - TAU) > tol.tol_close:
        raise CurveError(f'total turning {turning:.12g} is not +-2pi', 'turning')
    if not is_simple(curve, tol):
        raise CurveError('curve intersects itself', 'simple')
    if turning < 0:
        return curve.reversed()
    return curve

def _check_param(curve: ClosedArcSpline, t: float) -> None:
    if not 0 <= t < curve.total_length:
        raise ParameterError(
            f'0 <= t < {curve.total_length} required, got {t}'
        )

def evaluate(curve: ClosedArcSpline, t: float) -> Tuple[Point2, float, float]:
    """
    Return the point, tangent heading and curvature at arclength `t`.

    :raises ParameterError: unless ``0 <= t < length(curve)``.
    """
    _check_param(curve, t)
    piece = curve.piece_at(t)
    x, y, h = piece.at(t - piece.t0)
    return Point2(x, y), h, piece.kappa

def points_at(
    curve: ClosedArcSpline, ts: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorised evaluation of the points at arclength parameters `ts`."""
    ts = np.mod(np.asarray(ts, dtype=float), curve.total_length)
    idx = np.clip(
        np.searchsorted(np.array(curve._starts), ts, side='right') - 1,
        0, len(curve.pieces) - 1,
    )
    xs = np.empty_like(ts)
    ys = np.empty_like(ts)
    for piece in curve.pieces:
        mask = idx == piece.index
        s = ts[mask] - piece.t0
        if piece.straight:
            xs[mask] = piece.x0 + s * math.cos(piece.h0)
            ys[mask] = piece.y0 + s * math.sin(piece.h0)
        else:
            psi = piece.psi0 + piece.kappa * s
            xs[mask] = piece.cx + piece.rho * np.cos(psi)
            ys[mask] = piece.cy + piece.rho * np.sin(psi)
    return xs, ys

def sample(curve: ClosedArcSpline, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """`n` points at uniform arclength spacing, starting at the start point."""
    if n < 1:
        raise ParameterError(f'n >= 1 required, got {n}')
    return points_at(curve, curve.total_length * np.arange(n) / n)

def length(curve: ClosedArcSpline) -> float:
    return curve.total_length

def max_abs_curvature(curve: ClosedArcSpline) -> float:
    return max(abs(seg.kappa) for seg in curve.segments)

# Intersections --------------------------------------------------------------

def _line_line(a: Piece, b: Piece, slack: float) -> List[Tuple[float, float]]:
    dax, day = math.cos(a.h0), math.sin(a.h0)
    dbx, dby = math.cos(b.h0), math.sin(b.h0)
    denom = dax * dby - day * dbx
    rx, ry = b.x0 - a.x0, b.y0 - a.y0
    if abs(denom) < 1e-15:
        if abs(rx * day - ry * dax) > slack:
            return []
        # Collinear: report the overlap's end points, if there is an overlap.
        lo = rx * dax + ry * day
        hi = lo + b.length * (dax * dbx + day * dby)
        lo, hi = sorted((lo, hi))
        lo, hi = max(lo, 0.0), min(hi, a.length)
        if hi - lo <= JUNCTION_SLACK:
            return []
        return [(a.x0 + lo * dax, a.y0 + lo * day), (a.x0 + hi * dax, a.y0 + hi * day)]
    u = (rx * dby - ry * dbx) / denom
    v = (rx * day - ry * dax) / denom
    if -slack <= u <= a.length + slack and -slack <= v <= b.length + slack:
        return [(a.x0 + u * dax, a.y0 + u * day)]
    return []

def _line_circle(
    line: Piece, cx: float, cy: float, rho: float, slack: float,
) -> List[Tuple[float, float]]:
    dx, dy = math.cos(line.h0), math.sin(line.h0)
    fx, fy = line.x0 - cx, line.y0 - cy
    b = fx * dx + fy * dy
    disc = b * b - (fx * fx + fy * fy - rho * rho)
    if disc < 0:
        if disc < -2 * rho * slack:
            return []
        roots = [-b]
    else:
        root = math.sqrt(disc)
        roots = [-b - root, -b + root]
    return [(line.x0 + u * dx, line.y0 + u * dy) for u in roots]

def _circle_circle(a: Piece, b: Piece, slack: float) -> List[Tuple[float, float]]:
    ux, uy = b.cx - a.cx, b.cy - a.cy
    d = math.hypot(ux, uy)
    r1, r2 = a.rho, b.rho
    if d > r1 + r2 + slack or d < abs(r1 - r2) - slack:
        return []
    ux, uy = ux / d, uy / d
    if abs(d - (r1 + r2)) <= slack:
        return [(a.cx + r1 * ux, a.cy + r1 * uy)]
    if abs(d - abs(r1 - r2)) <= slack:
        sign = 1.0 if r1 > r2 else -1.0
        return [(a.cx + sign * r1 * ux, a.cy + sign * r1 * uy)]
    along = (r1 * r1 - r2 * r2 + d * d) / (2 * d)
    across = math.sqrt(max(r1 * r1 - along * along, 0.0))
    bx, by = a.cx + along * ux, a.cy + along * uy
    return [(bx - across * uy, by + across * ux), (bx + across * uy, by - across * ux)]

def _arc_overlap(a: Piece, b: Piece) -> float:
    """Length of the common part of two arcs of the same circle."""
    lo1, w1 = a.ccw_interval()
    lo2, w2 = b.ccw_interval()
    delta = (lo2 - lo1) % TAU
    overlap = max(0.0, min(w1, delta + w2) - delta)
    overlap += max(0.0, min(w1, delta + w2 - TAU))
    return overlap * a.rho

def _touching(a: Piece, b: Piece, slack: float) -> List[Tuple[float, float]]:
    """Points where two pieces meet (a same-circle overlap gives its ends)."""
    if a.straight and b.straight:
        return _line_line(a, b, slack)
    if a.straight or b.straight:
        line, arc = (a, b) if a.straight else (b, a)
        found = _line_circle(line, arc.cx, arc.cy, arc.rho, slack)
        return [p for p in found if line.contains(*p, slack) and arc.contains(*p, slack)]
    if math.hypot(a.cx - b.cx, a.cy - b.cy) <= slack:
        if abs(a.rho - b.rho) > slack or _arc_overlap(a, b) <= JUNCTION_SLACK:
            return []
        return [(a.x0, a.y0), (a.x1, a.y1), (b.x0, b.y0), (b.x1, b.y1)]
    found = _circle_circle(a, b, slack)
    return [p for p in found if a.contains(*p, slack) and b.contains(*p, slack)]

def intersection_count(
    pieces: Sequence[Piece],
    closed: bool = True,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> int:
    """
    Count the pairs of pieces which meet anywhere other than at a shared
    junction. A simple curve has count 0.
    """
    n = len(pieces)
    count = 0
    slack = tol.tol_geom
    for i in range(n):
        for j in range(i, n):
            a, b = pieces[i], pieces[j]
            if i == j:
                # A single piece can only meet itself by wrapping, which
                # segment validation already rules out.
                continue
            allowed = []
            if j == i + 1:
                allowed.append((a.x1, a.y1))
            if closed and i == 0 and j == n - 1:
                allowed.append((a.x0, a.y0))
            for x, y in _touching(a, b, slack):
                if all(math.hypot(x - ax, y - ay) > JUNCTION_SLACK for ax, ay in allowed):
                    count += 1
                    break
    return count

def is_simple(
    curve: ClosedArcSpline, tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> bool:
    """
    True if no two pieces of the closed curve meet except adjacent pieces at
    their shared end point.

    :raises CurveError: if the curve is not closed.
    """
    if not curve.is_closed(tol):
        raise CurveError('simplicity needs a closed curve', 'closure')
    return intersection_count(curve.pieces, closed=True, tol=tol) == 0

# Distances and winding ------------------------------------------------------

def _piece_nearest(
    piece: Piece, xs: np.ndarray, ys: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray]:
    """Distance from each point to `piece`, and the arclength of the foot."""
    if piece.straight:
        dx, dy = math.cos(piece.h0), math.sin(piece.h0)
        u = np.clip((xs - piece.x0) * dx + (ys - piece.y0) * dy, 0.0, piece.length)
        dist = np.hypot(xs - piece.x0 - u * dx, ys - piece.y0 - u * dy)
        return dist, u
    rx, ry = xs - piece.cx, ys - piece.cy
    r = np.hypot(rx, ry)
    rel = np.mod((np.arctan2(ry, rx) - piece.psi0) * math.copysign(1.0, piece.kappa), TAU)
    s = rel * piece.rho
    inside = s <= piece.length
    d0 = np.hypot(xs - piece.x0, ys - piece.y0)
    d1 = np.hypot(xs - piece.x1, ys - piece.y1)
    dist = np.where(inside, np.abs(r - piece.rho), np.minimum(d0, d1))
    foot = np.where(inside, s, np.where(d0 <= d1, 0.0, piece.length))
    return dist, foot

def _piece_angle(piece: Piece, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Signed angle swept by the vector from each point to the piece."""
    ax, ay = piece.x0 - xs, piece.y0 - ys
    bx, by = piece.x1 - xs, piece.y1 - ys
    cross = ax * by - ay * bx
    dot = ax * bx + ay * by
    chord = np.arctan2(cross, dot)
    if piece.straight:
        return chord
    sign = math.copysign(1.0, piece.kappa)
    mid = piece.psi0 + piece.sweep / 2
    mx = piece.cx + piece.rho * math.cos(mid)
    my = piece.cy + piece.rho * math.sin(mid)
    ex, ey = piece.x1 - piece.x0, piece.y1 - piece.y0
    side_mid = ex * (my - piece.y0) - ey * (mx - piece.x0)
    side = ex * (ys - piece.y0) - ey * (xs - piece.x0)
    in_disk = np.hypot(xs - piece.cx, ys - piece.cy) < piece.rho
    in_segment = in_disk & (side * side_mid > 0)
    on_chord = (np.abs(cross) <= 1e-12 * np.hypot(ax, ay) * np.hypot(bx, by)) & (dot < 0)
    return np.where(
        on_chord, sign * math.pi, chord + TAU * sign * in_segment,
    )

def winding_numbers(
    curve: ClosedArcSpline, xs: np.ndarray, ys: np.ndarray,
) -> np.ndarray:
    """
    Winding number of the curve around each point, computed exactly from the
    angle each piece subtends. Points on the curve give meaningless values.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    total = np.zeros_like(xs)
    for piece in curve.pieces:
        total += _piece_angle(piece, xs, ys)
    return np.rint(total / TAU).astype(int)

def distances(
    curve: ClosedArcSpline, xs: np.ndarray, ys: np.ndarray,
) -> np.ndarray:
    """Unsigned distance from each point to the curve."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    best = np.full_like(xs, np.inf)
    for piece in curve.pieces:
        best = np.minimum(best, _piece_nearest(piece, xs, ys)[0])
    return best

def clearance(
    curve: ClosedArcSpline, xs: np.ndarray, ys: np.ndarray,
) -> np.ndarray:
    """
    Vectorised :func:`signed_distance`: positive inside, negative outside,
    zero on the curve.
    """
    dist = distances(curve, xs, ys)
    inside = winding_numbers(curve, xs, ys) != 0
    return np.where(dist == 0, 0.0, np.where(inside, dist, -dist))

def winding_contains(
    curve: ClosedArcSpline,
    p: Point2,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> bool:
    """
    True if the curve winds once around `p`.

    :raises BoundaryPointError: if `p` is within `tol_geom` of the curve.
    """
    xs, ys = np.array([p.x]), np.array([p.y])
    if distances(curve, xs, ys)[0] <= tol.tol_geom:
        raise BoundaryPointError(f'({p.x}, {p.y}) lies on the curve')
    return abs(int(winding_numbers(curve, xs, ys)[0])) == 1

def signed_distance(curve: ClosedArcSpline, p: Point2) -> float:
    """
    Distance from `p` to the curve, positive iff `p` is inside. This is
    1-Lipschitz in `p`.
    """
    return float(clearance(curve, np.array([p.x]), np.array([p.y]))[0])

def nearest_on_pieces(
    curve: ClosedArcSpline, p: Point2,
) -> List[Tuple[float, float]]:
    """
    For each piece, the distance from `p` to its nearest point and the
    curve parameter of that point.
    """
    xs, ys = np.array([p.x]), np.array([p.y])
    result = []
    for piece in curve.pieces:
        dist, foot = _piece_nearest(piece, xs, ys)
        t = (piece.t0 + float(foot[0])) % curve.total_length
        result.append((float(dist[0]), t))
    return result

# Diameter -------------------------------------------------------------------

class _Candidate(NamedTuple):
    dist: float
    t1: float
    t2: float
    p1: Tuple[float, float]
    p2: Tuple[float, float]

def _far_on_arc(
    piece: Piece, x: float, y: float,
) -> Optional[Tuple[float, Tuple[float, float]]]:
    """The point of `piece` farthest from (x, y), if interior to the arc."""
    dx, dy = piece.cx - x, piece.cy - y
    d = math.hypot(dx, dy)
    if d == 0:
        return None
    psi = math.atan2(dy, dx)
    s = piece.param_of_angle(psi)
    if s is None:
        return None
    return s, (piece.cx + piece.rho * dx / d, piece.cy + piece.rho * dy / d)

def _pair_candidates(a: Piece, b: Piece) -> Iterator[Tuple[float, Tuple[float, float], float, Tuple[float, float]]]:
    ends_a = ((0.0, (a.x0, a.y0)), (a.length, (a.x1, a.y1)))
    ends_b = ((0.0, (b.x0, b.y0)), (b.length, (b.x1, b.y1)))
    for sa, pa in ends_a:
        for sb, pb in ends_b:
            yield sa, pa, sb, pb
    if not b.straight:
        for sa, pa in ends_a:
            far = _far_on_arc(b, *pa)
            if far is not None:
                yield sa, pa, far[0], far[1]
    if not a.straight:
        for sb, pb in ends_b:
            far = _far_on_arc(a, *pb)
            if far is not None:
                yield far[0], far[1], sb, pb
    if a.straight or b.straight:
        return
    ux, uy = b.cx - a.cx, b.cy - a.cy
    d = math.hypot(ux, uy)
    if d <= 1e-12:
        # Concentric: farthest pairs are antipodal, and one of each extremal
        # pair can be taken at an arc end point.
        for first, second, flip in ((a, b, False), (b, a, True)):
            for s, (x, y) in ((0.0, (first.x0, first.y0)), (first.length, (first.x1, first.y1))):
                psi = math.atan2(first.cy - y, first.cx - x)
                s2 = second.param_of_angle(psi)
                if s2 is None:
                    continue
                q = (second.cx + second.rho * math.cos(psi), second.cy + second.rho * math.sin(psi))
                if flip:
                    yield s2, q, s, (x, y)
                else:
                    yield s, (x, y), s2, q
        return
    base = math.atan2(uy, ux)
    for psi_a in (base, base + math.pi):
        for psi_b in (base, base + math.pi):
            sa = a.param_of_angle(psi_a)
            sb = b.param_of_angle(psi_b)
            if sa is None or sb is None:
                continue
            yield (
                sa, (a.cx + a.rho * math.cos(psi_a), a.cy + a.rho * math.sin(psi_a)),
                sb, (b.cx + b.rho * math.cos(psi_b), b.cy + b.rho * math.sin(psi_b)),
            )

def _diameter_candidates(pieces: Sequence[Piece], total: float) -> Iterator[_Candidate]:
    for i, a in enumerate(pieces):
        for b in pieces[i:]:
            for sa, pa, sb, pb in _pair_candidates(a, b):
                ta = (a.t0 + sa) % total
                tb = (b.t0 + sb) % total
                if tb < ta:
                    ta, tb, pa, pb = tb, ta, pb, pa
                yield _Candidate(math.hypot(pa[0] - pb[0], pa[1] - pb[1]), ta, tb, pa, pb)

def diameter(
    curve: ClosedArcSpline, tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> Tuple[float, Point2, Point2]:
    """
    Return the maximal distance between two points of the curve, and a pair
    of points realising it.

    Candidates are arc end points, the farthest point of each arc from each
    end point, and pairs on the line through two arc centres; the maximum of
    the distance over two arcs or segments is always at one of these. When
    several pairs realise the maximum within `tol_geom`, the pair with the
    lexicographically smallest curve parameters is returned.
    """
    best, chosen = _diameter_choice(curve, tol)
    return best, Point2(*chosen.p1), Point2(*chosen.p2)

def diameter_parameters(
    curve: ClosedArcSpline, tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> Tuple[float, float, float]:
    """As :func:`diameter`, but giving the curve parameters of the pair."""
    best, chosen = _diameter_choice(curve, tol)
    return best, chosen.t1, chosen.t2

def _diameter_choice(
    curve: ClosedArcSpline, tol: ToleranceConfig,
) -> Tuple[float, _Candidate]:
    candidates = list(_diameter_candidates(curve.pieces, curve.total_length))
    best = max(c.dist for c in candidates)
    chosen = min(
        (c for c in candidates if c.dist >= best - tol.tol_geom),
        key=lambda c: (c.t1, c.t2),
    )
    return best, chosen

def osculating_circle_at(curve: ClosedArcSpline, t: float) -> Optional[Circle]:
    """
    The osculating circle at parameter `t`, or None on a straight segment.
    For an arc-spline this is the supporting circle of the segment.
    """
    _check_param(curve, t)
    piece = curve.piece_at(t)
    if piece.straight:
        return None
    return Circle(Point2(piece.cx, piece.cy), piece.rho)

# Reports and JSON ----------------------------------------------------------

@dataclass(frozen=True)
class CurveReport(object):
    """
    Summary of the quantities the two-disk theorem talks about.

    `problems` lists the invariants that failed validation. A report is
    produced even for curves which fail validation.
    """
    length: float
    max_abs_kappa: float
    diameter: float
    diam_p1: Point2
    diam_p2: Point2
    simple: bool
    turning: float
    closed: bool
    problems: Tuple[str, ...] = ()
    def to_json_dict(self) -> Dict[str, Any]:
        return {
            'length': self.length,
            'max_abs_kappa': self.max_abs_kappa,
            'diameter': self.diameter,
            'diam_p1': self.diam_p1.as_list(),
            'diam_p2': self.diam_p2.as_list(),
            'simple': self.simple,
            'turning': self.turning,
            'closed': self.closed,
            'problems': list(self.problems),
        }

def report(
    curve: ClosedArcSpline, tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> CurveReport:
    """Measure `curve`. Validation failures are flagged, never raised."""
    problems = []
    closed = curve.is_closed(tol)
    if not closed:
        problems.append('closure')
    turning = curve.turning
    if abs(abs(turning) - TAU) > tol.tol_close:
        problems.append('turning')
    simple = closed and is_simple(curve, tol)
    if closed and not simple:
        problems.append('simple')
    diam, p1, p2 = diameter(curve, tol)
    return CurveReport(
        length=length(curve),
        max_abs_kappa=max_abs_curvature(curve),
        diameter=diam,
        diam_p1=p1,
        diam_p2=p2,
        simple=simple,
        turning=turning,
        closed=closed,
        problems=tuple(problems),
    )

def to_json_dict(curve: ClosedArcSpline) -> Dict[str, Any]:
    """The canonical JSON form of a curve."""
    return {
        'start': curve.start.as_list(),
        'heading': curve.heading0,
        'segments': [
            {'kappa': seg.kappa, 'len': seg.length} for seg in curve.segments
        ],
    }

def from_json_dict(data: Any) -> ClosedArcSpline:
    """
    Build a curve from its canonical JSON form. The curve is not validated.

    :raises CurveError: with invariant ``'format'`` naming a missing or
      malformed field, or ``'segment'`` naming the offending segment.
    """
    def number(value: Any, name: str) -> float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise CurveError(f'field {name!r} must be a number', 'format')
        return float(value)
    if not isinstance(data, dict):
        raise CurveError('curve must be a JSON object', 'format')
    for name in ('start', 'heading', 'segments'):
        if name not in data:
            raise CurveError(f'missing field {name!r}', 'format')
    start = data['start']
    if not isinstance(start, list) or len(start) != 2:
        raise CurveError("field 'start' must be [x, y]", 'format')
    segments = []
    if not isinstance(data['segments'], list):
        raise CurveError("field 'segments' must be a list", 'format')
    for index, item in enumerate(data['segments']):
        if not isinstance(item, dict) or 'kappa' not in item or 'len' not in item:
            raise CurveError("segment needs 'kappa' and 'len'", 'format', index)
        try:
            segments.append(Segment(
                number(item['kappa'], 'kappa'), number(item['len'], 'len'),
            ))
        except CurveError as exc:
            raise CurveError(str(exc), exc.invariant, index)
    return ClosedArcSpline(
        Point2(number(start[0], 'start'), number(start[1], 'start')),
        number(data['heading'], 'heading'),
        segments,
    )

def segments_from_arrays(
    kappas: Iterable[float], lengths: Iterable[float],
) -> Tuple[Segment, ...]:
    return tuple(Segment(k, s) for k, s in zip(kappas, lengths))
