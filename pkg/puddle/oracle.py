"""
Brute-force oracles, used to cross-check the closed-form routines in
:mod:`puddle.curves` and :mod:`puddle.moons`.

Everything here works from sampled points or a grid, so the answers are
approximate but their error is bounded: sampled lengths and diameters are
lower bounds, and grid erosion is accurate to the grid step because
signed distance is 1-Lipschitz.
"""

from dataclasses import dataclass
import logging
import math
from typing import Iterable, List, Optional, Tuple

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from . import curves
from .curves import (
    ClosedArcSpline, DEFAULT_TOLERANCES, Point2, ToleranceConfig,
)
from .errors import ParameterError

logger = logging.getLogger(__name__)

Pair = Tuple[float, Optional[Point2], Optional[Point2]]

@dataclass(frozen=True)
class GridSpec(object):
    """
    A square grid of step `h` covering the box ``bbox = (lower, upper)``.
    """
    bbox: Tuple[Point2, Point2]
    h: float
    def __post_init__(self) -> None:
        lower, upper = self.bbox
        if not (math.isfinite(self.h) and self.h > 0):
            raise ParameterError(f'grid step h > 0 required, got {self.h}')
        if not (upper.x > lower.x and upper.y > lower.y):
            raise ParameterError('grid box must have positive width and height')
    @classmethod
    def for_curve(cls, curve: ClosedArcSpline, h: float) -> 'GridSpec':
        """The grid of step `h` over the bounding box of `curve`, padded by `h`."""
        xmin, ymin, xmax, ymax = curve.bounding_box()
        return cls((Point2(xmin - h, ymin - h), Point2(xmax + h, ymax + h)), h)
    def axes(self) -> Tuple[np.ndarray, np.ndarray]:
        lower, upper = self.bbox
        nx = int(math.floor((upper.x - lower.x) / self.h)) + 1
        ny = int(math.floor((upper.y - lower.y) / self.h)) + 1
        return lower.x + self.h * np.arange(nx), lower.y + self.h * np.arange(ny)

def _closed_polyline(curve: ClosedArcSpline, n: int) -> Tuple[np.ndarray, np.ndarray]:
    if n < 2:
        raise ParameterError(f'n >= 2 required, got {n}')
    return curves.sample(curve, n)

def brute_length(curve: ClosedArcSpline, n: int) -> float:
    """Perimeter of the polygon through `n` uniformly spaced curve points."""
    xs, ys = _closed_polyline(curve, n)
    return float(np.hypot(np.diff(xs, append=xs[0]), np.diff(ys, append=ys[0])).sum())

def convex_hull(points: Iterable[Tuple[float, float]]) -> List[Tuple[float, float]]:
    """
    Vertices of the convex hull in counterclockwise order, starting from the
    leftmost point (the lowest of those). Collinear points are dropped, and
    points all on one line give the two ends of the line.
    """
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts
    arr = np.array(pts, dtype=float)
    try:
        hull = ConvexHull(arr)
    except QhullError:
        far = int(np.argmax(np.hypot(*(arr - arr[0]).T)))
        other = int(np.argmax(np.hypot(*(arr - arr[far]).T)))
        return sorted([pts[far], pts[other]])
    vertices = [pts[i] for i in hull.vertices.tolist()]
    start = vertices.index(min(vertices))
    return vertices[start:] + vertices[:start]

def farthest_pair(xs: np.ndarray, ys: np.ndarray) -> Pair:
    """
    The two points farthest apart. Only hull vertices can be extremal, so
    pairwise distances are taken over those.
    """
    if len(xs) == 0:
        return 0.0, None, None
    hull = np.array(convex_hull(zip(xs.tolist(), ys.tolist())), dtype=float)
    if len(hull) == 1:
        return 0.0, Point2(*hull[0]), Point2(*hull[0])
    dist = np.hypot(
        hull[:, 0, None] - hull[None, :, 0], hull[:, 1, None] - hull[None, :, 1],
    )
    i, j = np.unravel_index(int(np.argmax(dist)), dist.shape)
    i, j = min(i, j), max(i, j)
    return float(dist[i, j]), Point2(*hull[i]), Point2(*hull[j])

def brute_diameter(curve: ClosedArcSpline, n: int) -> Tuple[float, Point2, Point2]:
    """Largest distance between `n` uniformly spaced curve points."""
    xs, ys = _closed_polyline(curve, n)
    diam, p1, p2 = farthest_pair(xs, ys)
    assert p1 is not None and p2 is not None
    return diam, p1, p2

def _default_grid(curve: ClosedArcSpline, grid: Optional[GridSpec], tol: ToleranceConfig) -> GridSpec:
    return grid if grid is not None else GridSpec.for_curve(curve, tol.grid_h)

def _feasible_grid_points(
    curve: ClosedArcSpline, r: float, grid: GridSpec,
) -> Tuple[np.ndarray, np.ndarray]:
    if not r > 0:
        raise ParameterError(f'r > 0 required, got {r}')
    ax, ay = grid.axes()
    gx, gy = np.meshgrid(ax, ay)
    keep = curves.clearance(curve, gx.ravel(), gy.ravel()) >= r
    return gx.ravel()[keep], gy.ravel()[keep]

def grid_feasible_centers(
    curve: ClosedArcSpline,
    r: float,
    grid: Optional[GridSpec] = None,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> List[Point2]:
    """
    All grid points at signed distance at least `r` inside the curve: the
    possible centres of a disk of radius `r` inside it.
    """
    xs, ys = _feasible_grid_points(curve, r, _default_grid(curve, grid, tol))
    return [Point2(x, y) for x, y in zip(xs.tolist(), ys.tolist())]

def offset_candidates(
    curve: ClosedArcSpline, r: float, h: float,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Points sampled at spacing about `h` on the inward offsets at distance
    `r` of every piece. For an arc of radius exactly `r` this is its centre.
    """
    xs: List[np.ndarray] = []
    ys: List[np.ndarray] = []
    for piece in curve.pieces:
        if piece.straight:
            count = max(2, int(math.ceil(piece.length / h)) + 1)
            s = np.linspace(0.0, piece.length, count)
            nx, ny = -math.sin(piece.h0), math.cos(piece.h0)
            xs.append(piece.x0 + s * math.cos(piece.h0) + r * nx)
            ys.append(piece.y0 + s * math.sin(piece.h0) + r * ny)
            continue
        # The left normal points towards the centre when kappa > 0.
        offset = piece.rho - r if piece.kappa > 0 else piece.rho + r
        count = max(2, int(math.ceil(abs(offset * piece.sweep) / h)) + 1)
        psi = piece.psi0 + np.linspace(0.0, piece.sweep, count)
        xs.append(piece.cx + offset * np.cos(psi))
        ys.append(piece.cy + offset * np.sin(psi))
    return np.concatenate(xs), np.concatenate(ys)

def _row_extremes(xs: np.ndarray, ys: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Leftmost and rightmost grid point of each row."""
    if len(xs) == 0:
        return xs, ys
    rows, inverse = np.unique(ys, return_inverse=True)
    lo = np.full(len(rows), np.inf)
    hi = np.full(len(rows), -np.inf)
    np.minimum.at(lo, inverse, xs)
    np.maximum.at(hi, inverse, xs)
    return np.concatenate([lo, hi]), np.concatenate([rows, rows])

def _refine(
    curve: ClosedArcSpline,
    r: float,
    p1: Point2,
    p2: Point2,
    h: float,
    tol: ToleranceConfig,
) -> Tuple[float, Point2, Point2]:
    """Coordinate ascent on the distance, keeping clearance >= r - tol_geom."""
    ends = [p1, p2]
    floor = r - tol.tol_geom
    step = h
    while step >= tol.tol_geom:
        improved = True
        while improved:
            improved = False
            for which in (0, 1):
                other = ends[1 - which]
                here = ends[which]
                best = here.dist(other)
                for dx, dy in ((step, 0), (-step, 0), (0, step), (0, -step)):
                    trial = Point2(here.x + dx, here.y + dy)
                    dist = trial.dist(other)
                    if dist > best + tol.tol_geom and curves.signed_distance(curve, trial) >= floor:
                        ends[which] = trial
                        best = dist
                        improved = True
                        break
        step /= 2
    return ends[0].dist(ends[1]), ends[0], ends[1]

def feasible_set_diameter(
    curve: ClosedArcSpline,
    r: float,
    grid: Optional[GridSpec] = None,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> Pair:
    """
    Diameter of the set of centres of radius-`r` disks inside the curve,
    with the two centres realising it.

    Candidates are the feasible grid points plus feasible points on the
    inward offsets of the pieces. The farthest candidate pair is then
    improved by coordinate ascent. The result is a lower bound within
    ``2 * grid.h`` of the true value; an empty feasible set gives
    ``(0.0, None, None)``.
    """
    grid = _default_grid(curve, grid, tol)
    gx, gy = _row_extremes(*_feasible_grid_points(curve, r, grid))
    ox, oy = offset_candidates(curve, r, grid.h)
    ok = curves.clearance(curve, ox, oy) >= r - tol.tol_geom
    xs = np.concatenate([gx, ox[ok]])
    ys = np.concatenate([gy, oy[ok]])
    logger.debug('%d feasible candidates at r=%g', len(xs), r)
    diam, p1, p2 = farthest_pair(xs, ys)
    if p1 is None or p2 is None:
        return 0.0, None, None
    return _refine(curve, r, p1, p2, grid.h, tol)

def brute_incircle(curve: ClosedArcSpline, t: float, n: int) -> float:
    """
    Radius of the largest circle tangent at `t` from inside, against `n`
    boundary samples. This slightly overestimates the true radius.
    """
    point, heading, _ = curves.evaluate(curve, t)
    nx, ny = -math.sin(heading), math.cos(heading)
    xs, ys = _closed_polyline(curve, n)
    x0, y0, x1, y1 = curve.bounding_box()
    lo, hi = 0.0, math.hypot(x1 - x0, y1 - y0)
    # The base point itself (and its sampled neighbours) are always at
    # distance about r, so compare with a relative slack.
    while hi - lo > 1e-9 * max(1.0, hi):
        mid = (lo + hi) / 2
        cx, cy = point.x + mid * nx, point.y + mid * ny
        if np.hypot(xs - cx, ys - cy).min() >= mid * (1 - 1e-9) - 1e-12:
            lo = mid
        else:
            hi = mid
    return lo

def brute_winding(curve: ClosedArcSpline, p: Point2, n: int) -> int:
    """Winding number of the `n`-point sampled polygon around `p`."""
    xs, ys = _closed_polyline(curve, n)
    x1, y1 = np.roll(xs, -1), np.roll(ys, -1)
    left = (x1 - xs) * (p.y - ys) - (p.x - xs) * (y1 - ys)
    up = (ys <= p.y) & (y1 > p.y) & (left > 0)
    down = (ys > p.y) & (y1 <= p.y) & (left < 0)
    return int(up.sum()) - int(down.sum())
