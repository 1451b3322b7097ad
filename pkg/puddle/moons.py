"""
Incircles, supporting osculating circles, and the unit disks that fit inside
a curve.

The central construction is :func:`theorem_witness`. For a simple closed
curve with curvature at most 1 and diameter at least 4, it finds two
disjoint open unit disks inside the curve. It starts from the two ends of a
diameter. At each end it either shrinks the inscribed circle tangent there,
or finds a supporting osculating circle by repeated halving with
:func:`lemma_supporting_point`.

All operations here expect a counterclockwise curve, which is what
:func:`puddle.curves.validate` returns. Arclength parameters refer to that
curve.
"""

from dataclasses import dataclass
import logging
import math
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from . import curves, oracle
from .curves import (
    ArcSpan, Circle, ClosedArcSpline, DEFAULT_TOLERANCES, Point2,
    ToleranceConfig,
)
from .errors import (
    CounterexampleAlert, CurveError, HypothesisError, InvalidSpanError,
    NumericalFailure, ParameterError, UnboundedIncircleError,
)

logger = logging.getLogger(__name__)

#: Give up on the lemma procedure after this many halvings. The span halves
#: every round, so this is only reached if `eps_arc` is absurdly small.
MAX_LEMMA_ROUNDS = 200

class CircleArc(NamedTuple):
    """Part of a circle: start angle and counterclockwise sweep."""
    start: float
    sweep: float

@dataclass(frozen=True)
class Incircle(object):
    """
    The largest circle inside a curve and tangent to it at `base_t`.

    :param contacts: Sorted curve parameters where the curve touches the
      circle, including `base_t`.
    :param dense: The curve runs along the circle for a whole arc, so the
      contact set is not a finite list of points.
    :param sigma_split: The two arcs of the circle either side of the
      base point and the first contact clockwise from it, if there is one.
    """
    circle: Circle
    base_t: float
    contacts: Tuple[float, ...]
    dense: bool = False
    sigma_split: Optional[Tuple[CircleArc, CircleArc]] = None
    @property
    def radius(self) -> float:
        return self.circle.radius
    def other_contacts(self, total: float, slack: float = 1e-9) -> Tuple[float, ...]:
        return tuple(
            c for c in self.contacts
            if min((c - self.base_t) % total, (self.base_t - c) % total) > slack
        )

@dataclass(frozen=True)
class FitWitness(object):
    """
    Centres of open unit disks inside a curve.

    Open unit disks are disjoint exactly when their centres are at least 2
    apart, so a valid witness has ``clearance >= 1`` and ``min_pair_gap >= 2``
    (up to `tol_geom`). With one centre, `min_pair_gap` is infinite.
    """
    centers: Tuple[Point2, ...]
    clearance: float
    min_pair_gap: float
    @classmethod
    def measure(cls, curve: ClosedArcSpline, centers: Sequence[Point2]) -> 'FitWitness':
        """Build a witness, computing clearance and gap from scratch."""
        centers = tuple(centers)
        xs = np.array([c.x for c in centers])
        ys = np.array([c.y for c in centers])
        clearance = float(curves.clearance(curve, xs, ys).min())
        gap = math.inf
        for i, a in enumerate(centers):
            for b in centers[i + 1:]:
                gap = min(gap, a.dist(b))
        return cls(centers, clearance, gap)
    @property
    def k(self) -> int:
        return len(self.centers)
    def is_valid(self, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
        return (
            self.clearance >= 1 - tol.tol_geom
            and self.min_pair_gap >= 2 - tol.tol_geom
        )
    def to_json_dict(self) -> Dict[str, Any]:
        return {
            'k': self.k,
            'centers': [c.as_list() for c in self.centers],
            'clearance': self.clearance,
            'min_pair_gap': None if math.isinf(self.min_pair_gap) else self.min_pair_gap,
        }

@dataclass(frozen=True)
class FitResult(object):
    """
    Outcome of a disk-fitting query.

    :param witness: The disks found, or None.
    :param achieved: For k = 2 the feasible-set diameter, for k >= 3 the
      best minimum gap reached, for k = 1 the best clearance.
    :param heuristic: True when a negative answer comes from a heuristic
      and is not proof that no disks fit.
    """
    witness: Optional[FitWitness]
    achieved: float
    heuristic: bool = False
    @property
    def found(self) -> bool:
        return self.witness is not None
    def to_json_dict(self) -> Dict[str, Any]:
        return {
            'found': self.found,
            'witness': None if self.witness is None else self.witness.to_json_dict(),
            'achieved': self.achieved,
            'heuristic': self.heuristic,
        }

@dataclass(frozen=True)
class LemmaRun(object):
    """
    Result of :func:`lemma_supporting_point`.

    :param q: Curve parameter whose osculating circle supports the curve
      from inside.
    :param circle: That osculating circle.
    :param span_lengths: Length of the span at the start of each round.
    :param degenerate: The span shrank below `eps_arc` and support was only
      confirmed at the relaxed tolerance.
    """
    q: float
    circle: Circle
    span_lengths: Tuple[float, ...]
    degenerate: bool = False
    @property
    def rounds(self) -> int:
        return len(self.span_lengths)

def require_ccw(
    curve: ClosedArcSpline, tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> ClosedArcSpline:
    """
    Validate `curve`, which must already be counterclockwise.

    :raises CurveError: if validation fails or the curve runs clockwise.
    """
    if curves.validate(curve, tol) is not curve:
        raise CurveError('counterclockwise orientation required', 'turning')
    return curve

def _inward_normal(curve: ClosedArcSpline, t: float) -> Tuple[Point2, float, float]:
    point, heading, _ = curves.evaluate(curve, t)
    return point, -math.sin(heading), math.cos(heading)

def tangent_disk_fits(
    curve: ClosedArcSpline,
    t: float,
    r: float,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> bool:
    """
    Whether the disk of radius `r` tangent at `t` from inside lies inside
    the curve. For fixed `t` these disks are nested, so this is monotone in
    `r`.
    """
    point, nx, ny = _inward_normal(curve, t)
    center = Point2(point.x + r * nx, point.y + r * ny)
    return curves.signed_distance(curve, center) >= r - tol.tol_geom

def _contacts(
    curve: ClosedArcSpline,
    center: Point2,
    radius: float,
    base_t: float,
    tol: ToleranceConfig,
) -> Tuple[Tuple[float, ...], bool]:
    total = curve.total_length
    found = [base_t]
    dense = False
    for piece, (dist, t) in zip(curve.pieces, curves.nearest_on_pieces(curve, center)):
        if dist <= radius + tol.tol_contact:
            found.append(t)
        if (
            piece.kappa > 0
            and math.hypot(piece.cx - center.x, piece.cy - center.y) <= tol.tol_contact
            and abs(piece.rho - radius) <= tol.tol_contact
        ):
            dense = True
    # Neighbouring pieces report the same junction point.
    merged: List[float] = []
    for t in sorted(found):
        if merged and t - merged[-1] <= curves.JUNCTION_SLACK:
            continue
        merged.append(t)
    if len(merged) > 1 and merged[0] + total - merged[-1] <= curves.JUNCTION_SLACK:
        merged.pop()
    if not any(abs(t - base_t) <= curves.JUNCTION_SLACK for t in merged):
        merged.append(base_t)
        merged.sort()
    return tuple(merged), dense

def _incircle(
    curve: ClosedArcSpline, t: float, tol: ToleranceConfig,
) -> Incircle:
    point, nx, ny = _inward_normal(curve, t)
    x0, y0, x1, y1 = curve.bounding_box()
    lo, hi = 0.0, math.hypot(x1 - x0, y1 - y0)
    if tangent_disk_fits(curve, t, hi, tol):
        raise UnboundedIncircleError(
            f'incircle at t={t} exceeds the bounding box diagonal {hi}'
        )
    while hi - lo > tol.tol_radius:
        mid = (lo + hi) / 2
        if tangent_disk_fits(curve, t, mid, tol):
            lo = mid
        else:
            hi = mid
    radius = lo
    center = Point2(point.x + radius * nx, point.y + radius * ny)
    contacts, dense = _contacts(curve, center, radius, t, tol)
    total = curve.total_length
    split = None
    others = [c for c in contacts if abs(c - t) > curves.JUNCTION_SLACK]
    if others and not dense:
        second = min(others, key=lambda c: (t - c) % total)
        base_angle = math.atan2(point.y - center.y, point.x - center.x)
        q, _, _ = curves.evaluate(curve, second)
        other_angle = math.atan2(q.y - center.y, q.x - center.x)
        sweep = (other_angle - base_angle) % curves.TAU
        split = (
            CircleArc(base_angle, sweep),
            CircleArc(other_angle, curves.TAU - sweep),
        )
    return Incircle(Circle(center, max(radius, 1e-300)), t, contacts, dense, split)

def incircle_at(
    curve: ClosedArcSpline,
    t: float,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> Incircle:
    """
    The largest circle inside `curve` tangent to it at parameter `t`.

    The radius is found by bisection on the disks tangent at `t`, which are
    nested. Contacts are the nearest points of each piece lying within
    `tol_contact` of the circle.

    :raises CurveError: if the curve is invalid or clockwise.
    :raises UnboundedIncircleError: if the circle would not fit in the
      bounding box of the curve.
    """
    require_ccw(curve, tol)
    return _incircle(curve, t, tol)

def _supports(curve: ClosedArcSpline, t: float, slack: float) -> Optional[bool]:
    piece = curve.piece_at(t)
    if piece.straight:
        return None
    if piece.kappa < 0:
        return False
    center = Point2(piece.cx, piece.cy)
    return curves.signed_distance(curve, center) >= piece.rho - slack

def supports_from_inside(
    curve: ClosedArcSpline,
    t: float,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> Optional[bool]:
    """
    Whether the osculating disk at `t` lies inside the curve.

    :returns: None on a straight segment, where there is no osculating
      circle. Otherwise True or False.
    """
    curves.evaluate(curve, t)
    return _supports(curve, t, tol.tol_geom)

def _check_span(
    curve: ClosedArcSpline, span: ArcSpan, base: Incircle, tol: ToleranceConfig,
) -> None:
    total = curve.total_length
    span.check(total)
    center, radius = base.circle.center, base.circle.radius
    for t in (span.t_lo, span.t_hi):
        p, _, _ = curves.evaluate(curve, t)
        if abs(p.dist(center) - radius) > tol.tol_contact:
            raise InvalidSpanError(f'span end t={t} does not touch the base circle')
    if base.dense:
        return
    slack = max(tol.eps_arc, curves.JUNCTION_SLACK)
    for dist, t in curves.nearest_on_pieces(curve, center):
        offset = span.offset(t, total)
        if slack < offset < span.length(total) - slack and dist <= radius + tol.tol_contact:
            raise InvalidSpanError(f'the base circle touches the span inside, at t={t}')

def _next_span(
    curve: ClosedArcSpline, span: ArcSpan, q: float, inc: Incircle,
) -> ArcSpan:
    """
    The part of `span` between `q` and the first contact of `inc` clockwise
    from it, or the first counterclockwise if there is none. Either side of
    the midpoint is at most half the span.
    """
    total = curve.total_length
    at = span.offset(q, total)
    inside = [
        c for c in inc.other_contacts(total)
        if span.contains(c, total)
    ]
    behind = [c for c in inside if span.offset(c, total) < at]
    ahead = [c for c in inside if span.offset(c, total) > at]
    if behind:
        return ArcSpan(max(behind, key=lambda c: span.offset(c, total)), q)
    if ahead:
        return ArcSpan(q, min(ahead, key=lambda c: span.offset(c, total)))
    # No second contact inside the span: keep halving from the clockwise end.
    logger.debug('no contact inside span, halving at t=%g', q)
    return ArcSpan(span.t_lo, q)

def lemma_supporting_point(
    curve: ClosedArcSpline,
    span: ArcSpan,
    base: Incircle,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> LemmaRun:
    """
    Find a point of `span` whose osculating circle supports the curve from
    inside.

    `span` must touch the circle of `base` at its two ends and nowhere
    else. Each round looks at the midpoint of the span. If the incircle
    there is the osculating circle, that point is returned. Otherwise the
    incircle touches the span again, and the span is replaced by the piece
    between the midpoint and that contact, which is at most half as long.

    A dense `base` (curve running along the base circle) skips the check on
    the span interior: every point of such an arc already supports.

    :raises InvalidSpanError: if `span` does not touch `base` only at its ends.
    :raises NumericalFailure: if support cannot be confirmed once the span
      is shorter than `eps_arc`.
    """
    _check_span(curve, span, base, tol)
    total = curve.total_length
    lengths: List[float] = []
    for _ in range(MAX_LEMMA_ROUNDS):
        size = span.length(total)
        lengths.append(size)
        q = span.midpoint(total)
        piece = curve.piece_at(q)
        logger.debug('lemma round %d: span %.6g..%.6g, length %.3g', len(lengths), span.t_lo, span.t_hi, size)
        inc = _incircle(curve, q, tol)
        osculating = None if piece.straight or piece.kappa < 0 else Circle(Point2(piece.cx, piece.cy), piece.rho)
        if osculating is not None and inc.radius >= osculating.radius - tol.tol_geom:
            return LemmaRun(q, osculating, tuple(lengths))
        if size < tol.eps_arc:
            if osculating is not None and _supports(curve, q, 10 * tol.tol_geom):
                logger.warning('lemma stopped at span length %.3g (t=%g)', size, q)
                return LemmaRun(q, osculating, tuple(lengths), degenerate=True)
            raise NumericalFailure(
                f'no supporting point found by span length {size:.3g}',
                (span.t_lo, span.t_hi),
            )
        span = _next_span(curve, span, q, inc)
    raise NumericalFailure(
        f'no supporting point found in {MAX_LEMMA_ROUNDS} rounds',
        (span.t_lo, span.t_hi),
    )

def osculating_intersection_check(
    curve: ClosedArcSpline,
    q_a: float,
    q_b: float,
    base: Incircle,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    samples: int = 256,
) -> bool:
    """
    True if the osculating disks at `q_a` and `q_b` are disjoint, or overlap
    only inside the circle of `base`.

    :raises ParameterError: if either point is on a straight segment.
    """
    first = curves.osculating_circle_at(curve, q_a)
    second = curves.osculating_circle_at(curve, q_b)
    if first is None or second is None:
        raise ParameterError('osculating circles need kappa != 0')
    gap = first.center.dist(second.center)
    if gap >= first.radius + second.radius - tol.tol_geom:
        return True
    angles = np.linspace(0.0, curves.TAU, samples, endpoint=False)
    bound = base.circle.radius + tol.tol_geom
    bx, by = base.circle.center.x, base.circle.center.y
    for this, that in ((first, second), (second, first)):
        xs = this.center.x + this.radius * np.cos(angles)
        ys = this.center.y + this.radius * np.sin(angles)
        in_lens = np.hypot(xs - that.center.x, ys - that.center.y) <= that.radius + tol.tol_geom
        if np.any(np.hypot(xs[in_lens] - bx, ys[in_lens] - by) > bound):
            return False
    return True

def two_unit_disks_fit(
    curve: ClosedArcSpline,
    grid: Optional[oracle.GridSpec] = None,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> FitResult:
    """
    Look for two disjoint open unit disks inside the curve, via the
    diameter of the set of unit-disk centres.
    """
    diam, p1, p2 = oracle.feasible_set_diameter(curve, 1.0, grid, tol)
    if p1 is None or p2 is None or diam < 2 - tol.tol_geom:
        return FitResult(None, diam)
    return FitResult(FitWitness.measure(curve, (p1, p2)), diam)

def _candidates(
    curve: ClosedArcSpline, grid: oracle.GridSpec, tol: ToleranceConfig,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    ax, ay = grid.axes()
    gx, gy = np.meshgrid(ax, ay)
    ox, oy = oracle.offset_candidates(curve, 1.0, grid.h)
    xs = np.concatenate([gx.ravel(), ox])
    ys = np.concatenate([gy.ravel(), oy])
    return xs, ys, curves.clearance(curve, xs, ys)

def _spread(
    curve: ClosedArcSpline,
    centers: List[Point2],
    h: float,
    tol: ToleranceConfig,
) -> List[Point2]:
    """Coordinate ascent on the smallest pairwise gap, keeping clearance."""
    def worst(points: Sequence[Point2], i: int) -> float:
        return min(points[i].dist(p) for j, p in enumerate(points) if j != i)
    floor = 1 - tol.tol_geom
    step = h
    while step >= tol.tol_geom:
        improved = True
        while improved:
            improved = False
            for i in range(len(centers)):
                here = worst(centers, i)
                for dx, dy in ((step, 0), (-step, 0), (0, step), (0, -step)):
                    trial = list(centers)
                    trial[i] = Point2(centers[i].x + dx, centers[i].y + dy)
                    if worst(trial, i) > here + tol.tol_geom and curves.signed_distance(curve, trial[i]) >= floor:
                        centers = trial
                        improved = True
                        break
        step /= 2
    return centers

def k_unit_disks_fit(
    curve: ClosedArcSpline,
    k: int,
    grid: Optional[oracle.GridSpec] = None,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> FitResult:
    """
    Look for `k` pairwise disjoint open unit disks inside the curve.

    For k = 1 the centre of largest clearance is used, and k = 2 is
    :func:`two_unit_disks_fit`. For k >= 3 centres are chosen greedily,
    each the feasible candidate farthest from those already chosen, and
    then pushed apart. A negative answer for k >= 3 is marked heuristic.

    :raises ParameterError: if k < 1.
    """
    if k < 1:
        raise ParameterError(f'k >= 1 required, got {k}')
    if k == 2:
        return two_unit_disks_fit(curve, grid, tol)
    grid = grid if grid is not None else oracle.GridSpec.for_curve(curve, tol.grid_h)
    xs, ys, clear = _candidates(curve, grid, tol)
    if k == 1:
        best = int(np.argmax(clear))
        if clear[best] < 1 - tol.tol_geom:
            return FitResult(None, float(clear[best]))
        center = Point2(xs[best], ys[best])
        return FitResult(FitWitness.measure(curve, [center]), float(clear[best]))
    ok = clear >= 1 - tol.tol_geom
    xs, ys = xs[ok], ys[ok]
    if len(xs) == 0:
        return FitResult(None, 0.0, heuristic=True)
    _, p1, p2 = oracle.farthest_pair(xs, ys)
    assert p1 is not None and p2 is not None
    chosen = [p1, p2]
    nearest = np.minimum(np.hypot(xs - p1.x, ys - p1.y), np.hypot(xs - p2.x, ys - p2.y))
    while len(chosen) < k:
        pick = int(np.argmax(nearest))
        chosen.append(Point2(xs[pick], ys[pick]))
        nearest = np.minimum(nearest, np.hypot(xs - xs[pick], ys - ys[pick]))
    if FitWitness.measure(curve, chosen).min_pair_gap < 2 - tol.tol_geom:
        chosen = _spread(curve, chosen, grid.h, tol)
    witness = FitWitness.measure(curve, chosen)
    logger.debug('k=%d greedy gap %.6g', k, witness.min_pair_gap)
    if witness.is_valid(tol):
        return FitResult(witness, witness.min_pair_gap)
    return FitResult(None, witness.min_pair_gap, heuristic=True)

def contact_spans(inc: Incircle, total: float) -> List[ArcSpan]:
    """Arcs of the curve between consecutive contacts of `inc`."""
    contacts = sorted(inc.contacts)
    return [
        ArcSpan(a, b) for a, b in zip(contacts, contacts[1:] + contacts[:1])
        if a != b
    ]

def unit_centers_near(
    curve: ClosedArcSpline,
    t: float,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> List[Point2]:
    """
    Centres of unit disks inside the curve obtained from the incircle at
    `t`: the shrunken incircle itself if it is big enough, otherwise one
    shrunken supporting osculating circle per span between contacts.
    """
    inc = _incircle(curve, t, tol)
    if inc.radius >= 1 - tol.tol_geom:
        point, nx, ny = _inward_normal(curve, t)
        return [Point2(point.x + nx, point.y + ny)]
    found = []
    for span in contact_spans(inc, curve.total_length):
        try:
            run = lemma_supporting_point(curve, span, inc, tol)
        except (InvalidSpanError, NumericalFailure) as exc:
            logger.debug('span %s skipped: %s', span, exc)
            continue
        if run.circle.radius >= 1 - tol.tol_geom:
            # Concentric shrink keeps the disk inside.
            found.append(run.circle.center)
    return found

def theorem_witness(
    curve: ClosedArcSpline,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    grid: Optional[oracle.GridSpec] = None,
) -> FitWitness:
    """
    Two disjoint open unit disks inside a curve with curvature at most 1
    and diameter at least 4.

    Unit disks are found near both ends of a diameter by
    :func:`unit_centers_near`, and the pair furthest apart is returned.
    Should that fail verification, :func:`two_unit_disks_fit` is tried
    instead.

    :raises HypothesisError: if the curvature or diameter condition fails.
    :raises CounterexampleAlert: if no two disks are found at all.
    """
    require_ccw(curve, tol)
    kappa = curves.max_abs_curvature(curve)
    if kappa > 1 + tol.tol_geom:
        raise HypothesisError(f'max |kappa| = {kappa:.9g} > 1', 'curvature')
    diam, t1, t2 = curves.diameter_parameters(curve, tol)
    if diam < 4 - tol.tol_geom:
        raise HypothesisError(f'diameter {diam:.9g} < 4', 'diameter')
    first = unit_centers_near(curve, t1, tol)
    second = unit_centers_near(curve, t2, tol)
    pairs = sorted(
        ((a, b) for a in first for b in second),
        key=lambda pair: -pair[0].dist(pair[1]),
    )
    for a, b in pairs:
        witness = FitWitness.measure(curve, (a, b))
        if witness.is_valid(tol):
            return witness
    logger.warning('direct construction failed, falling back to the grid search')
    result = two_unit_disks_fit(curve, grid, tol)
    if result.witness is not None and result.witness.is_valid(tol):
        return result.witness
    raise CounterexampleAlert(
        f'no two unit disks found in a curve of diameter {diam:.9g}'
    )
