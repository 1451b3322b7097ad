"""
Random curves and a derivative-free search over arc-splines.

The search explores the open question of whether every curve of length at
least 4pi with curvature at most 1 has diameter at least 4. It also
recovers known extremal curves, for example the stadium as the shortest
curve of diameter 4.

A curve with `n` segments and its start fixed at the origin is the vector
``[heading0, kappa_1 .. kappa_n, len_1 .. len_n]``. Each restart minimises
objective plus penalty with Nelder-Mead. Its best point is then polished
by SLSQP with closure as an exact constraint. Candidates have closure
repaired by least squares and are scaled up until the constraint holds.
Scaling up never breaks the curvature bound.
"""

from dataclasses import dataclass, field
import enum
import logging
import math
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from scipy.optimize import least_squares, minimize

from . import curves, moons
from .curves import (
    ClosedArcSpline, CurveReport, DEFAULT_TOLERANCES, Point2, Segment,
    ToleranceConfig,
)
from .errors import (
    CounterexampleAlert, CurveError, GenerationError, ParameterError,
)

logger = logging.getLogger(__name__)

#: Attempts :func:`random_valid_curve` makes before giving up.
RETRY_BUDGET = 100

#: Bounds on segment length during the search.
SEGMENT_LEN_BOUNDS = (0.05, 20.0)

KAPPA_BOUND = 1.0

#: Penalty below which an iterate counts towards the recorded objective.
NEAR_FEASIBLE = 1e-9

#: SLSQP iterations when polishing the best point of a restart.
POLISH_ITERS = 300

FOUR_PI = 4 * math.pi

class Objective(enum.Enum):
    MIN_DIAMETER_GIVEN_LENGTH = 'min_diameter_given_length'
    MIN_LENGTH_GIVEN_DIAMETER = 'min_length_given_diameter'

@dataclass(frozen=True)
class SearchConfig(object):
    """
    :param n_segments: Segments per curve, at least 3.
    :param restarts: Independent starts, at least 1.
    :param rng_seed: Restart `i` draws from ``default_rng([rng_seed, i])``.
    :param max_iters: Nelder-Mead iterations per restart.
    :param penalty_weights: Weights of squared closure error, squared
      constraint violation, and number of self-intersections.
    :param seed_curve: If given, restart 0 starts from this curve instead
      of a random one.
    """
    n_segments: int = 8
    restarts: int = 20
    rng_seed: int = 0
    max_iters: int = 4000
    penalty_weights: Tuple[float, float, float] = (1000.0, 100.0, 10.0)
    objective: Objective = Objective.MIN_LENGTH_GIVEN_DIAMETER
    length_floor: float = FOUR_PI
    diameter_floor: float = 4.0
    seed_curve: Optional[ClosedArcSpline] = None
    tol: ToleranceConfig = DEFAULT_TOLERANCES
    def __post_init__(self) -> None:
        object.__setattr__(self, 'objective', Objective(self.objective))
        if self.n_segments < 3:
            raise ParameterError(f'n_segments >= 3 required, got {self.n_segments}')
        if self.restarts < 1:
            raise ParameterError(f'restarts >= 1 required, got {self.restarts}')
        if self.max_iters < 1:
            raise ParameterError(f'max_iters >= 1 required, got {self.max_iters}')
        if len(self.penalty_weights) != 3 or min(self.penalty_weights) <= 0:
            raise ParameterError(f'three positive weights required, got {self.penalty_weights}')

class HistoryEntry(NamedTuple):
    """
    Progress within a restart after each iteration. `objective` is the least
    objective of any iterate with penalty at most :data:`NEAR_FEASIBLE`, or
    inf before there is one. `merit` is the least objective plus penalty.
    Both never increase.
    """
    restart: int
    iteration: int
    objective: float
    merit: float

@dataclass(frozen=True)
class SearchResult(object):
    """
    :param best_curve: The best feasible curve, or the least penalised one
      when nothing feasible was found.
    :param feasible: Whether `best_curve` is valid, has curvature at most 1
      and meets the constraint.
    """
    best_curve: ClosedArcSpline
    best_report: CurveReport
    objective_value: float
    feasible: bool
    history: Tuple[HistoryEntry, ...] = field(default=(), repr=False)
    def to_json_dict(self) -> Dict[str, Any]:
        return {
            'feasible': self.feasible,
            'objective_value': self.objective_value,
            'curve': curves.to_json_dict(self.best_curve),
            'report': self.best_report.to_json_dict(),
            'history': [
                [None if math.isinf(value) else value for value in entry]
                for entry in self.history
            ],
        }
    def to_pd(self) -> Any:
        """
        Return the history as a :class:`pandas.DataFrame`.

        :raises: :class:`ModuleNotFoundError` if pandas is not installed. Note
          that pandas is not a hard dependency of this package. You must
          install it to use this method.
        """
        try:
            import pandas as pd
        except ModuleNotFoundError:
            msg = 'You must install pandas for this optional feature'
            raise ModuleNotFoundError(msg)
        return pd.DataFrame(list(self.history), columns=HistoryEntry._fields)

def _clamp(kappas: np.ndarray, lengths: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    kappas = np.clip(kappas, -KAPPA_BOUND, KAPPA_BOUND)
    lengths = np.clip(lengths, *SEGMENT_LEN_BOUNDS)
    # A segment may not wrap a full circle.
    wrap = (2 * math.pi - 1e-6) / np.maximum(np.abs(kappas), 1e-300)
    return kappas, np.minimum(lengths, wrap)

def decode(x: np.ndarray, n: int) -> ClosedArcSpline:
    """The curve with start at the origin described by vector `x`."""
    kappas, lengths = _clamp(np.asarray(x[1:n + 1]), np.asarray(x[n + 1:]))
    return ClosedArcSpline(
        Point2(0, 0), float(x[0]), curves.segments_from_arrays(kappas.tolist(), lengths.tolist()),
    )

def encode(curve: ClosedArcSpline) -> np.ndarray:
    return np.concatenate([
        [curve.heading0],
        [seg.kappa for seg in curve.segments],
        [seg.length for seg in curve.segments],
    ])

def _closure_residuals(curve: ClosedArcSpline) -> np.ndarray:
    last = curve.pieces[-1]
    return np.array([
        last.x1 - curve.start.x,
        last.y1 - curve.start.y,
        curve.turning - 2 * math.pi,
    ])

def _repair_closure(x: np.ndarray, n: int) -> np.ndarray:
    """
    Least-squares adjustment of curvatures and lengths, keeping the start
    heading, so the curve closes with turning 2pi.
    """
    lo = np.concatenate([np.full(n, -KAPPA_BOUND), np.full(n, SEGMENT_LEN_BOUNDS[0])])
    hi = np.concatenate([np.full(n, KAPPA_BOUND), np.full(n, SEGMENT_LEN_BOUNDS[1])])
    heading = x[0]
    def residuals(shape: np.ndarray) -> np.ndarray:
        return _closure_residuals(decode(np.concatenate([[heading], shape]), n))
    result = least_squares(
        residuals, np.clip(x[1:], lo, hi), bounds=(lo, hi), method='trf',
        ftol=1e-14, xtol=1e-14, gtol=1e-14, max_nfev=2000,
    )
    return np.concatenate([[heading], result.x])

def _subdivide(curve: ClosedArcSpline, n: int) -> ClosedArcSpline:
    """Split the longest segments in half until there are `n`."""
    segments = list(curve.segments)
    if len(segments) > n:
        raise ParameterError(f'seed curve has more than {n} segments')
    while len(segments) < n:
        i = max(range(len(segments)), key=lambda j: (segments[j].length, -j))
        half = Segment(segments[i].kappa, segments[i].length / 2)
        segments[i:i + 1] = [half, half]
    return ClosedArcSpline(curve.start, curve.heading0, segments)

def random_valid_curve(
    n: int,
    rng: np.random.Generator,
    fixed_kappa: Optional[float] = None,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> ClosedArcSpline:
    """
    A random valid counterclockwise curve of `n` segments with curvature at
    most 1.

    Turning angles are drawn to sum to 2pi, about a quarter of them
    concave, with radii at least 1. Closure is then repaired by least
    squares, and curves that fail validation are drawn again. With
    `fixed_kappa` every segment has that curvature, giving a circle.

    :raises ParameterError: if ``n < 3`` or `fixed_kappa` is not in (0, 1].
    :raises GenerationError: after :data:`RETRY_BUDGET` failed attempts.
    """
    if n < 3:
        raise ParameterError(f'n >= 3 required, got {n}')
    if fixed_kappa is not None:
        if not 0 < fixed_kappa <= KAPPA_BOUND:
            raise ParameterError(f'0 < fixed_kappa <= 1 required, got {fixed_kappa}')
        step = 2 * math.pi / (n * fixed_kappa)
        return curves.validate(ClosedArcSpline(
            Point2(1 / fixed_kappa, 0), math.pi / 2,
            [Segment(fixed_kappa, step)] * n,
        ), tol)
    for attempt in range(RETRY_BUDGET):
        concave = np.zeros(n, dtype=bool)
        concave[rng.choice(n, size=n // 4, replace=False)] = True
        turns = np.empty(n)
        turns[concave] = -rng.uniform(0.1, 0.8, size=concave.sum())
        total = 2 * math.pi - turns[concave].sum()
        turns[~concave] = total * rng.dirichlet(np.ones((~concave).sum()))
        radii = 1 + rng.exponential(1.0, size=n)
        kappas = np.sign(turns) / radii
        lengths = np.abs(turns) * radii
        x = np.concatenate([[rng.uniform(0, 2 * math.pi)], kappas, lengths])
        x = _repair_closure(x, n)
        try:
            curve = decode(x, n)
            if not curve.is_closed(tol):
                raise CurveError('repair did not close the curve', 'closure')
            return curves.validate(curve, tol)
        except CurveError as exc:
            logger.debug('random curve attempt %d rejected: %s', attempt, exc)
    raise GenerationError(f'no valid curve with {n} segments in {RETRY_BUDGET} attempts')

class _Merit(NamedTuple):
    objective: float
    penalty: float
    @property
    def total(self) -> float:
        return self.objective + self.penalty

def _objective(curve: ClosedArcSpline, config: SearchConfig) -> Tuple[float, float]:
    """Objective value and constraint violation."""
    diam = curves.diameter(curve, config.tol)[0]
    if config.objective is Objective.MIN_LENGTH_GIVEN_DIAMETER:
        return curve.total_length, max(0.0, config.diameter_floor - diam)
    return diam, max(0.0, config.length_floor - curve.total_length)

def _constrained(curve: ClosedArcSpline, config: SearchConfig) -> Tuple[float, float]:
    """The constrained quantity of `curve`, and its floor."""
    if config.objective is Objective.MIN_LENGTH_GIVEN_DIAMETER:
        return curves.diameter(curve, config.tol)[0], config.diameter_floor
    return curve.total_length, config.length_floor

def _merit(x: np.ndarray, config: SearchConfig) -> _Merit:
    n = config.n_segments
    w_close, w_constraint, w_simple = config.penalty_weights
    curve = decode(x, n)
    value, violation = _objective(curve, config)
    residuals = _closure_residuals(curve)
    crossings = curves.intersection_count(curve.pieces, closed=True, tol=config.tol)
    penalty = (
        w_close * float(residuals @ residuals)
        + w_constraint * violation ** 2
        + w_simple * crossings
    )
    return _Merit(value, penalty)

def _finish(
    x: np.ndarray, config: SearchConfig,
) -> Tuple[Optional[ClosedArcSpline], float]:
    """
    Close the curve exactly, then scale it up onto the constraint. Returns
    the curve and its objective, or None if it is not feasible.
    """
    n = config.n_segments
    tol = config.tol
    try:
        curve = decode(_repair_closure(x, n), n)
        if not curve.is_closed(tol):
            return None, math.inf
        curve = curves.validate(curve, tol)
    except CurveError as exc:
        logger.debug('candidate rejected: %s', exc)
        return None, math.inf
    current, floor = _constrained(curve, config)
    if current < floor:
        curve = curve.scaled(floor / current * (1 + 1e-12))
    if curves.max_abs_curvature(curve) > KAPPA_BOUND + tol.tol_geom:
        return None, math.inf
    value, violation = _objective(curve, config)
    if violation > tol.tol_geom:
        return None, math.inf
    return curve, value

def _polish(x: np.ndarray, config: SearchConfig) -> np.ndarray:
    """
    SLSQP from the closed curve near `x`: minimise the objective with exact
    closure as equality constraints and the floor as an inequality.
    """
    n = config.n_segments
    bounds: List[Tuple[Optional[float], Optional[float]]] = (
        [(None, None)]
        + [(-KAPPA_BOUND, KAPPA_BOUND)] * n
        + [SEGMENT_LEN_BOUNDS] * n
    )
    def value(v: np.ndarray) -> float:
        return _objective(decode(v, n), config)[0]
    def closure(v: np.ndarray) -> np.ndarray:
        return _closure_residuals(decode(v, n))
    def margin(v: np.ndarray) -> float:
        current, floor = _constrained(decode(v, n), config)
        return current - floor
    start = _repair_closure(x, n)
    try:
        result = minimize(
            value, start, method='SLSQP', bounds=bounds,
            constraints=[{'type': 'eq', 'fun': closure}, {'type': 'ineq', 'fun': margin}],
            options={'maxiter': POLISH_ITERS, 'ftol': 1e-12},
        )
    except ValueError as exc:
        logger.debug('polish abandoned: %s', exc)
        return start
    logger.debug('polish: %s after %d iterations', result.message, result.nit)
    if not np.all(np.isfinite(result.x)):
        return start
    return np.asarray(result.x)

def _start_vector(
    index: int, config: SearchConfig, rng: np.random.Generator,
) -> np.ndarray:
    n = config.n_segments
    if index == 0 and config.seed_curve is not None:
        curve = _subdivide(config.seed_curve, n)
    else:
        curve = random_valid_curve(n, rng, tol=config.tol)
        current, floor = _constrained(curve, config)
        if current < floor:
            curve = curve.scaled(floor / current)
    return encode(curve)

def _restart(
    index: int, config: SearchConfig,
) -> Tuple[List[Tuple[float, ClosedArcSpline]], List[HistoryEntry], Tuple[float, ClosedArcSpline]]:
    rng = np.random.default_rng([config.rng_seed, index])
    x0 = _start_vector(index, config, rng)
    history: List[HistoryEntry] = []
    best: List[Any] = [_merit(x0, config), x0]
    least = [math.inf]
    def fun(x: np.ndarray) -> float:
        merit = _merit(x, config)
        if merit.total < best[0].total:
            best[0], best[1] = merit, np.array(x)
        if merit.penalty <= NEAR_FEASIBLE:
            least[0] = min(least[0], merit.objective)
        return merit.total
    def record(xk: np.ndarray) -> None:
        history.append(HistoryEntry(index, len(history) + 1, least[0], best[0].total))
    minimize(
        fun, x0, method='Nelder-Mead', callback=record,
        options={'maxiter': config.max_iters, 'xatol': 1e-10, 'fatol': 1e-12, 'adaptive': True},
    )
    feasible = []
    for x in (x0, best[1], _polish(best[1], config)):
        curve, value = _finish(x, config)
        if curve is not None:
            feasible.append((value, curve))
    fallback = (best[0].total, decode(best[1], config.n_segments))
    return feasible, history, fallback

def search(config: SearchConfig) -> SearchResult:
    """
    Multi-start penalised Nelder-Mead search, each restart polished by
    SLSQP.

    The best feasible curve over all restarts is returned, ties going to
    the earlier restart. If nothing is feasible the result is marked so,
    and holds the least penalised curve seen.

    :raises CounterexampleAlert: if a curve of length at least
      `length_floor` is found with diameter below ``diameter_floor - 1e-3``
      and :func:`counterexample_audit` confirms it.
    """
    best: Optional[Tuple[float, ClosedArcSpline]] = None
    fallback: Optional[Tuple[float, ClosedArcSpline]] = None
    history: List[HistoryEntry] = []
    for index in range(config.restarts):
        found, restart_history, least = _restart(index, config)
        history.extend(restart_history)
        for value, curve in found:
            if best is None or value < best[0]:
                best = (value, curve)
        if fallback is None or least[0] < fallback[0]:
            fallback = least
        logger.debug('restart %d: %d feasible, best so far %s', index, len(found), best and best[0])
    if best is None:
        assert fallback is not None
        logger.info('search found no feasible curve')
        curve = fallback[1]
        return SearchResult(curve, curves.report(curve, config.tol), math.inf, False, tuple(history))
    value, curve = best
    logger.info('search best %s = %.12g', config.objective.value, value)
    if (
        config.objective is Objective.MIN_DIAMETER_GIVEN_LENGTH
        and value < config.diameter_floor - 1e-3
    ):
        logger.warning('diameter %.9g below %g at length %.9g', value, config.diameter_floor, curve.total_length)
        audit = counterexample_audit(curve, config.tol)
        if audit.verdict == 'counterexample':
            raise CounterexampleAlert('search found a curve contradicting the conjecture', audit)
    return SearchResult(curve, curves.report(curve, config.tol), value, True, tuple(history))

@dataclass(frozen=True)
class AuditReport(object):
    """
    Every quantity relevant to the two-disk question, measured at tight
    tolerances.

    :param verdict: ``'hypothesis-not-met'`` unless the curve is valid with
      length at least 4pi and curvature at most 1. Otherwise
      ``'counterexample'`` if its diameter is below 4 or no two unit disks
      fit, and ``'consistent'`` if neither.
    """
    length: float
    max_abs_kappa: float
    diameter: float
    valid: bool
    fit_found: Optional[bool]
    fit_achieved: Optional[float]
    verdict: str
    problems: Tuple[str, ...] = ()
    def to_json_dict(self) -> Dict[str, Any]:
        return {
            'length': self.length,
            'max_abs_kappa': self.max_abs_kappa,
            'diameter': self.diameter,
            'valid': self.valid,
            'fit_found': self.fit_found,
            'fit_achieved': self.fit_achieved,
            'verdict': self.verdict,
            'problems': list(self.problems),
        }

def counterexample_audit(
    curve: ClosedArcSpline, tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> AuditReport:
    """
    Re-measure `curve` with `tol_geom` divided by 10 and `grid_h` by 4.
    The two-disk search is only run when the hypotheses hold.
    """
    tight = ToleranceConfig(
        tol_close=tol.tol_close,
        tol_geom=tol.tol_geom / 10,
        tol_radius=tol.tol_radius,
        eps_arc=tol.eps_arc,
        grid_h=tol.grid_h / 4,
    )
    rep = curves.report(curve, tight)
    valid = not rep.problems
    hypotheses = (
        valid
        and rep.length >= FOUR_PI - tight.tol_geom
        and rep.max_abs_kappa <= 1 + tight.tol_geom
    )
    fit_found: Optional[bool] = None
    fit_achieved: Optional[float] = None
    verdict = 'hypothesis-not-met'
    if hypotheses:
        oriented = curves.validate(curve, tight)
        fit = moons.two_unit_disks_fit(oriented, tol=tight)
        fit_found, fit_achieved = fit.found, fit.achieved
        if rep.diameter < 4 - tight.tol_geom or not fit.found:
            verdict = 'counterexample'
            logger.warning('counterexample candidate: diameter %.12g, fit %s', rep.diameter, fit.found)
        else:
            verdict = 'consistent'
    return AuditReport(
        length=rep.length,
        max_abs_kappa=rep.max_abs_kappa,
        diameter=rep.diameter,
        valid=valid,
        fit_found=fit_found,
        fit_achieved=fit_achieved,
        verdict=verdict,
        problems=rep.problems,
    )
