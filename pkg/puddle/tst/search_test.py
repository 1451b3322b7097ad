
import json
import math
from typing import Sequence
from unittest.mock import patch

import numpy as np
import pytest

from puddle import curves, search
from puddle.errors import GenerationError, ParameterError
from puddle.gallery import circle, stadium
from puddle.moons import FitResult
from puddle.search import HistoryEntry, Objective, SearchConfig

def check_history(history: Sequence[HistoryEntry]) -> None:
    """Within each restart, neither recorded value ever goes up."""
    for before, after in zip(history, history[1:]):
        if before.restart == after.restart:
            assert after.objective <= before.objective
            assert after.merit <= before.merit
            assert after.merit <= after.objective + 1e-9 or math.isinf(after.objective)

def test_config() -> None:
    """
    Search settings are checked when they are made.
    """
    config = SearchConfig(objective='min_diameter_given_length')
    assert config.objective is Objective.MIN_DIAMETER_GIVEN_LENGTH
    assert SearchConfig().objective is Objective.MIN_LENGTH_GIVEN_DIAMETER
    for bad in (
        {'n_segments': 2}, {'restarts': 0}, {'max_iters': 0},
        {'penalty_weights': (1.0, 0.0, 1.0)}, {'penalty_weights': (1.0, 1.0)},
    ):
        with pytest.raises(ParameterError):
            SearchConfig(**bad)
    with pytest.raises(ValueError):
        SearchConfig(objective='max_area')

@pytest.mark.parametrize('seed', range(20))
def test_random_valid_curve(seed: int) -> None:
    """
    Random curves are valid, counterclockwise, and bend by at most 1.
    """
    curve = search.random_valid_curve(8, np.random.default_rng(seed))
    assert len(curve.segments) == 8
    assert curves.validate(curve) is curve
    assert curve.turning == pytest.approx(2 * math.pi)
    assert curves.max_abs_curvature(curve) <= 1

def test_random_circle() -> None:
    """
    A fixed curvature gives a circle of that curvature.
    """
    curve = search.random_valid_curve(6, np.random.default_rng(0), fixed_kappa=0.5)
    assert curve.total_length == pytest.approx(4 * math.pi)
    assert curves.diameter(curve)[0] == pytest.approx(4)
    with pytest.raises(ParameterError):
        search.random_valid_curve(2, np.random.default_rng(0))
    for kappa in (0, -0.5, 1.5):
        with pytest.raises(ParameterError):
            search.random_valid_curve(6, np.random.default_rng(0), fixed_kappa=kappa)

def test_random_budget() -> None:
    """
    Generation gives up after its retry budget.
    """
    with patch('puddle.search.RETRY_BUDGET', 0):
        with pytest.raises(GenerationError):
            search.random_valid_curve(8, np.random.default_rng(0))

def test_search_circle() -> None:
    """
    Seeded with the circle of radius 2, the least diameter at length 4pi is 4.
    """
    config = SearchConfig(
        n_segments=4, restarts=1, max_iters=30, seed_curve=circle(2),
        objective=Objective.MIN_DIAMETER_GIVEN_LENGTH,
    )
    result = search.search(config)
    assert result.feasible
    assert result.objective_value == pytest.approx(4, abs=1e-6)
    assert result.best_curve.total_length >= 4 * math.pi - 1e-9
    assert not result.best_report.problems

def test_search_stadium() -> None:
    """
    Seeded with the stadium, the least length at diameter 4 is 2pi + 4.
    """
    config = SearchConfig(n_segments=6, restarts=1, max_iters=30, seed_curve=stadium(2))
    result = search.search(config)
    assert result.feasible
    assert result.objective_value == pytest.approx(2 * math.pi + 4, abs=1e-6)
    assert curves.diameter(result.best_curve)[0] >= 4 - 1e-9
    assert result.history
    check_history(result.history)
    assert [entry.iteration for entry in result.history] == list(range(1, len(result.history) + 1))
    data = json.loads(json.dumps(result.to_json_dict()))
    assert data['feasible'] is True
    assert len(data['history']) == len(result.history)
    assert curves.from_json_dict(data['curve']).segments == result.best_curve.segments

def test_search_seed_too_long() -> None:
    """
    A seed curve cannot have more segments than the search uses.
    """
    config = SearchConfig(n_segments=3, restarts=1, max_iters=5, seed_curve=stadium(2))
    with pytest.raises(ParameterError):
        search.search(config)

def test_to_pd() -> None:
    """
    Search history as a pandas DataFrame.
    """
    config = SearchConfig(n_segments=4, restarts=1, max_iters=10, seed_curve=circle(2))
    result = search.search(config)
    try:
        import pandas
    except ModuleNotFoundError:
        with pytest.raises(ModuleNotFoundError):
            result.to_pd()
        return
    frame = result.to_pd()
    assert isinstance(frame, pandas.DataFrame)
    assert list(frame.columns) == ['restart', 'iteration', 'objective', 'merit']
    assert len(frame) == len(result.history)

def test_audit() -> None:
    """
    Only curves meeting the hypotheses get a verdict on the two disks.
    """
    report = search.counterexample_audit(circle(2))
    assert report.verdict == 'consistent'
    assert report.valid
    assert report.fit_found is True
    assert report.diameter == pytest.approx(4)
    report = search.counterexample_audit(stadium(2))
    assert report.verdict == 'hypothesis-not-met'
    assert report.fit_found is None
    assert search.counterexample_audit(circle(0.5)).verdict == 'hypothesis-not-met'
    data = report.to_json_dict()
    assert data['verdict'] == 'hypothesis-not-met'
    assert data['problems'] == []

def test_audit_counterexample() -> None:
    """
    A curve meeting the hypotheses without two disks is a counterexample.
    """
    with patch('puddle.search.moons.two_unit_disks_fit', return_value=FitResult(None, 1.5)):
        report = search.counterexample_audit(circle(2))
    assert report.verdict == 'counterexample'
    assert report.fit_found is False
    assert report.fit_achieved == 1.5

@pytest.mark.parametrize('seed', range(5))
def test_history_monotone(seed: int) -> None:
    """
    From random starts, the recorded best objective never goes up within a
    restart.
    """
    config = SearchConfig(n_segments=6, restarts=2, max_iters=300, rng_seed=seed)
    result = search.search(config)
    assert {entry.restart for entry in result.history} == {0, 1}
    check_history(result.history)
    data = json.loads(json.dumps(result.to_json_dict()))
    assert all(entry[2] is None or entry[2] >= entry[3] - 1e-9 for entry in data['history'])

def test_reproducible() -> None:
    """
    The same configuration gives the same result.
    """
    config = SearchConfig(n_segments=6, restarts=2, max_iters=200, rng_seed=7)
    first = search.search(config)
    second = search.search(config)
    assert first.objective_value == second.objective_value
    assert first.feasible == second.feasible
    assert first.best_curve.segments == second.best_curve.segments
    assert first.history == second.history

def test_shortest_diameter_four() -> None:
    """
    From random starts, the shortest curve of diameter 4 comes out within 1%
    of the stadium's length 2pi + 4.
    """
    result = search.search(SearchConfig())
    assert result.feasible
    target = 2 * math.pi + 4
    assert target - 1e-6 <= result.objective_value <= 1.01 * target
    assert curves.diameter(result.best_curve)[0] >= 4 - 1e-9
    assert curves.max_abs_curvature(result.best_curve) <= 1 + 1e-9

def test_no_smaller_diameter() -> None:
    """
    Curves of length at least 4pi found by the search all have diameter at
    least 4.
    """
    config = SearchConfig(objective=Objective.MIN_DIAMETER_GIVEN_LENGTH, n_segments=10)
    result = search.search(config)
    assert result.feasible
    assert result.objective_value >= 4 - 1e-3
    assert result.best_curve.total_length >= 4 * math.pi - 1e-9
