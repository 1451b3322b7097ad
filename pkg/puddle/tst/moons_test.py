
import math
from typing import List
from unittest.mock import patch

import numpy as np
import pytest

from puddle import curves, moons, oracle, search
from puddle.curves import (
    ArcSpan, Circle, ClosedArcSpline, Point2, ToleranceConfig,
)
from puddle.errors import (
    CurveError, HypothesisError, InvalidSpanError, NumericalFailure,
    ParameterError,
)
from puddle.gallery import (
    circle, dumbbell, rounded_reuleaux, stadium, three_circle_border,
)
from puddle.gallery.dumbbell import neck_offset
from puddle.gallery.three_circle import sweeps, vertices
from puddle.moons import FitWitness

H = 0.01

def neck_parameters() -> List[float]:
    """Parameters of the narrowest points of the default dumbbell's neck."""
    pieces = dumbbell().pieces
    return [pieces[1].t0 + pieces[1].length / 2, pieces[3].t0 + pieces[3].length / 2]

def test_require_ccw() -> None:
    """
    Disk constructions want the interior on the left.
    """
    curve = circle(2)
    assert moons.require_ccw(curve) is curve
    with pytest.raises(CurveError) as info:
        moons.require_ccw(curve.reversed())
    assert info.value.invariant == 'turning'
    with pytest.raises(CurveError):
        moons.incircle_at(curve.reversed(), 0)

def test_tangent_disk_fits() -> None:
    """
    Disks tangent at a point are nested, so they fit up to some radius and
    not beyond.
    """
    curve = stadium(2)
    assert moons.tangent_disk_fits(curve, 1, 0.5)
    assert moons.tangent_disk_fits(curve, 1, 1)
    assert not moons.tangent_disk_fits(curve, 1, 1.01)
    assert not moons.tangent_disk_fits(curve, 1, 3)

def test_incircle_cap() -> None:
    """
    At the apex of a stadium cap the incircle is the cap's own circle, and
    the curve runs along it.
    """
    curve = stadium(2)
    inc = moons.incircle_at(curve, 2 + math.pi / 2)
    assert inc.radius == pytest.approx(1, abs=1e-8)
    assert inc.circle.center.as_list() == pytest.approx([2, 0], abs=1e-8)
    assert inc.dense
    assert inc.base_t == 2 + math.pi / 2
    assert any(c == pytest.approx(2 + math.pi / 2, abs=1e-6) for c in inc.contacts)
    # The cap meets the straight segments at its ends.
    assert any(c == pytest.approx(2, abs=1e-6) for c in inc.contacts)
    assert any(c == pytest.approx(2 + math.pi, abs=1e-6) for c in inc.contacts)

def test_incircle_straight() -> None:
    """
    On the middle of a straight side the incircle touches the opposite side,
    and splits into two half circles.
    """
    curve = stadium(2)
    inc = moons.incircle_at(curve, 1)
    assert inc.radius == pytest.approx(1, abs=1e-8)
    assert inc.circle.center.as_list() == pytest.approx([1, 0], abs=1e-8)
    assert not inc.dense
    assert inc.contacts == pytest.approx((1, 3 + math.pi), abs=1e-6)
    assert inc.other_contacts(curve.total_length) == pytest.approx((3 + math.pi,), abs=1e-6)
    assert inc.sigma_split is not None
    first, second = inc.sigma_split
    assert first.start == pytest.approx(-math.pi / 2, abs=1e-6)
    assert first.sweep == pytest.approx(math.pi, abs=1e-6)
    assert first.sweep + second.sweep == pytest.approx(2 * math.pi)

@pytest.mark.parametrize('curve', [
    stadium(2), dumbbell(), rounded_reuleaux(4, 1.5), three_circle_border(0.2),
])
@pytest.mark.parametrize('fraction', [0.1, 0.37, 0.5, 0.81])
def test_incircle_oracle(curve: ClosedArcSpline, fraction: float) -> None:
    """
    Incircle radius agrees with the sampled oracle. Every contact is on the
    circle, and the base point is one of them.
    """
    t = fraction * curve.total_length
    inc = moons.incircle_at(curve, t)
    tol = ToleranceConfig()
    brute = oracle.brute_incircle(curve, t, 200_000)
    assert inc.radius == pytest.approx(brute, abs=10 * tol.tol_radius)
    for c in inc.contacts:
        point = curves.evaluate(curve, c)[0]
        assert abs(point.dist(inc.circle.center) - inc.radius) <= tol.tol_contact
    assert any(abs(c - t) <= 1e-6 for c in inc.contacts)

def test_supports_from_inside() -> None:
    """
    Only convex arcs can support, and only if their disk is inside.
    """
    assert moons.supports_from_inside(stadium(2), 1) is None
    assert moons.supports_from_inside(stadium(2), 2 + math.pi / 2) is True
    neck, _ = neck_parameters()
    assert moons.supports_from_inside(dumbbell(), neck) is False
    assert moons.supports_from_inside(dumbbell(), 0) is True
    reuleaux = rounded_reuleaux(4, 1)
    assert moons.supports_from_inside(reuleaux, 0.5) is True
    assert moons.supports_from_inside(reuleaux, 2.5) is False

def check_run(curve: ClosedArcSpline, run: moons.LemmaRun) -> None:
    assert moons.supports_from_inside(curve, run.q)
    assert run.rounds == len(run.span_lengths) >= 1
    for before, after in zip(run.span_lengths, run.span_lengths[1:]):
        assert after <= before / 2 + 1e-9

def test_lemma_stadium() -> None:
    """
    Starting from the incircle at the middle of a straight side, each of the
    two arcs between contacts contains a cap.
    """
    curve = stadium(2)
    inc = moons.incircle_at(curve, 1)
    spans = moons.contact_spans(inc, curve.total_length)
    assert len(spans) == 2
    runs = [moons.lemma_supporting_point(curve, span, inc) for span in spans]
    for run in runs:
        check_run(curve, run)
        assert run.circle.radius == 1
        assert not run.degenerate
    assert runs[0].q == pytest.approx(2 + math.pi / 2, abs=1e-6)
    assert runs[0].circle.center.as_list() == pytest.approx([2, 0], abs=1e-12)
    assert runs[1].q == pytest.approx(4 + 1.5 * math.pi, abs=1e-6)
    assert runs[1].circle.center.as_list() == pytest.approx([0, 0], abs=1e-12)

def test_lemma_reuleaux() -> None:
    """
    The incircle at the middle of a large arc of the rounded Reuleaux
    triangle touches the other two large arcs. Between each pair of contacts
    the supporting circle is a corner.
    """
    curve = rounded_reuleaux(4, 1)
    t = curve.pieces[1].t0 + curve.pieces[1].length / 2
    inc = moons.incircle_at(curve, t)
    assert inc.radius == pytest.approx(3 - 2 / math.sqrt(3), abs=1e-6)
    assert inc.circle.center.as_list() == pytest.approx([0, 0], abs=1e-6)
    spans = moons.contact_spans(inc, curve.total_length)
    assert len(spans) == 3
    centers = []
    for span in spans:
        run = moons.lemma_supporting_point(curve, span, inc)
        check_run(curve, run)
        assert run.circle.radius == pytest.approx(1)
        centers.append(run.circle.center)
    # One corner per span, all different.
    assert min(a.dist(b) for a in centers for b in centers if a is not b) == pytest.approx(2)

def test_lemma_bad_span() -> None:
    """
    The span must touch the base circle at its ends and nowhere else.
    """
    curve = rounded_reuleaux(4, 1)
    t = curve.pieces[1].t0 + curve.pieces[1].length / 2
    inc = moons.incircle_at(curve, t)
    first, second, third = sorted(inc.contacts)
    with pytest.raises(InvalidSpanError):
        moons.lemma_supporting_point(curve, ArcSpan(first, third), inc)
    with pytest.raises(InvalidSpanError):
        moons.lemma_supporting_point(curve, ArcSpan(first, first + 0.5), inc)
    with pytest.raises(ParameterError):
        moons.lemma_supporting_point(curve, ArcSpan(first, first), inc)

def test_lemma_round_limit() -> None:
    """
    Running out of rounds is a numerical failure, reporting the last span.
    """
    curve = stadium(2)
    inc = moons.incircle_at(curve, 1)
    span = moons.contact_spans(inc, curve.total_length)[0]
    with patch('puddle.moons.MAX_LEMMA_ROUNDS', 0):
        with pytest.raises(NumericalFailure) as info:
            moons.lemma_supporting_point(curve, span, inc)
    assert info.value.span == (span.t_lo, span.t_hi)

def test_next_span_clockwise() -> None:
    """
    The next span runs back from the midpoint to the first contact clockwise
    of it, even when the contact ahead is nearer.
    """
    curve = stadium(2)
    span = ArcSpan(0, 8)
    def following(*contacts: float) -> ArcSpan:
        inc = moons.Incircle(Circle(Point2(0, 0), 1), 4.0, contacts)
        return moons._next_span(curve, span, 4.0, inc)
    assert following(1.0, 4.0, 4.5) == ArcSpan(1.0, 4.0)
    assert following(1.0, 3.5, 4.0, 7.0) == ArcSpan(3.5, 4.0)
    assert following(4.0, 6.0, 7.0) == ArcSpan(4.0, 6.0)
    assert following(4.0) == ArcSpan(0, 4.0)

def test_osculating_intersection_check() -> None:
    """
    Disjoint osculating disks pass. Overlapping ones pass only if the
    overlap is inside the base circle.
    """
    curve = stadium(2)
    inc = moons.incircle_at(curve, 1)
    assert moons.osculating_intersection_check(curve, 2 + math.pi / 2, 4 + 1.5 * math.pi, inc)
    with pytest.raises(ParameterError):
        moons.osculating_intersection_check(curve, 1, 2 + math.pi / 2, inc)
    border = three_circle_border(0.2)
    convex, concave = sweeps(0.2)
    apex = moons.incircle_at(border, convex / 2)
    assert apex.circle.center.as_list() == pytest.approx(vertices(0.2)[0].as_list(), abs=1e-6)
    left = convex + concave + convex / 2
    right = 2 * (convex + concave) + convex / 2
    assert not moons.osculating_intersection_check(border, left, right, apex)

@pytest.mark.parametrize('seed', range(100))
def test_osculating_random(seed: int) -> None:
    """
    On random curves, supporting circles found in different arcs between the
    contacts of an incircle overlap only inside that incircle.
    """
    rng = np.random.default_rng(seed)
    curve = search.random_valid_curve(8, rng)
    inc = moons.incircle_at(curve, rng.uniform(0, curve.total_length))
    if inc.dense:
        return
    spans = moons.contact_spans(inc, curve.total_length)
    runs = [moons.lemma_supporting_point(curve, span, inc) for span in spans]
    for run in runs:
        check_run(curve, run)
    runs = [run for run in runs if not run.degenerate]
    for i, first in enumerate(runs):
        for second in runs[i + 1:]:
            assert moons.osculating_intersection_check(curve, first.q, second.q, inc)

def test_fit_witness() -> None:
    """
    Witnesses are measured from scratch. A single disk has no pair gap.
    """
    witness = FitWitness.measure(circle(2), [Point2(1, 0), Point2(-1, 0)])
    assert witness.k == 2
    assert witness.clearance == pytest.approx(1)
    assert witness.min_pair_gap == pytest.approx(2)
    assert witness.is_valid()
    single = FitWitness.measure(circle(2), [Point2(0, 0)])
    assert single.clearance == pytest.approx(2)
    assert single.to_json_dict() == {
        'k': 1, 'centers': [[0.0, 0.0]], 'clearance': single.clearance,
        'min_pair_gap': None,
    }
    assert not FitWitness.measure(circle(2), [Point2(0.5, 0), Point2(-0.5, 0)]).is_valid()
    assert not FitWitness.measure(circle(2), [Point2(1.5, 0), Point2(-1, 0)]).is_valid()

def test_two_disks_circle() -> None:
    """
    The circle of radius 2 holds two touching unit disks.
    """
    result = moons.two_unit_disks_fit(circle(2))
    assert result.found
    assert result.witness is not None
    assert result.witness.min_pair_gap == pytest.approx(2, abs=2 * H)
    assert result.witness.is_valid()
    for c in result.witness.centers:
        assert math.hypot(c.x, c.y) == pytest.approx(1, abs=2 * H)
    data = result.to_json_dict()
    assert data['found'] is True
    assert data['witness']['k'] == 2

def test_two_disks_stadium() -> None:
    """
    The stadium's two disks sit in its caps.
    """
    result = moons.two_unit_disks_fit(stadium(2))
    assert result.witness is not None
    assert result.witness.min_pair_gap == pytest.approx(2, abs=1e-6)
    assert sorted(c.as_list() for c in result.witness.centers) == [
        pytest.approx([0, 0], abs=1e-6), pytest.approx([2, 0], abs=1e-6),
    ]

@pytest.mark.parametrize('rho', [1.0, 1.5, 2.0])
def test_two_disks_reuleaux(rho: float) -> None:
    """
    Curves of constant width 4 hold two unit disks, touching each other.
    """
    result = moons.two_unit_disks_fit(rounded_reuleaux(4, rho))
    assert result.found
    assert result.achieved == pytest.approx(2, abs=2 * H)

def test_three_circle_disks() -> None:
    """
    Three overlapping circles leave no room for two disjoint unit disks. Once
    they touch, there is room for three.
    """
    result = moons.two_unit_disks_fit(three_circle_border(0.2))
    assert not result.found
    assert result.achieved == pytest.approx(1.8, abs=2 * H)
    result = moons.k_unit_disks_fit(three_circle_border(0), 3)
    assert result.found
    assert result.witness is not None
    assert result.witness.min_pair_gap == pytest.approx(2, abs=2 * H)
    expected = sorted(v.as_list() for v in vertices(0))
    found = sorted(c.as_list() for c in result.witness.centers)
    for want, got in zip(expected, found):
        assert got == pytest.approx(want, abs=2 * H)

def test_three_disks_circle() -> None:
    """
    A circle of radius 4 has room for three unit disks.
    """
    result = moons.k_unit_disks_fit(circle(4), 3, tol=ToleranceConfig(grid_h=0.05))
    assert result.found
    assert result.witness is not None
    assert result.witness.k == 3
    assert result.witness.is_valid()

def test_dumbbell_disks() -> None:
    """
    The dumbbell holds a disk in each lobe, and nothing else.
    """
    result = moons.two_unit_disks_fit(dumbbell())
    assert result.witness is not None
    assert sorted(c.x for c in result.witness.centers) == pytest.approx([-3, 3], abs=2 * H)
    assert all(abs(c.y) <= 2 * H for c in result.witness.centers)
    three = moons.k_unit_disks_fit(dumbbell(), 3)
    assert not three.found
    assert three.heuristic
    assert three.achieved < 2
    one = moons.k_unit_disks_fit(dumbbell(), 1)
    assert one.found
    assert one.achieved == pytest.approx(1, abs=1e-9)
    with pytest.raises(ParameterError):
        moons.k_unit_disks_fit(dumbbell(), 0)

def test_lemma_dumbbell() -> None:
    """
    From the neck, each arc between the contacts runs around one lobe, and
    the supporting circle is that lobe.
    """
    curve = dumbbell()
    for t in neck_parameters():
        inc = moons.incircle_at(curve, t)
        assert inc.radius == pytest.approx(neck_offset(6, 4.8) - 4.8, abs=1e-6)
        spans = moons.contact_spans(inc, curve.total_length)
        assert len(spans) == 2
        lobes = []
        for span in spans:
            run = moons.lemma_supporting_point(curve, span, inc)
            check_run(curve, run)
            assert run.circle.radius == 1
            lobes.append(run.circle.center.x)
        assert sorted(lobes) == pytest.approx([-3, 3], abs=1e-9)

@pytest.mark.parametrize('d, R', [(6, 4.8), (6, 6), (7, 6)])
def test_no_third_moon(d: float, R: float) -> None:
    """
    However far apart the lobes, there is no room for a third disk.
    """
    result = moons.k_unit_disks_fit(dumbbell(d, R), 3, tol=ToleranceConfig(grid_h=0.05))
    assert not result.found
    assert result.heuristic

@pytest.mark.parametrize('curve', [
    circle(2), circle(1.9), stadium(2), stadium(1), dumbbell(),
    rounded_reuleaux(4, 1.5), three_circle_border(0.2), three_circle_border(0),
])
def test_two_disks_need_diameter(curve: ClosedArcSpline) -> None:
    """
    Whenever two unit disks fit, the curve has diameter at least 4.
    """
    if moons.two_unit_disks_fit(curve).found:
        assert curves.diameter(curve)[0] >= 4 - 4 * H - 1e-6

def test_unit_centers_near() -> None:
    """
    From the narrowest point of the dumbbell's neck, the supporting circles
    are the two lobes.
    """
    for t in neck_parameters():
        found = moons.unit_centers_near(dumbbell(), t)
        assert sorted(c.x for c in found) == pytest.approx([-3, 3], abs=1e-9)
    found = moons.unit_centers_near(stadium(2), 1)
    assert len(found) == 1
    assert found[0].as_list() == pytest.approx([1, 0], abs=1e-12)

def test_theorem_witness() -> None:
    """
    Two disks near the ends of a diameter, for the curves in the gallery
    that meet the hypotheses.
    """
    witness = moons.theorem_witness(dumbbell())
    assert witness.is_valid()
    assert sorted(c.as_list() for c in witness.centers) == [
        pytest.approx([-3, 0], abs=2 * H), pytest.approx([3, 0], abs=2 * H),
    ]
    witness = moons.theorem_witness(stadium(2))
    assert sorted(c.as_list() for c in witness.centers) == [
        pytest.approx([0, 0], abs=1e-6), pytest.approx([2, 0], abs=1e-6),
    ]
    witness = moons.theorem_witness(circle(2))
    assert witness.min_pair_gap == pytest.approx(2)
    assert witness.is_valid()
    for rho in (1.0, 1.5, 2.0):
        assert moons.theorem_witness(rounded_reuleaux(4, rho)).is_valid()

def test_theorem_hypotheses() -> None:
    """
    Curves outside the hypotheses are refused, naming the one that fails.
    """
    with pytest.raises(HypothesisError) as info:
        moons.theorem_witness(three_circle_border(0.2))
    assert info.value.hypothesis == 'diameter'
    with pytest.raises(HypothesisError) as info:
        moons.theorem_witness(circle(1.9))
    assert info.value.hypothesis == 'diameter'
    with pytest.raises(HypothesisError) as info:
        moons.theorem_witness(circle(0.5))
    assert info.value.hypothesis == 'curvature'
    with pytest.raises(CurveError):
        moons.theorem_witness(circle(2).reversed())

@pytest.mark.parametrize('seed', range(100))
def test_theorem_random(seed: int) -> None:
    """
    Random curves of curvature at most 1, enlarged to diameter just over 4
    if they are smaller, always hold two disks.
    """
    curve = search.random_valid_curve(8, np.random.default_rng(seed))
    diam = curves.diameter(curve)[0]
    if diam < 4:
        curve = curves.validate(curve.scaled(4 * (1 + 1e-9) / diam))
    witness = moons.theorem_witness(curve)
    assert witness.is_valid()
    again = FitWitness.measure(curve, witness.centers)
    assert again.clearance >= 1 - 1e-9
    assert again.min_pair_gap >= 2 - 1e-9
