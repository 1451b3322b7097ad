
import math
import pathlib

import pytest

from puddle.curves import Circle, Point2
from puddle.errors import ParameterError
from puddle.gallery import circle, stadium
from puddle.render import Overlay, RenderSpec, render_svg, save_svg

def test_curve_path() -> None:
    """
    Arcs are drawn as arcs and straight segments as lines, in one path.
    """
    text = render_svg(circle(2))
    assert text.startswith('<svg')
    assert text.count('<path') == 1
    assert 'A' in text
    text = render_svg(stadium(2))
    assert text.count('<path') == 1
    assert 'L' in text
    assert 'Z' in text

def test_deterministic() -> None:
    """
    The same input always gives the same bytes.
    """
    spec = RenderSpec(overlays=[Overlay(circles=[Circle(Point2(0, 0), 1)])])
    assert render_svg(stadium(2), spec) == render_svg(stadium(2), spec)

def test_overlay() -> None:
    """
    Overlay circles, points and labels are all drawn.
    """
    overlay = Overlay(
        circles=[Circle(Point2(1, 0), 1), Circle(Point2(-1, 0), 1)],
        points=[Point2(1, 0), Point2(-1, 0)],
        labels=['c1', 'c2', 'note'],
        color='#0000ff',
    )
    text = render_svg(circle(2), RenderSpec(overlays=[overlay]))
    assert text.count('<circle') == 4
    assert text.count('<text') == 3
    for label in ('c1', 'c2', 'note'):
        assert f'>{label}<' in text
    assert '#0000ff' in text

def test_spec_errors() -> None:
    """
    Sizes and strokes must be positive.
    """
    with pytest.raises(ParameterError):
        RenderSpec(width_px=0)
    with pytest.raises(ParameterError):
        RenderSpec(height_px=-10)
    with pytest.raises(ParameterError):
        RenderSpec(stroke=0)
    with pytest.raises(ParameterError):
        RenderSpec(stroke=math.nan)

def test_save_svg(tmp_path: pathlib.Path) -> None:
    """
    Saving writes exactly the rendered text.
    """
    path = tmp_path / 'stadium.svg'
    save_svg(stadium(2), str(path))
    assert path.read_text(encoding='utf-8') == render_svg(stadium(2))
    with pytest.raises(OSError):
        save_svg(stadium(2), str(tmp_path / 'missing' / 'stadium.svg'))
