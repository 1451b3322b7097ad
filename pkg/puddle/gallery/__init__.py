"""
.. versionadded:: 0.1

Constructors for the curves that matter to the two-disk question, and a
registry of them by name for the command line.

Every constructor returns a validated, counterclockwise curve with
curvature at most 1 (for parameters in its documented domain).
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping

from puddle.curves import ClosedArcSpline
from puddle.errors import ParameterError
from puddle.gallery.circles import circle, stadium
from puddle.gallery.dumbbell import dumbbell
from puddle.gallery.reuleaux import arc_exchange, rounded_reuleaux
from puddle.gallery.three_circle import three_circle_border

__all__ = [
    'GALLERY', 'GalleryEntry', 'GalleryParams', 'arc_exchange', 'circle',
    'dumbbell', 'rounded_reuleaux', 'stadium', 'three_circle_border',
]

@dataclass(frozen=True)
class GalleryEntry(object):
    """
    :param build: The constructor, called with keyword arguments.
    :param defaults: Default value of every parameter.
    :param overlay: What to draw over the curve by default: ``'witness'``
      for the two-disk witness, ``'fit-3'`` for a three-disk search.
    """
    build: Callable[..., ClosedArcSpline]
    defaults: Mapping[str, float]
    overlay: str = 'witness'

GALLERY: Dict[str, GalleryEntry] = {
    'circle': GalleryEntry(circle, {'r': 2.0}),
    'stadium': GalleryEntry(stadium, {'a': 2.0}),
    'dumbbell': GalleryEntry(dumbbell, {'d': 6.0, 'R': 4.8}),
    'three-circle-border': GalleryEntry(three_circle_border, {'l': 0.2}, 'fit-3'),
    'rounded-reuleaux': GalleryEntry(rounded_reuleaux, {'width': 4.0, 'rho': 1.0}),
}

@dataclass(frozen=True)
class GalleryParams(object):
    """A named gallery curve and the parameters to build it with."""
    name: str
    params: Mapping[str, float] = field(default_factory=dict)
    def __post_init__(self) -> None:
        if self.name not in GALLERY:
            raise ParameterError(
                f'unknown curve {self.name!r}, choose from {", ".join(sorted(GALLERY))}'
            )
        unknown = set(self.params) - set(self.entry.defaults)
        if unknown:
            raise ParameterError(
                f'{self.name} has no parameter {", ".join(sorted(unknown))}'
            )
    @property
    def entry(self) -> GalleryEntry:
        return GALLERY[self.name]
    def resolved(self) -> Dict[str, float]:
        """All parameters, with defaults filled in."""
        return {**self.entry.defaults, **self.params}
    def build(self) -> ClosedArcSpline:
        return self.entry.build(**self.resolved())
