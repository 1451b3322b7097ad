"""
Draw the five standard pictures as SVG files in the given directory.

    python scripts/figures.py out/
"""

import os
import sys
from typing import Tuple

from puddle import curves, moons
from puddle.curves import Circle
from puddle.gallery import dumbbell, rounded_reuleaux, stadium, three_circle_border
from puddle.gallery.three_circle import vertices
from puddle.render import Overlay, RenderSpec, save_svg

def disks(centers: Tuple[curves.Point2, ...], color: str = '#c03030') -> Overlay:
    return Overlay(circles=tuple(Circle(c, 1.0) for c in centers), points=centers, color=color)

def lemma_sketch() -> RenderSpec:
    curve = stadium(2)
    base = moons.incircle_at(curve, 1.0)
    span = moons.contact_spans(base, curve.total_length)[0]
    run = moons.lemma_supporting_point(curve, span, base)
    q, _, _ = curves.evaluate(curve, run.q)
    start, _, _ = curves.evaluate(curve, 1.0)
    return RenderSpec(overlays=(
        Overlay(circles=(base.circle,), points=(start,), labels=('p',), color='#3060c0'),
        Overlay(circles=(run.circle,), points=(q,), labels=('q',)),
    ))

def main(outdir: str) -> None:
    os.makedirs(outdir, exist_ok=True)
    bell = dumbbell()
    reuleaux = rounded_reuleaux(4, 1.5)
    border = three_circle_border(0.2)
    figures = [
        ('dumbbell.svg', bell, RenderSpec(overlays=(disks(moons.theorem_witness(bell).centers),))),
        ('lemma.svg', stadium(2), lemma_sketch()),
        ('reuleaux.svg', reuleaux, RenderSpec(overlays=(disks(moons.theorem_witness(reuleaux).centers),))),
        ('stadium.svg', stadium(2), RenderSpec(overlays=(disks(moons.theorem_witness(stadium(2)).centers),))),
        ('three_circle.svg', border, RenderSpec(overlays=(disks(tuple(vertices(0.2)), '#808080'),))),
    ]
    for name, curve, spec in figures:
        path = os.path.join(outdir, name)
        save_svg(curve, path, spec)
        print(f'{path}: length {curves.length(curve):.6f}, diameter {curves.diameter(curve)[0]:.6f}')

if __name__ == '__main__':
    main(sys.argv[1] if len(sys.argv) > 1 else '.')
