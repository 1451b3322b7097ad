"""
Command line interface.

Numbers go to standard output as JSON. Human-readable summaries and log
messages go to standard error. The exit status is 0 on success, 2 for bad
input or a curve that fails validation or a hypothesis, 3 for a
counterexample alert, and 4 for a numerical failure.

Set ``PUDDLE_TOL`` in the environment to override the geometric tolerance.
"""

import argparse
import dataclasses
import json
import logging
import math
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import __version__, curves, moons, oracle, search
from .curves import Circle, ClosedArcSpline, ToleranceConfig
from .errors import (
    CounterexampleAlert, GenerationError, HypothesisError, InvalidSpanError,
    NumericalFailure, UnboundedIncircleError,
)
from .gallery import GALLERY, GalleryParams, arc_exchange
from .render import Overlay, RenderSpec, save_svg

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_COUNTEREXAMPLE = 3
EXIT_NUMERICAL = 4

def _summary(text: str) -> None:
    print(text, file=sys.stderr)

def _emit(data: Dict[str, Any], out: Optional[str] = None) -> None:
    text = json.dumps(data, indent=2)
    if out is None or out == '-':
        print(text)
    else:
        with open(out, 'w', encoding='utf-8', newline='\n') as fout:
            fout.write(text + '\n')

def load_curve(path: str) -> ClosedArcSpline:
    """Read curve JSON from `path`, or standard input if it is ``-``."""
    if path == '-':
        data = json.load(sys.stdin)
    else:
        with open(path, encoding='utf-8') as fin:
            data = json.load(fin)
    return curves.from_json_dict(data)

def _tolerances(args: argparse.Namespace) -> ToleranceConfig:
    tol = ToleranceConfig.from_env()
    grid_h = getattr(args, 'grid_h', None)
    if grid_h is not None:
        tol = dataclasses.replace(tol, grid_h=grid_h)
    return tol

def _disk_overlay(centers: Sequence[curves.Point2], label: str) -> Overlay:
    return Overlay(
        circles=tuple(Circle(c, 1.0) for c in centers),
        points=tuple(centers),
        labels=tuple(f'{label}{i + 1}' for i in range(len(centers))),
    )

def _default_overlay(curve: ClosedArcSpline, kind: str, tol: ToleranceConfig) -> List[Overlay]:
    """Unit disks to draw on a gallery curve, if any are found."""
    if kind == 'fit-3':
        result = moons.k_unit_disks_fit(curve, 3, tol=tol)
    else:
        try:
            return [_disk_overlay(moons.theorem_witness(curve, tol).centers, 'c')]
        except HypothesisError:
            result = moons.two_unit_disks_fit(curve, tol=tol)
    if result.witness is None:
        return []
    return [_disk_overlay(result.witness.centers, 'c')]

def cmd_check(args: argparse.Namespace, tol: ToleranceConfig) -> int:
    curve = load_curve(args.input)
    rep = curves.report(curve, tol)
    data: Dict[str, Any] = {'report': rep.to_json_dict()}
    if rep.problems:
        _emit(data)
        _summary(f'invalid curve: {", ".join(rep.problems)}')
        return EXIT_INPUT
    curve = curves.validate(curve, tol)
    bounded = rep.max_abs_kappa <= 1 + tol.tol_geom
    fit = moons.two_unit_disks_fit(curve, tol=tol)
    if not fit.found and bounded and rep.diameter >= 4 - tol.tol_geom:
        # Raises CounterexampleAlert if this fails too.
        witness = moons.theorem_witness(curve, tol)
        fit = moons.FitResult(witness, witness.min_pair_gap)
    data['fit'] = fit.to_json_dict()
    if args.oracle:
        length = oracle.brute_length(curve, 10 ** 5)
        diam = oracle.brute_diameter(curve, 10 ** 4)[0]
        data['oracle'] = {
            'brute_length': length,
            'length_delta': rep.length - length,
            'brute_diameter': diam,
            'diameter_delta': rep.diameter - diam,
        }
    _emit(data)
    _summary(
        f'length {rep.length:.9g}, diameter {rep.diameter:.9g}, '
        f'max |kappa| {rep.max_abs_kappa:.9g}, fit: {"yes" if fit.found else "no"}'
    )
    if bounded and rep.length >= 4 * math.pi and rep.diameter < 4 - tol.tol_geom:
        audit = search.counterexample_audit(curve, tol)
        if audit.verdict == 'counterexample':
            raise CounterexampleAlert('length at least 4pi but diameter below 4', audit)
    return EXIT_OK

def cmd_gallery(args: argparse.Namespace, tol: ToleranceConfig) -> int:
    entry_params = {
        key: getattr(args, key) for key in _PARAM_NAMES
        if getattr(args, key) is not None
    }
    params = GalleryParams(args.name, entry_params)
    curve = params.build()
    for index in args.exchange:
        curve = arc_exchange(curve, index, tol)
    _emit(curves.to_json_dict(curve), args.out)
    rep = curves.report(curve, tol)
    _summary(f'{args.name}: length {rep.length:.12g}, diameter {rep.diameter:.12g}')
    if args.svg:
        overlays = _default_overlay(curve, params.entry.overlay, tol)
        save_svg(curve, args.svg, RenderSpec(overlays=overlays))
    return EXIT_OK

def cmd_lemma(args: argparse.Namespace, tol: ToleranceConfig) -> int:
    curve = curves.validate(load_curve(args.input), tol)
    inc = moons.incircle_at(curve, args.t, tol)
    data: Dict[str, Any] = {
        'incircle': inc.circle.to_json_dict(),
        'contacts': list(inc.contacts),
        'dense': inc.dense,
    }
    if inc.dense:
        _summary('the curve runs along its incircle: every point there supports')
        _emit(data)
        return EXIT_OK
    if not inc.other_contacts(curve.total_length):
        _summary('single contact: the incircle itself is the supporting circle')
        _emit(data)
        return EXIT_OK
    runs = []
    for span in moons.contact_spans(inc, curve.total_length):
        entry: Dict[str, Any] = {'span': [span.t_lo, span.t_hi]}
        try:
            run = moons.lemma_supporting_point(curve, span, inc, tol)
        except InvalidSpanError as exc:
            entry['error'] = str(exc)
        else:
            entry.update({
                'q': run.q,
                'osculating': run.circle.to_json_dict(),
                'iterations': run.rounds,
                'span_lengths': list(run.span_lengths),
                'degenerate': run.degenerate,
            })
            _summary(f'span {span.t_lo:.6g}..{span.t_hi:.6g}: q = {run.q:.9g} after {run.rounds} rounds')
        runs.append(entry)
    data['runs'] = runs
    _emit(data)
    return EXIT_OK

def cmd_witness(args: argparse.Namespace, tol: ToleranceConfig) -> int:
    curve = curves.validate(load_curve(args.input), tol)
    witness = moons.theorem_witness(curve, tol)
    _emit(witness.to_json_dict())
    if args.svg:
        save_svg(curve, args.svg, RenderSpec(overlays=[_disk_overlay(witness.centers, 'c')]))
    return EXIT_OK

def cmd_fit(args: argparse.Namespace, tol: ToleranceConfig) -> int:
    curve = curves.validate(load_curve(args.input), tol)
    result = moons.k_unit_disks_fit(curve, args.k, tol=tol)
    _emit(result.to_json_dict())
    answer = 'yes' if result.found else ('not found (heuristic)' if result.heuristic else 'no')
    _summary(f'{args.k} unit disks: {answer}')
    return EXIT_OK

def cmd_search(args: argparse.Namespace, tol: ToleranceConfig) -> int:
    config = search.SearchConfig(
        n_segments=args.segments,
        restarts=args.restarts,
        rng_seed=args.seed,
        max_iters=args.max_iters,
        objective=search.Objective(args.objective),
        tol=tol,
    )
    result = search.search(config)
    _emit(result.to_json_dict(), args.out)
    _summary(f'feasible: {result.feasible}, objective {result.objective_value:.12g}')
    return EXIT_OK

def cmd_render(args: argparse.Namespace, tol: ToleranceConfig) -> int:
    curve = curves.validate(load_curve(args.input), tol)
    overlays = []
    if args.witness:
        overlays.append(_disk_overlay(moons.theorem_witness(curve, tol).centers, 'c'))
    spec = RenderSpec(args.width, args.height, args.stroke, overlays)
    save_svg(curve, args.out, spec)
    return EXIT_OK

_PARAM_NAMES = sorted({key for entry in GALLERY.values() for key in entry.defaults})

def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='puddle', description='Unit disks inside curves of bounded curvature.',
    )
    parser.add_argument('--version', action='version', version=__version__)
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    sub = parser.add_subparsers(dest='command', required=True)

    check = sub.add_parser('check', help='validate and measure a curve')
    check.add_argument('input')
    check.add_argument('--oracle', action='store_true', help='also run the brute-force oracles')
    check.add_argument('--grid-h', type=float)
    check.set_defaults(func=cmd_check)

    gallery = sub.add_parser('gallery', help='emit a named example curve')
    gallery.add_argument('name', help=', '.join(sorted(GALLERY)))
    for key in _PARAM_NAMES:
        gallery.add_argument(f'--{key}', type=float)
    gallery.add_argument(
        '--exchange', type=int, action='append', default=[],
        help='replace this segment by three unit arcs (repeatable)',
    )
    gallery.add_argument('--out')
    gallery.add_argument('--svg')
    gallery.set_defaults(func=cmd_gallery)

    lemma = sub.add_parser('lemma', help='find supporting osculating circles')
    lemma.add_argument('input')
    lemma.add_argument('--t', type=float, required=True, help='base parameter')
    lemma.set_defaults(func=cmd_lemma)

    witness = sub.add_parser('witness', help='construct two unit disks')
    witness.add_argument('input')
    witness.add_argument('--svg')
    witness.set_defaults(func=cmd_witness)

    fit = sub.add_parser('fit', help='search for k unit disks')
    fit.add_argument('input')
    fit.add_argument('--k', type=int, default=2)
    fit.add_argument('--grid-h', type=float)
    fit.set_defaults(func=cmd_fit)

    run = sub.add_parser('search', help='search arc-splines for extremal curves')
    run.add_argument(
        '--objective', choices=[o.value for o in search.Objective],
        default=search.Objective.MIN_LENGTH_GIVEN_DIAMETER.value,
    )
    run.add_argument('--segments', type=int, default=8)
    run.add_argument('--restarts', type=int, default=20)
    run.add_argument('--seed', type=int, default=0)
    run.add_argument('--max-iters', type=int, default=4000)
    run.add_argument('--out')
    run.set_defaults(func=cmd_search)

    render = sub.add_parser('render', help='draw a curve as SVG')
    render.add_argument('input')
    render.add_argument('--out', required=True)
    render.add_argument('--width', type=int, default=600)
    render.add_argument('--height', type=int, default=600)
    render.add_argument('--stroke', type=float, default=2.0)
    render.add_argument('--witness', action='store_true', help='draw the two unit disks')
    render.set_defaults(func=cmd_render)
    return parser

def main(argv: Optional[Sequence[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
    )
    try:
        return int(args.func(args, _tolerances(args)))
    except CounterexampleAlert as exc:
        logger.error('counterexample alert: %s', exc)
        if exc.audit is not None:
            _emit({'audit': exc.audit.to_json_dict()})
        return EXIT_COUNTEREXAMPLE
    except (NumericalFailure, UnboundedIncircleError, GenerationError) as exc:
        logger.error('numerical failure: %s', exc)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as exc:
        # Covers validation errors, failed hypotheses and malformed JSON.
        _summary(f'error: {exc}')
        return EXIT_INPUT

if __name__ == '__main__':
    sys.exit(main())
