"""Command line: verify, transform, volume, ivory and sweep.

Examples:
  python -m regge_symmetry verify --geometry euclidean --edges 1.2,1.2,1.0,1.2,1.1,1.5 --json
  python -m regge_symmetry ivory --geometry euclidean --axes 4,1 --lambdas -5,0,2,3.5
  python -m regge_symmetry sweep --geometry spherical --edges 1.5708,1.5708,1.5708,1.5708,1.5708 --steps 10

Exit codes: 0 pass, 1 a checked identity failed numerically, 2 bad input or
no such tetrahedron.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys

import numpy as np
import pandas as pd

from . import config
from .confocal import Box, ConfocalFamily, box_vertices, ivory_check
from .errors import DegenerateTetrahedron, PartnerNonexistent, QuadratureFailure, ReggeError
from .regge_transform import regge_angles, regge_edges, regge_partner, verify_regge
from .tetrahedron import EDGE_LABELS, EdgeLengths, dihedral_angles, validate
from .trig_kernel import Geometry
from .volume import QuadratureOptions, flattening_range, volume

logger = logging.getLogger(__name__)

GEOMETRIES = ('euclidean', 'spherical', 'hyperbolic')
SWEEP_COLUMNS = ['t', 'vol', 'vol_bar', 'phi', 'psi', 'alpha', 'beta', 'gamma', 'delta',
                 'alpha_bar', 'beta_bar', 'gamma_bar', 'delta_bar']
# Relative gap kept from each end of the valid y-interval in an automatic sweep;
# grown tenfold while the endpoint is still flat to within DEGENERACY_TOL.
AUTO_MARGIN = 1e-6
MAX_AUTO_MARGIN = 1e-2
# Flags whose values may be negative numbers
NUMERIC_FLAGS = ('--edges', '--axes', '--lambdas', '--signs', '--angles', '--param-from', '--param-to')

# Errors that mean "the numbers did not come out right" rather than "bad input"
NUMERIC_FAILURES = (PartnerNonexistent, QuadratureFailure, ArithmeticError, np.linalg.LinAlgError)


def _json_print(payload):
    print(json.dumps(payload, indent=2, sort_keys=True))


def _float_list(count=None):
    """argparse type for a comma-separated list of floats."""
    def parse(text):
        try:
            values = [float(v) for v in text.split(',') if v.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
        if not all(math.isfinite(v) for v in values):
            raise argparse.ArgumentTypeError(f"expected finite numbers, got {text!r}")
        if count is not None and len(values) != count:
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated numbers, got {len(values)}")
        return values
    return parse


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _join_negative_values(argv):
    """Rewrite '--lambdas -5,0' as '--lambdas=-5,0' so argparse does not read -5,0 as a flag."""
    out = []
    tokens = iter(argv)
    for token in tokens:
        if token in NUMERIC_FLAGS:
            value = next(tokens, None)
            if value is None:
                out.append(token)
            elif value.startswith('-') and value[1:2] in set('0123456789.'):
                out.append(f"{token}={value}")
            else:
                out.extend([token, value])
        else:
            out.append(token)
    return out


def build_parser():
    parser = argparse.ArgumentParser(prog='regge_symmetry',
                                     description='Regge symmetry of tetrahedra in E^3, S^3 and H^3')
    sub = parser.add_subparsers(dest='command', required=True)

    def common(cmd, edges):
        cmd.add_argument('--geometry', choices=GEOMETRIES, required=True)
        cmd.add_argument('--edges', type=_float_list(edges), required=True,
                         help='x,y,a,b,c,d' if edges == 6 else 'x,a,b,c,d')
        cmd.add_argument('--verbose', action='store_true')

    verify_cmd = sub.add_parser('verify', help='Check every Regge identity on a tetrahedron and its partner')
    common(verify_cmd, 6)
    verify_cmd.add_argument('--tol', type=_positive_float, default=None)
    verify_cmd.add_argument('--volume-tol', type=_positive_float, default=None)
    verify_cmd.add_argument('--quad-tol', type=_positive_float, default=None)
    verify_cmd.add_argument('--no-volume', action='store_true', help='Skip the volume comparison')
    verify_cmd.add_argument('--json', action='store_true')

    transform_cmd = sub.add_parser('transform', help='Print the Regge partner and both angle sets')
    common(transform_cmd, 6)
    transform_cmd.add_argument('--edges-only', action='store_true',
                               help='Only apply the edge map; no validation')
    transform_cmd.add_argument('--json', action='store_true')

    volume_cmd = sub.add_parser('volume', help='Volume of a tetrahedron')
    common(volume_cmd, 6)
    volume_cmd.add_argument('--quad-tol', type=_positive_float, default=None)
    volume_cmd.add_argument('--json', action='store_true')

    ivory_cmd = sub.add_parser('ivory', help='Great diagonals of a box of confocal quadrics')
    ivory_cmd.add_argument('--geometry', choices=GEOMETRIES, required=True)
    ivory_cmd.add_argument('--axes', type=_float_list(), required=True,
                           help='a_1^2,...,a_n^2 (then c^2 for spherical/hyperbolic)')
    ivory_cmd.add_argument('--lambdas', type=_float_list(), required=True,
                           help='two parameter values per band, lowest band first')
    ivory_cmd.add_argument('--rotational', action='store_true',
                           help='Sweep the planar family about its focal axis')
    ivory_cmd.add_argument('--angles', type=_float_list(2), default=None,
                           help='two rotation angles for a rotational box')
    ivory_cmd.add_argument('--signs', type=_float_list(), default=None)
    ivory_cmd.add_argument('--tol', type=_positive_float, default=None)
    ivory_cmd.add_argument('--json', action='store_true')
    ivory_cmd.add_argument('--verbose', action='store_true')

    sweep_cmd = sub.add_parser('sweep', help='CSV of volumes and angles along the y-deformation')
    common(sweep_cmd, 5)
    sweep_cmd.add_argument('--param-from', type=float, default=None)
    sweep_cmd.add_argument('--param-to', type=float, default=None)
    sweep_cmd.add_argument('--steps', type=int, default=20)
    sweep_cmd.add_argument('--quad-tol', type=_positive_float, default=None)
    sweep_cmd.add_argument('--output', default=None, help='CSV path (default: standard output)')
    return parser


def _quadrature(args):
    return QuadratureOptions() if args.quad_tol is None else QuadratureOptions(abs_tol=args.quad_tol)


def _tetrahedron(args):
    return validate(Geometry.from_name(args.geometry), EdgeLengths.from_sequence(args.edges))


def _fmt(values):
    return ', '.join(f"{v:.12g}" for v in values)


def cmd_verify(args):
    t = _tetrahedron(args)
    report = verify_regge(t, tol=args.tol, volume_tol=args.volume_tol,
                          opts=_quadrature(args), check_volume=not args.no_volume)
    if args.json:
        _json_print(report.to_dict())
    else:
        print(f"Geometry:        {report.geometry.name.lower()}")
        print(f"Edges:           {_fmt(report.edges.as_tuple())}")
        print(f"Partner edges:   {_fmt(report.partner_edges.as_tuple())}")
        print(f"s = {report.s:.12g}   sigma = {report.sigma:.12g}")
        for name, value in report.residuals().items():
            print(f"  {name:<24} {value:.3e}")
        if report.volume is not None:
            print(f"Volume:          {report.volume:.12g} (partner {report.partner_volume:.12g}, "
                  f"error estimate {report.volume_error_estimate:.1e})")
        print(f"Verdict:         {report.verdict.upper()}")
    return 0 if report.passed else 1


def cmd_transform(args):
    g = Geometry.from_name(args.geometry)
    edges = EdgeLengths.from_sequence(args.edges)
    result = regge_edges(edges)
    payload = {
        'geometry': g.name.lower(),
        's': result.s,
        'edges': dict(zip(EDGE_LABELS, edges.as_tuple())),
        'partner_edges': dict(zip(EDGE_LABELS, result.partner.as_tuple())),
    }
    if not args.edges_only:
        t = validate(g, edges)
        angles = dihedral_angles(t)
        partner_angles = dihedral_angles(regge_partner(t))
        payload['sigma'] = (angles.alpha + angles.beta + angles.gamma + angles.delta) / 2
        payload['dihedrals'] = angles.as_dict()
        payload['partner_dihedrals'] = partner_angles.as_dict()
        payload['predicted_partner_dihedrals'] = regge_angles(angles).as_dict()

    if args.json:
        _json_print(payload)
        return 0
    print(f"s = {result.s:.12g}")
    print(f"Partner edges (x,y,a,b,c,d): {_fmt(result.partner.as_tuple())}")
    if 'sigma' in payload:
        print(f"sigma = {payload['sigma']:.12g}")
        print("Dihedral angles          (phi, psi, alpha, beta, gamma, delta)")
        print(f"  tetrahedron:           {_fmt(payload['dihedrals'].values())}")
        print(f"  partner:               {_fmt(payload['partner_dihedrals'].values())}")
    return 0


def cmd_volume(args):
    t = _tetrahedron(args)
    result = volume(t, _quadrature(args))
    if args.json:
        _json_print({'geometry': t.geometry.name.lower(), 'edges': dict(zip(EDGE_LABELS, t.edges.as_tuple())),
                     'volume': result.value, 'volume_error_estimate': result.error})
    elif t.geometry == Geometry.EUCLIDEAN:
        print(f"Volume: {result.value:.15g}")
    else:
        print(f"Volume: {result.value:.15g} (error estimate {result.error:.1e})")
    return 0


def cmd_ivory(args):
    family = ConfocalFamily(Geometry.from_name(args.geometry), tuple(args.axes), rotational=args.rotational)
    box = Box(family=family, lambdas=tuple(args.lambdas),
              signs=tuple(args.signs) if args.signs else None,
              angles=tuple(args.angles) if args.angles else None)
    corners = box_vertices(box)
    report = ivory_check(box)
    tol = config.DEFAULT_TOL if args.tol is None else args.tol
    passed = report.max_difference < tol
    if args.json:
        _json_print({
            'geometry': family.geometry.name.lower(),
            'corners': {''.join(map(str, bits)): point.tolist() for bits, point in corners.items()},
            'diagonals': list(report.diagonals),
            'max_difference': report.max_difference,
            'verdict': 'pass' if passed else 'fail',
        })
    else:
        print("Corners:")
        for bits, point in corners.items():
            print(f"  {''.join(map(str, bits))}: {_fmt(point)}")
        print(f"Diagonals: {_fmt(report.diagonals)}")
        print(f"Max difference: {report.max_difference:.3e}")
    return 0 if passed else 1


def _auto_endpoint(g, base, end, direction, width):
    """y = end + direction * margin * width for the smallest margin where neither partner is flat."""
    margin = AUTO_MARGIN
    while True:
        y = end + direction * margin * width
        candidate = base.replace(y=y)
        try:
            validate(g, candidate)
            validate(g, regge_edges(candidate).partner)
            return y
        except DegenerateTetrahedron:
            if margin >= MAX_AUTO_MARGIN:
                raise
            logger.debug("sweep endpoint %.15g is flat, widening the margin to %.0e", y, margin * 10)
            margin *= 10


def _sweep_range(g, base, args):
    y_min, y_max = flattening_range(g, base)
    width = y_max - y_min
    start = _auto_endpoint(g, base, y_min, 1.0, width) if args.param_from is None else args.param_from
    stop = _auto_endpoint(g, base, y_max, -1.0, width) if args.param_to is None else args.param_to
    if not (y_min < start < y_max and y_min < stop < y_max):
        raise ReggeError(f"sweep range [{start}, {stop}] leaves the valid interval ({y_min:.12g}, {y_max:.12g})")
    return start, stop


def cmd_sweep(args):
    if args.steps < 2:
        raise ReggeError(f"--steps must be at least 2, got {args.steps}")
    g = Geometry.from_name(args.geometry)
    x, a, b, c, d = args.edges
    base = EdgeLengths(x=x, y=1.0, a=a, b=b, c=c, d=d)
    start, stop = _sweep_range(g, base, args)
    opts = _quadrature(args)

    rows = []
    for t in np.linspace(start, stop, args.steps):
        current = validate(g, base.replace(y=float(t)))
        partner = regge_partner(current)
        angles = dihedral_angles(current)
        partner_angles = dihedral_angles(partner)
        rows.append([t, volume(current, opts).value, volume(partner, opts).value, *angles.as_tuple(),
                     partner_angles.alpha, partner_angles.beta, partner_angles.gamma, partner_angles.delta])
        logger.debug("sweep row t=%.12g done", t)

    frame = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    if args.output:
        frame.to_csv(args.output, index=False, lineterminator='\n')
        print(f"Wrote {len(frame)} rows to {args.output}", file=sys.stderr)
    else:
        frame.to_csv(sys.stdout, index=False, lineterminator='\n')
    return 0


COMMANDS = {
    'verify': cmd_verify,
    'transform': cmd_transform,
    'volume': cmd_volume,
    'ivory': cmd_ivory,
    'sweep': cmd_sweep,
}


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2

    logging.basicConfig(level=logging.DEBUG if args.verbose else config.LOG_LEVEL,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    try:
        return COMMANDS[args.command](args)
    except NUMERIC_FAILURES as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ReggeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
