"""Command-line entry point: ``heisyn {dist,geodesic,sphere,cut-locus,converge}``.

Rows go to stdout as CSV (header first) or, with ``--format json``, one JSON
object per line. Exit status: 0 success, 1 usage error, 2 solver failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .errors import DomainError, NoConvergence
from .limits import DEFAULT_EPS, exp_convergence, sphere_convergence
from .loci import cross_section, in_cut_locus, sample_sphere
from .riemann import exp_riemann
from .subriemann import SRMomentum, exp_sr
from .synthesis import DEFAULT_TOL, solve

EXIT_USAGE = 1
EXIT_SOLVER = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    # shortest string that reads back to the same double
    return repr(v)


def _json_value(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    return fmt(v) if math.isinf(v) or math.isnan(v) else float(fmt(v))


def emit(columns, rows, form: str, out=None):
    out = out or sys.stdout
    if form == "json":
        for row in rows:
            out.write(json.dumps({c: _json_value(v) for c, v in zip(columns, row)}) + "\n")
    else:
        out.write(",".join(columns) + "\n")
        for row in rows:
            out.write(",".join(fmt(v) for v in row) + "\n")


def _floats(text: str, n: int | None = None) -> list[float]:
    try:
        vals = [float(s) for s in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if n is not None and len(vals) != n:
        raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
    return vals


def _point(text):
    return _floats(text, 3)


def _eps(text):
    v = float(text)
    if not v >= 0 or math.isinf(v):
        raise argparse.ArgumentTypeError("eps must be a finite number >= 0")
    return v


def cmd_dist(args):
    rep = solve(args.eps, args.q, args.tol)
    m = rep.momentum
    a, b = (m.c, m.psi) if isinstance(m, SRMomentum) else (m.theta, m.phi)
    return ["eps", "x", "y", "z", "distance", "branch", "theta", "phi", "t", "residual"], [
        [args.eps, *args.q, rep.time, rep.branch, a, b, rep.time, rep.residual]
    ]


def cmd_geodesic(args):
    if args.n < 1 or args.t < 0:
        raise UsageError("need n >= 1 and t >= 0")
    t = np.linspace(0.0, args.t, args.n + 1)
    if args.eps == 0:
        if args.c is None:
            raise UsageError("--eps 0 needs --c (vertical momentum)")
        pts = exp_sr(args.c, args.phi, t)
    else:
        if args.theta is None or abs(args.theta) > math.pi / 2:
            raise UsageError("--theta in [-pi/2, pi/2] is required for eps > 0")
        pts = exp_riemann(args.eps, args.theta, args.phi, t)
    return ["t", "x", "y", "z"], [[ti, *p] for ti, p in zip(t, pts)]


def cmd_sphere(args):
    s = sample_sphere(args.eps, args.r, args.n_theta, args.n_phi)
    if args.section:
        sec = cross_section(s)
        return ["theta", "rho", "z"], [[th, rho, z] for th, (rho, z) in zip(s.thetas, sec)]
    return ["theta", "phi", "x", "y", "z"], [[th, ph, *p] for th, ph, p in s.samples]


def cmd_cut_locus(args):
    if args.n < 1 or args.zmax < 0:
        raise UsageError("need n >= 1 and zmax >= 0")
    zs = np.linspace(-args.zmax, args.zmax, args.n)
    return ["z", "chi"], [[z, int(in_cut_locus(args.eps, (0.0, 0.0, z)))] for z in zs]


def cmd_converge(args):
    eps_list = args.eps_list or list(DEFAULT_EPS)
    if any(e <= 0 for e in eps_list):
        raise UsageError("eps values must be positive")
    if args.point is not None:
        th, ph, t = args.point
        rep = exp_convergence(th, ph, t, eps_list)
    else:
        rep = sphere_convergence(args.r, eps_list, args.n_probe, args.n_sample, upper=args.upper)
    return ["eps", "residual_or_gap", "verdict"], [[e, r, rep.verdict] for e, r in zip(rep.eps_sequence, rep.residuals)]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="heisyn", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("dist", help="distance from the identity and its minimizer")
    d.add_argument("--eps", type=_eps, required=True)
    d.add_argument("-q", type=_point, required=True, metavar="X,Y,Z")
    d.add_argument("--tol", type=float, default=DEFAULT_TOL)
    d.set_defaults(func=cmd_dist)

    g = sub.add_parser("geodesic", help="sample a geodesic from the identity")
    g.add_argument("--eps", type=_eps, required=True)
    g.add_argument("--theta", type=float)
    g.add_argument("--c", type=float, help="vertical momentum, used when eps = 0")
    g.add_argument("--phi", type=float, default=0.0)
    g.add_argument("--t", type=float, required=True)
    g.add_argument("-n", type=int, default=100)
    g.set_defaults(func=cmd_geodesic)

    s = sub.add_parser("sphere", help="sample the sphere of radius r")
    s.add_argument("--eps", type=_eps, required=True)
    s.add_argument("--r", type=float, required=True)
    s.add_argument("--n-theta", type=int, default=101)
    s.add_argument("--n-phi", type=int, default=64)
    s.add_argument("--section", action="store_true", help="meridian section in the plane y = 0")
    s.set_defaults(func=cmd_sphere)

    c = sub.add_parser("cut-locus", help="cut-locus indicator along the z axis")
    c.add_argument("--eps", type=_eps, required=True)
    c.add_argument("--zmax", type=float, required=True)
    c.add_argument("-n", type=int, default=101)
    c.set_defaults(func=cmd_cut_locus)

    v = sub.add_parser("converge", help="eps -> 0 convergence report")
    mode = v.add_mutually_exclusive_group(required=True)
    mode.add_argument("--point", type=lambda s: _floats(s, 3), metavar="THETA,PHI,T")
    mode.add_argument("--r", type=float)
    v.add_argument("--eps-list", type=_floats)
    v.add_argument("--n-probe", type=int, default=48)
    v.add_argument("--n-sample", type=int, default=96)
    v.add_argument("--upper", action="store_true", help="report the limsup gap instead")
    v.set_defaults(func=cmd_converge)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        columns, rows = args.func(args)
    except NoConvergence as exc:
        print(f"heisyn: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (UsageError, DomainError) as exc:
        print(f"heisyn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(columns, rows, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
