"""Command line front end.

Numbers on the command line are written ``p,q,r`` for (p + q sqrt d)/r.
JSON goes to standard output, a one-line summary to standard error.
Exit status: 0 proved, 2 refuted, 3 inconclusive, 1 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import fixtures
from .classify import (
    Status,
    is_completely_periodic,
    is_hyperperiodic_genus2,
    is_veech_h2,
    property_x,
)
from .cylinder import Inconclusive, build_h2, build_h11, decompose
from .enumeration import oracle_h2, solve_h2
from .jinvariant import j_surface, j_vv, j_vw
from .jsonio import (
    dumps,
    loads,
    parse_cli_qelem,
    qelem_to_json,
    solutions_to_obj,
    surface_from_obj,
    surface_to_obj,
    verdict_to_obj,
)
from .surface import Surface, SurfaceError, Vec2, is_quadratic, validate
from .svg import export_svg

EXIT_USAGE = 1

NUMBER_HELP = "numbers are p,q,r meaning (p + q*sqrt(d))/r; JSON numbers are [num_a, den_a, num_b, den_b]"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _add_input(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--input", help="surface JSON file ('-' for stdin)")
    g.add_argument("--fixture", choices=sorted(fixtures.SURFACES), help="built-in surface")


def _add_scan(p, cap=True):
    p.add_argument("--bound", type=int, default=2, help="coefficient bound for direction scans")
    if cap:
        p.add_argument("--cap", help="tracing cap (overrides VEECH2_CAP)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="veech2", description=__doc__.splitlines()[0], epilog=NUMBER_HELP)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="surface from cylinder data", epilog=NUMBER_HELP)
    p.add_argument("--family", choices=["h2", "h11"], required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--w", nargs=2, required=True, metavar="X")
    p.add_argument("--h", nargs="+", required=True, metavar="X")
    p.add_argument("--t", nargs="+", required=True, metavar="X")

    p = sub.add_parser("validate", help="stratum and field of a surface")
    _add_input(p)

    p = sub.add_parser("jinv", help="J invariant and its projections", epilog=NUMBER_HELP)
    _add_input(p)
    p.add_argument("--v", nargs=2, metavar="X", help="direction for J_vv")
    p.add_argument("--w", nargs=2, metavar="X", help="second direction for J_vw")

    p = sub.add_parser("decompose", help="cylinder decomposition", epilog=NUMBER_HELP)
    _add_input(p)
    p.add_argument("--dir", nargs=2, required=True, metavar="X")
    p.add_argument("--cap", help="tracing cap (overrides VEECH2_CAP)")

    for name, text in (
        ("veech", "Veech verdict in H(2)"),
        ("cp", "complete periodicity in genus 2"),
        ("hyper", "hyperperiodicity in genus 2"),
        ("propx", "Property X scan"),
    ):
        p = sub.add_parser(name, help=text)
        _add_input(p)
        _add_scan(p, cap=name in ("veech", "cp"))

    p = sub.add_parser("enumerate", help="count two-cylinder solutions in a box")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--c1", required=True)
    p.add_argument("--c2", required=True)
    p.add_argument("--box", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="use the brute-force oracle")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--allow-half", action="store_true", help="accept half-integer c1, c2")

    p = sub.add_parser("export-svg", help="draw a surface", epilog=NUMBER_HELP)
    _add_input(p)
    p.add_argument("--dir", nargs=2, metavar="X", help="shade the decomposition in this direction")
    p.add_argument("--output", help="file to write instead of stdout")
    return ap


def _load(args) -> Surface:
    if args.fixture:
        return fixtures.SURFACES[args.fixture]()
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    return surface_from_obj(loads(text))


def _num(text, d, flag):
    try:
        return parse_cli_qelem(text, d)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _vec(pair, d, flag) -> Vec2:
    return Vec2(_num(pair[0], d, flag), _num(pair[1], d, flag))


def _out(obj):
    sys.stdout.write(dumps(obj))
    sys.stdout.flush()


def _info(msg):
    sys.stderr.write(msg + "\n")


def cmd_build(args):
    d = args.d
    w = [_num(x, d, "--w") for x in args.w]
    h = [_num(x, d, "--h") for x in args.h]
    t = [_num(x, d, "--t") for x in args.t]
    n = 2 if args.family == "h2" else 3
    if len(h) != n or len(t) != n:
        raise UsageError(f"--h and --t need {n} values for family {args.family}")
    if args.family == "h2":
        s, _ = build_h2(w[0], w[1], h[0], h[1], t[0], t[1])
    else:
        s, _ = build_h11(w[0], w[1], h[0], h[1], h[2], t[0], t[1], t[2])
    if d is not None:
        s.d = d
    _out(surface_to_obj(s))
    _info(f"built {validate(s).stratum} surface with {len(s.polygons)} polygons")
    return 0


def cmd_validate(args):
    s = _load(args)
    info = validate(s)
    q = is_quadratic(s)
    _out({
        "type": "stratum",
        "genus": info.genus,
        "zero_orders": list(info.zero_orders),
        "cone_angles": list(info.cone_angles),
        "stratum": info.stratum,
        "field": str(q),
    })
    _info(f"{info.stratum}, genus {info.genus}, {q}")
    return 0


def _tensor_obj(c):
    return [str(x) for x in c.coords]


def cmd_jinv(args):
    s = _load(args)
    J = j_surface(s)
    obj = {
        "type": "j-invariant",
        "jxx": str(J.jxx.c),
        "jyy": str(J.jyy.c),
        "jxy": _tensor_obj(J.jxy),
    }
    if args.v:
        v = _vec(args.v, s.d, "--v")
        obj["jvv"] = str(j_vv(s, v).c)
        if args.w:
            obj["jvw"] = _tensor_obj(j_vw(s, v, _vec(args.w, s.d, "--w")))
    elif args.w:
        raise UsageError("--w needs --v")
    _out(obj)
    _info(f"J = ({obj['jxx']}, {obj['jyy']}, {obj['jxy']})")
    return 0


def _dec_obj(dec):
    if isinstance(dec, Inconclusive):
        return {
            "type": "decomposition",
            "status": "Inconclusive",
            "traced": qelem_to_json(dec.traced),
            "cap": qelem_to_json(dec.cap),
        }
    return {
        "type": "decomposition",
        "status": "Periodic",
        "diagram": dec.kind,
        "twist_direction": [qelem_to_json(dec.twist_direction.x), qelem_to_json(dec.twist_direction.y)],
        "cylinders": [
            {"width": qelem_to_json(c.width), "height": qelem_to_json(c.height),
             "twist": qelem_to_json(c.twist)}
            for c in dec.cylinders
        ],
    }


def cmd_decompose(args):
    s = _load(args)
    v = _vec(args.dir, s.d, "--dir")
    cap = _num(args.cap, s.d, "--cap") if args.cap else None
    dec = decompose(s, v, cap)
    _out(_dec_obj(dec))
    if isinstance(dec, Inconclusive):
        _info("inconclusive: tracing cap exceeded")
        return Status.INCONCLUSIVE.exit_code
    _info(f"{len(dec.cylinders)} cylinders ({dec.kind})")
    return 0


def _verdict(args, fn):
    s = _load(args)
    if getattr(args, "cap", None):
        v = fn(s, _num(args.cap, s.d, "--cap"), args.bound)
    elif fn in (is_veech_h2, is_completely_periodic):
        v = fn(s, None, args.bound)
    else:
        v = fn(s, args.bound)
    _out(verdict_to_obj(v, s.d))
    _info(f"{v.claim}: {v.status.value}" + (f" ({v.note})" if v.note else ""))
    return v.exit_code


def cmd_enumerate(args):
    try:
        c1, c2 = parse_cli_qelem(args.c1, None), parse_cli_qelem(args.c2, None)
    except ValueError as exc:
        raise UsageError(f"--c1/--c2: {exc}") from None
    fn = oracle_h2 if args.oracle else solve_h2
    ss = fn(c1.a, c2.a, args.d, args.box, allow_half=args.allow_half)
    if args.count_only:
        sys.stdout.write(f"{ss.count}\n")
    else:
        _out(solutions_to_obj(ss))
    _info(f"H({ss.c1},{ss.c2}) within bounds = {ss.count} ({ss.bounds_used})")
    return 0


def cmd_export_svg(args):
    s = _load(args)
    dec = None
    if args.dir:
        dec = decompose(s, _vec(args.dir, s.d, "--dir"))
        if isinstance(dec, Inconclusive):
            dec = None
            _info("decomposition inconclusive; drawing the surface only")
    text = export_svg(s, dec)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


COMMANDS = {
    "build": cmd_build,
    "validate": cmd_validate,
    "jinv": cmd_jinv,
    "decompose": cmd_decompose,
    "veech": lambda a: _verdict(a, is_veech_h2),
    "cp": lambda a: _verdict(a, is_completely_periodic),
    "hyper": lambda a: _verdict(a, is_hyperperiodic_genus2),
    "propx": lambda a: _verdict(a, property_x),
    "enumerate": cmd_enumerate,
    "export-svg": cmd_export_svg,
}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, SurfaceError, ValueError, OSError) as exc:
        sys.stderr.write(f"veech2 {args.command}: error: {exc}\n")
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
