"""Command-line interface.

Subcommands: analyze, verify, gamma, gen, surgery. Exit codes: 0 no
violations, 1 usage or I/O error, 2 theorem violation recorded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import CrossingKind, analyze, analyze_space_polygon, find_intersections
from .campaign import emit_report, exit_code, run_campaign
from .checks import CHECK_IDS, run_checks
from .errors import GeometryError
from .generators import FAMILIES, GeneratorSpec, generate
from .polygon import SpacePolygon, SphericalPolygon, load_polygon, save_polygon
from .surgery import gamma_table, prepare_and_cut


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spherigon")
    ap.add_argument("--tol", type=float, default=1e-12, help="degeneracy tolerance")
    sub = ap.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="print the analysis report of a polygon file")
    p_an.add_argument("file")

    p_ver = sub.add_parser("verify", help="run a randomized verification campaign")
    p_ver.add_argument("--family", required=True, choices=FAMILIES)
    p_ver.add_argument("--n", required=True, type=int, nargs="+")
    p_ver.add_argument("--trials", type=int, default=100)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--checks", nargs="+", default=None, choices=CHECK_IDS)
    p_ver.add_argument("--format", choices=("json", "csv"), default="json")

    sub.add_parser("gamma", help="print the 81-row sign-frame table as CSV")

    p_gen = sub.add_parser("gen", help="generate a polygon and write it to a file")
    p_gen.add_argument("--family", required=True, choices=FAMILIES)
    p_gen.add_argument("--n", required=True, type=int)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)

    p_sur = sub.add_parser("surgery", help="remove a self-crossing by cut-and-paste")
    p_sur.add_argument("file")
    p_sur.add_argument("--record", type=int, default=0, help="index among self-crossings")
    return ap


def _cmd_analyze(args) -> int:
    p = load_polygon(args.file)
    if isinstance(p, SpacePolygon):
        f, tp, tm = analyze_space_polygon(p, args.tol)
        print(json.dumps({"kind": "space", "n": p.n, "F": f, "Tplus": tp, "Tminus": tm}, indent=2))
    else:
        print(json.dumps(analyze(p, args.tol).to_obj(), indent=2))
    return 0


def _cmd_verify(args) -> int:
    specs = [GeneratorSpec(args.family, n, args.seed) for n in args.n]
    doc = run_campaign(specs, args.trials, args.checks, args.tol)
    print(emit_report(doc, args.format))
    return exit_code(doc)


def _cmd_gamma(args) -> int:
    table = gamma_table()
    print("x1,x2,x3,x4,y1,y2,y3,y4,two_gamma,orbit_id")
    for row in table.rows:
        print(",".join(str(v) for v in (*row.x, *row.y, row.two_gamma, row.orbit_id)))
    return 0


def _cmd_gen(args) -> int:
    p = generate(GeneratorSpec(args.family, args.n, args.seed))
    save_polygon(p, args.out, name=f"{args.family}-n{args.n}-s{args.seed}")
    print(f"wrote {args.out}")
    return 0


def _cmd_surgery(args) -> int:
    p = load_polygon(args.file)
    if not isinstance(p, SphericalPolygon):
        print("surgery needs a spherical polygon", file=sys.stderr)
        return 1
    self_recs = [r for r in find_intersections(p, args.tol) if r.kind is CrossingKind.SELF]
    if not self_recs:
        print("polygon has no self-crossing", file=sys.stderr)
        return 1
    if not 0 <= args.record < len(self_recs):
        print(f"record index out of range (0..{len(self_recs) - 1})", file=sys.stderr)
        return 1
    res = prepare_and_cut(p, self_recs[args.record], tol=args.tol)
    out = {
        "removed": {"i": res.removed.i, "j": res.removed.j},
        "I_before": res.i_before,
        "I_after": res.i_after,
        "gamma_observed": res.gamma_observed,
        "output_n": res.output.n,
        "output_vertices": [list(v) for v in res.output.vertices],
    }
    print(json.dumps(out, indent=2))
    return 0 if res.gamma_observed >= 0 else 2


_COMMANDS = {
    "analyze": _cmd_analyze,
    "verify": _cmd_verify,
    "gamma": _cmd_gamma,
    "gen": _cmd_gen,
    "surgery": _cmd_surgery,
}


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return _COMMANDS[args.command](args)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GeometryError as exc:
        print(f"geometry error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
