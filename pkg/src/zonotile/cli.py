"""Command line entry point.

Exit codes: 0 certified, 1 usage or input error, 2 rejected with a witness,
3 undetermined. In ``--batch`` mode the summary exits with the most severe
code seen, ordered 1 > 3 > 2 > 0.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import UnsupportedDimensionError, ZonotileError
from .figure import render_svg
from .io import dumps, load_instance
from .report import EXIT_ERROR, EXIT_OK, build_report, exit_code
from .voronoi import DEFAULT_TOLERANCE

SEVERITY = {EXIT_ERROR: 3, 3: 2, 2: 1, EXIT_OK: 0}


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", nargs="?", help="instance file (JSON)")
    common.add_argument("--batch", metavar="DIR", help="run every *.json instance in DIR")
    common.add_argument("--json", action="store_true", help="print the full JSON report")
    common.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                        help="relative residual bound for the Cholesky factor (default %(default)g)")
    common.add_argument("--seed", type=int, default=0, help="seed for the PD search in general pQt solving")
    common.add_argument("--no-timing", action="store_true", help="omit the timing field")

    parser = argparse.ArgumentParser(prog="zonotile", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="decide whether P(Z) is a parallelotope")
    sub.add_parser("voronoi", parents=[common], help="construct and certify the Voronoi form")
    sub.add_parser("dicing", parents=[common], help="dicing vectors, lattices and epsilon table")
    rep = sub.add_parser("report", parents=[common], help="complete report")
    rep.add_argument("--all", action="store_true", help="include facet pairs and H-representation")
    fig = sub.add_parser("figure", parents=[common], help="SVG of a planar tiling patch")
    fig.add_argument("-o", "--out", required=False, help="output file (default: stdout)")
    return parser


def _stage(args) -> str:
    if args.command == "report":
        return "all" if args.all else "dicing"
    if args.command == "figure":
        return "dicing"
    return args.command


def _summary(report: dict) -> str:
    lines = [f"{report['instance'].get('name', '?')}: {report['verdict']}"]
    w = report.get("witnesses", {})
    if "coline" in w:
        c = w["coline"]
        lines.append(f"  coline {c['flat']} lies in {len(c['copoints_above'])} copoints: {c['copoints_above']}")
    if "scaling" in w:
        s = w["scaling"]
        lines.append(f"  scaling contradiction on cycle {' - '.join(s['cycle'])}")
    if "scaling" in report:
        lines.append(f"  beta  = {report['scaling']['beta']}")
        lines.append(f"  gamma = {report['scaling']['gamma']}")
    if "voronoi" in report:
        v = report["voronoi"]
        if "Q" in v:
            lines.append(f"  Q     = {v['Q']}  (pQt certified: {v['pqt_certified']})")
            am = v["affine_map"]
            if am["within_tolerance"]:
                lines.append(f"  A^T A residual = {am['residual']:.3e}")
        else:
            lines.append(f"  pQt status: {v.get('status')}")
    if "dicing" in report:
        d = report["dicing"]
        lines.append(f"  L(T) = L(D): {d['lattice_equality']}, decomposition exact: {d['decomposition']}")
        lines.append(f"  det = {report['geometry']['tiling_lattice_det']}, volume = {report['geometry']['volume']}")
    return "\n".join(lines)


def run_one(path: str, stage: str, tolerance: float, seed: int, timing: bool) -> tuple[int, dict | str]:
    try:
        inst = load_instance(path)
        report = build_report(inst, stage, tolerance=tolerance, seed=seed, timing=timing)
    except (ZonotileError, ValueError) as exc:
        return EXIT_ERROR, str(exc)
    return exit_code(report), report


def _figure(args, report: dict) -> int:
    try:
        svg = render_svg(report)
    except (UnsupportedDimensionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.out:
        Path(args.out).write_text(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def _batch(args, stage: str) -> int:
    files = sorted(Path(args.batch).glob("*.json"))
    if not files:
        print(f"error: no *.json files in {args.batch}", file=sys.stderr)
        return EXIT_ERROR
    with ProcessPoolExecutor() as pool:
        futures = [pool.submit(run_one, str(f), stage, args.tolerance, args.seed, not args.no_timing) for f in files]
        results = [fut.result() for fut in futures]
    summary = {}
    worst = EXIT_OK
    for f, (code, payload) in zip(files, results):
        entry = {"exit_code": code}
        if isinstance(payload, dict):
            entry["verdict"] = payload["verdict"]
            if args.json:
                entry["report"] = payload
        else:
            entry["error"] = payload
        summary[f.name] = entry
        if SEVERITY[code] > SEVERITY[worst]:
            worst = code
    if args.json:
        sys.stdout.write(dumps({"batch": str(args.batch), "results": summary}))
    else:
        for name, entry in summary.items():
            print(f"{name}: exit {entry['exit_code']} {entry.get('verdict', entry.get('error'))}")
    return worst


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    stage = _stage(args)
    if args.batch:
        if args.command == "figure":
            print("error: figure does not support --batch", file=sys.stderr)
            return EXIT_ERROR
        return _batch(args, stage)
    if not args.path:
        print("error: an instance path or --batch DIR is required", file=sys.stderr)
        return EXIT_ERROR
    code, payload = run_one(args.path, stage, args.tolerance, args.seed, not args.no_timing)
    if isinstance(payload, str):
        print(f"error: {payload}", file=sys.stderr)
        return code
    if args.command == "figure":
        if code != EXIT_OK:
            print(_summary(payload), file=sys.stderr)
            return code
        return _figure(args, payload)
    if args.json:
        sys.stdout.write(dumps(payload))
    else:
        print(_summary(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
