"""Command-line entry point: ``kempelock <command> ...`` (or ``python -m kempelock``).

Vertex ids on the command line and in all output are 0-based; planar_code
files store them 1-based.  ``--graph`` accepts a planar_code file or one of
the built-in names ``fixture:k4``, ``fixture:octahedron``, ``fixture:icosahedron``,
``fixture:t12``.

Exit codes: 0 success, 1 verification failure or conjecture violation, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import fixtures
from .birkhoff import birkhoff_diamond, find_appearances
from .census import check_conjecture, load_records, parse_orders, run_census, verify_certificate
from .codec import read_certificate, read_planar_code_file, write_planar_code_file
from .coloring import count_distinct, enumerate_identified
from .connectivity import connectivity_level
from .errors import KempeLockError
from .generator import generate_all, sample_random
from .kempe import Verdict, is_kempe_locked
from .plane_graph import delete_edge

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2

FIXTURES = {
    "k4": fixtures.k4,
    "octahedron": fixtures.octahedron,
    "icosahedron": fixtures.icosahedron,
    "t12": fixtures.t12,
}


class InputError(Exception):
    pass


def _load_graph(spec: str, index: int):
    if spec.startswith("fixture:"):
        name = spec.split(":", 1)[1]
        if name not in FIXTURES:
            raise InputError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
        return FIXTURES[name]()
    graphs = read_planar_code_file(spec)
    if not 0 <= index < len(graphs):
        raise InputError(f"index {index} out of range: {spec} holds {len(graphs)} graphs")
    return graphs[index]


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}") from None
    return a, b


def cmd_generate(args) -> int:
    n = write_planar_code_file(args.out, generate_all(args.order, args.connectivity, max_order=args.max_order))
    print(f"wrote {n} triangulations of order {args.order} (connectivity >= {args.connectivity}) to {args.out}")
    return EXIT_OK


def cmd_sample(args) -> int:
    graphs = sample_random(args.order, args.count, args.seed, args.connectivity)
    n = write_planar_code_file(args.out, graphs)
    print(f"wrote {n} sampled triangulations of order {args.order} (seed {args.seed}) to {args.out}")
    return EXIT_OK


def _summary_rows(records):
    for r in records:
        yield {
            "order": r.order,
            "connectivity": r.connectivity_filter,
            "mode": r.mode["kind"],
            "classes": r.classes_examined,
            "edge_tests": r.edge_tests,
            "locked": r.locked_count,
            "locked_edges": sum(len(lt.locked_edges) for lt in r.locked_triangulations),
            "diamond_anchored": sum(lt.diamond_anchored for lt in r.locked_triangulations),
            "fundamental": sum(lt.fundamental for lt in r.locked_triangulations),
            "non_sufficiency": r.non_sufficiency_witnesses,
            "seconds": round(r.elapsed, 1),
        }


def _print_table(rows) -> None:
    rows = list(rows)
    if not rows:
        print("(no records)")
        return
    cols = list(rows[0])
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    print("  ".join(c.rjust(widths[c]) for c in cols))
    for r in rows:
        print("  ".join(str(r[c]).rjust(widths[c]) for c in cols))


def _print_conjecture(report) -> None:
    print(f"locked edges: {report.locked_edges}; conjecture violations: {len(report.violations)}; "
          f"non-sufficiency witnesses: {report.non_sufficiency_witnesses}")
    for v in report.violations:
        print(f"  VIOLATION {v}")
    for code in report.multi_edge_locks:
        print(f"  MULTI-EDGE LOCK {code}")
    if report.vacuous:
        print(f"  vacuous edges (no identified colouring): {report.vacuous}")


def cmd_census(args) -> int:
    records = run_census(parse_orders(args.orders), args.connectivity, source=args.source, jobs=args.jobs,
                         out_dir=args.out, diamond_stats=not args.no_diamond_stats, max_order=args.max_order)
    _print_table(_summary_rows(records))
    report = check_conjecture(records)
    _print_conjecture(report)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_check_lock(args) -> int:
    t = _load_graph(args.graph, args.index)
    res = is_kempe_locked(t, args.edge)
    print(f"edge {args.edge}: {res.verdict.value} ({res.colorings_checked} identified colourings examined)")
    if res.verdict is Verdict.NOT_LOCKED:
        print(f"  witness colouring: {list(res.witness)}")
        i, j = sorted(res.chain.colors)
        print(f"  {i}-{j} chain through x avoiding y: {sorted(res.chain.vertices)}")
    return EXIT_OK


def cmd_find_diamonds(args) -> int:
    t = _load_graph(args.graph, args.index)
    cfg = birkhoff_diamond()
    apps = find_appearances(t, cfg, anchor=args.edge)
    print(f"{len(apps)} Birkhoff diamond appearance(s)" + (f" anchored at {args.edge}" if args.edge else ""))
    for a in apps:
        print("  " + json.dumps(a.as_dict(cfg)))
    return EXIT_OK


def cmd_colorings(args) -> int:
    t = _load_graph(args.graph, args.index)
    g = delete_edge(t, args.identify)
    if args.count_only:
        print(count_distinct(g, (g.x, g.y)))
        return EXIT_OK
    for c in enumerate_identified(g):
        print(" ".join(str(a) for a in c))
    return EXIT_OK


def cmd_verify(args) -> int:
    cert = read_certificate(Path(args.file).read_text())
    result = verify_certificate(cert)
    if result:
        print("certificate OK")
        return EXIT_OK
    print("certificate FAILED")
    for r in result.reasons:
        print(f"  {r}")
    return EXIT_VIOLATION


def cmd_report(args) -> int:
    records = load_records(args.dir)
    report = check_conjecture(records)
    rows = list(_summary_rows(records))
    if args.format == "json":
        print(json.dumps({"orders": rows, "conjecture": report.to_dict()}, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        _print_table(rows)
        _print_conjecture(report)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kempelock", description=__doc__.split("\n")[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("generate", help="exhaustive generation to a planar_code file")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--connectivity", type=int, choices=(3, 4, 5), default=3)
    s.add_argument("--out", required=True)
    s.add_argument("--max-order", type=int, help="raise the exhaustive-generation bound")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("census", help="test every edge of every triangulation per order")
    s.add_argument("--orders", required=True, help="e.g. 12, 6..11, 6..11,13")
    s.add_argument("--connectivity", type=int, choices=(4, 5), default=4)
    s.add_argument("--source", help="planar_code file to ingest instead of generating")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out", help="results directory (per-order checkpoints and certificates)")
    s.add_argument("--no-diamond-stats", action="store_true", help="skip unanchored diamond counting")
    s.add_argument("--max-order", type=int, help="raise the exhaustive-generation bound")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("check-lock", help="locking verdict for one edge")
    s.add_argument("--graph", required=True)
    s.add_argument("--index", type=int, default=0)
    s.add_argument("--edge", type=_pair, required=True)
    s.set_defaults(func=cmd_check_lock)

    s = sub.add_parser("find-diamonds", help="Birkhoff diamond appearances")
    s.add_argument("--graph", required=True)
    s.add_argument("--index", type=int, default=0)
    s.add_argument("--edge", type=_pair)
    s.set_defaults(func=cmd_find_diamonds)

    s = sub.add_parser("colorings", help="identified colourings of G_xy")
    s.add_argument("--graph", required=True)
    s.add_argument("--index", type=int, default=0)
    s.add_argument("--identify", type=_pair, required=True)
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(func=cmd_colorings)

    s = sub.add_parser("sample", help="seeded random non-isomorphic triangulations")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--connectivity", type=int, choices=(3, 4, 5), default=4)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("verify-certificate", help="re-check a lock certificate from its graph alone")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("report", help="summarise a census results directory")
    s.add_argument("--dir", required=True)
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(message)s")
    try:
        return args.func(args)
    except (KempeLockError, InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
