"""``edgedel solve | verify | bench``.

Exit codes: 0 success, 2 input error (bad class, unreadable or malformed
file, invalid decomposition, oracle size cap, table overflow), 3 the
``--oracle-check`` answer disagrees with the DP.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from pathlib import Path

from .dp import SolveOptions, TableOverflow
from .graphio import Graph, ParseError, Violation, parse_graph, parse_tree_decomposition, validate_decomposition
from .oracle import DEFAULT_MAX_N, OracleTooLarge, canonical_class, is_in_class, min_edge_deletion_bruteforce
from .solve import CLI_NAMES, certificate, solve
from .treedecomp import heuristic_decompose

SCHEMA = "edgedel/1"
BENCH_COLUMNS = ("instance", "n", "m", "width", "deletions", "seconds", "max_table", "total_generated", "error")

OK, INPUT_ERROR, MISMATCH = 0, 2, 3


class InputError(Exception):
    pass


def _read_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    try:
        return parse_graph(text)
    except ParseError as e:
        raise InputError(f"{path}: {e}") from None


def _read_td(path: str, g: Graph):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    try:
        td = parse_tree_decomposition(text, g.n)
    except ParseError as e:
        raise InputError(f"{path}: {e}") from None
    width = validate_decomposition(g, td)
    if isinstance(width, Violation):
        raise InputError(f"{path}: invalid decomposition: {width}")
    return td


def _class(name: str) -> str:
    try:
        return canonical_class(name)
    except ValueError as e:
        raise InputError(str(e)) from None


def _edges_out(edges) -> list[list[int]]:
    return [[u + 1, v + 1] for u, v in edges]


def cmd_solve(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    cls = _class(args.cls)
    g = _read_graph(args.graph)
    td = _read_td(args.td, g) if args.td else None
    opts = SolveOptions(max_states=args.max_states)
    try:
        sol = solve(g, cls, td=td, opts=opts)
        cert = certificate(g, cls, opts=opts) if args.certificate else None
    except TableOverflow as e:
        raise InputError(f"aborted: {e}") from None
    if td is None and not args.json:
        print(f"heuristic decomposition width: {sol.width}", file=err)

    report: dict = {
        "schema": SCHEMA, "class": cls, "n": g.n, "m": g.m,
        "width": sol.width, "deletions": sol.deletions, "stripped": sol.stripped,
        "seconds": round(sol.result.seconds, 6),
    }
    if cert is not None:
        report["certificate"] = _edges_out(cert)
    if args.stats:
        report["node_stats"] = [asdict(s) for s in sol.result.stats]
    status = OK
    if args.oracle_check:
        try:
            ref = min_edge_deletion_bruteforce(g, cls, args.max_n)
        except OracleTooLarge as e:
            report["oracle"] = None
            print(f"oracle skipped: {e}", file=err)
        else:
            report["oracle"] = ref
            if ref != sol.deletions:
                status = MISMATCH
                print(f"MISMATCH: dp={sol.deletions} oracle={ref}", file=err)

    if args.json:
        json.dump(report, out)
        out.write("\n")
        return status
    print(f"deletions: {sol.deletions}", file=out)
    print(f"width: {sol.width}", file=out)
    if cert is not None:
        print("certificate: " + " ".join(f"{u}-{v}" for u, v in report["certificate"]), file=out)
    if "oracle" in report:
        print(f"oracle: {report['oracle'] if report['oracle'] is not None else 'skipped'}", file=out)
    if args.stats:
        print("node kind bag generated kept", file=out)
        for s in sol.result.stats:
            print(s.node, s.kind, s.bag_size, s.generated, s.kept, file=out)
        print(f"max table: {sol.result.max_table}  total generated: {sol.result.total_generated}", file=out)
    return status


def cmd_verify(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    cls = _class(args.cls)
    g = _read_graph(args.graph)
    try:
        d = min_edge_deletion_bruteforce(g, cls, args.max_n)
        inside = is_in_class(g, cls, args.max_n)
    except OracleTooLarge as e:
        raise InputError(f"refused: {e}") from None
    if args.json:
        json.dump({"schema": SCHEMA, "class": cls, "n": g.n, "m": g.m, "in_class": inside, "deletions": d}, out)
        out.write("\n")
    else:
        print(f"in class: {str(inside).lower()}", file=out)
        print(f"min deletions: {d}", file=out)
    return OK


def _bench_one(job):
    cls, gr, td_path, repeat, max_states = job
    row = {"instance": gr.name}
    try:
        g = _read_graph(str(gr))
        td = _read_td(str(td_path), g) if td_path is not None else heuristic_decompose(g)
        row.update(n=g.n, m=g.m)
        best = None
        for _ in range(repeat):
            t0 = time.perf_counter()
            sol = solve(g, cls, td=td, opts=SolveOptions(max_states=max_states))
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        row.update(width=sol.width, deletions=sol.deletions, seconds=f"{best:.6f}",
                   max_table=sol.result.max_table, total_generated=sol.result.total_generated)
    except (InputError, TableOverflow) as e:
        row["error"] = str(e)
    return row


def cmd_bench(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    cls = _class(args.cls)
    root = Path(args.dir)
    if not root.is_dir():
        raise InputError(f"not a directory: {args.dir}")
    jobs = []
    for gr in sorted(root.glob("*.gr")):
        td = gr.with_suffix(".td")
        jobs.append((cls, gr, td if td.exists() else None, max(1, args.repeat), args.max_states))
    writer = csv.DictWriter(out, fieldnames=BENCH_COLUMNS, restval="", lineterminator="\n")
    writer.writeheader()
    if args.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            rows = list(pool.map(_bench_one, jobs))
    else:
        rows = [_bench_one(j) for j in jobs]
    for row in rows:
        writer.writerow(row)
        if row.get("error"):
            print(f"{row['instance']}: {row['error']}", file=err)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="edgedel", description="Exact minimum edge deletion into interval-like classes.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True):
        sp.add_argument("--class", dest="cls", required=True, metavar="CLASS",
                        help="one of: " + ", ".join(CLI_NAMES))
        if graph:
            sp.add_argument("--graph", required=True, help="PACE .gr file")
        sp.add_argument("--json", action="store_true")

    s = sub.add_parser("solve", help="run the tree-decomposition DP")
    common(s)
    s.add_argument("--td", help="PACE .td file (default: min-degree heuristic)")
    s.add_argument("--certificate", action="store_true", help="also print an optimal deletion set")
    s.add_argument("--oracle-check", action="store_true", help="compare with brute force when n is small enough")
    s.add_argument("--stats", action="store_true", help="per-node table sizes")
    s.add_argument("--max-states", type=int, default=1_000_000)
    s.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="oracle size cap")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="brute-force membership and minimum deletion")
    common(v)
    v.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="CSV of solve statistics over a directory of .gr/.td pairs")
    common(b, graph=False)
    b.add_argument("dir")
    b.add_argument("--repeat", type=int, default=1, help="report the best of N runs")
    b.add_argument("--threads", type=int, default=1, help="instances solved in parallel")
    b.add_argument("--max-states", type=int, default=1_000_000)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code else OK
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
