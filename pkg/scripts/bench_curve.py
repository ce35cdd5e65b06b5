#!/usr/bin/env python3
"""Max DP table size against decomposition width.

Writes random partial k-trees (with their width-k decompositions) for each
k into a scratch directory, runs ``edgedel bench`` on each batch and prints
one summary row per k.  Pass ``--keep DIR`` to keep the instances and the
raw CSV files.
"""

import argparse
import csv
import io
import random
import statistics
import tempfile
from argparse import Namespace
from pathlib import Path

from edgedel.cli import CLI_NAMES, cmd_bench
from edgedel.graphio import format_graph, format_tree_decomposition
from edgedel.treedecomp import random_partial_ktree


def write_batch(root: Path, k: int, count: int, n: int, keep: float, seed: int) -> None:
    rng = random.Random(seed * 1000 + k)
    root.mkdir(parents=True, exist_ok=True)
    for i in range(count):
        g, td = random_partial_ktree(n, k, keep, rng)
        (root / f"k{k}_{i:03d}.gr").write_text(format_graph(g))
        (root / f"k{k}_{i:03d}.td").write_text(format_tree_decomposition(td, g.n))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--class", dest="cls", default="interval", choices=CLI_NAMES)
    ap.add_argument("--widths", type=int, nargs="+", default=[1, 2, 3, 4])
    ap.add_argument("--n", type=int, default=14)
    ap.add_argument("--count", type=int, default=3, help="instances per width")
    ap.add_argument("--keep-frac", type=float, default=0.6, help="fraction of k-tree edges kept")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--max-states", type=int, default=1_000_000)
    ap.add_argument("--keep", metavar="DIR", help="write instances and CSVs here instead of a temp dir")
    args = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        base = Path(args.keep or tmp)
        print("k,instances,failed,max_table_median,max_table_max,seconds_median,seconds_max")
        for k in args.widths:
            d = base / f"k{k}"
            write_batch(d, k, args.count, args.n, args.keep_frac, args.seed)
            buf = io.StringIO()
            cmd_bench(Namespace(cls=args.cls, dir=str(d), repeat=1, threads=1, max_states=args.max_states), buf)
            if args.keep:
                (base / f"k{k}.csv").write_text(buf.getvalue())
            rows = list(csv.DictReader(io.StringIO(buf.getvalue())))
            good = [r for r in rows if not r["error"]]
            tables = [int(r["max_table"]) for r in good] or [0]
            secs = [float(r["seconds"]) for r in good] or [0.0]
            print(f"{k},{len(rows)},{len(rows) - len(good)},{statistics.median(tables):g},{max(tables)},"
                  f"{statistics.median(secs):.3f},{max(secs):.3f}", flush=True)


if __name__ == "__main__":
    main()
