#!/usr/bin/env python3
"""Compare the DP with the brute-force oracle.

Default: every connected graph up to ``--max-n`` vertices (networkx atlas,
so at most 7), then ``--samples`` random G(n, p) graphs with n in {6, 7} and
p cycling through 0.3, 0.5, 0.7.  Prints mismatches and a per-class summary.
Exit status 1 if any answer disagrees.
"""

import argparse
import random
import sys
import time

import networkx as nx

from edgedel import Graph, SolveOptions, min_edge_deletion_bruteforce, solve
from edgedel.oracle import CLASSES, canonical_class


def atlas(max_n):
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_nodes() <= max_n and nx.is_connected(G):
            yield Graph.from_edges(G.number_of_nodes(), G.edges())


def sampled(count, seed):
    rng = random.Random(seed)
    for i in range(count):
        n = rng.choice((6, 7))
        G = nx.gnp_random_graph(n, (0.3, 0.5, 0.7)[i % 3], seed=rng.randrange(10**9))
        yield Graph.from_edges(n, G.edges())


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--classes", nargs="+", default=list(CLASSES))
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--check-invariants", action="store_true")
    args = ap.parse_args()
    classes = [canonical_class(c) for c in args.classes]

    graphs = list(atlas(min(args.max_n, 7))) + list(sampled(args.samples, args.seed))
    opts = SolveOptions(max_states=10**6, check_invariants=args.check_invariants)
    failures = 0
    for cls in classes:
        t0, worst, bad = time.perf_counter(), 0.0, 0
        for g in graphs:
            t = time.perf_counter()
            got = solve(g, cls, opts=opts).deletions
            worst = max(worst, time.perf_counter() - t)
            want = min_edge_deletion_bruteforce(g, cls)
            if got != want:
                bad += 1
                print(f"MISMATCH {cls} n={g.n} edges={sorted(g.edges)} dp={got} oracle={want}", flush=True)
        failures += bad
        print(f"{cls}: {len(graphs)} graphs, {bad} mismatches, {time.perf_counter() - t0:.1f}s total, "
              f"slowest solve {worst:.2f}s", flush=True)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
