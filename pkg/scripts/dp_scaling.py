#!/usr/bin/env python3
"""Measure how the path-with-detours DP's work grows with the largest component size tau.

Two workloads: one component holding tau nested detours, and random instances
bucketed by their tau. Output is CSV.
"""

import argparse
import csv
import random
import sys
import time
from fractions import Fraction

from present_bias.addition import (
    AdditionInstance,
    Candidate,
    DPStats,
    PathWithDetours,
    decompose,
    solve_addition_dp,
)
from present_bias.model import Model, TaskGraph
from present_bias.random_instances import random_path_with_detours


def stacked(tau: int, length: int) -> PathWithDetours:
    vs = [f"p{i:02d}" for i in range(length + 1)]
    edges = [(f"a{i:02d}", vs[i], vs[i + 1], 1) for i in range(length)]
    g = TaskGraph.from_edges(edges, vertices=vs)
    pool = [Candidate(f"c{j:02d}", vs[0], vs[-1], Fraction(length + j)) for j in range(tau)]
    inst = AdditionInstance(Model(g, vs[0], vs[-1], Fraction(1, 2), 4 * length), tau,
                            frozenset(e[0] for e in edges), tuple(pool))
    return PathWithDetours.from_instance(inst)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tau-max", type=int, default=12)
    ap.add_argument("--random", type=int, default=300, help="random instances to bucket")
    args = ap.parse_args()
    out = csv.writer(sys.stdout)
    out.writerow(["workload", "tau", "k", "components", "subsets", "simulations",
                  "subsets_per_2^tau", "seconds"])
    for tau in range(args.tau_max + 1):
        pwd = stacked(tau, 3)
        stats = DPStats()
        t0 = time.perf_counter()
        solve_addition_dp(pwd, stats)
        dt = time.perf_counter() - t0
        out.writerow(["stacked", tau, tau, len(decompose(pwd).components), stats.subsets,
                      stats.simulations, round(stats.subsets / 2 ** tau, 3), round(dt, 4)])
    for seed in range(args.random):
        pwd = random_path_with_detours(random.Random(seed))
        dec = decompose(pwd)
        stats = DPStats()
        t0 = time.perf_counter()
        solve_addition_dp(pwd, stats)
        dt = time.perf_counter() - t0
        out.writerow(["random", dec.tau, pwd.instance.k, len(dec.components), stats.subsets,
                      stats.simulations, round(stats.subsets / 2 ** dec.tau, 3), round(dt, 4)])
    return 0


if __name__ == "__main__":
    sys.exit(main())
