#!/usr/bin/env python3
"""Compare the three deletion solvers on seeded random instances.

Prints a CSV row per instance (decision, solver work) and a summary line.
"""

import argparse
import csv
import random
import sys
import time

from present_bias.deletion import (
    SearchStats,
    branching_node_bound,
    solve_deletion_branching,
    solve_deletion_exhaustive,
    verify_deletion,
)
from present_bias.kernel import solve_deletion_via_kernel
from present_bias.model import longest_path_arcs
from present_bias.random_instances import random_deletion_instance


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=500)
    ap.add_argument("--start", type=int, default=0)
    ap.add_argument("--max-vertices", type=int, default=8)
    ap.add_argument("--max-arcs", type=int, default=14)
    ap.add_argument("--k-max", type=int, default=3)
    args = ap.parse_args()

    out = csv.writer(sys.stdout)
    out.writerow(["seed", "n", "m", "k", "yes", "exh_sims", "branch_nodes", "node_bound",
                  "kernel_sims", "agree"])
    disagree = 0
    started = time.perf_counter()
    for seed in range(args.start, args.start + args.seeds):
        inst = random_deletion_instance(random.Random(seed), args.max_vertices,
                                        args.max_arcs, k_max=args.k_max)
        stats = [SearchStats() for _ in range(3)]
        sols = [solve_deletion_exhaustive(inst, stats[0]),
                solve_deletion_branching(inst, stats[1]),
                solve_deletion_via_kernel(inst, stats[2])]
        agree = len({s is not None for s in sols}) == 1
        agree &= all(s is None or verify_deletion(inst, s.deleted) for s in sols)
        disagree += not agree
        g = inst.model.graph
        bound = branching_node_bound(longest_path_arcs(g, inst.model.s, inst.model.t), inst.k)
        out.writerow([seed, len(g.vertices), len(g.arcs), inst.k, int(sols[0] is not None),
                      stats[0].simulations, stats[1].nodes, bound, stats[2].simulations,
                      int(agree)])
    elapsed = time.perf_counter() - started
    print(f"# {args.seeds} instances, {disagree} disagreements, {elapsed:.1f}s", file=sys.stderr)
    return 1 if disagree else 0


if __name__ == "__main__":
    sys.exit(main())
