#!/usr/bin/env python3
"""Check that the hardness constructions preserve yes/no answers on seeded sources."""

import argparse
import random
import sys
import time
from fractions import Fraction

from present_bias.addition import PathWithDetours, solve_addition_dp, solve_addition_exhaustive
from present_bias.deletion import solve_deletion_branching
from present_bias.reductions import (
    ksum_bruteforce,
    random_ksum,
    random_spmve,
    reduce_ksum,
    reduce_spmve_thm1,
    reduce_spmve_thm2,
    spmve_bruteforce,
)


def spmve(seeds: int) -> int:
    bad = {"thm1": 0, "thm2": 0, "thm2-empty-T": 0}
    yes = 0
    for seed in range(seeds):
        rng = random.Random(seed)
        src = random_spmve(rng)
        beta = Fraction(rng.randint(1, 5), 5)
        want = spmve_bruteforce(src)
        yes += want
        bad["thm1"] += (solve_deletion_branching(reduce_spmve_thm1(src, beta)) is not None) != want
        even = random_spmve(rng, even_ell=True)
        want = spmve_bruteforce(even)
        bad["thm2"] += (solve_deletion_branching(reduce_spmve_thm2(even)) is not None) != want
        got = solve_deletion_branching(reduce_spmve_thm2(even, empty_T=True)) is not None
        bad["thm2-empty-T"] += got != want
    print(f"spmve: {seeds} seeds, {yes} yes sources, mismatches {bad}")
    return sum(bad.values())


def ksum(seeds: int, ks, in_graph: bool) -> int:
    bad = yes = 0
    for k in ks:
        for seed in range(seeds):
            src = random_ksum(random.Random(1000 * k + seed), k)
            want = ksum_bruteforce(src)
            yes += want
            inst = reduce_ksum(src, green_in_graph=in_graph)
            if in_graph:
                got = solve_addition_exhaustive(inst) is not None
            else:
                got = solve_addition_dp(PathWithDetours.from_instance(inst)) is not None
            bad += got != want
    variant = "auxiliary arcs in graph, budget k" if in_graph else "auxiliary arcs in pool, budget k+2"
    print(f"ksum ({variant}): {seeds * len(ks)} sources, {yes} yes, {bad} mismatches")
    return bad


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=200)
    ap.add_argument("--ksum-seeds", type=int, default=100)
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3])
    args = ap.parse_args()
    t0 = time.perf_counter()
    bad = spmve(args.seeds)
    bad += ksum(args.ksum_seeds, args.k, in_graph=False)
    bad += ksum(args.ksum_seeds, args.k, in_graph=True)
    print(f"total mismatches {bad}, {time.perf_counter() - t0:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
