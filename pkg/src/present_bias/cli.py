"""Command line entry point.

Exit codes: 0 on success or a found solution, 1 when no solution exists,
2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import asdict
from fractions import Fraction

from .addition import PathWithDetours, solve_addition_dp, solve_addition_exhaustive, DPStats
from .deletion import (
    DeletionInstance,
    FPDeletionInstance,
    SearchStats,
    solve_deletion_branching,
    solve_deletion_exhaustive,
)
from .documents import (
    ParseError,
    export_dot,
    parse_instance,
    serialize,
    to_document,
    trace_to_json,
    traversal_to_json,
)
from .kernel import TRIVIAL_NO, apply_rules, solve_deletion_via_kernel, to_false_promises
from .model import FPModel, GraphError, Model, simulate_agent
from .reductions import (
    ConstructionError,
    KsumInstance,
    SpmveInstance,
    random_ksum,
    random_spmve,
    reduce_ksum,
    reduce_spmve_thm1,
    reduce_spmve_thm2,
)

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2

DELETION_SOLVERS = {
    "exhaustive": solve_deletion_exhaustive,
    "branching": solve_deletion_branching,
    "kernel": solve_deletion_via_kernel,
}


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return parse_instance(data)
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_simulate(args) -> int:
    inst = _load(args.file)
    model = inst if isinstance(inst, (Model, FPModel)) else getattr(inst, "model", None)
    if model is None:
        raise UsageError(f"{args.file}: kind has no agent model to simulate")
    _emit(args, _dump(traversal_to_json(simulate_agent(model))))
    return EXIT_OK


def cmd_solve_delete(args) -> int:
    inst = _load(args.file)
    if not isinstance(inst, (DeletionInstance, FPDeletionInstance)):
        raise UsageError(f"{args.file}: expected a deletion or fp_deletion document")
    stats = SearchStats()
    sol = DELETION_SOLVERS[args.solver](inst, stats)
    out: dict = {"solver": args.solver}
    if sol is None:
        out["status"] = "no-solution"
    else:
        out["status"] = "solution"
        out["deleted"] = sorted(sol.deleted)
        out["witness"] = traversal_to_json(sol.witness)
    if args.stats:
        out["stats"] = asdict(stats)
    _emit(args, _dump(out))
    return EXIT_NO if sol is None else EXIT_OK


def cmd_solve_add(args) -> int:
    inst = _load(args.file)
    if not hasattr(inst, "pool"):
        raise UsageError(f"{args.file}: expected an addition document")
    out: dict = {"solver": args.solver}
    if args.solver == "dp":
        try:
            pwd = PathWithDetours.from_instance(inst)
        except GraphError as exc:
            raise UsageError(f"{args.file}: not a path with detours: {exc}") from None
        stats = DPStats()
        sol = solve_addition_dp(pwd, stats)
        if args.stats:
            out["stats"] = {"subsets": stats.subsets, "simulations": stats.simulations}
    else:
        sol = solve_addition_exhaustive(inst)
    if sol is None:
        out["status"] = "no-solution"
    else:
        out["status"] = "solution"
        out["added"] = sorted(sol)
        out["witness"] = traversal_to_json(simulate_agent(inst.augmented(sol)))
    _emit(args, _dump(out))
    return EXIT_NO if sol is None else EXIT_OK


def cmd_kernelize(args) -> int:
    inst = _load(args.file)
    if isinstance(inst, DeletionInstance):
        inst = to_false_promises(inst)
    elif not isinstance(inst, FPDeletionInstance):
        raise UsageError(f"{args.file}: expected a deletion or fp_deletion document")
    kernel, trace = apply_rules(inst)
    out = {
        "kernel": None if kernel is TRIVIAL_NO else to_document(kernel),
        "trivial_no": kernel is TRIVIAL_NO,
        "trace": trace_to_json(trace),
    }
    _emit(args, _dump(out))
    return EXIT_NO if kernel is TRIVIAL_NO else EXIT_OK


def _source(args, kind):
    if args.source:
        src = _load(args.source)
        if not isinstance(src, kind):
            raise UsageError(f"{args.source}: expected a {kind.__name__} document")
        return src
    rng = random.Random(args.seed)
    if kind is SpmveInstance:
        src = random_spmve(rng, n_max=args.vertices, k_max=args.k,
                           even_ell=args.construction == "spmve-thm2")
    else:
        src = random_ksum(rng, args.k, args.set_size, args.max_element)
    if args.source_output:
        with open(args.source_output, "w") as fh:
            fh.write(serialize(src))
    return src


def cmd_generate(args) -> int:
    try:
        if args.construction == "spmve-thm1":
            target = reduce_spmve_thm1(_source(args, SpmveInstance), Fraction(args.beta))
        elif args.construction == "spmve-thm2":
            target = reduce_spmve_thm2(_source(args, SpmveInstance), args.empty_t)
        else:
            target = reduce_ksum(_source(args, KsumInstance), args.green_in_graph)
    except (ConstructionError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _emit(args, serialize(target))
    return EXIT_OK


def cmd_export_dot(args) -> int:
    inst = _load(args.file)
    try:
        text = export_dot(inst)
    except TypeError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="present-bias",
                                description="Present-biased agents: simulation and principal solvers.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        return sp

    sp = add("simulate", cmd_simulate, "walk the agent and print its trajectory")
    sp.add_argument("file")

    sp = add("solve-delete", cmd_solve_delete, "solve T-Path-Deletion")
    sp.add_argument("file")
    sp.add_argument("--solver", choices=sorted(DELETION_SOLVERS),
                    default=os.environ.get("PRESENT_BIAS_SOLVER", "exhaustive"))
    sp.add_argument("--stats", action="store_true", help="include search counters")

    sp = add("solve-add", cmd_solve_add, "solve T-Path-Addition")
    sp.add_argument("file")
    sp.add_argument("--solver", choices=["exhaustive", "dp"], default="exhaustive")
    sp.add_argument("--stats", action="store_true")

    sp = add("kernelize", cmd_kernelize, "apply the reduction rules, print kernel and trace")
    sp.add_argument("file")

    sp = add("generate", cmd_generate, "build an instance from a hardness reduction")
    sp.add_argument("construction", choices=["spmve-thm1", "spmve-thm2", "ksum"])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--source", help="reduce this spmve/ksum document instead of a random one")
    sp.add_argument("--source-output", help="also write the random source instance here")
    sp.add_argument("--k", type=int, default=2, help="budget (spmve) or number of sets (ksum)")
    sp.add_argument("--vertices", type=int, default=7, help="max vertices of a random SP-MVE graph")
    sp.add_argument("--beta", default="1/2", help="present bias for spmve-thm1")
    sp.add_argument("--empty-t", action="store_true", help="spmve-thm2 with T empty")
    sp.add_argument("--green-in-graph", action="store_true",
                    help="ksum: put the two auxiliary arcs in the graph (budget k)")
    sp.add_argument("--set-size", type=int, default=4)
    sp.add_argument("--max-element", type=int, default=10)

    sp = add("export-dot", cmd_export_dot, "render an instance as Graphviz DOT")
    sp.add_argument("file")
    return p


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"present-bias: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(cli_main())
