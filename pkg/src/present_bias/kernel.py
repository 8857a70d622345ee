"""Feedback-edge-set kernel for T-Path-Deletion with per-vertex rewards.

Three reduction rules are applied exhaustively:

1. drop a vertex other than ``s``/``t`` with no in-arcs or no out-arcs
   (a trivial no-instance if it touches ``T``);
2. stop with a trivial no-instance if ``t`` is unreachable from ``s``;
3. contract ``x -> y -> z`` when ``x`` has one out-arc and ``y`` has exactly one
   in-arc and one out-arc, folding the abandonment check at ``y`` into ``r(x)``.

Every application is logged in a :class:`KernelTrace`, which is enough to map
kernel solutions back to the original arcs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Union

from .deletion import (
    DeletionInstance,
    DeletionSolution,
    FPDeletionInstance,
    SearchStats,
    _check,
)
from .model import Arc, ArcId, FPModel, TaskGraph, Vertex


class KernelError(RuntimeError):
    """A kernel solution cannot be traced back to the original instance."""


@dataclass(frozen=True)
class Rule1Removed:
    v: Vertex
    removed_arcs: tuple[ArcId, ...]


@dataclass(frozen=True)
class Rule2TrivialNo:
    pass


@dataclass(frozen=True)
class Rule3Merged:
    x: Vertex
    y: Vertex
    z: Vertex
    old_arcs: tuple[ArcId, ArcId]
    new_arc: ArcId
    old_rewards: tuple[Fraction, Fraction]


Step = Union[Rule1Removed, Rule2TrivialNo, Rule3Merged]


@dataclass
class KernelTrace:
    steps: list[Step] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


class _TrivialNo:
    def __repr__(self):
        return "TrivialNo"


TRIVIAL_NO = _TrivialNo()


def to_false_promises(inst: DeletionInstance) -> FPDeletionInstance:
    m = inst.model
    fp = FPModel(m.graph, m.s, m.t, m.beta,
                 {v: m.reward for v in m.graph.vertices}, m.order)
    return FPDeletionInstance(fp, inst.k, inst.T)


def _reachable(graph: TaskGraph, s: Vertex) -> set[Vertex]:
    seen = {s}
    stack = [s]
    while stack:
        v = stack.pop()
        for a in graph.out_arcs[v]:
            if a.head not in seen:
                seen.add(a.head)
                stack.append(a.head)
    return seen


def _fresh_id(base: str, taken) -> ArcId:
    if base not in taken:
        return base
    i = 1
    while f"{base}~{i}" in taken:
        i += 1
    return f"{base}~{i}"


def _rule1(model: FPModel, T, trace: KernelTrace):
    """Returns the reduced model, or ``None`` for a trivial no-instance."""
    changed = True
    while changed:
        changed = False
        g = model.graph
        for v in model.order:
            if v in (model.s, model.t):
                continue
            if g.in_arcs[v] and g.out_arcs[v]:
                continue
            incident = tuple(a.id for a in g.in_arcs[v] + g.out_arcs[v])
            trace.steps.append(Rule1Removed(v, incident))
            if T.intersection(incident):
                return None
            model = model.with_graph(g.without_vertex(v))
            changed = True
            break
    return model


def _find_rule3(model: FPModel):
    g = model.graph
    for y in model.order:
        if y in (model.s, model.t):
            continue
        if len(g.in_arcs[y]) != 1 or len(g.out_arcs[y]) != 1:
            continue
        xy = g.in_arcs[y][0]
        if len(g.out_arcs[xy.tail]) != 1:
            continue
        return xy, g.out_arcs[y][0]
    return None


def apply_rules(inst: FPDeletionInstance):
    """Reduce exhaustively. Returns ``(kernel or TRIVIAL_NO, trace)``."""
    trace = KernelTrace()
    model, T = inst.model, set(inst.T)
    while True:
        model = _rule1(model, T, trace)
        if model is None:
            return TRIVIAL_NO, trace
        if model.t not in _reachable(model.graph, model.s):
            trace.steps.append(Rule2TrivialNo())
            return TRIVIAL_NO, trace
        found = _find_rule3(model)
        if found is None:
            break
        xy, yz = found
        x, y, z = xy.tail, xy.head, yz.head
        g = model.graph
        new_id = _fresh_id(f"{xy.id}+{yz.id}", g.arc_by_id)
        merged = Arc(new_id, x, z, xy.weight + yz.weight)
        beta = model.beta
        rx, ry = model.reward_of[x], model.reward_of[y]
        rewards = {v: r for v, r in model.reward_of.items() if v != y}
        rewards[x] = min(rx + (1 - beta) / beta * yz.weight, ry + xy.weight / beta)
        new_graph = g.without_vertex(y).with_arcs([merged])
        model = model.with_graph(new_graph, reward_of=rewards)
        if T & {xy.id, yz.id}:
            T = (T - {xy.id, yz.id}) | {new_id}
        trace.steps.append(Rule3Merged(x, y, z, (xy.id, yz.id), new_id, (rx, ry)))
    return FPDeletionInstance(model, inst.k, frozenset(T)), trace


def feedback_edge_number(graph: TaskGraph) -> int:
    """Cyclomatic number ``|E| - |V| + #components`` of the underlying multigraph."""
    parent = {v: v for v in graph.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    comps = len(parent)
    for a in graph.arcs:
        ra, rb = find(a.tail), find(a.head)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return len(graph.arcs) - len(graph.vertices) + comps


def verify_kernel_size(kernel: FPDeletionInstance) -> bool:
    g = kernel.model.graph
    f = feedback_edge_number(g)
    return len(g.vertices) <= 8 * f + 3 and len(g.arcs) <= 9 * f + 2


def lift_solution(trace: KernelTrace, kernel_solution) -> set[ArcId]:
    """Map a kernel solution back through the trace, newest step first."""
    D = set(kernel_solution)
    removed = set()
    for step in reversed(trace.steps):
        if isinstance(step, Rule3Merged):
            if step.new_arc in D:
                D.discard(step.new_arc)
                D.add(step.old_arcs[0])
        elif isinstance(step, Rule1Removed):
            removed.update(step.removed_arcs)
    if D & removed:
        raise KernelError(f"solution uses removed arcs {sorted(D & removed)}")
    return D


def replay_trace(inst: FPDeletionInstance, trace: KernelTrace):
    """Re-apply a recorded trace to ``inst``; used to check that traces are faithful."""
    model, T = inst.model, set(inst.T)
    for step in trace:
        if isinstance(step, Rule2TrivialNo):
            return TRIVIAL_NO
        if isinstance(step, Rule1Removed):
            if T.intersection(step.removed_arcs):
                return TRIVIAL_NO
            model = model.with_graph(model.graph.without_vertex(step.v))
            continue
        g = model.graph
        xy, yz = (g.arc_by_id[i] for i in step.old_arcs)
        rewards = {v: r for v, r in model.reward_of.items() if v != step.y}
        b = model.beta
        rewards[step.x] = min(model.reward_of[step.x] + (1 - b) / b * yz.weight,
                              model.reward_of[step.y] + xy.weight / b)
        merged = Arc(step.new_arc, step.x, step.z, xy.weight + yz.weight)
        model = model.with_graph(g.without_vertex(step.y).with_arcs([merged]),
                                 reward_of=rewards)
        if T & set(step.old_arcs):
            T = (T - set(step.old_arcs)) | {step.new_arc}
    return FPDeletionInstance(model, inst.k, frozenset(T))


def solve_deletion_via_kernel(
    inst: Union[DeletionInstance, FPDeletionInstance],
    stats: Optional[SearchStats] = None,
) -> Optional[DeletionSolution]:
    """Kernelize, search the kernel exhaustively, and lift the answer."""
    fp = to_false_promises(inst) if isinstance(inst, DeletionInstance) else inst
    kernel, trace = apply_rules(fp)
    if kernel is TRIVIAL_NO:
        return None
    km = kernel.model
    candidates = sorted(a.id for a in km.graph.arcs if a.id not in kernel.T)
    for size in range(min(inst.k, len(candidates)) + 1):
        for D in combinations(candidates, size):
            if stats is not None:
                stats.nodes += 1
            if _check(km, kernel.T, D, stats) is None:
                continue
            lifted = lift_solution(trace, D)
            witness = _check(inst.model, inst.T, lifted, stats)
            if witness is None:
                raise KernelError(f"lifted solution {sorted(lifted)} does not verify")
            return DeletionSolution(frozenset(lifted), witness)
    return None
