"""T-Path-Deletion: exhaustive search and the bounded branching algorithm."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Union

from .model import (
    AnyModel,
    ArcId,
    FPModel,
    GraphError,
    INF,
    Model,
    TraversalResult,
    perceived_path,
    simulate_agent,
)


@dataclass(frozen=True)
class DeletionInstance:
    model: Model
    k: int
    T: frozenset[ArcId] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "T", frozenset(self.T))
        if self.k < 0:
            raise GraphError("budget k must be nonnegative")
        unknown = self.T - set(self.model.graph.arc_by_id)
        if unknown:
            raise GraphError(f"T contains unknown arcs {sorted(unknown)}")


@dataclass(frozen=True)
class FPDeletionInstance:
    model: FPModel
    k: int
    T: frozenset[ArcId] = frozenset()

    __post_init__ = DeletionInstance.__post_init__


AnyDeletion = Union[DeletionInstance, FPDeletionInstance]


@dataclass(frozen=True)
class DeletionSolution:
    deleted: frozenset[ArcId]
    witness: TraversalResult


@dataclass
class SearchStats:
    """Counters filled in by the solvers when passed in."""

    nodes: int = 0
    simulations: int = 0
    max_depth: int = 0


def _check(model: AnyModel, T, deleted, stats: Optional[SearchStats]):
    """Simulate on ``model - deleted``; return the witness if it is a T-path."""
    if stats is not None:
        stats.simulations += 1
    res = simulate_agent(model.without_arcs(deleted) if deleted else model)
    if res.reached and T <= set(res.steps):
        return res
    return None


def verify_deletion(inst: AnyDeletion, deleted: Iterable[ArcId]) -> bool:
    """Independent check that ``deleted`` solves ``inst``."""
    deleted = set(deleted)
    if len(deleted) > inst.k or deleted & inst.T:
        return False
    if not deleted <= set(inst.model.graph.arc_by_id):
        return False
    res = simulate_agent(inst.model.without_arcs(deleted))
    return res.reached and inst.T <= set(res.steps)


def solve_deletion_exhaustive(
    inst: AnyDeletion, stats: Optional[SearchStats] = None
) -> Optional[DeletionSolution]:
    """Try every ``D`` outside ``T`` with ``|D| <= k``, smallest and lexicographically first.

    Arcs of ``T`` are never deleted: a deleted arc cannot be on the agent's path.
    """
    candidates = sorted(a.id for a in inst.model.graph.arcs if a.id not in inst.T)
    for size in range(min(inst.k, len(candidates)) + 1):
        for D in combinations(candidates, size):
            if stats is not None:
                stats.nodes += 1
            w = _check(inst.model, inst.T, D, stats)
            if w is not None:
                return DeletionSolution(frozenset(D), w)
    return None


def relevant_subgraph(model: AnyModel) -> set[ArcId]:
    """Union of the agent's walk and the perceived paths at every visited vertex.

    Deleting arcs outside this set cannot change the agent's walk. The
    abandonment vertex contributes its perceived path too when ``t`` is
    reachable from it.
    """
    res = simulate_agent(model)
    H = set(res.steps)
    for v, z in res.perceived_at:
        if v != model.t and z is not INF:
            H.update(perceived_path(model, v))
    return H


def branching_node_bound(m: int, k: int) -> int:
    """``sum_{i<=k} (m^2)^i``, the size bound of the branching tree."""
    return sum((m * m) ** i for i in range(k + 1))


def solve_deletion_branching(
    inst: AnyDeletion, stats: Optional[SearchStats] = None
) -> Optional[DeletionSolution]:
    """Branch on which arc of the relevant subgraph to delete, depth at most ``k``."""

    def rec(model: AnyModel, budget: int, deleted: tuple[ArcId, ...], depth: int):
        if stats is not None:
            stats.nodes += 1
            stats.max_depth = max(stats.max_depth, depth)
            stats.simulations += 1
        res = simulate_agent(model)
        if res.reached and inst.T <= set(res.steps):
            return DeletionSolution(frozenset(deleted), res)
        if budget == 0:
            return None
        for e in sorted(relevant_subgraph(model) - inst.T):
            found = rec(model.without_arcs([e]), budget - 1, deleted + (e,), depth + 1)
            if found is not None:
                return found
        return None

    return rec(inst.model, inst.k, (), 0)
