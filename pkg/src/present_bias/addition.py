"""T-Path-Addition: exhaustive search and the intersection-component DP."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .model import (
    INF,
    Arc,
    ArcId,
    Cost,
    GraphError,
    Model,
    TaskGraph,
    Vertex,
    _kahn,
    simulate_agent,
)


@dataclass(frozen=True)
class Candidate:
    id: ArcId
    tail: Vertex
    head: Vertex
    weight: Fraction

    def as_arc(self) -> Arc:
        return Arc(self.id, self.tail, self.head, self.weight)


@dataclass(frozen=True)
class AdditionInstance:
    """Model plus a pool of candidate arcs.

    The tie-break order of every augmented model is one topological order of
    the graph together with the whole pool, so adding arcs never reorders
    vertices.
    """

    model: Model
    k: int
    T: frozenset[ArcId]
    pool: tuple[Candidate, ...]

    def __post_init__(self):
        object.__setattr__(self, "T", frozenset(self.T))
        object.__setattr__(self, "pool", tuple(self.pool))
        g = self.model.graph
        if self.k < 0:
            raise GraphError("budget k must be nonnegative")
        if not self.T <= set(g.arc_by_id):
            raise GraphError(f"T contains unknown arcs {sorted(self.T - set(g.arc_by_id))}")
        ids = [c.id for c in self.pool]
        if len(set(ids)) != len(ids) or set(ids) & set(g.arc_by_id):
            raise GraphError("candidate ids must be unique and distinct from arc ids")
        arcs = g.arcs + tuple(c.as_arc() for c in self.pool)
        try:
            order = _kahn(g.vertices, arcs)
        except GraphError as exc:
            raise GraphError(f"pool can create a directed cycle: {exc}") from None
        object.__setattr__(self, "joint_order", tuple(order))

    @property
    def candidate_by_id(self) -> dict[ArcId, Candidate]:
        return {c.id: c for c in self.pool}

    def augmented(self, S) -> Model:
        chosen = set(S)
        extra = [c.as_arc() for c in self.pool if c.id in chosen]
        return self.model.with_graph(self.model.graph.with_arcs(extra), self.joint_order)


def verify_addition(inst: AdditionInstance, S) -> bool:
    S = set(S)
    if len(S) > inst.k or not S <= set(inst.candidate_by_id):
        return False
    res = simulate_agent(inst.augmented(S))
    return res.reached and inst.T <= set(res.steps)


def solve_addition_exhaustive(inst: AdditionInstance) -> Optional[frozenset[ArcId]]:
    """First ``S`` (by size, then candidate id) under which the agent walks a T-path."""
    ids = sorted(c.id for c in inst.pool)
    for size in range(min(inst.k, len(ids)) + 1):
        for S in combinations(ids, size):
            res = simulate_agent(inst.augmented(S))
            if res.reached and inst.T <= set(res.steps):
                return frozenset(S)
    return None


@dataclass(frozen=True)
class PathWithDetours:
    """A path ``v_1 .. v_n`` whose arcs form ``T``, plus forward candidate arcs."""

    instance: AdditionInstance
    path: tuple[Vertex, ...]
    path_arcs: tuple[ArcId, ...]

    @classmethod
    def from_instance(cls, inst: AdditionInstance) -> "PathWithDetours":
        m = inst.model
        g = m.graph
        v = m.s
        path, arcs = [v], []
        while g.out_arcs[v]:
            if len(g.out_arcs[v]) != 1:
                raise GraphError(f"not a path: {v} has {len(g.out_arcs[v])} out-arcs")
            a = g.out_arcs[v][0]
            arcs.append(a.id)
            v = a.head
            path.append(v)
        if v != m.t or len(path) != len(g.vertices) or len(arcs) != len(g.arcs):
            raise GraphError("graph must be a single s-t path through every vertex")
        if inst.T != frozenset(arcs):
            raise GraphError("T must consist of exactly the path arcs")
        pos = {x: i for i, x in enumerate(path)}
        for c in inst.pool:
            if pos[c.tail] >= pos[c.head]:
                raise GraphError(f"candidate {c.id} does not point forward along the path")
        return cls(inst, tuple(path), tuple(arcs))

    @property
    def pos(self) -> dict[Vertex, int]:
        return {x: i for i, x in enumerate(self.path)}


@dataclass(frozen=True)
class ComponentDecomposition:
    """Cut positions (0-based path indices) and the candidates inside each segment."""

    cuts: tuple[int, ...]
    components: tuple[tuple[Candidate, ...], ...]

    @property
    def tau(self) -> int:
        return max((len(c) for c in self.components), default=0)


def decompose(pwd: PathWithDetours) -> ComponentDecomposition:
    """Maximal decomposition: every index spanned by no candidate is a cut."""
    n = len(pwd.path)
    pos = pwd.pos
    spanned = [False] * n
    for c in pwd.instance.pool:
        for i in range(pos[c.tail] + 1, pos[c.head]):
            spanned[i] = True
    cuts = [i for i in range(n) if i in (0, n - 1) or not spanned[i]]
    comps = []
    for lo, hi in zip(cuts, cuts[1:]):
        comps.append(tuple(sorted(
            (c for c in pwd.instance.pool if lo <= pos[c.tail] and pos[c.head] <= hi),
            key=lambda c: c.id)))
    return ComponentDecomposition(tuple(cuts), tuple(comps))


@dataclass
class DPStats:
    subsets: int = 0
    simulations: int = 0
    table: dict = field(default_factory=dict)


def _segment_model(pwd: PathWithDetours, lo: int, hi: int, S, reward) -> Model:
    inst = pwd.instance
    g = inst.model.graph
    vs = pwd.path[lo:hi + 1]
    arcs = [g.arc_by_id[a] for a in pwd.path_arcs[lo:hi]]
    arcs += [c.as_arc() for c in S]
    return Model(TaskGraph(vs, tuple(arcs)), vs[0], vs[-1], inst.model.beta, reward, vs)


def _segment_dist(model: Model) -> Cost:
    return model.distances[model.s]


def solve_addition_dp(
    pwd: PathWithDetours, stats: Optional[DPStats] = None
) -> Optional[frozenset[ArcId]]:
    """Dynamic program over intersection components, last segment first.

    ``d[l][kappa]`` is the least ``v_{c_l}``-to-``t`` distance achievable with at
    most ``kappa`` candidates from segments ``l..m`` while the agent still walks
    the path from ``v_{c_l}``. A prefix segment only sees the suffix through
    its distance, which lowers the effective reward.
    """
    if not isinstance(pwd, PathWithDetours):
        raise GraphError("solve_addition_dp needs a validated PathWithDetours")
    inst = pwd.instance
    k = inst.k
    dec = decompose(pwd)
    m = len(dec.components)
    r = inst.model.reward
    d: list[list[Cost]] = [[INF] * (k + 1) for _ in range(m + 1)]
    choice: list[list] = [[None] * (k + 1) for _ in range(m + 1)]
    d[m] = [Fraction(0)] * (k + 1)
    for l in range(m - 1, -1, -1):
        lo, hi = dec.cuts[l], dec.cuts[l + 1]
        comp = dec.components[l]
        subsets = [S for size in range(min(k, len(comp)) + 1)
                   for S in combinations(comp, size)]
        for kappa in range(k + 1):
            best: Cost = INF
            for S in subsets:
                if len(S) > kappa:
                    continue
                if stats is not None:
                    stats.subsets += 1
                rest = d[l + 1][kappa - len(S)]
                # A negative effective reward means abandonment at v_{c_l}.
                if rest is INF or rest > r:
                    continue
                seg = _segment_model(pwd, lo, hi, S, r - rest)
                if stats is not None:
                    stats.simulations += 1
                res = simulate_agent(seg)
                if not res.reached or res.steps != pwd.path_arcs[lo:hi]:
                    continue
                total = _segment_dist(seg) + rest
                if total < best:
                    best = total
                    choice[l][kappa] = (S, kappa - len(S))
            d[l][kappa] = best
    if stats is not None:
        stats.table = {(l, kappa): d[l][kappa] for l in range(m + 1) for kappa in range(k + 1)}
    if d[0][k] is INF:
        return None
    S_all: list[ArcId] = []
    kappa = k
    for l in range(m):
        S, kappa = choice[l][kappa]
        S_all.extend(c.id for c in S)
    return frozenset(S_all)
