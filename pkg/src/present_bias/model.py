"""Task graphs, exact costs, and the present-biased agent.

Costs, bias, and rewards are :class:`fractions.Fraction` values. The only
non-rational quantity is :data:`INF`, used for distances to an unreachable
target.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, total_ordering
from typing import Iterable, Mapping, Optional, Union

Vertex = str
ArcId = str


class GraphError(ValueError):
    """A graph or model invariant is violated."""


class NoNextArc(ValueError):
    """The agent has no perceived path to follow from a vertex."""


@total_ordering
class _Infinity:
    """Positive infinity that composes with :class:`Fraction` without floats."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("present_bias.INF")

    def __lt__(self, other) -> bool:
        return False

    def __gt__(self, other) -> bool:
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("INF - INF")
        return self

    def __mul__(self, other):
        if other == 0:
            raise ArithmeticError("0 * INF")
        if other < 0:
            raise ArithmeticError("negative * INF")
        return self

    __rmul__ = __mul__


INF = _Infinity()
Cost = Union[Fraction, _Infinity]


def as_rational(value) -> Fraction:
    """Convert ints, Fractions, and ``"p/q"`` strings; floats are rejected."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True)
class Arc:
    id: ArcId
    tail: Vertex
    head: Vertex
    weight: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weight", as_rational(self.weight))
        if self.weight < 0:
            raise GraphError(f"arc {self.id} has negative weight {self.weight}")
        if self.tail == self.head:
            raise GraphError(f"arc {self.id} is a self-loop")


def _kahn(vertices: Iterable[Vertex], arcs: Iterable[Arc]) -> list[Vertex]:
    indeg = {v: 0 for v in vertices}
    succ: dict[Vertex, list[Vertex]] = {v: [] for v in indeg}
    for a in arcs:
        indeg[a.head] += 1
        succ[a.tail].append(a.head)
    heap = [v for v, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for u in succ[v]:
            indeg[u] -= 1
            if indeg[u] == 0:
                heapq.heappush(heap, u)
    if len(order) != len(indeg):
        stuck = sorted(v for v, d in indeg.items() if d > 0)
        raise GraphError(f"graph is not acyclic (cycle through {stuck})")
    return order


@dataclass(frozen=True)
class TaskGraph:
    """Directed acyclic multigraph; arcs are identified by unique ids."""

    vertices: tuple[Vertex, ...]
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arcs", tuple(self.arcs))
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        known = set(self.vertices)
        seen = set()
        for a in self.arcs:
            if a.id in seen:
                raise GraphError(f"duplicate arc id {a.id}")
            seen.add(a.id)
            if a.tail not in known or a.head not in known:
                raise GraphError(f"arc {a.id} has an endpoint outside the vertex set")
        _kahn(self.vertices, self.arcs)

    @classmethod
    def from_edges(cls, edges, vertices=None) -> "TaskGraph":
        """Build from ``(id, tail, head, weight)`` tuples; vertices default to endpoints."""
        arcs = [Arc(i, u, v, as_rational(w)) for i, u, v, w in edges]
        if vertices is None:
            vs: list[Vertex] = []
            for a in arcs:
                for x in (a.tail, a.head):
                    if x not in vs:
                        vs.append(x)
            vertices = vs
        return cls(tuple(vertices), tuple(arcs))

    @cached_property
    def arc_by_id(self) -> dict[ArcId, Arc]:
        return {a.id: a for a in self.arcs}

    @cached_property
    def out_arcs(self) -> dict[Vertex, tuple[Arc, ...]]:
        out: dict[Vertex, list[Arc]] = {v: [] for v in self.vertices}
        for a in self.arcs:
            out[a.tail].append(a)
        return {v: tuple(x) for v, x in out.items()}

    @cached_property
    def in_arcs(self) -> dict[Vertex, tuple[Arc, ...]]:
        inn: dict[Vertex, list[Arc]] = {v: [] for v in self.vertices}
        for a in self.arcs:
            inn[a.head].append(a)
        return {v: tuple(x) for v, x in inn.items()}

    def without_arcs(self, ids: Iterable[ArcId]) -> "TaskGraph":
        drop = set(ids)
        missing = drop - set(self.arc_by_id)
        if missing:
            raise GraphError(f"unknown arcs {sorted(missing)}")
        return TaskGraph(self.vertices, tuple(a for a in self.arcs if a.id not in drop))

    def with_arcs(self, extra: Iterable[Arc]) -> "TaskGraph":
        return TaskGraph(self.vertices, self.arcs + tuple(extra))

    def without_vertex(self, v: Vertex) -> "TaskGraph":
        return TaskGraph(
            tuple(x for x in self.vertices if x != v),
            tuple(a for a in self.arcs if v not in (a.tail, a.head)),
        )


def topological_order(graph: TaskGraph) -> list[Vertex]:
    """Kahn's algorithm emitting the lexicographically smallest available vertex."""
    return _kahn(graph.vertices, graph.arcs)


def _check_order(graph: TaskGraph, order: tuple[Vertex, ...]) -> None:
    if sorted(order) != sorted(graph.vertices):
        raise GraphError("tie-break order must list every vertex exactly once")
    rank = {v: i for i, v in enumerate(order)}
    for a in graph.arcs:
        if rank[a.tail] >= rank[a.head]:
            raise GraphError(f"tie-break order is not topological at arc {a.id}")


@dataclass(frozen=True)
class _ModelBase:
    graph: TaskGraph
    s: Vertex
    t: Vertex
    beta: Fraction

    def _validate(self):
        object.__setattr__(self, "beta", as_rational(self.beta))
        vs = set(self.graph.vertices)
        if self.s not in vs or self.t not in vs:
            raise GraphError("s and t must be vertices of the graph")
        if self.s == self.t:
            raise GraphError("s and t must differ")
        if not 0 < self.beta <= 1:
            raise GraphError(f"beta must lie in (0, 1], got {self.beta}")
        if self.order is None:
            object.__setattr__(self, "order", tuple(topological_order(self.graph)))
        else:
            object.__setattr__(self, "order", tuple(self.order))
            _check_order(self.graph, self.order)

    @cached_property
    def rank(self) -> dict[Vertex, int]:
        return {v: i for i, v in enumerate(self.order)}

    @cached_property
    def distances(self) -> dict[Vertex, Cost]:
        dist: dict[Vertex, Cost] = {v: INF for v in self.graph.vertices}
        dist[self.t] = Fraction(0)
        for v in reversed(self.order):
            for a in self.graph.out_arcs[v]:
                d = dist[a.head]
                if d is not INF and a.weight + d < dist[v]:
                    dist[v] = a.weight + d
        return dist

    def _restricted_order(self, graph: TaskGraph) -> tuple[Vertex, ...]:
        keep = set(graph.vertices)
        return tuple(v for v in self.order if v in keep)


@dataclass(frozen=True)
class Model(_ModelBase):
    """Planning instance with a single reward at ``t``.

    ``order`` is the topological order used for tie-breaking. It defaults to
    :func:`topological_order` of the graph and is inherited by every model
    derived through arc deletion, so that tie-breaking stays fixed.
    """

    reward: Fraction = Fraction(0)
    order: Optional[tuple[Vertex, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "reward", as_rational(self.reward))
        if self.reward < 0:
            raise GraphError("reward must be nonnegative")
        self._validate()

    def reward_at(self, v: Vertex) -> Fraction:
        return self.reward

    def with_graph(self, graph: TaskGraph, order=None) -> "Model":
        return Model(graph, self.s, self.t, self.beta, self.reward,
                     order or self._restricted_order(graph))

    def without_arcs(self, ids: Iterable[ArcId]) -> "Model":
        return self.with_graph(self.graph.without_arcs(ids))

    def with_reward(self, reward) -> "Model":
        return Model(self.graph, self.s, self.t, self.beta, reward, self.order)


@dataclass(frozen=True)
class FPModel(_ModelBase):
    """Model with a per-vertex reward ("false promises")."""

    reward_of: Mapping[Vertex, Fraction] = field(default_factory=dict)
    order: Optional[tuple[Vertex, ...]] = None

    def __post_init__(self):
        rewards = {v: as_rational(r) for v, r in dict(self.reward_of).items()}
        missing = set(self.graph.vertices) - set(rewards)
        if missing:
            raise GraphError(f"no reward for vertices {sorted(missing)}")
        if any(r < 0 for r in rewards.values()):
            raise GraphError("rewards must be nonnegative")
        object.__setattr__(
            self, "reward_of", {v: rewards[v] for v in self.graph.vertices})
        self._validate()

    def __hash__(self):
        return hash((self.graph, self.s, self.t, self.beta, self.order,
                     tuple(self.reward_of.items())))

    def reward_at(self, v: Vertex) -> Fraction:
        return self.reward_of[v]

    def with_graph(self, graph: TaskGraph, order=None, reward_of=None) -> "FPModel":
        rewards = reward_of or {v: self.reward_of[v] for v in graph.vertices}
        return FPModel(graph, self.s, self.t, self.beta, rewards,
                       order or self._restricted_order(graph))

    def without_arcs(self, ids: Iterable[ArcId]) -> "FPModel":
        return self.with_graph(self.graph.without_arcs(ids))


AnyModel = Union[Model, FPModel]


def dist_to_target(model: AnyModel) -> dict[Vertex, Cost]:
    """Exact shortest (undiscounted) distance from every vertex to ``t``."""
    return dict(model.distances)


def _arc_perceived(model: AnyModel, a: Arc) -> Cost:
    d = model.distances[a.head]
    if d is INF:
        return INF
    return a.weight + model.beta * d


def perceived_cost(model: AnyModel, v: Vertex) -> Cost:
    """Minimum over ``v``-``t`` paths of first-arc weight plus beta times the rest."""
    if v == model.t:
        return Fraction(0)
    best: Cost = INF
    for a in model.graph.out_arcs[v]:
        c = _arc_perceived(model, a)
        if c < best:
            best = c
    return best


def path_perceived_cost(model: AnyModel, arc_ids: Iterable[ArcId]) -> Fraction:
    """Perceived cost of one explicit path, given as a sequence of arc ids."""
    ws = [model.graph.arc_by_id[i].weight for i in arc_ids]
    if not ws:
        return Fraction(0)
    return ws[0] + model.beta * sum(ws[1:], Fraction(0))


def perceived_next_arc(model: AnyModel, v: Vertex) -> ArcId:
    """First arc of the tie-broken perceived path at ``v``.

    Ties go to the head earliest in ``model.order``, then to the smallest arc id.
    """
    if v == model.t:
        raise NoNextArc(f"{v} is the target")
    best = None
    for a in model.graph.out_arcs[v]:
        c = _arc_perceived(model, a)
        if c is INF:
            continue
        key = (c, model.rank[a.head], a.id)
        if best is None or key < best[0]:
            best = (key, a)
    if best is None:
        raise NoNextArc(f"target unreachable from {v}")
    return best[1].id


def perceived_path(model: AnyModel, v: Vertex) -> list[ArcId]:
    """A full perceived ``v``-``t`` path: the chosen arc, then a shortest path."""
    if v == model.t:
        return []
    first = model.graph.arc_by_id[perceived_next_arc(model, v)]
    path = [first.id]
    u = first.head
    dist = model.distances
    while u != model.t:
        best = None
        for a in model.graph.out_arcs[u]:
            d = dist[a.head]
            if d is INF or a.weight + d != dist[u]:
                continue
            key = (model.rank[a.head], a.id)
            if best is None or key < best[0]:
                best = (key, a)
        path.append(best[1].id)
        u = best[1].head
    return path


REACHED = "reached"
ABANDONED = "abandoned"


@dataclass(frozen=True)
class TraversalResult:
    steps: tuple[ArcId, ...]
    outcome: str
    at: Vertex
    perceived_at: tuple[tuple[Vertex, Cost], ...]

    @property
    def reached(self) -> bool:
        return self.outcome == REACHED

    @property
    def visited(self) -> list[Vertex]:
        return [v for v, _ in self.perceived_at]


def simulate_agent(model: AnyModel) -> TraversalResult:
    """Walk the agent from ``s`` until it reaches ``t`` or abandons.

    The agent abandons at ``v`` when the perceived cost exceeds ``beta * r(v)``
    strictly, or when ``t`` is unreachable from ``v``.
    """
    v = model.s
    steps: list[ArcId] = []
    seen: list[tuple[Vertex, Cost]] = []
    while True:
        z = perceived_cost(model, v)
        seen.append((v, z))
        if v == model.t:
            return TraversalResult(tuple(steps), REACHED, v, tuple(seen))
        if z is INF or z > model.beta * model.reward_at(v):
            return TraversalResult(tuple(steps), ABANDONED, v, tuple(seen))
        arc = perceived_next_arc(model, v)
        steps.append(arc)
        v = model.graph.arc_by_id[arc].head


def follows_t_path(model: AnyModel, T: Iterable[ArcId]) -> bool:
    res = simulate_agent(model)
    return res.reached and set(T) <= set(res.steps)


def enumerate_paths(graph: TaskGraph, u: Vertex, t: Vertex) -> list[list[ArcId]]:
    """Every ``u``-``t`` path as an arc-id list (exponential; small graphs only)."""
    if u == t:
        return [[]]
    out = []
    for a in graph.out_arcs[u]:
        for rest in enumerate_paths(graph, a.head, t):
            out.append([a.id] + rest)
    return out


def longest_path_arcs(graph: TaskGraph, s: Vertex, t: Vertex) -> int:
    """Maximum number of arcs on an ``s``-``t`` path (0 if there is none)."""
    order = topological_order(graph)
    best: dict[Vertex, Optional[int]] = {v: None for v in order}
    best[t] = 0
    for v in reversed(order):
        for a in graph.out_arcs[v]:
            b = best[a.head]
            if b is not None and (best[v] is None or b + 1 > best[v]):
                best[v] = b + 1
    return best[s] or 0
