"""Hardness reductions as instance generators, with brute-force source oracles.

* Shortest Path Most Vital Edges (SP-MVE) -> T-Path-Deletion, two gadgets.
* Modified k-Sum -> T-Path-Addition on a path with detours.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .addition import AdditionInstance, Candidate
from .deletion import DeletionInstance
from .model import INF, Arc, GraphError, Model, TaskGraph, Vertex, as_rational


class ConstructionError(ValueError):
    """Reduction parameters violate one of the required inequalities."""


@dataclass(frozen=True)
class SpmveInstance:
    graph: TaskGraph
    s: Vertex
    t: Vertex
    k: int
    ell: int

    def __post_init__(self):
        if self.s == self.t:
            raise GraphError("s and t must differ")
        if any(a.weight <= 0 for a in self.graph.arcs):
            raise GraphError("SP-MVE arc lengths must be positive")
        if self.k < 0 or self.ell <= 0:
            raise GraphError("need k >= 0 and ell > 0")


@dataclass(frozen=True)
class KsumInstance:
    sets: tuple[tuple[int, ...], ...]
    Z: int

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(tuple(xs) for xs in self.sets))
        if not self.sets or any(not xs for xs in self.sets):
            raise GraphError("need k >= 1 nonempty sets")
        if any(x <= 0 for xs in self.sets for x in xs) or self.Z <= 0:
            raise GraphError("k-Sum elements and Z must be positive")

    @property
    def k(self) -> int:
        return len(self.sets)


def _shortest(graph: TaskGraph, s: Vertex, t: Vertex):
    return Model(graph, s, t, 1, 0).distances[s]


def spmve_bruteforce(inst: SpmveInstance) -> bool:
    ids = [a.id for a in inst.graph.arcs]
    for size in range(min(inst.k, len(ids)) + 1):
        for S in combinations(ids, size):
            d = _shortest(inst.graph.without_arcs(S), inst.s, inst.t)
            if d is INF or d >= inst.ell:
                return True
    return False


def _fresh(graph: TaskGraph, name: str) -> str:
    taken = set(graph.vertices) | set(graph.arc_by_id)
    while name in taken:
        name += "'"
    return name


def _copies(graph, tag, tail, head, w, count):
    return [Arc(_fresh(graph, f"{tag}#{i}"), tail, head, Fraction(w)) for i in range(count)]


def reduce_spmve_thm1(inst: SpmveInstance, beta) -> DeletionInstance:
    """Doubled weights plus a tempting side path ``s' -> v1 -> t'`` of length ``2 ell - 1``.

    The agent takes the prescribed arc ``s'v1`` iff every ``s``-``t`` path left in
    ``G`` has length at least ``ell``.
    """
    beta = as_rational(beta)
    if not 0 < beta <= 1:
        raise ConstructionError("beta must lie in (0, 1]")
    G, k, ell = inst.graph, inst.k, inst.ell
    s1, v1, t1 = (_fresh(G, x) for x in ("s'", "v1'", "t'"))
    arcs = [Arc(a.id, a.tail, a.head, 2 * a.weight) for a in G.arcs]
    top = Arc(_fresh(G, "s'v1"), s1, v1, Fraction(0))
    arcs += [top, Arc(_fresh(G, "v1t'"), v1, t1, Fraction(2 * ell - 1))]
    arcs += _copies(G, "s's", s1, inst.s, 0, k + 1)
    arcs += _copies(G, "tt'", inst.t, t1, 0, k + 1)
    g = TaskGraph(G.vertices + (s1, v1, t1), tuple(arcs))
    model = Model(g, s1, t1, beta, Fraction(2 * ell) / beta)
    return DeletionInstance(model, k, frozenset({top.id}))


def thm2_beta(ell: int) -> Fraction:
    """Midpoint of the open interval ``((ell-2)/(4 ell), (ell-2)/(4 ell - 2))``."""
    lo = Fraction(ell - 2, 4 * ell)
    hi = Fraction(ell - 2, 4 * ell - 2)
    if not lo < hi:
        raise ConstructionError(f"empty beta interval for ell={ell}")
    return (lo + hi) / 2


def reduce_spmve_thm2(inst: SpmveInstance, empty_T: bool = False) -> DeletionInstance:
    """Constant-reward gadget: ``s'v1`` costs ``ell/2``, the detour into ``G`` is heavy.

    With ``empty_T`` the prescribed set is empty; the agent then only reaches
    ``t'`` through ``v1`` because it abandons at ``v2``.
    """
    G, k, ell = inst.graph, inst.k, inst.ell
    if ell % 2 or ell < 4:
        raise ConstructionError(f"ell must be even and at least 4, got {ell}")
    beta = thm2_beta(ell)
    s1, v1, v2, t1 = (_fresh(G, x) for x in ("s'", "v1'", "v2'", "t'"))
    top = Arc(_fresh(G, "s'v1"), s1, v1, Fraction(ell, 2))
    arcs = list(G.arcs)
    arcs += [top, Arc(_fresh(G, "v1t'"), v1, t1, Fraction(1))]
    arcs += _copies(G, "s'v2", s1, v2, 1, k + 1)
    arcs += _copies(G, "v2s", v2, inst.s, ell, k + 1)
    arcs += _copies(G, "tt'", inst.t, t1, 1, k + 1)
    g = TaskGraph(G.vertices + (s1, v1, v2, t1), tuple(arcs))
    model = Model(g, s1, t1, beta, Fraction(ell) / beta)
    T = frozenset() if empty_T else frozenset({top.id})
    return DeletionInstance(model, k, T)


def ksum_bruteforce(inst: KsumInstance) -> bool:
    return any(sum(c) == inst.Z for c in product(*inst.sets))


@dataclass(frozen=True)
class KsumParameters:
    """Numbers of the k-Sum gadget, after doubling and shifting the source."""

    k: int
    b: int
    Z: int
    sets: tuple[tuple[int, ...], ...]
    c: int
    a: int
    beta: Fraction
    eps: Fraction
    r: Fraction
    y: int


def ksum_parameters(inst: KsumInstance) -> KsumParameters:
    k = inst.k
    if k < 2:
        raise ConstructionError("the k-Sum construction needs k >= 2")
    # Doubling makes every achievable path sum even, which rules out the
    # w(P) = Z - 1 tie at v2 that topological tie-breaking resolves toward v3.
    sets = [[2 * x for x in xs] for xs in inst.sets]
    Z = 2 * inst.Z
    b = max(max(xs) for xs in sets)
    sets = tuple(tuple(x + b for x in xs) for xs in sets)
    Z = Z + k * b
    c = 2 * k
    a = 2 * k * k * b + 1
    beta = Fraction(1, 2 * k + 1)
    eps = Fraction(1, 2)
    r = Z + 2 + a / beta - eps
    y = max(math.floor(Z - k * b + 2 - eps) + 1, math.floor(1 / beta) + 1)
    return KsumParameters(k, b, Z, sets, c, a, beta, eps, r, y)


def ksum_inequalities(p: KsumParameters) -> dict[str, bool]:
    """Every inequality the construction relies on, evaluated exactly."""
    k, b, Z, c, a, beta, r, y = p.k, p.b, p.Z, p.c, p.a, p.beta, p.r, p.y
    br = beta * r
    shortcut = Z + 1 / beta - 1

    def upper(W):
        return a + beta * (1 + W) <= br

    def lower(W):
        return 1 + beta * W > beta * shortcut

    def third(W):
        return y + beta * W < shortcut

    return {
        "no start via v2v4 alone": a + beta * (1 + k * c * b) > br,
        "no start via v3v4": a + beta * (y + k * c * b) > br,
        "no start via v3t": a + beta * shortcut > br,
        "upper at w(P)=Z": upper(Z),
        "lower at w(P)=Z": lower(Z),
        "third at w(P)=Z": third(Z),
        "upper fails at w(P)=Z+2": not upper(Z + 2),
        "lower fails at w(P)=Z-2": not lower(Z - 2),
        "upper fails at w(P)=2kb unless 2kb=Z": 2 * k * b == Z or not upper(2 * k * b),
        "gadget arcs cover Z (c*b >= Z)": c * b >= Z,
        "elements within [b, 2b]": all(b <= x <= 2 * b for xs in p.sets for x in xs),
        "gadget choice (beta < 1/c)": beta < Fraction(1, c),
        "y above lower end": Z - k * b + 2 - p.eps < y,
        "y below upper end at w(P)=Z": y <= Z - beta * Z + 1 / beta - 1,
        "beta*y > 1": beta * y > 1,
        "v2v4 needed (a + beta*(y + kb) > beta*r)": a + beta * (y + k * b) > br,
        "no abandonment on the path": y + beta * Z <= br and c * b + beta * (k - 1) * c * b <= br,
    }


def reduce_ksum(inst: KsumInstance, green_in_graph: bool = False) -> AdditionInstance:
    """Path on ``2k+4`` vertices; gadget ``i`` offers one shortcut per element of ``X_i``.

    With ``green_in_graph`` the two auxiliary arcs ``v2v4`` and ``v3t`` are part
    of the graph and the budget is ``k``. Otherwise they are candidates too,
    and the budget is ``k + 2`` because both must be bought.
    """
    p = ksum_parameters(inst)
    failed = [name for name, ok in ksum_inequalities(p).items() if not ok]
    if failed:
        raise ConstructionError(f"violated: {', '.join(failed)}")
    k = p.k
    n = 2 * k + 4
    v = [f"v{i:02d}" for i in range(1, n + 1)]
    arcs = [
        Arc("v01v02", v[0], v[1], Fraction(p.a)),
        Arc("v02v03", v[1], v[2], Fraction(0)),
        Arc("v03v04", v[2], v[3], Fraction(p.y)),
    ]
    for i in range(1, k + 1):
        lo, mid, hi = v[2 * i + 1], v[2 * i + 2], v[2 * i + 3]
        arcs.append(Arc(f"{lo}{mid}", lo, mid, Fraction(0)))
        arcs.append(Arc(f"{mid}{hi}", mid, hi, Fraction(p.c * p.b)))
    T = frozenset(a.id for a in arcs)
    pool = [
        Candidate(f"x{i}_{j}", v[2 * i + 1], v[2 * i + 3], Fraction(x))
        for i, xs in enumerate(p.sets, 1)
        for j, x in enumerate(xs)
    ]
    green = [
        Candidate("g_v02v04", v[1], v[3], Fraction(1)),
        Candidate("g_v03t", v[2], v[-1], p.Z + 1 / p.beta - 1),
    ]
    if green_in_graph:
        arcs += [g.as_arc() for g in green]
        budget = k
    else:
        pool += green
        budget = k + 2
    model = Model(TaskGraph(tuple(v), tuple(arcs)), v[0], v[-1], p.beta, p.r)
    return AdditionInstance(model, budget, T, tuple(pool))


def random_spmve(rng, n_max: int = 7, m_max: int = 10, w_max: int = 5,
                 k_max: int = 2, ell_max: int = 10, even_ell: bool = False) -> SpmveInstance:
    from .random_instances import random_graph

    n = rng.randint(2, n_max)
    g = random_graph(rng, n, rng.randint(1, m_max), w_max, w_min=1)
    s, t = "v0", f"v{n - 1}"
    d = _shortest(g, s, t)
    if even_ell:
        choices = list(range(4, ell_max + 1, 2))
    else:
        choices = list(range(1, ell_max + 1))
    if d is not INF:
        near = [x for x in choices if abs(x - d) <= 3]
        choices = near or choices
    return SpmveInstance(g, s, t, rng.randint(0, k_max), rng.choice(choices))


def random_ksum(rng, k: int, max_size: int = 4, max_element: int = 10) -> KsumInstance:
    sets = [tuple(rng.randint(1, max_element) for _ in range(rng.randint(1, max_size)))
            for _ in range(k)]
    hit = sum(rng.choice(xs) for xs in sets)
    Z = rng.choice([hit, hit, hit + 1, hit - 1, rng.randint(k, k * max(map(max, sets)))])
    Z = min(max(Z, 1), k * max(map(max, sets)))
    return KsumInstance(tuple(sets), Z)
