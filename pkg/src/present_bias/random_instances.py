"""Seeded random instances for property tests, experiments, and ``generate``."""

from __future__ import annotations

import random
from fractions import Fraction

from .model import Arc, Model, TaskGraph, perceived_cost, INF


def random_graph(rng: random.Random, n: int, m: int, w_max: int = 10,
                 w_min: int = 0) -> TaskGraph:
    """DAG on ``v0 .. v{n-1}`` (index order is topological); parallel arcs allowed."""
    vs = [f"v{i}" for i in range(n)]
    arcs = []
    for j in range(m):
        i = rng.randrange(n - 1)
        h = rng.randrange(i + 1, n)
        arcs.append(Arc(f"e{j:02d}", vs[i], vs[h], Fraction(rng.randint(w_min, w_max))))
    return TaskGraph(tuple(vs), tuple(arcs))


def random_beta(rng: random.Random) -> Fraction:
    q = rng.randint(1, 6)
    return Fraction(rng.randint(1, q), q)


def random_model(rng: random.Random, n_max: int = 8, m_max: int = 14,
                 w_max: int = 10) -> Model:
    n = rng.randint(2, n_max)
    m = rng.randint(1, m_max)
    g = random_graph(rng, n, m, w_max)
    beta = random_beta(rng)
    base = Model(g, "v0", f"v{n - 1}", beta, 0)
    z = perceived_cost(base, base.s)
    if z is INF or rng.random() < 0.2:
        reward = Fraction(rng.randint(0, 40))
    else:
        # Reward near the agent's starting threshold gives a mix of outcomes.
        reward = z / beta * Fraction(rng.randint(4, 12), 8)
    return base.with_reward(reward)


def random_deletion_instance(rng: random.Random, n_max: int = 8, m_max: int = 14,
                             w_max: int = 10, k_max: int = 3):
    from .deletion import DeletionInstance

    model = random_model(rng, n_max, m_max, w_max)
    ids = [a.id for a in model.graph.arcs]
    T = rng.sample(ids, rng.randint(0, min(2, len(ids))))
    return DeletionInstance(model, rng.randint(0, k_max), frozenset(T))


def random_path_with_detours(rng: random.Random, n_max: int = 10, pool_max: int = 10,
                             k_max: int = 3, w_max: int = 10):
    """Random path-with-detours instance; rewards are placed near the feasibility edge."""
    from .addition import AdditionInstance, Candidate, PathWithDetours

    n = rng.randint(2, n_max)
    vs = [f"p{i:02d}" for i in range(n)]
    arcs = [Arc(f"a{i:02d}", vs[i], vs[i + 1], Fraction(rng.randint(0, w_max)))
            for i in range(n - 1)]
    pool = []
    # Short detours keep components small, long ones merge them.
    span_cap = rng.choice([2, 3, n - 1])
    for j in range(rng.randint(0, pool_max)):
        i = rng.randrange(n - 1)
        h = rng.randint(i + 1, min(n - 1, i + max(1, span_cap)))
        pool.append(Candidate(f"c{j:02d}", vs[i], vs[h], Fraction(rng.randint(0, w_max))))
    beta = random_beta(rng)
    g = TaskGraph(tuple(vs), tuple(arcs))
    total = sum((a.weight for a in arcs), Fraction(0))
    reward = total * Fraction(rng.randint(2, 16), 8)
    inst = AdditionInstance(Model(g, vs[0], vs[-1], beta, reward), rng.randint(0, k_max),
                            frozenset(a.id for a in arcs), tuple(pool))
    return PathWithDetours.from_instance(inst)
