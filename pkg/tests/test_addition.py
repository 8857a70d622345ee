import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from present_bias.addition import (
    AdditionInstance,
    Candidate,
    DPStats,
    PathWithDetours,
    _segment_model,
    decompose,
    solve_addition_dp,
    solve_addition_exhaustive,
    verify_addition,
)
from present_bias.model import GraphError, Model, TaskGraph, simulate_agent
from present_bias.random_instances import random_path_with_detours


def path_instance(weights, pool=(), beta=Fraction(1, 2), reward=100, k=2):
    vs = [f"p{i:02d}" for i in range(len(weights) + 1)]
    edges = [(f"a{i:02d}", vs[i], vs[i + 1], w) for i, w in enumerate(weights)]
    g = TaskGraph.from_edges(edges, vertices=vs)
    cands = [Candidate(cid, vs[i], vs[j], Fraction(w)) for cid, i, j, w in pool]
    inst = AdditionInstance(Model(g, vs[0], vs[-1], beta, reward), k,
                            frozenset(e[0] for e in edges), tuple(cands))
    return PathWithDetours.from_instance(inst)


def test_exhaustive_compliant_needs_nothing():
    pwd = path_instance([1, 1, 1], [("c0", 0, 2, 5)])
    assert solve_addition_exhaustive(pwd.instance) == frozenset()


def test_exhaustive_zero_budget_abandoning_agent():
    pwd = path_instance([10, 10], [("c0", 1, 2, 0)], reward=1, k=0)
    assert simulate_agent(pwd.instance.model).at == "p00"
    assert solve_addition_exhaustive(pwd.instance) is None


def test_shortcut_lowers_anticipated_cost():
    # Detour p1 -> p3 of weight 1 makes the far end look cheap from p0, but at p1
    # the agent still prefers the path because the detour costs more up front.
    pwd = path_instance([2, 1, 9], [("c0", 1, 3, 3)], beta=Fraction(1, 3), reward=10, k=1)
    assert not simulate_agent(pwd.instance.model).reached
    assert solve_addition_exhaustive(pwd.instance) is None
    assert solve_addition_dp(pwd) is None


def test_cycle_creating_pool_rejected():
    g = TaskGraph.from_edges([("st", "s", "t", 1), ("sx", "s", "x", 1)])
    with pytest.raises(GraphError, match="cycle"):
        AdditionInstance(Model(g, "s", "t", 1, 5), 1, frozenset(),
                         (Candidate("c", "x", "s", Fraction(1)),))


def test_path_with_detours_validation():
    with pytest.raises(GraphError, match="cycle"):
        path_instance([1, 1, 1], [("c0", 2, 1, 1)])
    g = TaskGraph.from_edges([("ab", "a", "b", 1), ("bc", "b", "c", 1)])
    inst = AdditionInstance(Model(g, "a", "c", 1, 5), 1, frozenset({"ab"}), ())
    with pytest.raises(GraphError, match="path arcs"):
        PathWithDetours.from_instance(inst)
    g = TaskGraph.from_edges([("ab", "a", "b", 1), ("ac", "a", "c", 1), ("bc", "b", "c", 1)])
    inst = AdditionInstance(Model(g, "a", "c", 1, 5), 1, frozenset({"ab", "bc"}), ())
    with pytest.raises(GraphError):
        PathWithDetours.from_instance(inst)
    with pytest.raises(GraphError):
        solve_addition_dp(inst)


def test_decompose_empty_pool():
    dec = decompose(path_instance([1, 2, 3, 4]))
    assert dec.cuts == (0, 1, 2, 3, 4) and dec.tau == 0


def test_decompose_full_span():
    dec = decompose(path_instance([1, 2, 3, 4], [("c0", 0, 4, 1)]))
    assert dec.cuts == (0, 4) and dec.tau == 1


def test_decompose_two_components():
    pwd = path_instance([1] * 6, [("c0", 0, 2, 1), ("c1", 1, 3, 1), ("c2", 3, 6, 1), ("c3", 4, 5, 1)])
    dec = decompose(pwd)
    assert dec.cuts == (0, 3, 6)
    assert [[c.id for c in comp] for comp in dec.components] == [["c0", "c1"], ["c2", "c3"]]


def test_dp_empty_pool_distance_is_path_weight():
    pwd = path_instance([1, 2, 3], k=2)
    stats = DPStats()
    assert solve_addition_dp(pwd, stats) == frozenset()
    assert stats.table[(0, 2)] == 6


def test_dp_two_components_matches_exhaustive():
    pool = [("c0", 0, 2, 1), ("c1", 0, 1, 0), ("c2", 2, 4, 2), ("c3", 3, 4, 1)]
    for reward in range(0, 40, 3):
        pwd = path_instance([3, 4, 5, 6], pool, beta=Fraction(1, 3), reward=reward, k=2)
        ex, dp = solve_addition_exhaustive(pwd.instance), solve_addition_dp(pwd)
        assert (ex is None) == (dp is None)
        if dp is not None:
            assert verify_addition(pwd.instance, dp)


@pytest.mark.parametrize("seed", range(120))
def test_dp_agrees_with_exhaustive(seed):
    pwd = random_path_with_detours(random.Random(seed))
    stats = DPStats()
    dp = solve_addition_dp(pwd, stats)
    assert (dp is None) == (solve_addition_exhaustive(pwd.instance) is None)
    if dp is not None:
        assert verify_addition(pwd.instance, dp)
    m = len(decompose(pwd).components)
    for l in range(m + 1):
        row = [stats.table[(l, kappa)] for kappa in range(pwd.instance.k + 1)]
        assert all(x >= y for x, y in zip(row, row[1:]))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6), st.data())
def test_segment_with_reward_offset_matches_full_walk(seed, data):
    pwd = random_path_with_detours(random.Random(seed), n_max=9, pool_max=8)
    dec = decompose(pwd)
    if len(dec.components) < 2:
        return
    inst = pwd.instance
    ids = [c.id for c in inst.pool]
    S = set(data.draw(st.lists(st.sampled_from(ids), unique=True)) if ids else [])
    cut = dec.cuts[1]
    full_model = inst.augmented(S)
    full = simulate_agent(full_model)
    suffix = full_model.distances[pwd.path[cut]]
    first = [c for c in dec.components[0] if c.id in S]
    offset = inst.model.reward - suffix
    if offset < 0:
        assert full.at == pwd.path[0] and not full.reached
        return
    seg = simulate_agent(_segment_model(pwd, 0, cut, first, offset))
    full_prefix = []
    for a in full.steps:
        full_prefix.append(a)
        if full_model.graph.arc_by_id[a].head == pwd.path[cut]:
            break
    assert list(seg.steps) == full_prefix
    assert seg.reached == (pwd.path[cut] in full.visited)


@pytest.mark.parametrize("tau", range(0, 9))
def test_dp_work_tracks_component_size(tau):
    pool = [(f"c{j}", 0, 2, 1 + j) for j in range(tau)]
    pwd = path_instance([1, 1, 1], pool, k=tau)
    stats = DPStats()
    solve_addition_dp(pwd, stats)
    k, segs = tau, len(decompose(pwd).components)
    assert decompose(pwd).tau == tau
    assert 2 ** tau <= stats.subsets <= (k + 1) * segs * 2 ** tau
