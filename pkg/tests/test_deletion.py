import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from present_bias.deletion import (
    DeletionInstance,
    SearchStats,
    branching_node_bound,
    relevant_subgraph,
    solve_deletion_branching,
    solve_deletion_exhaustive,
    verify_deletion,
)
from present_bias.model import GraphError, Model, TaskGraph, longest_path_arcs, simulate_agent
from present_bias.random_instances import random_deletion_instance

from .conftest import running_model, models


def test_exhaustive_running_deletes_de():
    sol = solve_deletion_exhaustive(DeletionInstance(running_model(24), 1, {"dt"}))
    assert sol.deleted == {"de"}
    assert sol.witness.steps == ("sa", "ad", "dt")


def test_exhaustive_compliant_agent_needs_nothing(running):
    sol = solve_deletion_exhaustive(DeletionInstance(running, 2, frozenset()))
    assert sol.deleted == frozenset()


def test_exhaustive_zero_budget_running_has_no_solution():
    assert solve_deletion_exhaustive(DeletionInstance(running_model(24), 0, {"dt"})) is None


def test_instance_validation(running):
    with pytest.raises(GraphError):
        DeletionInstance(running, -1, frozenset())
    with pytest.raises(GraphError):
        DeletionInstance(running, 1, {"nope"})


def test_relevant_subgraph_running(running):
    # perceived paths: s: sa ab bc ct; a: ad dt; d: de et; e: et
    assert relevant_subgraph(running) == {"sa", "ab", "bc", "ct", "ad", "dt", "de", "et"}


def test_relevant_subgraph_single_path():
    g = TaskGraph.from_edges([("sx", "s", "x", 1), ("xt", "x", "t", 2)])
    assert relevant_subgraph(Model(g, "s", "t", Fraction(1, 2), 10)) == {"sx", "xt"}


def test_relevant_subgraph_abandon_at_s(trimmed):
    assert relevant_subgraph(trimmed.with_reward(23)) == {"sa", "ab", "bc", "ct"}


def test_branching_running():
    inst = DeletionInstance(running_model(24), 1, {"dt"})
    sol = solve_deletion_branching(inst)
    assert sol is not None and verify_deletion(inst, sol.deleted)


def test_branching_compliant_is_single_node(running):
    stats = SearchStats()
    sol = solve_deletion_branching(DeletionInstance(running, 3, frozenset()), stats)
    assert sol.deleted == frozenset() and stats.nodes == 1


def test_multigraph_deletes_single_copies():
    g = TaskGraph.from_edges([("r1", "s", "t", 5), ("p2", "s", "t", 5), ("q", "s", "t", 1)])
    # p2 beats r1 on arc id, so both q and p2 must go.
    inst = DeletionInstance(Model(g, "s", "t", 1, 10), 1, {"r1"})
    assert solve_deletion_exhaustive(inst) is None
    assert solve_deletion_branching(inst) is None
    two = DeletionInstance(inst.model, 2, {"r1"})
    assert solve_deletion_exhaustive(two).deleted == {"p2", "q"}


@pytest.mark.parametrize("seed", range(150))
def test_branching_agrees_with_exhaustive(seed):
    inst = random_deletion_instance(random.Random(seed))
    a = solve_deletion_exhaustive(inst)
    stats = SearchStats()
    b = solve_deletion_branching(inst, stats)
    assert (a is None) == (b is None)
    for sol in (a, b):
        if sol is not None:
            assert not sol.deleted & inst.T
            assert verify_deletion(inst, sol.deleted)
    m = longest_path_arcs(inst.model.graph, inst.model.s, inst.model.t)
    assert stats.nodes <= branching_node_bound(m, inst.k)


@settings(max_examples=200, deadline=None)
@given(models(), st.data())
def test_deleting_outside_relevant_subgraph_keeps_walk(model, data):
    H = relevant_subgraph(model)
    outside = sorted(a.id for a in model.graph.arcs if a.id not in H)
    if not outside:
        return
    D = data.draw(st.lists(st.sampled_from(outside), min_size=1, unique=True))
    before, after = simulate_agent(model), simulate_agent(model.without_arcs(D))
    assert (before.steps, before.outcome) == (after.steps, after.outcome)


def test_branching_node_bound_formula():
    assert branching_node_bound(3, 2) == 1 + 9 + 81
    assert branching_node_bound(0, 2) == 1
