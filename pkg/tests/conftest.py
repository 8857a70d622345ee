from fractions import Fraction

import pytest
from hypothesis import strategies as st

from present_bias.model import Arc, Model, TaskGraph

RUNNING_ARCS = [
    ("sa", "s", "a", 6),
    ("ab", "a", "b", 2),
    ("bc", "b", "c", 2),
    ("ct", "c", "t", 2),
    ("ad", "a", "d", 1),
    ("dt", "d", "t", 6),
    ("de", "d", "e", 3),
    ("et", "e", "t", 7),
]


def running_model(reward=100, drop=()):
    g = TaskGraph.from_edges([e for e in RUNNING_ARCS if e[0] not in drop])
    return Model(g, "s", "t", Fraction(1, 3), reward)


@pytest.fixture
def running():
    return running_model()


@pytest.fixture
def trimmed():
    return running_model(24, drop=("de",))


@st.composite
def dags(draw, max_vertices=8, max_arcs=14, max_weight=10):
    n = draw(st.integers(2, max_vertices))
    m = draw(st.integers(0, max_arcs))
    arcs = []
    for j in range(m):
        i = draw(st.integers(0, n - 2))
        h = draw(st.integers(i + 1, n - 1))
        w = draw(st.integers(0, max_weight))
        arcs.append(Arc(f"e{j:02d}", f"v{i}", f"v{h}", Fraction(w)))
    return TaskGraph(tuple(f"v{i}" for i in range(n)), tuple(arcs))


betas = st.builds(
    lambda q, p: Fraction(min(p, q), q), st.integers(1, 7), st.integers(1, 7))
rewards = st.builds(Fraction, st.integers(0, 60), st.integers(1, 4))


@st.composite
def models(draw, **kw):
    g = draw(dags(**kw))
    n = len(g.vertices)
    return Model(g, "v0", f"v{n - 1}", draw(betas), draw(rewards))
