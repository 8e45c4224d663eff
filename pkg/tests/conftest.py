import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from localcert.classes import gen_chordal, gen_dismantlable, gen_tree
from localcert.graph import build_graph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def path(n):
    return build_graph([(i, i + 1) for i in range(n - 1)], n=n)


def cycle(n):
    return build_graph([(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return build_graph(list(itertools.combinations(range(n), 2)), n=n)


def star(leaves):
    return build_graph([(0, i) for i in range(1, leaves + 1)])


def wheel5():
    """Rim 0..4 in a cycle, hub 5."""
    return build_graph([(i, (i + 1) % 5) for i in range(5)] + [(i, 5) for i in range(5)])


def paw():
    """Triangle 0-1-2 with pendant 3 on node 0."""
    return build_graph([(0, 1), (1, 2), (0, 2), (0, 3)])


@pytest.fixture
def w5():
    return wheel5()


seeds = st.integers(min_value=0, max_value=2**32)


@st.composite
def trees(draw, max_n=12):
    return gen_tree(draw(st.integers(1, max_n)), draw(seeds))


@st.composite
def chordal_graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    return gen_chordal(n, draw(st.integers(0, 2 * n)), draw(seeds))


@st.composite
def dismantlable_graphs(draw, max_n=12, k4_free=None):
    flag = draw(st.booleans()) if k4_free is None else k4_free
    return gen_dismantlable(draw(st.integers(1, max_n)), flag, draw(seeds))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_results", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
