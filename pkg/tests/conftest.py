import sys

import numpy as np
import pytest

from wheelramsey import _jit
from wheelramsey.graph import Graph

BACKENDS = [b for b in _jit.BACKENDS if b != "numba" or _jit.HAVE_NUMBA]


@pytest.fixture(params=BACKENDS)
def backend(request):
    with _jit.use_backend(request.param):
        yield request.param


@pytest.fixture
def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def random_graph(rng: np.random.Generator, order: int, p: float) -> Graph:
    upper = np.triu(rng.random((order, order)) < p, 1)
    return Graph.from_adjacency(upper | upper.T)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
