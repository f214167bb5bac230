import random
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from streamsample.stream import EdgeList, simplify  # noqa: E402


def random_edgelist(rng: random.Random, max_nodes: int = 100) -> EdgeList:
    """Small random simple graph with a random density, for contract tests."""
    n = rng.randint(2, max_nodes)
    p = rng.uniform(0.02, 0.5)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    if not edges:
        edges = [(0, 1)]
    return simplify(edges, num_nodes=n)


@pytest.fixture
def triangle():
    return EdgeList(3, np.array([[0, 1], [0, 2], [1, 2]]))


@pytest.fixture
def star():
    return EdgeList(4, np.array([[0, 1], [0, 2], [0, 3]]))


@pytest.fixture
def data_dir():
    return Path(__file__).resolve().parents[1] / "data"


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
