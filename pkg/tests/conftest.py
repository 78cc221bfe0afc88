"""
Pytest configuration and shared fixtures.
"""
from itertools import combinations, product
from pathlib import Path
from typing import Iterator

import pytest
from hypothesis import settings as hsettings

from graphcert.utils.multigraph import Multigraph, parse_graph

hsettings.register_profile("graphcert", deadline=None, max_examples=100)
hsettings.load_profile("graphcert")

GRAPHS_DIR = Path(__file__).resolve().parent.parent / "graphs"


def all_graphs(d: int, n: int) -> Iterator[Multigraph]:
    """Every multigraph on n vertices with weights in Z_d."""
    pairs = list(combinations(range(n), 2))
    for weights in product(range(d), repeat=len(pairs)):
        rows = [[0] * n for _ in range(n)]
        for (i, j), w in zip(pairs, weights):
            rows[i][j] = rows[j][i] = w
        yield Multigraph.from_matrix(d, rows)


def load_sample(name: str) -> Multigraph:
    return parse_graph((GRAPHS_DIR / f"{name}.graph").read_text(encoding="utf-8"))


@pytest.fixture
def triangle():
    """Qutrit graph with Γ12 = 2, Γ13 = 1, Γ23 = 0."""
    return Multigraph.from_edges(3, 3, [(1, 2, 2), (1, 3, 1)])


@pytest.fixture
def example_multigraph():
    """Single edge 1-2 and double edge 1-3 over d = 3."""
    return Multigraph.from_edges(3, 3, [(1, 2, 1), (1, 3, 2)])


@pytest.fixture
def full_triangle():
    return Multigraph.from_edges(3, 3, [(1, 2, 1), (1, 3, 1), (2, 3, 1)])


@pytest.fixture
def star():
    return load_sample("star")


@pytest.fixture
def case2_graph():
    return load_sample("case2")


@pytest.fixture
def case3_graph():
    return Multigraph.from_edges(3, 4, [(1, 2, 1), (1, 3, 1), (1, 4, 1), (2, 3, 1)])


@pytest.fixture
def case4_graph():
    return load_sample("case4")


@pytest.fixture
def sample_path():
    """Path of a sample graph file by name."""
    return lambda name: str(GRAPHS_DIR / f"{name}.graph")
