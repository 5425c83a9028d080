"""
Shared fixtures for the bookram test suite.

Read more about conftest.py under:
- https://docs.pytest.org/en/stable/fixture.html
"""

import logging

import pytest

from bookram.graph import write_graph6_file
from bookram.srg import paley
from bookram.utils import complete_bipartite_graph, complete_graph, cycle_graph, petersen_graph


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def k33():
    return complete_bipartite_graph(3, 3)


@pytest.fixture
def petersen():
    return petersen_graph()


@pytest.fixture
def paley9():
    return paley(9)


@pytest.fixture
def graph_file(tmp_path):
    """Return a function that writes a graph to a graph6 file in tmp_path and returns its path."""

    def _write(g, name="graph.g6"):
        path = tmp_path / name
        write_graph6_file(g, path)
        return str(path)

    return _write


@pytest.fixture
def k6_file(graph_file):
    return graph_file(complete_graph(6), "k6.g6")


@pytest.fixture(autouse=True)
def _restore_package_logger():
    """Undo handler and level changes made by ``bookram.cli.setup_logging``."""
    pkg_logger = logging.getLogger("bookram")
    handlers, level = list(pkg_logger.handlers), pkg_logger.level
    yield
    pkg_logger.handlers[:] = handlers
    pkg_logger.setLevel(level)
