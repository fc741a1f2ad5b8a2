import numpy as np
import pytest

from gcorr.graphgen import Graph, erdos_renyi


def random_symmetric(rng, n, zero_diag=True):
    m = rng.normal(size=(n, n))
    m = (m + m.T) / 2
    if zero_diag:
        np.fill_diagonal(m, 0.0)
    return m


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def er_graph():
    return erdos_renyi(40, 0.3, seed=5)


def complete_graph(n):
    return Graph(np.ones((n, n), dtype=np.uint8) - np.eye(n, dtype=np.uint8))


def empty_graph(n):
    return Graph(np.zeros((n, n), dtype=np.uint8))
