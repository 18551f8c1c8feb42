import numpy as np
import pytest

import hogr
from hogr.graph import from_edge_arrays


def make_graph(edge_pairs, n=None):
    edges = np.asarray(edge_pairs, dtype=np.int64)
    return from_edge_arrays(edges[:, 0], edges[:, 1], n=n)


def path_graph(n):
    return make_graph([(i, i + 1) for i in range(n - 1)], n=n)


def cycle_graph(n):
    return make_graph([(i, (i + 1) % n) for i in range(n)], n=n)


def star_graph(leaves):
    return make_graph([(0, i) for i in range(1, leaves + 1)], n=leaves + 1)


def random_tree(n, seed):
    # random attachment tree: parent of i drawn among earlier nodes
    rng = np.random.default_rng(seed)
    return make_graph([(int(rng.integers(0, i)), i) for i in range(1, n)], n=n)


def random_connected_graph(n, avg_degree, seed):
    """ER-style graph forced connected by a random attachment backbone."""
    rng = np.random.default_rng(seed)
    edges = [(int(rng.integers(0, i)), i) for i in range(1, n)]
    extra = max(0, int(n * avg_degree / 2) - len(edges))
    us = rng.integers(0, n, size=3 * extra + 8)
    vs = rng.integers(0, n, size=3 * extra + 8)
    taken = 0
    for u, v in zip(us, vs):
        if u != v and taken < extra:
            edges.append((int(u), int(v)))
            taken += 1
    return make_graph(edges, n=n)


@pytest.fixture(scope="session")
def small_graphs():
    """50 random connected graphs, n <= 200, varying densities."""
    rng = np.random.default_rng(20240901)
    graphs = []
    for i in range(50):
        n = int(rng.integers(16, 150))
        avg = float(rng.uniform(2.2, 10.0))
        graphs.append(random_connected_graph(n, avg, seed=1000 + i))
    return graphs


@pytest.fixture(scope="session")
def grid5():
    return hogr.gen_flat_grid(5)
