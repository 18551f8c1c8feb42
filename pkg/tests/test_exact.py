import io
import itertools

import numpy as np
import pytest

import hogr
from hogr.exact import CapExceededError, ExactOracle, UNREACHED
from conftest import make_graph, path_graph, random_connected_graph, random_tree


def test_bfs_path():
    g = path_graph(3)
    assert hogr.bfs(g, 0).dist.tolist() == [0, 1, 2]


def test_bfs_rejects_bad_source():
    g = path_graph(3)
    with pytest.raises(ValueError):
        hogr.bfs(g, 3)


def test_bfs_other_component_unreached():
    g = make_graph([(0, 1), (2, 3)])
    d = hogr.bfs(g, 0).dist
    assert d[1] == 1 and d[2] == UNREACHED and d[3] == UNREACHED


def test_bfs_edge_lipschitz():
    g = random_connected_graph(80, 4, seed=3)
    d = hogr.bfs(g, 5).dist
    for u, v in g.edges():
        assert abs(int(d[u]) - int(d[v])) <= 1


def test_flat_grid_corner_eccentricity():
    g = hogr.gen_flat_grid(100)
    assert int(hogr.bfs(g, 0).dist.max()) == 198


def test_exact_all_pairs_small():
    c4 = make_graph([(0, 1), (1, 2), (2, 3), (3, 0)])
    t = hogr.exact_all_pairs(c4)
    assert t[0, 2] == 2 and t[0, 1] == 1 and t[1, 3] == 2

    g = hogr.gen_flat_grid(5)
    t = hogr.exact_all_pairs(g)
    assert np.array_equal(t, t.T)
    assert np.all(np.diag(t) == 0)
    assert t.max() == 8


def test_exact_all_pairs_tree_matches_lca_formula():
    g = random_tree(60, seed=9)
    t = hogr.exact_all_pairs(g)
    pi = hogr.degree_ordering(g)
    st = hogr.build_hyper_bfs(g, pi, root=0)  # spanning tree of a tree is the tree
    for x, y in itertools.combinations(range(g.n), 2):
        assert t[x, y] == hogr.tree_distance(st, x, y)


def test_exact_all_pairs_cap():
    g = path_graph(30)
    with pytest.raises(CapExceededError):
        hogr.exact_all_pairs(g, cap=10)


def test_triangle_inequality_sampled():
    g = random_connected_graph(70, 5, seed=11)
    t = hogr.exact_all_pairs(g)
    rng = np.random.default_rng(1)
    for _ in range(2000):
        x, y, z = rng.integers(0, g.n, size=3)
        assert t[x, z] <= t[x, y] + t[y, z]


def test_bfs_agrees_with_apsp_rows():
    g = random_connected_graph(50, 3, seed=2)
    t = hogr.exact_all_pairs(g)
    for s in (0, 7, 49):
        assert np.array_equal(hogr.bfs(g, s).dist, t[s])


def test_sample_pairs_triangle_full():
    g = make_graph([(0, 1), (1, 2), (2, 0)])
    s = hogr.sample_pairs(g, 3, seed=0)
    pairs = sorted(zip(s.xs.tolist(), s.ys.tolist()))
    assert pairs == [(0, 1), (0, 2), (1, 2)]
    assert s.dg.tolist() == [1, 1, 1]


def test_sample_pairs_deterministic():
    g = random_connected_graph(120, 4, seed=4)
    a = hogr.sample_pairs(g, 500, seed=42)
    b = hogr.sample_pairs(g, 500, seed=42)
    assert np.array_equal(a.xs, b.xs) and np.array_equal(a.ys, b.ys)
    assert np.array_equal(a.dg, b.dg)
    assert len(a) == 500
    assert np.all(a.xs != a.ys)


def test_sample_pairs_full_grid_histogram_matches_brute_force():
    g = hogr.gen_flat_grid(10)
    s = hogr.sample_pairs(g, 4950, seed=0)
    table = hogr.exact_all_pairs(g)
    want = np.bincount(table[np.triu_indices(g.n, k=1)])
    got = np.bincount(s.dg, minlength=want.shape[0])
    assert np.array_equal(got, want)


def test_sample_pairs_clamps_and_rejects():
    g = make_graph([(0, 1), (1, 2), (2, 0)])
    assert len(hogr.sample_pairs(g, 99, seed=0)) == 3  # clamped with warning
    with pytest.raises(ValueError):
        hogr.sample_pairs(g, 0, seed=0)


def test_sample_pairs_ground_truth_correct():
    g = random_connected_graph(90, 4, seed=8)
    s = hogr.sample_pairs(g, 300, seed=5)
    table = hogr.exact_all_pairs(g)
    assert np.array_equal(s.dg, table[s.xs, s.ys])


def test_pair_sample_csv_round_trip():
    g = random_connected_graph(40, 3, seed=1)
    s = hogr.sample_pairs(g, 50, seed=17)
    buf = io.StringIO()
    s.to_csv(buf)
    buf.seek(0)
    s2 = hogr.PairSample.from_csv(buf)
    assert s2.seed == 17
    assert np.array_equal(s.xs, s2.xs) and np.array_equal(s.dg, s2.dg)


def test_estimate_diameter_exact_on_paths_and_cycles():
    assert hogr.estimate_diameter(path_graph(5)) == 4
    c4 = make_graph([(0, 1), (1, 2), (2, 3), (3, 0)])
    assert hogr.estimate_diameter(c4) == 2


def test_estimate_diameter_is_lower_bound_and_exact_on_trees():
    for seed in range(6):
        g = random_connected_graph(70, 4, seed=seed)
        true_diam = int(hogr.exact_all_pairs(g).max())
        est = hogr.estimate_diameter(g, sweeps=2)
        assert est <= true_diam
    for seed in range(4):
        t = random_tree(60, seed=seed)
        assert hogr.estimate_diameter(t) == int(hogr.exact_all_pairs(t).max())


def test_exact_oracle_matches_table():
    g = random_connected_graph(60, 4, seed=13)
    table = hogr.exact_all_pairs(g)
    oracle = ExactOracle(g)
    rng = np.random.default_rng(0)
    xs = rng.integers(0, g.n, 200)
    ys = rng.integers(0, g.n, 200)
    assert np.array_equal(oracle.query_many(xs, ys), table[xs, ys])
