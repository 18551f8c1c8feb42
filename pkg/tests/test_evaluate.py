import io

import numpy as np
import pytest

import hogr
from hogr.evaluate import DistortionRecord, ErrorProfile
from hogr.exact import ExactOracle
from hogr.trees import KIND_GROMOV, KIND_HYPERBFS
from conftest import random_connected_graph, random_tree


def test_distortion_record_measures():
    r = DistortionRecord(x=1, y=2, dg=10, da=7.0)
    assert r.additive == 3 and r.absolute == 3 and r.multiplicative == 0.3
    r2 = DistortionRecord(x=1, y=2, dg=4, da=6.0)
    assert r2.additive == -2 and r2.absolute == 2 and r2.multiplicative == 0.5


def test_exact_oracle_self_check_is_zero():
    g = random_connected_graph(60, 4, seed=0)
    pairs = hogr.sample_pairs(g, 400, seed=1)
    profile = hogr.evaluate(g, ExactOracle(g), pairs)
    assert profile.global_mean_absolute == 0.0
    assert np.all(profile.mean_absolute == 0.0)
    assert np.all(profile.max_absolute == 0.0)
    assert int(profile.pair_count.sum()) == len(pairs)


def test_single_tree_on_tree_graph_is_exact():
    g = random_tree(80, seed=1)
    pairs = hogr.sample_pairs(g, 500, seed=2)
    oracle = hogr.build_oracle(g, KIND_HYPERBFS, k=1, seed=0)
    profile = hogr.evaluate(g, oracle, pairs)
    assert profile.global_mean_absolute == 0.0


def test_additive_sign_per_oracle_kind():
    g = random_connected_graph(90, 5, seed=2)
    pairs = hogr.sample_pairs(g, 800, seed=3)
    over = hogr.evaluate(g, hogr.build_oracle(g, KIND_HYPERBFS, k=3, seed=0), pairs)
    under = hogr.evaluate(g, hogr.build_oracle(g, KIND_GROMOV, k=3, seed=0), pairs)
    assert np.all(over.mean_additive <= 0.0)   # spanning trees overestimate
    assert np.all(under.mean_additive >= 0.0)  # contractions underestimate


def test_evaluate_rejects_mismatched_sizes():
    g = random_connected_graph(40, 4, seed=3)
    other = random_connected_graph(41, 4, seed=4)
    pairs = hogr.sample_pairs(g, 100, seed=0)
    oracle = hogr.build_oracle(other, KIND_HYPERBFS, k=1, seed=0)
    with pytest.raises(ValueError):
        hogr.evaluate(g, oracle, pairs)


def test_profile_csv_deterministic_and_shaped():
    g = random_connected_graph(70, 4, seed=5)
    pairs = hogr.sample_pairs(g, 600, seed=6)
    oracle = hogr.build_oracle(g, KIND_HYPERBFS, k=2, seed=0)
    outs = []
    for _ in range(2):
        profile = hogr.evaluate(g, oracle, pairs)
        buf = io.StringIO()
        nbytes = hogr.emit_profile_csv(profile, buf)
        assert nbytes == len(buf.getvalue().encode())
        outs.append(buf.getvalue())
    assert outs[0] == outs[1]
    lines = outs[0].splitlines()
    assert lines[1] == "dG,count,mean_additive,mean_absolute,mean_multiplicative,max_absolute"
    assert len(lines) == 2 + len(np.unique(pairs.dg))
    dgs = [int(l.split(",")[0]) for l in lines[2:]]
    assert dgs == sorted(dgs)


def test_empty_profile_emits_header_only():
    empty = ErrorProfile(dg=np.array([], dtype=np.int64),
                         pair_count=np.array([], dtype=np.int64),
                         mean_additive=np.array([]), mean_absolute=np.array([]),
                         mean_multiplicative=np.array([]), max_absolute=np.array([]),
                         global_mean_additive=0.0, global_mean_absolute=0.0,
                         global_mean_multiplicative=0.0, stderr_absolute=0.0,
                         n_pairs=0)
    buf = io.StringIO()
    hogr.emit_profile_csv(empty, buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 2 and lines[1].startswith("dG,")


def test_steiner_bucket_range_on_grid():
    g = hogr.gen_flat_grid(10)
    pairs = hogr.sample_pairs(g, g.n * (g.n - 1) // 2, seed=0)
    oracle = hogr.build_oracle(g, "steiner", k=2, seed=0)
    profile = hogr.evaluate(g, oracle, pairs)
    assert profile.dg.max() == 18  # grid diameter 2(k-1)
