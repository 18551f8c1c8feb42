"""Sampled estimation of the 4-point hyperbolicity constant.

For four nodes, the three sums of opposite-pair distances sorted
S <= M <= L give a local value (L - M) / 2; the graph constant is the
maximum over all quadruples.  Values are half-integers in the hop metric,
so everything is carried as doubled integers internally.
"""

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from . import _kernels
from .exact import UNREACHED, require_connected

QUAD_CHUNK = 1 << 20


@dataclass(frozen=True)
class DeltaEstimate:
    max_delta: float
    mean_delta: float
    quadruples_evaluated: int
    sample_node_count: int
    seed: int
    max_delta_doubled: int

    def csv_row(self):
        return (f"{self.max_delta},{self.mean_delta},"
                f"{self.quadruples_evaluated},{self.sample_node_count},{self.seed}")


def four_point_delta(d_wx, d_yz, d_xy, d_wz, d_xz, d_wy):
    """(L - M) / 2 for one quadruple given its six pairwise distances."""
    dists = (d_wx, d_yz, d_xy, d_wz, d_xz, d_wy)
    for d in dists:
        if d < 0 or d >= UNREACHED:
            raise ValueError(f"invalid distance {d}: quadruple must be connected")
    sums = sorted((d_wx + d_yz, d_xy + d_wz, d_xz + d_wy))
    return (sums[2] - sums[1]) / 2


def _delta_doubled(dmat, w, x, y, z):
    """Vectorized doubled delta for index-array quadruples over `dmat`."""
    s1 = dmat[w, x] + dmat[y, z]
    s2 = dmat[x, y] + dmat[w, z]
    s3 = dmat[x, z] + dmat[w, y]
    lo = np.minimum(np.minimum(s1, s2), s3)
    hi = np.maximum(np.maximum(s1, s2), s3)
    mid = s1 + s2 + s3 - lo - hi
    return hi - mid


def sample_distance_matrix(g, nodes):
    """Pairwise hop distances within `nodes` via one BFS per node."""
    nodes = np.asarray(nodes, dtype=np.int32)
    dist = np.empty(g.n, dtype=np.int32)
    dmat = np.empty((nodes.shape[0], nodes.shape[0]), dtype=np.int64)
    for i, s in enumerate(nodes):
        _kernels.bfs_dist(g.offsets, g.neighbors, int(s), dist)
        dmat[i] = dist[nodes]
    return dmat


def _iter_all_quadruples(s):
    """Yield (w, x, y, z) index-array chunks covering all C(s, 4) quadruples."""
    triples = np.array(list(itertools.combinations(range(s), 3)), dtype=np.int32)
    buf = []
    size = 0
    for i in range(s - 3):
        tail = triples[triples[:, 0] > i]
        quad = np.empty((tail.shape[0], 4), dtype=np.int32)
        quad[:, 0] = i
        quad[:, 1:] = tail
        buf.append(quad)
        size += quad.shape[0]
        if size >= QUAD_CHUNK:
            block = np.concatenate(buf)
            yield block[:, 0], block[:, 1], block[:, 2], block[:, 3]
            buf, size = [], 0
    if buf:
        block = np.concatenate(buf)
        yield block[:, 0], block[:, 1], block[:, 2], block[:, 3]


def _sampled_quadruples(rng, s, count):
    """`count` quadruples of 4 distinct indices, drawn uniformly."""
    out = np.empty((count, 4), dtype=np.int32)
    filled = 0
    while filled < count:
        draw = rng.integers(0, s, size=(count - filled, 4), dtype=np.int32)
        ok = ((draw[:, 0] != draw[:, 1]) & (draw[:, 0] != draw[:, 2]) &
              (draw[:, 0] != draw[:, 3]) & (draw[:, 1] != draw[:, 2]) &
              (draw[:, 1] != draw[:, 3]) & (draw[:, 2] != draw[:, 3]))
        good = draw[ok]
        out[filled:filled + good.shape[0]] = good
        filled += good.shape[0]
    return out


def estimate_delta(g, node_sample, max_quadruples, seed, nodes=None):
    """Estimate max/mean delta over sampled quadruples.

    Samples `node_sample` distinct nodes (clamped to n), computes their
    pairwise distances with one BFS each, then evaluates the 4-point value
    over all quadruples if the budget allows, else over `max_quadruples`
    uniformly drawn ones.  Deterministic given the seed; `nodes` overrides
    the node sample (used for relabeling-invariance checks).
    """
    require_connected(g)
    rng = np.random.default_rng(seed)
    if nodes is None:
        if node_sample < 4:
            raise ValueError("need at least 4 sampled nodes")
        node_sample = min(node_sample, g.n)
        nodes = np.sort(rng.choice(g.n, size=node_sample, replace=False)).astype(np.int32)
    else:
        nodes = np.asarray(nodes, dtype=np.int32)
    s = nodes.shape[0]
    if s < 4:
        raise ValueError("need at least 4 distinct nodes to form a quadruple")
    dmat = sample_distance_matrix(g, nodes)

    total = comb(s, 4)
    max2 = 0
    sum2 = 0
    count = 0
    if total <= max_quadruples:
        chunks = _iter_all_quadruples(s)
    else:
        quads = _sampled_quadruples(rng, s, max_quadruples)
        chunks = [(quads[:, 0], quads[:, 1], quads[:, 2], quads[:, 3])]
    for w, x, y, z in chunks:
        d2 = _delta_doubled(dmat, w, x, y, z)
        max2 = max(max2, int(d2.max()))
        sum2 += int(d2.sum())
        count += d2.shape[0]
    return DeltaEstimate(max_delta=max2 / 2, mean_delta=sum2 / (2 * count),
                         quadruples_evaluated=count, sample_node_count=s,
                         seed=seed, max_delta_doubled=max2)
