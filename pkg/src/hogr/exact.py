"""Exact hop distances (ground truth), pair sampling, diameter estimation."""

import logging
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import DisconnectedGraphError

log = logging.getLogger(__name__)

UNREACHED = int(_kernels.UNREACHED)

DEFAULT_APSP_CAP = 20000
DEFAULT_TARGETS_PER_SOURCE = 64


class CapExceededError(RuntimeError):
    pass


@dataclass(frozen=True)
class DistanceVector:
    source: int
    dist: np.ndarray  # int32, UNREACHED for other components


@dataclass(frozen=True)
class PairSample:
    xs: np.ndarray
    ys: np.ndarray
    dg: np.ndarray  # ground-truth hop distances
    seed: int

    def __len__(self):
        return self.xs.shape[0]

    def to_csv(self, sink):
        sink.write(f"# seed={self.seed}\n")
        sink.write("x,y,dG\n")
        for x, y, d in zip(self.xs, self.ys, self.dg):
            sink.write(f"{x},{y},{d}\n")

    @classmethod
    def from_csv(cls, source):
        seed = 0
        xs, ys, dg = [], [], []
        for line in source:
            line = line.strip()
            if line.startswith("#"):
                if "seed=" in line:
                    seed = int(line.split("seed=")[1])
                continue
            if not line or line.startswith("x,"):
                continue
            x, y, d = line.split(",")
            xs.append(int(x))
            ys.append(int(y))
            dg.append(int(d))
        return cls(xs=np.array(xs, np.int32), ys=np.array(ys, np.int32),
                   dg=np.array(dg, np.int32), seed=seed)


def bfs(g, source):
    if not (0 <= source < g.n):
        raise ValueError(f"source {source} out of range [0, {g.n})")
    dist = np.empty(g.n, dtype=np.int32)
    _kernels.bfs_dist(g.offsets, g.neighbors, source, dist)
    return DistanceVector(source=int(source), dist=dist)


def is_connected(g):
    dist = np.empty(g.n, dtype=np.int32)
    reached = _kernels.bfs_dist(g.offsets, g.neighbors, 0, dist)
    return reached == g.n


def require_connected(g):
    if not is_connected(g):
        raise DisconnectedGraphError(
            "graph is disconnected; run largest_component first")


def exact_all_pairs(g, cap=DEFAULT_APSP_CAP):
    """n x n exact distance table via n BFS runs (small graphs only)."""
    if g.n > cap:
        raise CapExceededError(
            f"all-pairs table refused: n={g.n} exceeds cap {cap}")
    table = np.empty((g.n, g.n), dtype=np.int32)
    for s in range(g.n):
        _kernels.bfs_dist(g.offsets, g.neighbors, s, table[s])
    return table


def sample_pairs(g, count, seed, n_per_source=DEFAULT_TARGETS_PER_SOURCE):
    """Draw `count` distinct node pairs with ground-truth distances.

    Sources are drawn as a seeded permutation; each source contributes up
    to n_per_source distinct targets from one BFS.  Pairs are deduplicated
    as unordered pairs; when `count` reaches (or is clamped to) the total
    pair count the sample is the full enumeration.
    """
    if count <= 0:
        raise ValueError("pair count must be positive")
    require_connected(g)
    n = g.n
    max_pairs = n * (n - 1) // 2
    if count > max_pairs:
        log.warning("requested %d pairs, clamping to %d", count, max_pairs)
        count = max_pairs
    rng = np.random.default_rng(seed)
    dist = np.empty(n, dtype=np.int32)

    if count == max_pairs:
        xs, ys = np.triu_indices(n, k=1)
        xs = xs.astype(np.int32)
        ys = ys.astype(np.int32)
        dg = np.empty(count, dtype=np.int32)
        pos = 0
        for s in range(n):
            _kernels.bfs_dist(g.offsets, g.neighbors, s, dist)
            width = n - 1 - s
            dg[pos:pos + width] = dist[s + 1:]
            pos += width
        return PairSample(xs=xs, ys=ys, dg=dg, seed=seed)

    seen = set()
    xs, ys, dg = [], [], []
    source_order = rng.permutation(n)
    per = min(n_per_source, n - 1)
    while len(xs) < count:
        for s in source_order:
            if len(xs) >= count:
                break
            s = int(s)
            picks = rng.choice(n - 1, size=min(per, n - 1), replace=False)
            _kernels.bfs_dist(g.offsets, g.neighbors, s, dist)
            taken = 0
            for t in picks:
                t = int(t)
                if t >= s:
                    t += 1
                key = (s, t) if s < t else (t, s)
                if key in seen:
                    continue
                seen.add(key)
                xs.append(s)
                ys.append(t)
                dg.append(int(dist[t]))
                taken += 1
                if taken >= per or len(xs) >= count:
                    break
        per = min(per * 2, n - 1)  # later passes draw wider to escape repeats
    return PairSample(xs=np.array(xs, np.int32), ys=np.array(ys, np.int32),
                      dg=np.array(dg, np.int32), seed=seed)


def estimate_diameter(g, sweeps=1):
    """Double-sweep diameter lower bound.

    Starts at the max-degree node, BFSes, then BFSes again from the
    farthest node found (smallest id among ties); repeats `sweeps` times
    chaining the last farthest node.  Always a valid lower bound and exact
    on trees.
    """
    if sweeps < 1:
        raise ValueError("need at least one sweep")
    require_connected(g)
    dist = np.empty(g.n, dtype=np.int32)
    start = int(np.argmax(g.degrees))
    best = 0
    for _ in range(sweeps):
        _kernels.bfs_dist(g.offsets, g.neighbors, start, dist)
        far = int(np.argmax(dist))
        best = max(best, int(dist[far]))
        _kernels.bfs_dist(g.offsets, g.neighbors, far, dist)
        nxt = int(np.argmax(dist))
        best = max(best, int(dist[nxt]))
        start = nxt
    return best


class ExactOracle:
    """BFS-backed oracle with the same query surface as the tree oracles.

    Used for self-checks in the evaluation harness; caches one distance
    vector per distinct source.
    """

    kind = "exact"

    def __init__(self, g):
        self.g = g
        self.n = g.n

    def query(self, x, y):
        return int(bfs(self.g, x).dist[y])

    def query_many(self, xs, ys):
        out = np.empty(len(xs), dtype=np.int32)
        dist = np.empty(self.g.n, dtype=np.int32)
        order = np.argsort(xs, kind="stable")
        cur = -1
        for i in order:
            s = int(xs[i])
            if s != cur:
                _kernels.bfs_dist(self.g.offsets, self.g.neighbors, s, dist)
                cur = s
            out[i] = dist[ys[i]]
        return out
