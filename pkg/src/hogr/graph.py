"""Immutable undirected graphs in compressed (CSR-style) adjacency form.

Node ids are dense in [0, n).  All loaders normalize to this form: self
loops dropped, duplicate/reverse edges merged, adjacency slices sorted
ascending.  Graphs are read-only after construction.
"""

import io
import logging
import struct
from dataclasses import dataclass, field

import numpy as np

log = logging.getLogger(__name__)

GRAPH_MAGIC = b"HOGR"
GRAPH_VERSION = 1


class GraphError(Exception):
    pass


class ParseError(GraphError):
    pass


class EmptyGraphError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    avg_degree: float
    max_degree: int
    max_degree_node: int


@dataclass(frozen=True)
class Graph:
    """Undirected graph: offsets has n+1 entries, neighbors has 2m entries."""

    offsets: np.ndarray
    neighbors: np.ndarray

    def __post_init__(self):
        self.offsets.setflags(write=False)
        self.neighbors.setflags(write=False)

    @property
    def n(self):
        return self.offsets.shape[0] - 1

    @property
    def m(self):
        return self.neighbors.shape[0] // 2

    @property
    def degrees(self):
        return np.diff(self.offsets)

    def neighbors_of(self, v):
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def has_edge(self, u, v):
        sl = self.neighbors_of(u)
        i = np.searchsorted(sl, v)
        return i < sl.shape[0] and sl[i] == v

    def edges(self):
        """Each undirected edge once, as (u, v) with u < v, sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int32), self.degrees)
        keep = src < self.neighbors
        return np.stack([src[keep], self.neighbors[keep]], axis=1)


def from_edge_arrays(us, vs, n=None):
    """Build a normalized Graph from parallel endpoint arrays.

    Self loops and duplicate/reverse edges are dropped (counted in a
    warning).  `n` defaults to max id + 1.
    """
    us = np.asarray(us, dtype=np.int64)
    vs = np.asarray(vs, dtype=np.int64)
    if n is None:
        n = int(max(us.max(initial=-1), vs.max(initial=-1))) + 1 if us.size else 0
    if n == 0:
        raise EmptyGraphError("graph has no nodes")
    loops = us == vs
    n_loops = int(loops.sum())
    us, vs = us[~loops], vs[~loops]
    lo = np.minimum(us, vs)
    hi = np.maximum(us, vs)
    key = lo * n + hi
    uniq = np.unique(key)
    n_dups = key.shape[0] - uniq.shape[0]
    if n_loops or n_dups:
        log.warning("normalization dropped %d self-loops, %d duplicate edges",
                    n_loops, n_dups)
    lo = (uniq // n).astype(np.int32)
    hi = (uniq % n).astype(np.int32)
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
    return Graph(offsets=offsets, neighbors=dst)


def load_edge_list(source, comment_prefix="#", delimiter=None):
    """Parse an edge-list text stream into (Graph, relabel map).

    One edge per line: two nonnegative integer external ids separated by
    `delimiter` (default: any whitespace).  Lines starting with
    `comment_prefix` are skipped.  External ids are relabeled to dense
    [0, n) in first-appearance order; the returned dict maps external id
    to NodeId.
    """
    close = False
    if isinstance(source, (str, bytes)) and not (
            isinstance(source, bytes) and b"\n" in source):
        source = open(source, "rb")
        close = True
    elif isinstance(source, bytes):
        source = io.BytesIO(source)
    try:
        prefix = comment_prefix.encode() if isinstance(comment_prefix, str) else comment_prefix
        delim = delimiter.encode() if isinstance(delimiter, str) else delimiter
        relabel = {}
        us, vs = [], []
        for lineno, raw in enumerate(source, start=1):
            if isinstance(raw, str):
                raw = raw.encode()
            line = raw.strip()
            if not line or line.startswith(prefix):
                continue
            parts = line.split(delim)
            if len(parts) < 2:
                raise ParseError(f"line {lineno}: expected two ids, got {line!r}")
            try:
                eu, ev = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed token in {line!r}") from None
            if eu < 0 or ev < 0:
                raise ParseError(f"line {lineno}: negative id in {line!r}")
            u = relabel.setdefault(eu, len(relabel))
            v = relabel.setdefault(ev, len(relabel))
            us.append(u)
            vs.append(v)
        if not relabel:
            raise EmptyGraphError("edge list contains no edges")
        g = from_edge_arrays(np.array(us), np.array(vs), n=len(relabel))
        return g, relabel
    finally:
        if close:
            source.close()


def write_edge_list(g, sink):
    """Write one 'u v' line per undirected edge (u < v, sorted)."""
    for u, v in g.edges():
        sink.write(f"{u} {v}\n")


def largest_component(g):
    """Induced subgraph on the largest connected component.

    Returns (subgraph, new_of_old) where new_of_old[v] is the new dense id
    or -1 for dropped nodes.  Ties between equal-size components go to the
    one containing the smallest original id; kept ids stay in ascending
    order, so a connected graph maps to itself with the identity relabeling.
    """
    from . import _kernels

    n = g.n
    comp = np.full(n, -1, dtype=np.int32)
    dist = np.empty(n, dtype=np.int32)
    sizes = []
    for start in range(n):
        if comp[start] >= 0:
            continue
        _kernels.bfs_dist(g.offsets, g.neighbors, start, dist)
        members = dist != _kernels.UNREACHED
        comp[members] = len(sizes)
        sizes.append(int(members.sum()))
    best = int(np.argmax(sizes))  # argmax takes the first max: smallest start id
    keep = np.flatnonzero(comp == best).astype(np.int32)
    new_of_old = np.full(n, -1, dtype=np.int32)
    new_of_old[keep] = np.arange(keep.shape[0], dtype=np.int32)
    if keep.shape[0] == n:
        return g, new_of_old
    src = np.repeat(np.arange(n, dtype=np.int32), g.degrees)
    mask = (new_of_old[src] >= 0) & (new_of_old[g.neighbors] >= 0) & (src < g.neighbors)
    sub = from_edge_arrays(new_of_old[src[mask]], new_of_old[g.neighbors[mask]],
                           n=keep.shape[0])
    return sub, new_of_old


def gen_flat_grid(k):
    """k x k 4-neighbor square lattice: n = k^2, m = 2k(k-1)."""
    if k < 2:
        raise ValueError("flat grid needs side length >= 2")
    idx = np.arange(k * k, dtype=np.int64).reshape(k, k)
    right = np.stack([idx[:, :-1].ravel(), idx[:, 1:].ravel()], axis=1)
    down = np.stack([idx[:-1, :].ravel(), idx[1:, :].ravel()], axis=1)
    edges = np.concatenate([right, down])
    return from_edge_arrays(edges[:, 0], edges[:, 1], n=k * k)


def gen_hyper_grid(rings):
    """Ring-by-ring combinatorial {3,7} tiling.

    Ring 0 is a single center node; each further ring is a cycle whose
    cross edges triangulate every face.  Each ring-k node with p parents
    gets 5-p children so that every non-outermost node ends with degree
    exactly 7; consecutive ring-k nodes share exactly one child.
    """
    if rings < 1:
        raise ValueError("hyper grid needs at least one ring")
    us, vs = [], []

    def edge(a, b):
        us.append(a)
        vs.append(b)

    next_id = 1
    ring = list(range(next_id, next_id + 7))
    next_id += 7
    for v in ring:
        edge(0, v)
    for i, v in enumerate(ring):
        edge(v, ring[(i + 1) % len(ring)])
    parents = {v: 1 for v in ring}

    for _ in range(rings - 1):
        new_ring = []
        new_parents = {}
        first_child = None
        shared = None  # child shared with the previous ring node
        for j, v in enumerate(ring):
            c = 5 - parents[v]
            children = []
            if shared is not None:
                children.append(shared)
                edge(v, shared)
                new_parents[shared] += 1
            need = c - len(children)
            if j == len(ring) - 1:
                need -= 1  # last slot wraps around to the first child
            for _ in range(need):
                w = next_id
                next_id += 1
                children.append(w)
                new_parents[w] = 1
                edge(v, w)
                new_ring.append(w)
            if j == len(ring) - 1:
                children.append(first_child)
                edge(v, first_child)
                new_parents[first_child] += 1
            if first_child is None:
                first_child = children[0]
            shared = children[-1]
        for i, w in enumerate(new_ring):
            edge(w, new_ring[(i + 1) % len(new_ring)])
        ring = new_ring
        parents = new_parents

    return from_edge_arrays(np.array(us), np.array(vs), n=next_id)


def graph_stats(g):
    deg = g.degrees
    max_node = int(np.argmax(deg))  # argmax breaks ties by smallest id
    return GraphStats(n=g.n, m=g.m, avg_degree=2 * g.m / g.n,
                      max_degree=int(deg[max_node]), max_degree_node=max_node)


def save_graph(g, sink):
    """Binary cache: magic, version, n and m as u64 LE, offsets u64, neighbors u32."""
    close = False
    if isinstance(sink, str):
        sink = open(sink, "wb")
        close = True
    try:
        sink.write(GRAPH_MAGIC)
        sink.write(struct.pack("<B", GRAPH_VERSION))
        sink.write(struct.pack("<QQ", g.n, g.m))
        sink.write(g.offsets.astype("<u8").tobytes())
        sink.write(g.neighbors.astype("<u4").tobytes())
    finally:
        if close:
            sink.close()


def load_graph(source):
    close = False
    if isinstance(source, str):
        source = open(source, "rb")
        close = True
    try:
        magic = source.read(4)
        if magic != GRAPH_MAGIC:
            raise ParseError(f"bad graph magic {magic!r}")
        (version,) = struct.unpack("<B", source.read(1))
        if version != GRAPH_VERSION:
            raise ParseError(f"unsupported graph format version {version}")
        header = source.read(16)
        if len(header) != 16:
            raise ParseError("truncated graph header")
        n, m = struct.unpack("<QQ", header)
        raw = source.read(8 * (n + 1))
        if len(raw) != 8 * (n + 1):
            raise ParseError("truncated offsets array")
        offsets = np.frombuffer(raw, dtype="<u8").astype(np.int64)
        raw = source.read(4 * 2 * m)
        if len(raw) != 4 * 2 * m:
            raise ParseError("truncated neighbors array")
        neighbors = np.frombuffer(raw, dtype="<u4").astype(np.int32)
        return Graph(offsets=offsets, neighbors=neighbors)
    finally:
        if close:
            source.close()
