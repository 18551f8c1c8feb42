"""Tree oracles: ordered BFS spanning trees, layering-contraction trees,
half-weight Steiner trees, root selection, and LCA distance queries.

All tie-breaks resolve by smallest node id so builds are fully
deterministic and golden tests are reproducible.
"""

import struct
import time
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .exact import bfs, require_connected
from .graph import ParseError

ORACLE_MAGIC = b"HOTR"
ORACLE_VERSION = 1

KIND_HYPERBFS = "hyperbfs"
KIND_GROMOV = "gromov"
KIND_STEINER = "steiner"
_KIND_BYTE = {KIND_HYPERBFS: 0, KIND_GROMOV: 1, KIND_STEINER: 2}
_BYTE_KIND = {v: k for k, v in _KIND_BYTE.items()}

DEFAULT_TREES = 10  # small collections of trees suffice in practice

STRATEGIES = ("degree", "closeness", "diverse", "random")


@dataclass(frozen=True)
class VertexOrdering:
    rank: np.ndarray  # NodeId -> priority rank; a permutation of [0, n)

    def first(self):
        return int(np.argmin(self.rank))


def degree_ordering(g, increasing=False):
    """Rank nodes by degree (descending by default), ties by smallest id."""
    deg = g.degrees.astype(np.int64)
    key = deg if increasing else -deg
    order = np.lexsort((np.arange(g.n), key))
    rank = np.empty(g.n, dtype=np.int32)
    rank[order] = np.arange(g.n, dtype=np.int32)
    return VertexOrdering(rank=rank)


@dataclass(frozen=True)
class SpanningTree:
    root: int
    parent: np.ndarray  # parent[root] = root
    depth: np.ndarray   # hops from root; equals BFS distance

    def distance(self, x, y):
        return tree_distance(self, x, y)

    def distance_many(self, xs, ys):
        out = np.empty(len(xs), dtype=np.int64)
        _kernels.tree_dist_many(self.parent, self.depth,
                                np.asarray(xs, np.int32), np.asarray(ys, np.int32),
                                out)
        return out


@dataclass(frozen=True)
class ContractionTree:
    supernode_of: np.ndarray  # NodeId -> supernode id
    tree: SpanningTree        # spanning tree over supernodes; depth = level
    root: int                 # original root node

    @property
    def root_supernode(self):
        return int(self.supernode_of[self.root])

    def distance(self, x, y):
        return gromov_distance(self, x, y)

    def distance_many(self, xs, ys):
        return self.tree.distance_many(self.supernode_of[np.asarray(xs, np.int32)],
                                       self.supernode_of[np.asarray(ys, np.int32)])


@dataclass(frozen=True)
class SteinerTree:
    n: int                     # original node count; Steiner points follow
    root: int
    parent: np.ndarray         # over n + #Steiner nodes
    depth_doubled: np.ndarray  # every edge has weight 1/2 = 1 doubled unit

    @property
    def total_nodes(self):
        return self.parent.shape[0]

    def distance(self, x, y):
        return steiner_distance(self, x, y)

    def distance_many(self, xs, ys):
        out = np.empty(len(xs), dtype=np.int64)
        _kernels.tree_dist_many(self.parent, self.depth_doubled,
                                np.asarray(xs, np.int32), np.asarray(ys, np.int32),
                                out)
        return out / 2.0


def _pi_sorted_adjacency(g, pi):
    """Copy of the adjacency array with each slice sorted by ordering rank."""
    src = np.repeat(np.arange(g.n, dtype=np.int64), g.degrees)
    order = np.lexsort((pi.rank[g.neighbors], src))
    return g.neighbors[order]


def build_hyper_bfs(g, pi, root=None):
    """Ordered-push FIFO BFS spanning tree.

    The root defaults to the ordering's first vertex; when a vertex is
    expanded its unvisited neighbors are pushed in ordering rank order and
    get their parent assigned at push time.  Depth always equals the BFS
    distance from the root.
    """
    require_connected(g)
    sorted_adj = _pi_sorted_adjacency(g, pi)
    return _hyper_bfs_presorted(g.offsets, sorted_adj, pi.first() if root is None else root)


def _hyper_bfs_presorted(offsets, sorted_adj, root):
    n = offsets.shape[0] - 1
    parent = np.empty(n, dtype=np.int32)
    depth = np.empty(n, dtype=np.int32)
    reached = _kernels.bfs_tree(offsets, sorted_adj, int(root), parent, depth)
    if reached != n:
        raise RuntimeError("BFS did not span the graph")  # guarded by require_connected
    return SpanningTree(root=int(root), parent=parent, depth=depth)


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        p = self.parent
        root = a
        while p[root] != root:
            root = p[root]
        while p[a] != root:
            p[a], a = root, p[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra > rb:  # keep the smallest member as representative
                ra, rb = rb, ra
            self.parent[rb] = ra


def build_gromov_tree(g, root):
    """Layering-partition contraction tree.

    Level sets N_i come from one BFS.  Processing levels bottom-up, nodes
    of N_i are unioned along edges inside N_i and through each already
    formed level-(i+1) supernode (its N_i neighbors are all connected
    outside B_{i-1}).  Each class becomes a supernode; its parent is the
    supernode of the smallest-id level-(i-1) neighbor of any member.
    Supernode distances never exceed graph distances because contraction
    only merges nodes and keeps every edge.
    """
    require_connected(g)
    dist = bfs(g, root).dist
    n = g.n
    levels = int(dist.max())
    by_level = [np.flatnonzero(dist == i).astype(np.int32) for i in range(levels + 1)]

    uf = _UnionFind(n)
    # members of each level-(i+1) class, discovered on the previous pass
    upper_classes = []
    for i in range(levels, -1, -1):
        members = by_level[i]
        for v in members:
            v = int(v)
            for w in g.neighbors_of(v):
                w = int(w)
                if dist[w] == i and w > v:
                    uf.union(v, w)
        for cls in upper_classes:
            anchor = -1
            for u in cls:
                for w in g.neighbors_of(int(u)):
                    w = int(w)
                    if dist[w] == i:
                        if anchor < 0:
                            anchor = w
                        else:
                            uf.union(anchor, w)
        groups = {}
        for v in members:
            groups.setdefault(uf.find(int(v)), []).append(int(v))
        upper_classes = [groups[r] for r in sorted(groups)]

    rep = np.empty(n, dtype=np.int64)
    for v in range(n):
        rep[v] = uf.find(v)
    # supernode ids ordered by (level, smallest member); root supernode is 0
    reps = np.unique(rep)
    order = np.lexsort((reps, dist[reps]))
    super_id = {int(reps[j]): i for i, j in enumerate(order)}
    supernode_of = np.array([super_id[int(r)] for r in rep], dtype=np.int32)

    n_super = reps.shape[0]
    sparent = np.full(n_super, -1, dtype=np.int32)
    sdepth = np.empty(n_super, dtype=np.int32)
    best_nbr = np.full(n_super, n, dtype=np.int64)
    for v in range(n):
        s = supernode_of[v]
        sdepth[s] = dist[v]
        for w in g.neighbors_of(v):
            if dist[w] == dist[v] - 1 and w < best_nbr[s]:
                best_nbr[s] = w
    for s in range(n_super):
        if sdepth[s] == 0:
            sparent[s] = s
        else:
            sparent[s] = supernode_of[best_nbr[s]]
    tree = SpanningTree(root=int(supernode_of[root]), parent=sparent, depth=sdepth)
    return ContractionTree(supernode_of=supernode_of, tree=tree, root=int(root))


def build_steiner_tree(g, root):
    """Half-weight Steiner tree over BFS levels.

    One Steiner point per connected component of the subgraph induced on
    each level N_i (i >= 1, intra-level edges only); every member hangs off
    its component's Steiner point with weight 1/2, and the Steiner point
    attaches with weight 1/2 to the smallest-id level-(i-1) node adjacent
    to any member.
    """
    require_connected(g)
    dist = bfs(g, root).dist
    n = g.n
    levels = int(dist.max())

    uf = _UnionFind(n)
    for v in range(n):
        for w in g.neighbors_of(v):
            if dist[w] == dist[v] and w > v:
                uf.union(v, int(w))

    components = {}  # representative -> (level, members)
    for v in range(n):
        if dist[v] == 0:
            continue
        components.setdefault(uf.find(v), []).append(v)

    comp_list = sorted(components.items(),
                       key=lambda kv: (int(dist[kv[1][0]]), kv[0]))
    n_total = n + len(comp_list)
    parent = np.empty(n_total, dtype=np.int32)
    depth2 = np.empty(n_total, dtype=np.int32)
    parent[root] = root
    depth2[root] = 0
    for idx, (_, members) in enumerate(comp_list):
        s = n + idx
        level = int(dist[members[0]])
        attach = n  # sentinel above any valid id
        for c in members:
            for w in g.neighbors_of(c):
                if dist[w] == level - 1 and w < attach:
                    attach = int(w)
        parent[s] = attach
        for c in members:
            parent[c] = s
    # levels ascend in comp_list, so parents' depths are already final
    for idx, (_, members) in enumerate(comp_list):
        s = n + idx
        depth2[s] = depth2[parent[s]] + 1
        for c in members:
            depth2[c] = depth2[s] + 1
    return SteinerTree(n=n, root=int(root), parent=parent, depth_doubled=depth2)


def tree_distance(t, x, y):
    """depth[x] + depth[y] - 2*depth[LCA] via the lockstep parent walk."""
    parent, depth = t.parent, t.depth
    a, b = int(x), int(y)
    while depth[a] > depth[b]:
        a = parent[a]
    while depth[b] > depth[a]:
        b = parent[b]
    while a != b:
        a = parent[a]
        b = parent[b]
    return int(t.depth[x] + t.depth[y] - 2 * t.depth[a])


def gromov_distance(t, x, y):
    return tree_distance(t.tree, t.supernode_of[x], t.supernode_of[y])


def steiner_distance(t, x, y):
    parent, depth = t.parent, t.depth_doubled
    a, b = int(x), int(y)
    while depth[a] > depth[b]:
        a = parent[a]
    while depth[b] > depth[a]:
        b = parent[b]
    while a != b:
        a = parent[a]
        b = parent[b]
    return (int(depth[x]) + int(depth[y]) - 2 * int(depth[a])) / 2


def closeness_root(g, seed=None, rng=None):
    """Approximate closeness-central node via two sweeps plus a midpoint walk.

    Random u -> farthest m_u -> farthest m_mu; walk a shortest path from
    m_u toward m_mu (smallest-id descending neighbor each step) and return
    the node floor(d/2) steps along.
    """
    require_connected(g)
    if rng is None:
        rng = np.random.default_rng(seed)
    u = int(rng.integers(0, g.n))
    d_u = bfs(g, u).dist
    m_u = int(np.argmax(d_u))
    d_mu = bfs(g, m_u).dist
    m_mu = int(np.argmax(d_mu))
    d_back = bfs(g, m_mu).dist
    cur = m_u
    for _ in range(int(d_back[m_u]) // 2):
        for w in g.neighbors_of(cur):  # adjacency sorted: first hit is smallest id
            if d_back[w] == d_back[cur] - 1:
                cur = int(w)
                break
    return cur


def select_roots(g, strategy, k, seed=None):
    """k pairwise-distinct roots under the given seeding strategy."""
    if k > g.n:
        raise ValueError(f"cannot pick {k} distinct roots from {g.n} nodes")
    if k < 1:
        raise ValueError("need at least one root")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    rng = np.random.default_rng(seed)
    by_degree = np.lexsort((np.arange(g.n), -g.degrees.astype(np.int64)))

    if strategy == "degree":
        return [int(v) for v in by_degree[:k]]
    if strategy == "random":
        return [int(v) for v in rng.choice(g.n, size=k, replace=False)]

    roots = []

    def pad_from_degree():
        taken = set(roots)
        for v in by_degree:
            if len(roots) >= k:
                break
            if int(v) not in taken:
                roots.append(int(v))
                taken.add(int(v))

    if strategy == "closeness":
        seen = set()
        attempts = 0
        while len(roots) < k and attempts < 8 * k:
            c = closeness_root(g, rng=rng)
            attempts += 1
            if c not in seen:
                seen.add(c)
                roots.append(c)
        pad_from_degree()  # duplicate-heavy graphs fall back to degree order
        return roots

    # diverse: random, farthest-from-first, closeness, then high degree
    first = int(rng.integers(0, g.n))
    roots.append(first)
    if len(roots) < k:
        far = int(np.argmax(bfs(g, first).dist))
        if far not in roots:
            roots.append(far)
    if len(roots) < k:
        for _ in range(8):
            c = closeness_root(g, rng=rng)
            if c not in roots:
                roots.append(c)
                break
    pad_from_degree()
    return roots


@dataclass
class TreeOracle:
    """A small collection of same-kind trees with distinct roots.

    Queries reduce across trees: minimum for spanning/Steiner trees (upper
    bounds) and maximum for contraction trees (lower bounds).
    """

    kind: str
    n: int
    trees: list
    roots: list
    meta: dict = field(default_factory=dict)

    @property
    def k(self):
        return len(self.trees)

    def query(self, x, y):
        vals = [t.distance(x, y) for t in self.trees]
        return max(vals) if self.kind == KIND_GROMOV else min(vals)

    def query_many(self, xs, ys):
        xs = np.asarray(xs, dtype=np.int32)
        ys = np.asarray(ys, dtype=np.int32)
        if self.kind == KIND_GROMOV:
            best = np.full(xs.shape[0], -1, dtype=np.int64)
            for t in self.trees:
                _kernels.reduce_max_tree_dist(t.tree.parent, t.tree.depth,
                                              t.supernode_of[xs], t.supernode_of[ys],
                                              best)
            return best
        best = np.full(xs.shape[0], np.iinfo(np.int64).max, dtype=np.int64)
        if self.kind == KIND_STEINER:
            for t in self.trees:
                _kernels.reduce_min_tree_dist(t.parent, t.depth_doubled, xs, ys, best)
            return best / 2.0
        for t in self.trees:
            _kernels.reduce_min_tree_dist(t.parent, t.depth, xs, ys, best)
        return best


def build_oracle(g, kind, k=DEFAULT_TREES, strategy="degree", seed=0,
                 increasing_degree=False, roots=None):
    """Build k trees of one kind over shared roots.

    `increasing_degree` flips the BFS push ordering to ascending degree
    (the Hyper BFS(inc) ablation); root selection is unaffected.
    """
    require_connected(g)
    t0 = time.perf_counter()
    if roots is None:
        roots = select_roots(g, strategy, k, seed)
    trees = []
    if kind == KIND_HYPERBFS:
        pi = degree_ordering(g, increasing=increasing_degree)
        sorted_adj = _pi_sorted_adjacency(g, pi)
        for r in roots:
            trees.append(_hyper_bfs_presorted(g.offsets, sorted_adj, r))
    elif kind == KIND_GROMOV:
        for r in roots:
            trees.append(build_gromov_tree(g, r))
    elif kind == KIND_STEINER:
        for r in roots:
            trees.append(build_steiner_tree(g, r))
    else:
        raise ValueError(f"unknown oracle kind {kind!r}")
    meta = {"strategy": strategy, "seed": seed,
            "build_time": time.perf_counter() - t0,
            "increasing_degree": increasing_degree}
    return TreeOracle(kind=kind, n=g.n, trees=trees, roots=list(roots), meta=meta)


def save_oracle(oracle, sink):
    """Binary oracle format, little-endian throughout.

    Header: magic, version byte, kind byte, k and n as u32.  Per tree:
    root u32 then the arrays; contraction trees store the supernode count
    and node->supernode map, Steiner trees store the total node count and
    one weight byte per node (always 1, doubled units).
    """
    close = False
    if isinstance(sink, str):
        sink = open(sink, "wb")
        close = True
    try:
        sink.write(ORACLE_MAGIC)
        sink.write(struct.pack("<BBII", ORACLE_VERSION, _KIND_BYTE[oracle.kind],
                               oracle.k, oracle.n))
        for t in oracle.trees:
            if oracle.kind == KIND_HYPERBFS:
                sink.write(struct.pack("<I", t.root))
                sink.write(t.parent.astype("<u4").tobytes())
                sink.write(t.depth.astype("<u4").tobytes())
            elif oracle.kind == KIND_GROMOV:
                sink.write(struct.pack("<II", t.root, t.tree.parent.shape[0]))
                sink.write(t.supernode_of.astype("<u4").tobytes())
                sink.write(t.tree.parent.astype("<u4").tobytes())
                sink.write(t.tree.depth.astype("<u4").tobytes())
            else:
                sink.write(struct.pack("<II", t.root, t.total_nodes))
                sink.write(t.parent.astype("<u4").tobytes())
                sink.write(t.depth_doubled.astype("<u4").tobytes())
                sink.write(np.ones(t.total_nodes, dtype="<u1").tobytes())
    finally:
        if close:
            sink.close()


def _read_exact(source, nbytes, what):
    raw = source.read(nbytes)
    if len(raw) != nbytes:
        raise ParseError(f"truncated oracle file while reading {what}")
    return raw


def load_oracle(source):
    close = False
    if isinstance(source, str):
        source = open(source, "rb")
        close = True
    try:
        magic = source.read(4)
        if magic != ORACLE_MAGIC:
            raise ParseError(f"bad oracle magic {magic!r}")
        version, kind_byte, k, n = struct.unpack("<BBII", _read_exact(source, 10, "header"))
        if version != ORACLE_VERSION:
            raise ParseError(f"unsupported oracle format version {version}")
        if kind_byte not in _BYTE_KIND:
            raise ParseError(f"unknown oracle kind byte {kind_byte}")
        kind = _BYTE_KIND[kind_byte]
        trees = []
        roots = []
        for _ in range(k):
            if kind == KIND_HYPERBFS:
                (root,) = struct.unpack("<I", _read_exact(source, 4, "tree root"))
                parent = np.frombuffer(_read_exact(source, 4 * n, "parents"),
                                       dtype="<u4").astype(np.int32)
                depth = np.frombuffer(_read_exact(source, 4 * n, "depths"),
                                      dtype="<u4").astype(np.int32)
                trees.append(SpanningTree(root=root, parent=parent, depth=depth))
            elif kind == KIND_GROMOV:
                root, ns = struct.unpack("<II", _read_exact(source, 8, "tree header"))
                sup = np.frombuffer(_read_exact(source, 4 * n, "supernode map"),
                                    dtype="<u4").astype(np.int32)
                parent = np.frombuffer(_read_exact(source, 4 * ns, "parents"),
                                       dtype="<u4").astype(np.int32)
                depth = np.frombuffer(_read_exact(source, 4 * ns, "depths"),
                                      dtype="<u4").astype(np.int32)
                tree = SpanningTree(root=int(sup[root]), parent=parent, depth=depth)
                trees.append(ContractionTree(supernode_of=sup, tree=tree, root=root))
            else:
                root, nt = struct.unpack("<II", _read_exact(source, 8, "tree header"))
                parent = np.frombuffer(_read_exact(source, 4 * nt, "parents"),
                                       dtype="<u4").astype(np.int32)
                depth2 = np.frombuffer(_read_exact(source, 4 * nt, "depths"),
                                       dtype="<u4").astype(np.int32)
                _read_exact(source, nt, "weights")
                trees.append(SteinerTree(n=n, root=root, parent=parent,
                                         depth_doubled=depth2))
            roots.append(int(root))
        return TreeOracle(kind=kind, n=n, trees=trees, roots=roots)
    finally:
        if close:
            source.close()
