"""Numba kernels for the hot loops: BFS sweeps and batched LCA walks.

Everything here operates on plain numpy arrays so the compiled code can be
shared by all oracle kinds.  Python-level wrappers live in the sibling
modules.
"""

import numpy as np
from numba import njit

UNREACHED = np.int32(np.iinfo(np.int32).max)


@njit(cache=True)
def bfs_dist(offsets, neighbors, source, dist):
    """Fill `dist` with hop counts from `source`; returns nodes reached."""
    n = offsets.shape[0] - 1
    for i in range(n):
        dist[i] = UNREACHED
    queue = np.empty(n, np.int32)
    queue[0] = source
    dist[source] = 0
    head = 0
    tail = 1
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v]
        for e in range(offsets[v], offsets[v + 1]):
            w = neighbors[e]
            if dist[w] == UNREACHED:
                dist[w] = dv + 1
                queue[tail] = w
                tail += 1
    return tail


@njit(cache=True)
def bfs_tree(offsets, neighbors, root, parent, depth):
    """FIFO BFS building parent/depth arrays.

    Neighbors are expanded in adjacency-array order, so pre-sorting each
    adjacency slice by a vertex ordering realizes ordered pushes.
    Returns the number of nodes reached; parent[root] = root.
    """
    n = offsets.shape[0] - 1
    for i in range(n):
        parent[i] = -1
        depth[i] = -1
    queue = np.empty(n, np.int32)
    queue[0] = root
    parent[root] = root
    depth[root] = 0
    head = 0
    tail = 1
    while head < tail:
        v = queue[head]
        head += 1
        dv = depth[v]
        for e in range(offsets[v], offsets[v + 1]):
            w = neighbors[e]
            if parent[w] == -1:
                parent[w] = v
                depth[w] = dv + 1
                queue[tail] = w
                tail += 1
    return tail


@njit(cache=True)
def tree_dist_many(parent, depth, xs, ys, out):
    """Batched tree distance via LCA lockstep walk.

    out[i] = depth[x] + depth[y] - 2*depth[lca(x, y)].  Works for any
    parent/depth pair (spanning trees, contraction trees, Steiner trees in
    doubled-weight units).
    """
    for i in range(xs.shape[0]):
        x = xs[i]
        y = ys[i]
        while depth[x] > depth[y]:
            x = parent[x]
        while depth[y] > depth[x]:
            y = parent[y]
        while x != y:
            x = parent[x]
            y = parent[y]
        out[i] = depth[xs[i]] + depth[ys[i]] - 2 * depth[x]


@njit(cache=True)
def reduce_min_tree_dist(parent, depth, xs, ys, best):
    """best[i] = min(best[i], tree distance of pair i)."""
    for i in range(xs.shape[0]):
        x = xs[i]
        y = ys[i]
        while depth[x] > depth[y]:
            x = parent[x]
        while depth[y] > depth[x]:
            y = parent[y]
        while x != y:
            x = parent[x]
            y = parent[y]
        d = depth[xs[i]] + depth[ys[i]] - 2 * depth[x]
        if d < best[i]:
            best[i] = d


@njit(cache=True)
def reduce_max_tree_dist(parent, depth, xs, ys, best):
    """best[i] = max(best[i], tree distance of pair i)."""
    for i in range(xs.shape[0]):
        x = xs[i]
        y = ys[i]
        while depth[x] > depth[y]:
            x = parent[x]
        while depth[y] > depth[x]:
            y = parent[y]
        while x != y:
            x = parent[x]
            y = parent[y]
        d = depth[xs[i]] + depth[ys[i]] - 2 * depth[x]
        if d > best[i]:
            best[i] = d
