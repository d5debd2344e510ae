"""Shared helpers: small independent oracles and pipeline shortcuts."""

from __future__ import annotations

import numpy as np

from gridtopo import (
    ScalarGrid,
    branch_decomposition,
    contour_tree,
    hypersweep,
    sos_order,
    superarc_counts,
)


def make_grid(dims, values):
    return ScalarGrid(dims=tuple(dims), values=np.asarray(values, dtype=float))


def grid_1d(values):
    return make_grid((len(values), 1, 1), values)


def random_grid(dims, seed):
    rng = np.random.default_rng(seed)
    n = dims[0] * dims[1] * dims[2]
    return make_grid(dims, rng.integers(0, max(4, n // 2), size=n))


def serial_pipeline(grid):
    order = sos_order(grid)
    ct = contour_tree(grid, order)
    ann = hypersweep(ct, superarc_counts(ct))
    bd = branch_decomposition(ct, ann)
    return order, ct, ann, bd


def branch_keys(bd):
    """Multiset of (saddle, volume, parent) triples, leaf-independent."""
    return sorted((b.key() for b in bd.branches), key=repr)


def branch_keys_with_leaves(bd):
    return sorted(((b.key(), b.leaf) for b in bd.branches), key=repr)


def local_extrema(grid, order):
    """Vertices with no higher (maxima) or no lower (minima) neighbor.

    Independent rank-comparison scan; used as the leaf-count oracle.
    """
    rank = order.rank_of
    maxima, minima = [], []
    for v in range(grid.n):
        nbr_ranks = [rank[u] for u in grid.neighbors(v)]
        if all(r < rank[v] for r in nbr_ranks):
            maxima.append(v)
        if all(r > rank[v] for r in nbr_ranks):
            minima.append(v)
    return maxima, minima


class TinyDSU:
    def __init__(self):
        self.p = {}

    def find(self, x):
        self.p.setdefault(x, x)
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[ra] = rb


def superlevel_components(grid, order, gap):
    """Components of {rank > gap} under the stencil; sweep-independent."""
    rank = order.rank_of
    dsu = TinyDSU()
    members = [v for v in range(grid.n) if rank[v] > gap]
    for v in members:
        dsu.find(v)
        for u in grid.neighbors(v):
            if rank[u] > gap:
                dsu.union(v, u)
    return len({dsu.find(v) for v in members})


def sublevel_components(grid, order, gap):
    rank = order.rank_of
    dsu = TinyDSU()
    members = [v for v in range(grid.n) if rank[v] <= gap]
    for v in members:
        dsu.find(v)
        for u in grid.neighbors(v):
            if rank[u] <= gap:
                dsu.union(v, u)
    return len({dsu.find(v) for v in members})
