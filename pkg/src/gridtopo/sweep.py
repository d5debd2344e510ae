"""Join and split tree construction by union-find sweeps.

The join tree is built sweeping vertices in decreasing rank while
merging superlevel-set components; the split tree mirrors it upward.
Both work over any vertex set with an adjacency callback, so the same
sweep serves full grids and the glued boundary graphs used by the
distributed merge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UsageError
from .grid import ScalarGrid, VertexOrder


class DisjointSet:
    """Union-find with path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, i: int) -> int:
        p = self.parent
        root = i
        while p[root] != root:
            root = p[root]
        while p[i] != root:
            p[i], i = root, p[i]
        return root

    def union(self, i: int, j: int) -> int:
        i, j = self.find(i), self.find(j)
        if i == j:
            return i
        if self.size[i] < self.size[j]:
            i, j = j, i
        self.parent[j] = i
        self.size[i] += self.size[j]
        return i


@dataclass
class MergeTree:
    """Fully augmented merge tree: one arc per vertex except the root.

    ``arc_to[v]`` is the vertex v connects to in sweep direction: a
    lower-ranked vertex for join trees, higher for split trees.
    """

    direction: str  # "join" or "split"
    verts: list[int] = field(repr=False)
    arc_to: dict[int, int] = field(repr=False)
    root: int = -1

    @property
    def n(self) -> int:
        return len(self.verts)

    def child_counts(self) -> dict[int, int]:
        counts = {v: 0 for v in self.verts}
        for dst in self.arc_to.values():
            counts[dst] += 1
        return counts

    def leaves(self) -> list[int]:
        counts = self.child_counts()
        return [v for v in self.verts if counts[v] == 0]

    def superarcs(self) -> set[tuple[int, int]]:
        """Arcs of the contracted tree, as (from, to) pairs in sweep direction.

        Supernodes are vertices whose child count differs from one,
        plus the root; chains of single-child vertices contract away.
        """
        counts = self.child_counts()
        supers = {v for v in self.verts if counts[v] != 1 or v == self.root}
        arcs = set()
        for s in supers:
            if s == self.root:
                continue
            cur = self.arc_to[s]
            while cur not in supers:
                cur = self.arc_to[cur]
            arcs.add((s, cur))
        return arcs


def sweep_graph(
    verts: list[int],
    ranks: dict[int, int],
    adjacency: dict[int, list[int]],
    direction: str,
) -> MergeTree:
    """Run one union-find sweep over an arbitrary connected graph."""
    if direction not in ("join", "split"):
        raise UsageError(f"direction must be 'join' or 'split', not {direction!r}")
    order = sorted(verts, key=lambda v: ranks[v], reverse=(direction == "join"))
    index = {v: i for i, v in enumerate(order)}
    ds = DisjointSet(len(order))
    # Per component, the index of the vertex the next arc must attach from:
    # the lowest vertex seen so far for join sweeps, the highest for split.
    extreme = list(range(len(order)))
    arc_to: dict[int, int] = {}
    processed = [False] * len(order)
    for v in order:
        vi = index[v]
        roots = []
        for u in adjacency[v]:
            ui = index.get(u)
            if ui is not None and processed[ui]:
                r = ds.find(ui)
                if r not in roots:
                    roots.append(r)
        for r in roots:
            arc_to[order[extreme[r]]] = v
        root = vi
        for r in roots:
            root = ds.union(root, r)
        extreme[root] = vi
        processed[vi] = True
    return MergeTree(direction=direction, verts=list(verts), arc_to=arc_to, root=order[-1])


def _grid_sweep(grid: ScalarGrid, order: VertexOrder, direction: str) -> MergeTree:
    if order.n != grid.n:
        raise UsageError("vertex order does not match grid size")
    n = grid.n
    rank_of = order.rank_of
    ds = DisjointSet(n)
    extreme = list(range(n))
    arc_to: dict[int, int] = {}
    processed = bytearray(n)
    seq = order.vertex_at[::-1] if direction == "join" else order.vertex_at
    neighbors = grid.neighbors
    find = ds.find
    union = ds.union
    for v in seq:
        v = int(v)
        roots = []
        for u in neighbors(v):
            if processed[u]:
                r = find(u)
                if r not in roots:
                    roots.append(r)
        for r in roots:
            arc_to[extreme[r]] = v
        root = v
        for r in roots:
            root = union(root, r)
        extreme[root] = v
        processed[v] = True
    root_vertex = int(seq[-1])
    return MergeTree(
        direction=direction,
        verts=list(range(n)),
        arc_to=arc_to,
        root=root_vertex,
    )


def compute_join_tree(grid: ScalarGrid, order: VertexOrder) -> MergeTree:
    """Sweep downward: tracks superlevel-set components merging at saddles."""
    return _grid_sweep(grid, order, "join")


def compute_split_tree(grid: ScalarGrid, order: VertexOrder) -> MergeTree:
    """Sweep upward: tracks sublevel-set components merging at saddles."""
    return _grid_sweep(grid, order, "split")
