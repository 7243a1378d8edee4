"""Bitset graphs and connectivity primitives.

Graphs live on vertices 0..n-1 with n <= 64, so every vertex set fits in a
single Python int used as a bitmask (bit i set <=> vertex i in the set).
All set algebra is plain integer arithmetic, which keeps the exhaustive
sweeps in the solver fast enough for the n = 13..20 regime.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

MAX_VERTICES = 64

# A vertex set is a plain int bitmask over vertices 0..n-1.
VertexSet = int


def bit(v: int) -> int:
    return 1 << v


def bits(mask: int) -> Iterator[int]:
    """Vertices of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Undirected simple graph with one adjacency bitmask per vertex."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if not 1 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, combinations(range(n), 2))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1)
            v = u + 1
            while rest:
                if rest & 1:
                    yield (u, v)
                rest >>= 1
                v += 1

    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def min_degree(self) -> int:
        return min(a.bit_count() for a in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def with_edge(self, u: int, v: int) -> "Graph":
        """New graph with one extra edge (no-op if already present)."""
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        g = Graph.__new__(Graph)
        g.n = self.n
        g.adj = tuple(adj)
        return g

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()})"


def neighbors_in(g: Graph, u: int, targets: VertexSet) -> VertexSet:
    """Neighbors of u inside the target set; popcount gives d(u, targets)."""
    if not 0 <= u < g.n:
        raise ValueError(f"vertex {u} out of range for n={g.n}")
    return g.adj[u] & targets


def closure(adj: tuple[int, ...], inside: int, start: int) -> int:
    """Vertices reachable from `start` (a mask) staying inside `inside`."""
    seen = start & inside
    frontier = seen
    while frontier:
        grow = 0
        f = frontier
        while f:
            low = f & -f
            grow |= adj[low.bit_length() - 1]
            f ^= low
        frontier = grow & inside & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph, s: VertexSet) -> bool:
    """Is the subgraph induced by s connected? Empty and singleton count as yes."""
    if s & (s - 1) == 0:
        return True
    low = s & -s
    return closure(g.adj, s, low) == s


def components(g: Graph, s: VertexSet) -> list[VertexSet]:
    """Connected components of the subgraph induced by s, ordered by least vertex."""
    if s >> g.n:
        raise ValueError("vertex set out of range")
    out = []
    rest = s
    adj = g.adj
    while rest:
        comp = closure(adj, rest, rest & -rest)
        out.append(comp)
        rest &= ~comp
    return out


@dataclass(frozen=True)
class TerminalTree:
    """A tree on a vertex subset whose leaves all belong to `terminals`.

    `parents` maps every tree vertex to its parent; the root maps to -1.
    """

    vertices: VertexSet
    parents: dict[int, int]
    terminals: VertexSet

    @property
    def size(self) -> int:
        return self.vertices.bit_count()

    def __len__(self) -> int:
        return self.size

    def tree_adj(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.parents}
        for v, p in self.parents.items():
            if p >= 0:
                adj[v].add(p)
                adj[p].add(v)
        return adj

    def leaves(self) -> VertexSet:
        adj = self.tree_adj()
        if len(adj) == 1:
            return self.vertices
        return mask_of(v for v, nb in adj.items() if len(nb) == 1)

    def validate(self, g: Graph) -> None:
        """Raise if this is not a terminal-leaf tree inside g."""
        verts = set(bits(self.vertices))
        if set(self.parents) != verts:
            raise ValueError("parent map does not cover the vertex set")
        roots = [v for v, p in self.parents.items() if p < 0]
        if len(roots) != 1:
            raise ValueError(f"expected exactly one root, got {roots}")
        for v, p in self.parents.items():
            if p >= 0 and not g.has_edge(v, p):
                raise ValueError(f"tree edge ({v}, {p}) missing from graph")
        if closure(g.adj, self.vertices, 1 << roots[0]) != self.vertices:
            raise ValueError("parent map does not span the vertex set")
        if self.terminals & ~self.vertices:
            raise ValueError("terminals outside the tree")
        if self.leaves() & ~self.terminals:
            raise ValueError("non-terminal leaf")


def terminal_spanning_tree(g: Graph, region: VertexSet, terminals: VertexSet) -> TerminalTree:
    """Spanning tree of a subset of `region` whose leaves are all terminals.

    Builds a BFS tree from the lowest terminal, then deletes non-terminal
    leaves until none remain.  The surviving vertex set always contains the
    terminals and is contained in `region`.
    """
    if terminals == 0 or terminals & ~region:
        raise ValueError("terminals must be a nonempty subset of the region")
    if not is_connected(g, region):
        raise ValueError("region does not induce a connected subgraph")
    root = (terminals & -terminals).bit_length() - 1
    parents = {root: -1}
    children: dict[int, int] = {root: 0}
    seen = 1 << root
    frontier = [root]
    adj = g.adj
    while frontier:
        nxt = []
        for v in frontier:
            fresh = adj[v] & region & ~seen
            seen |= fresh
            for w in bits(fresh):
                parents[w] = v
                children[w] = 0
                children[v] += 1
                nxt.append(w)
        frontier = nxt
    # prune non-terminal leaves to fixpoint
    queue = [v for v in parents if children[v] == 0 and not terminals >> v & 1]
    while queue:
        v = queue.pop()
        p = parents.pop(v)
        del children[v]
        if p >= 0:
            children[p] -= 1
            if children[p] == 0 and not terminals >> p & 1:
                queue.append(p)
    return TerminalTree(mask_of(parents), parents, terminals)
