"""Exact decision procedure for knit existence.

A knit instance is a graph plus a partitioned terminal set S = S_1 | ... | S_t;
a knit is a family of pairwise disjoint vertex sets C_1..C_t, each inducing a
connected subgraph with S_i inside C_i.  ``solve_knit`` decides existence by
iterative deepening on the number of non-terminal vertices used, so returned
certificates have minimum total size.  The k-knitted / (k,m)-knit / k-linked
predicates are exhaustive sweeps over instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterator, Optional

from .enumeration import pairings, partition_shapes
from .graphs import Graph, VertexSet, bits, closure, is_connected, mask_of


@dataclass(frozen=True)
class KnitInstance:
    """A terminal set with its partition, over a fixed graph."""

    graph: Graph
    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = 0
        parts = []
        for part in self.parts:
            if not part:
                raise ValueError("empty block in partition")
            m = 0
            for v in part:
                if not 0 <= v < self.graph.n:
                    raise ValueError(f"terminal {v} out of range for n={self.graph.n}")
                m |= 1 << v
            if m.bit_count() != len(part):
                raise ValueError(f"repeated terminal in block {part}")
            if m & seen:
                raise ValueError("blocks are not disjoint")
            seen |= m
            parts.append(tuple(sorted(part)))
        object.__setattr__(self, "parts", tuple(parts))

    @cached_property
    def block_masks(self) -> tuple[VertexSet, ...]:
        return tuple(mask_of(p) for p in self.parts)

    @cached_property
    def terminal_mask(self) -> VertexSet:
        m = 0
        for b in self.block_masks:
            m |= b
        return m

    @property
    def k(self) -> int:
        return self.terminal_mask.bit_count()

    @property
    def t(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class Knit:
    """Certificate: one connected branch per block, pairwise disjoint."""

    branches: tuple[VertexSet, ...]

    def as_lists(self) -> list[list[int]]:
        return [list(bits(b)) for b in self.branches]

    @property
    def total_size(self) -> int:
        m = 0
        for b in self.branches:
            m |= b
        return m.bit_count()


def verify_knit(inst: KnitInstance, cand: Knit) -> bool:
    """Check disjointness, terminal containment and per-branch connectivity."""
    if len(cand.branches) != inst.t:
        raise ValueError(f"expected {inst.t} branches, got {len(cand.branches)}")
    used = 0
    for branch, block in zip(cand.branches, inst.block_masks):
        if branch & used:
            return False
        used |= branch
        if block & ~branch:
            return False
        if branch >> inst.graph.n:
            return False
        if not is_connected(inst.graph, branch):
            return False
    return True


def min_degree_threshold(n: int, k: int) -> int:
    """Smallest integer d with d >= (n+k)/2 - 1."""
    return (n + k - 1) // 2


# ---------------------------------------------------------------------------
# core search


def _grow(adj: tuple[int, ...], seed: int, allowed: int, max_extra: int) -> Iterator[int]:
    """Connected supersets of `seed` inside `allowed` using <= max_extra extras.

    Every superset is emitted exactly once (deduplicated by mask); candidates
    grow one neighbor at a time, which reaches every connected superset.
    """
    if max_extra < 0:
        return
    nb0 = 0
    for v in bits(seed):
        nb0 |= adj[v]
    visited = {seed}
    stack = [(seed, nb0, 0)]
    while stack:
        x, nb, extras = stack.pop()
        low = x & -x
        if closure(adj, x, low) == x:
            yield x
        if extras == max_extra:
            continue
        cand = nb & allowed & ~x
        for v in bits(cand):
            y = x | 1 << v
            if y not in visited:
                visited.add(y)
                stack.append((y, nb | adj[v], extras + 1))


def _joinable(adj: tuple[int, ...], block: int, free: int) -> bool:
    """Can the block's pieces possibly be connected using free vertices?"""
    return closure(adj, block | free, block & -block) & block == block


def _solve_masks(adj: tuple[int, ...], full: int, blocks: list[int]) -> Optional[list[int]]:
    """Branch search.  Returns one branch mask per block, or None.

    Blocks that already induce connected subgraphs are kept as-is: any knit
    can be shrunk branch-wise, so restricting connected blocks to their
    terminals preserves completeness and keeps certificates vertex-minimal.
    Disconnected blocks are grown through iterative deepening on the total
    number of extra vertices.
    """
    smask = 0
    for b in blocks:
        if b & smask:
            return None
        smask |= b
    free0 = full & ~smask
    need = []
    for i, b in enumerate(blocks):
        if b & (b - 1) and closure(adj, b, b & -b) != b:
            need.append(i)
    if not need:
        return list(blocks)
    for i in need:
        if not _joinable(adj, blocks[i], free0):
            return None

    result = list(blocks)

    def search(idx: int, free: int, budget: int) -> bool:
        i = need[idx]
        seed = blocks[i]
        later = need[idx + 1 :]
        # each later block still needs at least one extra vertex
        cap = budget - len(later)
        for x in _grow(adj, seed, seed | free, cap):
            nf = free & ~x
            if any(not _joinable(adj, blocks[j], nf) for j in later):
                continue
            if not later:
                result[i] = x
                return True
            if search(idx + 1, nf, budget - (x & ~seed).bit_count()):
                result[i] = x
                return True
        return False

    for extra in range(len(need), free0.bit_count() + 1):
        if search(0, free0, extra):
            return result
    return None


def solve_knit(inst: KnitInstance) -> Optional[Knit]:
    """Find a knit of minimum total vertex count, or None if none exists."""
    g = inst.graph
    res = _solve_masks(g.adj, g.full_mask, list(inst.block_masks))
    if res is None:
        return None
    return Knit(tuple(res))


# ---------------------------------------------------------------------------
# predicate sweeps


def iter_instances(g: Graph, k: int, min_parts: int = 1) -> Iterator[KnitInstance]:
    """Every (k-subset, partition) instance, subsets then partitions in order."""
    shapes = partition_shapes(k, min_parts)
    for combo in combinations(range(g.n), k):
        for shape in shapes:
            yield KnitInstance(g, tuple(tuple(combo[i] for i in block) for block in shape))


def find_km_knit_witness(
    g: Graph, k: int, m: int
) -> Optional[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]]:
    """First unsolvable (S, partition) in enumeration order, or None.

    None means the graph is (k,m)-knit.
    """
    if not 1 <= m <= k <= g.n:
        raise ValueError(f"need 1 <= m <= k <= n, got m={m}, k={k}, n={g.n}")
    adj = g.adj
    full = g.full_mask
    shapes = partition_shapes(k, m)
    for combo in combinations(range(g.n), k):
        vbits = [1 << v for v in combo]
        for shape in shapes:
            blocks = []
            for block in shape:
                bm = 0
                for i in block:
                    bm |= vbits[i]
                blocks.append(bm)
            if _solve_masks(adj, full, blocks) is None:
                parts = tuple(tuple(combo[i] for i in block) for block in shape)
                return combo, parts
    return None


def is_km_knit(g: Graph, k: int, m: int) -> bool:
    """Does every k-subset with every partition into >= m blocks admit a knit?"""
    return find_km_knit_witness(g, k, m) is None


def is_k_knitted(g: Graph, k: int) -> bool:
    """(k,m)-knit for every m, i.e. one sweep over all partitions (t >= 1)."""
    if not 1 <= k <= g.n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={g.n}")
    return find_km_knit_witness(g, k, 1) is None


def is_k_linked(g: Graph, k: int) -> bool:
    """Can every k disjoint demand pairs be joined by vertex-disjoint paths?

    Checked by solving, for every 2k-subset and every pairing of it, the knit
    instance whose blocks are the pairs: a connected branch containing a pair
    contains a path between its endpoints, and disjoint branches give
    disjoint paths.
    """
    if k < 1 or 2 * k > g.n:
        raise ValueError(f"need 1 <= 2k <= n, got k={k}, n={g.n}")
    adj = g.adj
    full = g.full_mask
    for combo in combinations(range(g.n), 2 * k):
        for matching in pairings(combo):
            blocks = [(1 << a) | (1 << b) for a, b in matching]
            if _solve_masks(adj, full, blocks) is None:
                return False
    return True
