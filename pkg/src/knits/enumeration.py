"""Enumeration of k-subsets, set partitions and pairings.

Set partitions are generated in restricted-growth-string order; blocks come
out ordered by their least element, which keeps every downstream consumer
deterministic.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from random import Random
from typing import Iterator

from .graphs import VertexSet, bits, mask_of

Shape = tuple[tuple[int, ...], ...]


def ksubsets(universe: VertexSet, k: int) -> Iterator[VertexSet]:
    """All k-subsets of a vertex set as masks, lexicographic by vertex list.

    k larger than the universe yields nothing; k = 0 yields the empty set.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    elems = list(bits(universe))
    for combo in combinations(elems, k):
        yield mask_of(combo)


def rgs_iter(m: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length m in lexicographic order."""
    if m <= 0:
        raise ValueError("length must be positive")
    a = [0] * m

    def rec(i: int, mx: int) -> Iterator[tuple[int, ...]]:
        if i == m:
            yield tuple(a)
            return
        for v in range(mx + 2):
            a[i] = v
            yield from rec(i + 1, mx if v <= mx else v)

    yield from rec(1, 0)


def partition_shapes(m: int, min_parts: int = 1) -> list[Shape]:
    """Partitions of positions 0..m-1 with at least min_parts blocks.

    Shapes are index partitions: applying one shape to any m-element ground
    set gives the corresponding set partition.  Blocks are ordered by least
    position.
    """
    if not 1 <= min_parts <= m:
        raise ValueError(f"min_parts must be in 1..{m}, got {min_parts}")
    shapes = []
    for rgs in rgs_iter(m):
        t = max(rgs) + 1
        if t < min_parts:
            continue
        blocks: list[list[int]] = [[] for _ in range(t)]
        for pos, b in enumerate(rgs):
            blocks[b].append(pos)
        shapes.append(tuple(tuple(b) for b in blocks))
    return shapes


def set_partitions(ground: VertexSet, min_parts: int = 1) -> Iterator[tuple[VertexSet, ...]]:
    """All partitions of a vertex set into >= min_parts blocks, as mask tuples.

    Restricted-growth-string order; blocks ordered by least vertex.
    """
    if ground == 0:
        raise ValueError("ground set must be nonempty")
    elems = list(bits(ground))
    for shape in partition_shapes(len(elems), min_parts):
        yield tuple(mask_of(elems[i] for i in block) for block in shape)


def bell_number(m: int) -> int:
    """Number of set partitions of an m-element set (Bell triangle)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


def instance_space_size(n: int, k: int) -> int:
    """Number of (k-subset, partition) pairs on an n-vertex graph."""
    return comb(n, k) * bell_number(k)


def random_shape(m: int, rng: Random) -> Shape:
    """One uniformly random set partition of positions 0..m-1.

    Samples a restricted growth string position by position, weighting each
    extension by the exact number of completions, so every partition is
    equally likely.
    """
    counts = _rgs_completions(m)
    rgs = [0]
    mx = 0
    for i in range(1, m):
        weights = []
        for v in range(mx + 2):
            weights.append(counts[(i + 1, max(mx, v))])
        pick = rng.randrange(sum(weights))
        v = 0
        while pick >= weights[v]:
            pick -= weights[v]
            v += 1
        rgs.append(v)
        mx = max(mx, v)
    blocks: list[list[int]] = [[] for _ in range(mx + 1)]
    for pos, b in enumerate(rgs):
        blocks[b].append(pos)
    return tuple(tuple(b) for b in blocks)


def _rgs_completions(m: int) -> dict[tuple[int, int], int]:
    """counts[(i, mx)] = completions of a length-i prefix with maximum mx."""
    counts = {(m, mx): 1 for mx in range(m + 1)}
    for i in range(m - 1, 0, -1):
        for mx in range(i):
            counts[(i, mx)] = (mx + 1) * counts[(i + 1, mx)] + counts[(i + 1, mx + 1)]
    return counts


def pairings(elements: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    """Perfect matchings of an even-size tuple into unordered pairs.

    Each matching appears once, pairs ordered by their least element.
    """
    if len(elements) % 2:
        raise ValueError("need an even number of elements")
    if not elements:
        yield ()
        return
    first, rest = elements[0], elements[1:]
    for i, partner in enumerate(rest):
        remainder = rest[:i] + rest[i + 1 :]
        for tail in pairings(remainder):
            yield ((first, partner),) + tail
