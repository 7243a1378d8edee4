"""Graph generators: the sharpness construction and harness baselines."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations
from random import Random

from .graphs import Graph, VertexSet, mask_of
from .solver import KnitInstance


@dataclass(frozen=True)
class SharpnessWitness:
    """Two cliques glued along a shared middle, plus the instance they block.

    The left and right sides each form a clique together with the middle;
    no edge joins the two sides.  The witness instance asks for a connected
    branch through one vertex of each side while the middle vertices are all
    claimed as singleton blocks, which is impossible since every crossing
    path needs a middle vertex.
    """

    graph: Graph
    left_side: VertexSet
    middle: VertexSet
    right_side: VertexSet
    instance: KnitInstance


def sharpness_graph(n: int, k: int) -> SharpnessWitness:
    """The tight example: minimum degree floor((n+k)/2) - 2, not k-knitted.

    Sides have sizes floor/ceil of (n-(k-2))/2 with a middle of k-2 vertices.
    The regime of interest is n >= 2k+3 and k >= 5; anything down to
    n = k+2 is generated with a warning for boundary exploration.
    """
    if n < k + 2:
        raise ValueError(f"need n >= k+2 to place both sides, got n={n}, k={k}")
    if n < 2 * k + 3 or k < 5:
        warnings.warn(
            f"(n={n}, k={k}) is outside the regime n >= 2k+3, k >= 5; "
            "the degree formula still holds but nothing else is promised",
            stacklevel=2,
        )
    left_size = (n - (k - 2)) // 2
    mid_size = k - 2
    left = list(range(left_size))
    middle = list(range(left_size, left_size + mid_size))
    right = list(range(left_size + mid_size, n))
    edges = set()
    edges.update(combinations(left + middle, 2))
    edges.update(combinations(middle + right, 2))
    g = Graph(n, edges)
    x, y = left[0], right[0]
    parts = ((x, y),) + tuple((v,) for v in middle)
    return SharpnessWitness(
        graph=g,
        left_side=mask_of(left),
        middle=mask_of(middle),
        right_side=mask_of(right),
        instance=KnitInstance(g, parts),
    )


def random_min_degree_graph(n: int, d: int, seed: int) -> Graph:
    """Random graph with minimum degree at least d, reproducible from seed.

    Starts from an Erdos-Renyi draw at edge probability d/(n-1), then keeps
    adding random missing edges at the currently worst vertex until every
    degree reaches d.
    """
    if not 0 <= d < n:
        raise ValueError(f"need 0 <= d < n, got d={d}, n={n}")
    rng = Random(seed)
    p = d / (n - 1) if n > 1 else 0.0
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    g = Graph(n, edges)
    while True:
        deficient = [v for v in range(n) if g.degree(v) < d]
        if not deficient:
            return g
        v = min(deficient, key=lambda w: (g.degree(w), w))
        options = [u for u in range(n) if u != v and not g.has_edge(u, v)]
        g = g.with_edge(v, rng.choice(options))


def named_family(name: str, *params: int) -> Graph:
    """Baseline families by name: complete, cycle, path, complete_bipartite,
    star, glued_cliques."""
    try:
        builder = _FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; known: {sorted(_FAMILIES)}") from None
    return builder(*params)


def _complete(n: int) -> Graph:
    return Graph.complete(n)


def _cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def _complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def _glued_cliques(left: int, shared: int, right: int) -> Graph:
    """Two cliques of sizes left+shared and shared+right overlapping in
    `shared` vertices; generalizes the sharpness shape."""
    n = left + shared + right
    mid = range(left, left + shared)
    edges = set()
    edges.update(combinations(list(range(left)) + list(mid), 2))
    edges.update(combinations(list(mid) + list(range(left + shared, n)), 2))
    return Graph(n, edges)


_FAMILIES = {
    "complete": _complete,
    "cycle": _cycle,
    "path": _path,
    "complete_bipartite": _complete_bipartite,
    "star": _star,
    "glued_cliques": _glued_cliques,
}
