"""Constructive algorithms extracted from the minimum-degree proof.

The exact solver decides existence; this module turns the proof's local
arguments into executable moves:

* ``vertex_exchange`` implements the exchange argument by double induction
  on a terminal-leaf spanning tree (path base case takes a middle neighbor,
  larger trees peel pendant leaf-paths and recurse).
* ``exchange_multi`` lifts the exchange to multi-component branches, merging
  two components per application.
* ``subtree_shrink`` realizes the tree-shrinking bound: an outside vertex
  with |terminals| + 2 neighbors on a terminal tree yields a strictly
  smaller terminal tree through it.
* ``constructive_knit`` is the proof-guided local search over partial knits,
  driven by the lexicographic objective (component excess, total vertices,
  -frontier size) with path-augmentation, exchange and endgame moves.

The local search is a heuristic: the underlying proof is by contradiction,
not a terminating procedure, so callers pair it with the exact solver.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import NamedTuple, Optional

from .graphs import (
    Graph,
    TerminalTree,
    VertexSet,
    bit,
    bits,
    components,
    is_connected,
    terminal_spanning_tree,
)
from .solver import Knit, KnitInstance, _grow, verify_knit


@dataclass(frozen=True)
class PartialKnit:
    """Knit-shaped family whose branches may induce several components.

    Branches stay pairwise disjoint and contain their blocks; their union is
    meant to omit at least one vertex so the outside arguments apply.
    """

    graph: Graph
    branches: tuple[VertexSet, ...]

    @cached_property
    def comps(self) -> tuple[tuple[VertexSet, ...], ...]:
        return tuple(tuple(components(self.graph, b)) for b in self.branches)

    @cached_property
    def union(self) -> VertexSet:
        m = 0
        for b in self.branches:
            m |= b
        return m

    @property
    def excess(self) -> int:
        return sum(len(c) - 1 for c in self.comps)

    @property
    def is_knit(self) -> bool:
        return self.excess == 0

    def replace_branch(self, i: int, branch: VertexSet) -> "PartialKnit":
        branches = list(self.branches)
        branches[i] = branch
        return PartialKnit(self.graph, tuple(branches))

    def validate(self, inst: KnitInstance) -> None:
        used = 0
        for branch, block in zip(self.branches, inst.block_masks):
            if branch & used:
                raise ValueError("branches overlap")
            if block & ~branch:
                raise ValueError("branch misses part of its block")
            used |= branch
        if used.bit_count() >= self.graph.n:
            raise ValueError("partial knit must leave at least one vertex uncovered")


def initial_partial_knit(inst: KnitInstance) -> PartialKnit:
    """Smallest possible starting point: every branch is its own block."""
    return PartialKnit(inst.graph, inst.block_masks)


@dataclass(frozen=True)
class ProofState:
    """Frontier bookkeeping for one split pair of terminals.

    ``x`` and ``y`` are terminals of the same block lying in different
    components; ``near_x`` / ``near_y`` are their neighborhoods outside the
    partial knit, ``far_x`` / ``far_y`` the second neighborhoods.
    """

    pk: PartialKnit
    block: int
    x: int
    y: int
    near_x: VertexSet
    near_y: VertexSet
    far_x: VertexSet
    far_y: VertexSet

    @property
    def frontier(self) -> VertexSet:
        return self.near_x | self.near_y | self.far_x | self.far_y


def _neighborhood(adj: tuple[int, ...], mask: VertexSet) -> VertexSet:
    out = 0
    for v in bits(mask):
        out |= adj[v]
    return out


def frontier_state(g: Graph, pk: PartialKnit, inst: KnitInstance) -> ProofState:
    """Frontier sets for the least split pair in the least split block."""
    cmask = pk.union
    adj = g.adj
    for i, comps in enumerate(pk.comps):
        if len(comps) <= 1:
            continue
        block_terms = inst.block_masks[i]
        comp_of = {}
        for ci, comp in enumerate(comps):
            for v in bits(comp & block_terms):
                comp_of[v] = ci
        for x, y in combinations(sorted(comp_of), 2):
            if comp_of[x] == comp_of[y]:
                continue
            near_x = adj[x] & ~cmask
            near_y = adj[y] & ~cmask
            far_x = _neighborhood(adj, near_x) & ~(near_x | cmask)
            far_y = _neighborhood(adj, near_y) & ~(near_y | cmask)
            return ProofState(pk, i, x, y, near_x, near_y, far_x, far_y)
    raise ValueError("no block has terminals split across components")


class CapViolation(NamedTuple):
    block: int
    component: VertexSet
    observed: int
    bound: int


def degree_cap_check(g: Graph, pk: PartialKnit, inst: KnitInstance, u: int) -> list[CapViolation]:
    """Components D where d(u, D) exceeds |S_i inside D| + 1.

    An empty list certifies the degree cap for u; minimal partial knits
    satisfy it for every outside vertex.
    """
    if pk.union >> u & 1:
        raise ValueError(f"vertex {u} lies inside the partial knit")
    out = []
    for i, comps in enumerate(pk.comps):
        block = inst.block_masks[i]
        for comp in comps:
            observed = (g.adj[u] & comp).bit_count()
            bound = (block & comp).bit_count() + 1
            if observed > bound:
                out.append(CapViolation(i, comp, observed, bound))
    return out


# ---------------------------------------------------------------------------
# terminal-leaf spanning trees (exact)


class _SearchCap(RuntimeError):
    pass


def _prune_to_terminals(parents: dict[int, int], terminals: VertexSet) -> dict[int, int]:
    """Delete non-terminal leaves from a rooted tree until none remain."""
    parents = dict(parents)
    children = {v: 0 for v in parents}
    for v, p in parents.items():
        if p >= 0:
            children[p] += 1
    queue = [v for v in parents if children[v] == 0 and not terminals >> v & 1]
    while queue:
        v = queue.pop()
        p = parents.pop(v)
        del children[v]
        if p >= 0:
            children[p] -= 1
            if children[p] == 0 and not terminals >> p & 1:
                queue.append(p)
    return parents


def _bfs_tree(adj: tuple[int, ...], region: VertexSet, root: int) -> dict[int, int]:
    parents = {root: -1}
    seen = 1 << root
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            fresh = adj[v] & region & ~seen
            seen |= fresh
            for w in bits(fresh):
                parents[w] = v
                nxt.append(w)
        frontier = nxt
    return parents


def _dfs_tree(adj: tuple[int, ...], region: VertexSet, root: int) -> dict[int, int]:
    parents = {root: -1}
    seen = 1 << root
    stack = [root]
    while stack:
        v = stack[-1]
        fresh = adj[v] & region & ~seen
        if fresh:
            w = (fresh & -fresh).bit_length() - 1
            seen |= 1 << w
            parents[w] = v
            stack.append(w)
        else:
            stack.pop()
    return parents


def spanning_terminal_tree(
    g: Graph, region: VertexSet, terminals: VertexSet, cap: int = 500_000
) -> Optional[dict[int, int]]:
    """Spanning tree of the whole region with every leaf a terminal, if any.

    Tries pruned BFS/DFS trees from each root first; falls back to an exact
    backtracking search over edge subsets.  Returns a parent map or None.
    Exactness is what the exchange and shrink routines rely on; the search
    cap only guards against pathological inputs far outside the package's
    size regime.
    """
    if terminals == 0 or terminals & ~region:
        raise ValueError("terminals must be a nonempty subset of the region")
    if region & (region - 1) == 0:
        return {(region & -region).bit_length() - 1: -1}
    if not is_connected(g, region):
        return None
    adj = g.adj
    for v in bits(region & ~terminals):
        if (adj[v] & region).bit_count() < 2:
            return None  # pendant non-terminal can never be internal
    for build in (_bfs_tree, _dfs_tree):
        for root in list(bits(region & terminals)) + list(bits(region & ~terminals)):
            parents = build(adj, region, root)
            if len(_prune_to_terminals(parents, terminals)) == len(parents):
                return parents
    return _exact_terminal_spanning_tree(g, region, terminals, cap)


def _exact_terminal_spanning_tree(
    g: Graph, region: VertexSet, terminals: VertexSet, cap: int
) -> Optional[dict[int, int]]:
    verts = list(bits(region))
    edges = [(u, v) for u, v in combinations(verts, 2) if g.has_edge(u, v)]
    need = len(verts) - 1
    comp = {v: v for v in verts}
    deg = {v: 0 for v in verts}
    avail = {v: (g.adj[v] & region).bit_count() for v in verts}
    chosen: list[tuple[int, int]] = []
    nodes = 0

    def ok(v: int) -> bool:
        return bool(terminals >> v & 1) or deg[v] + avail[v] >= 2

    def rec(i: int, count: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > cap:
            raise _SearchCap(f"terminal spanning tree search exceeded {cap} nodes")
        if count == need:
            return all(deg[v] >= 2 or terminals >> v & 1 for v in verts)
        if len(edges) - i < need - count:
            return False
        u, v = edges[i]
        cu, cv = comp[u], comp[v]
        if cu != cv:
            relabeled = [w for w in verts if comp[w] == cv]
            for w in relabeled:
                comp[w] = cu
            deg[u] += 1
            deg[v] += 1
            avail[u] -= 1
            avail[v] -= 1
            chosen.append((u, v))
            if rec(i + 1, count + 1):
                return True
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1
            avail[u] += 1
            avail[v] += 1
            for w in relabeled:
                comp[w] = cv
        else:
            avail[u] -= 1
            avail[v] -= 1
            if ok(u) and ok(v) and rec(i + 1, count):
                return True
            avail[u] += 1
            avail[v] += 1
            return False
        # exclude the edge
        avail[u] -= 1
        avail[v] -= 1
        if ok(u) and ok(v) and rec(i + 1, count):
            return True
        avail[u] += 1
        avail[v] += 1
        return False

    if not rec(0, 0):
        return None
    tree_adj: dict[int, list[int]] = defaultdict(list)
    for u, v in chosen:
        tree_adj[u].append(v)
        tree_adj[v].append(u)
    root = (terminals & -terminals).bit_length() - 1
    parents = {root: -1}
    stack = [root]
    while stack:
        v = stack.pop()
        for w in tree_adj[v]:
            if w not in parents:
                parents[w] = v
                stack.append(w)
    return parents


# ---------------------------------------------------------------------------
# subtree shrinking


def subtree_shrink(g: Graph, f: TerminalTree, u: int) -> TerminalTree:
    """Strictly smaller terminal tree through u, given d(u, f) >= |terminals| + 2.

    Searches connected supersets of terminals+u inside the old tree plus u,
    smallest first, and returns the first that spans a terminal-leaf tree.
    Since u is not a terminal it is internal in the result.
    """
    terms = f.terminals
    s = terms.bit_count()
    if f.vertices >> u & 1:
        raise ValueError(f"vertex {u} already lies in the tree")
    d = (g.adj[u] & f.vertices).bit_count()
    if s < 2 or d < s + 2:
        raise ValueError(f"need >= 2 terminals and d(u, tree) >= |terminals| + 2, got s={s}, d={d}")
    region = f.vertices | bit(u)
    seed = terms | bit(u)
    by_size: dict[int, list[int]] = defaultdict(list)
    for x in _grow(g.adj, seed, region, f.size - 1 - seed.bit_count()):
        by_size[x.bit_count()].append(x)
    for size in sorted(by_size):
        for x in sorted(by_size[size]):
            parents = spanning_terminal_tree(g, x, terms)
            if parents is not None:
                return TerminalTree(x, parents, terms)
    raise RuntimeError("no smaller terminal tree through u exists; hypothesis violated")


# ---------------------------------------------------------------------------
# vertex exchange


def _tree_adjacency(parents: dict[int, int]) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in parents}
    for v, p in parents.items():
        if p >= 0:
            adj[v].add(p)
            adj[p].add(v)
    return adj


def _exchange_on_tree(
    gadj: tuple[int, ...], tadj: dict[int, set[int]], terms: VertexSet, u: int
) -> Optional[int]:
    """The double induction: find v with tree - v + u connected, v no terminal."""
    verts = 0
    for v in tadj:
        verts |= 1 << v
    unbrs = gadj[u] & verts

    if all(len(nb) <= 2 for nb in tadj.values()):
        # path: order from the lower endpoint, take a non-terminal neighbor
        # that is strictly between u's outermost neighbors
        ends = sorted(v for v, nb in tadj.items() if len(nb) == 1)
        order = [ends[0]]
        prev = None
        while len(order) < len(tadj):
            cur = order[-1]
            nxt = next(w for w in tadj[cur] if w != prev)
            order.append(nxt)
            prev = cur
        positions = [i for i, v in enumerate(order) if unbrs >> v & 1]
        for p in positions[1:-1]:
            if not terms >> order[p] & 1:
                return order[p]
        return None

    leaves = sorted(v for v, nb in tadj.items() if len(nb) == 1)
    pendant: dict[int, tuple[list[int], int]] = {}
    for x in leaves:
        path = [x]
        prev, cur = x, next(iter(tadj[x]))
        while len(tadj[cur]) == 2 and not terms >> cur & 1:
            path.append(cur)
            prev, cur = cur, next(w for w in tadj[cur] if w != prev)
        pendant[x] = (path, cur)

    def drop(path: list[int]) -> dict[int, set[int]]:
        gone = set(path)
        return {v: nb - gone for v, nb in tadj.items() if v not in gone}

    for x in leaves:
        path, _anchor = pendant[x]
        on = [i for i, v in enumerate(path) if unbrs >> v & 1]
        if len(on) >= 2:
            # cutting the second-closest neighbor leaves u attached on both sides
            return path[on[1]]
    for x in leaves:
        path, _anchor = pendant[x]
        if any(unbrs >> v & 1 for v in path):
            # exactly one neighbor on this pendant path: it re-attaches the
            # path even if the recursion picks the anchor as v
            return _exchange_on_tree(gadj, drop(path), terms & ~(1 << x), u)
    x = leaves[0]
    path, anchor = pendant[x]
    return _exchange_on_tree(gadj, drop(path), terms & ~(1 << x) | (1 << anchor), u)


def vertex_exchange(g: Graph, branch: VertexSet, terminals: VertexSet, u: int) -> Optional[int]:
    """A non-terminal v in N(u) with branch - v + u connected, or None.

    Guaranteed to exist when the branch is connected, spans a terminal-leaf
    tree, |terminals| >= 2 and d(u, branch) >= |terminals| + 1.  Outside that
    regime a direct scan still returns a valid v when one exists.
    """
    if branch >> u & 1 or terminals & ~branch:
        return None
    s = terminals.bit_count()
    if s < 2 or (g.adj[u] & branch).bit_count() < s + 1:
        return None
    if not is_connected(g, branch):
        return None
    parents = spanning_terminal_tree(g, branch, terminals)
    if parents is not None:
        v = _exchange_on_tree(g.adj, _tree_adjacency(parents), terminals, u)
        if v is not None:
            swapped = branch ^ bit(v) | bit(u)
            assert not terminals >> v & 1 and g.adj[u] >> v & 1 and is_connected(g, swapped)
            return v
    return _exchange_scan(g, branch, terminals, u)


def _exchange_scan(g: Graph, branch: VertexSet, terminals: VertexSet, u: int) -> Optional[int]:
    for v in bits(g.adj[u] & branch & ~terminals):
        if is_connected(g, branch ^ bit(v) | bit(u)):
            return v
    return None


def exchange_multi(
    g: Graph, branch: VertexSet, terminals: VertexSet, u: int
) -> Optional[tuple[int, VertexSet]]:
    """Exchange on a multi-component branch that strictly merges components.

    Picks a component where u meets the degree bound with equality (the case
    the bound forces), swaps inside it, and returns (v, rewritten branch)
    with fewer components and unchanged size.  None when no application
    reduces the component count.
    """
    if branch >> u & 1 or terminals & ~branch:
        return None
    comps = components(g, branch)
    if len(comps) < 2:
        return None
    if (g.adj[u] & branch).bit_count() < terminals.bit_count() + 1:
        return None
    ranked = []
    for comp in comps:
        terms_in = terminals & comp
        du = (g.adj[u] & comp).bit_count()
        bound = terms_in.bit_count() + 1
        if du >= bound:
            ranked.append((0 if du == bound else 1, comp, terms_in))
    ranked.sort(key=lambda r: (r[0], r[1] & -r[1]))
    for _, comp, terms_in in ranked:
        if terms_in.bit_count() >= 2:
            v = vertex_exchange(g, comp, terms_in, u)
        else:
            v = _exchange_scan(g, comp, terms_in, u)
        if v is None:
            continue
        rewritten = branch ^ bit(v) | bit(u)
        if len(components(g, rewritten)) < len(comps):
            return v, rewritten
    return None


# ---------------------------------------------------------------------------
# proof-guided local search


@dataclass
class KnitSearchResult:
    """Outcome of the local search: a verified knit or a stuck proof state."""

    knit: Optional[Knit]
    stuck: Optional[ProofState]
    moves: int
    trace: list[tuple[str, int, tuple[int, int, int]]] = field(default_factory=list)

    @property
    def succeeded(self) -> bool:
        return self.knit is not None


def _objective(g: Graph, pk: PartialKnit, inst: KnitInstance) -> tuple[int, int, int]:
    excess = pk.excess
    frontier = 0
    if excess:
        try:
            frontier = frontier_state(g, pk, inst).frontier.bit_count()
        except ValueError:
            frontier = 0
    return (excess, pk.union.bit_count(), -frontier)


def _find_join_path(
    g: Graph, cmask: VertexSet, x: int, y: int, max_interior: int = 5
) -> Optional[VertexSet]:
    """Interior vertices of a shortest x-y path through the uncovered part.

    Interior length is capped at 5 (path length 6), matching the bound the
    proof's augmentation argument uses.
    """
    adj = g.adj
    free = g.full_mask & ~cmask
    start = adj[x] & free
    goal = adj[y] & free
    if not start or not goal:
        return None
    parent: dict[int, int] = {v: -1 for v in bits(start)}
    layer = start
    depth = 1
    while True:
        hit = layer & goal
        if hit:
            w = (hit & -hit).bit_length() - 1
            path = 1 << w
            while parent[w] >= 0:
                w = parent[w]
                path |= 1 << w
            return path
        if depth >= max_interior:
            return None
        nxt = 0
        for v in bits(layer):
            for w in bits(adj[v] & free & ~nxt):
                if w not in parent:
                    parent[w] = v
                    nxt |= 1 << w
        if not nxt:
            return None
        layer = nxt
        depth += 1


def constructive_knit(
    inst: KnitInstance, budget: Optional[int] = None, trace: Optional[list] = None
) -> KnitSearchResult:
    """Local search over partial knits using the proof's move set.

    Starts from branches equal to their blocks and applies, per step, the
    first move that strictly lowers the objective (component excess, total
    vertices, -frontier): path augmentation joining the split pair, a
    component-merging exchange, the endgame swap-then-join, branch pruning,
    subtree shrinking, or a frontier-growing exchange.  Returns a verified
    knit, or the stuck proof state once no move applies or the budget runs
    out.
    """
    g = inst.graph
    if budget is None:
        budget = 10 * g.n
    pk = initial_partial_knit(inst)
    log: list = trace if trace is not None else []
    moves = 0
    while True:
        if pk.is_knit:
            knit = Knit(pk.branches)
            assert verify_knit(inst, knit)
            return KnitSearchResult(knit, None, moves, log)
        if moves >= budget:
            return KnitSearchResult(None, frontier_state(g, pk, inst), moves, log)
        obj = _objective(g, pk, inst)
        step = _find_move(g, pk, inst, obj)
        if step is None:
            return KnitSearchResult(None, frontier_state(g, pk, inst), moves, log)
        kind, block, pk2 = step
        obj2 = _objective(g, pk2, inst)
        assert obj2 < obj, f"move {kind} did not decrease the objective: {obj} -> {obj2}"
        log.append((kind, block, obj2))
        pk = pk2
        moves += 1


def _find_move(
    g: Graph, pk: PartialKnit, inst: KnitInstance, obj: tuple[int, int, int]
) -> Optional[tuple[str, int, PartialKnit]]:
    n = g.n
    cmask = pk.union
    free = g.full_mask & ~cmask

    # path augmentation on the canonical split pair
    state = frontier_state(g, pk, inst)
    path = _find_join_path(g, cmask, state.x, state.y)
    if path is not None and (cmask | path).bit_count() < n:
        pk2 = pk.replace_branch(state.block, pk.branches[state.block] | path)
        return ("augment", state.block, pk2)

    # component-merging exchange
    for u in bits(free):
        for i, comps in enumerate(pk.comps):
            if len(comps) < 2:
                continue
            hit = exchange_multi(g, pk.branches[i], inst.block_masks[i], u)
            if hit is not None:
                return ("merge", i, pk.replace_branch(i, hit[1]))

    # endgame: swap a non-terminal out for a frontier vertex, then join
    for i, branch in enumerate(pk.branches):
        for w in bits(branch & ~inst.block_masks[i]):
            for u in bits(g.adj[w] & free):
                swapped = branch ^ bit(w) | bit(u)
                if len(components(g, swapped)) > len(pk.comps[i]):
                    continue
                pk2 = pk.replace_branch(i, swapped)
                state2 = frontier_state(g, pk2, inst)
                path2 = _find_join_path(g, pk2.union, state2.x, state2.y)
                if path2 is None or (pk2.union | path2).bit_count() >= n:
                    continue
                pk3 = pk2.replace_branch(state2.block, pk2.branches[state2.block] | path2)
                if _objective(g, pk3, inst) < obj:
                    return ("endgame", state2.block, pk3)

    # prune branches to terminal-tree form (drops vertices, maybe components)
    for i, comps in enumerate(pk.comps):
        block = inst.block_masks[i]
        for comp in comps:
            terms_in = block & comp
            if terms_in == 0:
                return ("prune", i, pk.replace_branch(i, pk.branches[i] & ~comp))
            tt = terminal_spanning_tree(g, comp, terms_in)
            if tt.vertices != comp:
                newb = pk.branches[i] & ~comp | tt.vertices
                return ("prune", i, pk.replace_branch(i, newb))

    # subtree shrink through an outside vertex
    for u in bits(free):
        for i, comps in enumerate(pk.comps):
            block = inst.block_masks[i]
            for comp in comps:
                terms_in = block & comp
                s = terms_in.bit_count()
                if s < 2 or (g.adj[u] & comp).bit_count() < s + 2:
                    continue
                parents = spanning_terminal_tree(g, comp, terms_in)
                if parents is None:
                    continue
                smaller = subtree_shrink(g, TerminalTree(comp, parents, terms_in), u)
                newb = pk.branches[i] & ~comp | smaller.vertices
                return ("shrink", i, pk.replace_branch(i, newb))

    # frontier-growing exchange
    best = None
    for u in bits(free):
        for i, comps in enumerate(pk.comps):
            block = inst.block_masks[i]
            for comp in comps:
                for v in bits(g.adj[u] & comp & ~block):
                    if not is_connected(g, comp ^ bit(v) | bit(u)):
                        continue
                    pk2 = pk.replace_branch(i, pk.branches[i] ^ bit(v) | bit(u))
                    obj2 = _objective(g, pk2, inst)
                    if obj2 < obj and (best is None or obj2 < best[0]):
                        best = (obj2, i, pk2)
    if best is not None:
        return ("exchange", best[1], best[2])
    return None
