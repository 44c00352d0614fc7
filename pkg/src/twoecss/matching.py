"""Maximum 2-matchings and maximum triangle-free 2-matchings.

``max_two_matching`` is exact and polynomial: it reduces simple 2-matching
to ordinary maximum matching on a vertex-splitting gadget.  The
triangle-free variant is an exact branch-and-bound that uses that
reduction as its relaxation and branches on triangle components of the
relaxed optimum.  Both sit behind the same call signature so a polynomial
triangle-free algorithm can later replace the search.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from .errors import BudgetExhausted
from .graph import EdgeSet, Graph, degrees, triangle_components


@dataclass(frozen=True)
class SolverBudget:
    node_limit: int = 10**7
    time_limit: float = 60.0

    def __post_init__(self):
        if self.node_limit <= 0 or self.time_limit <= 0:
            raise ValueError("budget limits must be positive")


@dataclass(frozen=True)
class TwoMatching:
    edges: EdgeSet
    optimal: bool = True
    nodes: int = 0

    def __post_init__(self):
        if not is_two_matching(self.edges):
            raise ValueError("edge set has a vertex of degree > 2")

    def __len__(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> list[int]:
        return degrees(self.edges)


def is_two_matching(F: EdgeSet) -> bool:
    return all(d <= 2 for d in degrees(F))


def max_b_matching(G: Graph, allowed, capacity) -> set[int]:
    """Maximum simple b-matching over edge ids ``allowed`` with per-vertex ``capacity``.

    Gadget: vertex ``v`` becomes ``capacity[v]`` copies; edge ``uv`` becomes
    a linked pair ``e_u - e_v`` with ``e_u`` adjacent to every copy of ``u``.
    A maximum matching of the gadget has size ``|allowed'| + beta`` where
    ``beta`` is the b-matching optimum, and the edges whose two gadget ends
    are both matched to copies form an optimal b-matching.
    """
    H = nx.Graph()
    copies: dict[int, list[int]] = {}
    nxt = 0
    for v in range(G.n):
        copies[v] = list(range(nxt, nxt + capacity[v]))
        nxt += capacity[v]
    ends: dict[int, tuple[int, int]] = {}
    for e in sorted(allowed):
        u, v = G.edges[e]
        if not copies[u] or not copies[v]:
            continue
        a, b = nxt, nxt + 1
        nxt += 2
        ends[e] = (a, b)
        H.add_edge(a, b)
        for c in copies[u]:
            H.add_edge(a, c)
        for c in copies[v]:
            H.add_edge(b, c)
    if not ends:
        return set()
    mate: dict[int, int] = {}
    for x, y in nx.max_weight_matching(H, maxcardinality=True):
        mate[x] = y
        mate[y] = x
    out = set()
    for e, (a, b) in ends.items():
        ma, mb = mate.get(a), mate.get(b)
        if ma is not None and mb is not None and ma != b:
            out.add(e)
    return out


def max_two_matching(G: Graph, budget: SolverBudget | None = None) -> TwoMatching:
    """Maximum-cardinality 2-matching (always optimal; ``budget`` is accepted for symmetry)."""
    chosen = max_b_matching(G, range(G.m), [2] * G.n)
    return TwoMatching(G.edge_set(chosen), optimal=True, nodes=1)


def _closes_triangle(G: Graph, chosen: set[int], u: int, v: int) -> bool:
    for w, e in G.adjacency[u]:
        if e in chosen:
            f = G.edge_index(v, w)
            if f is not None and f in chosen:
                return True
    return False


def _greedy_fill(G: Graph, chosen: set[int], allowed) -> set[int]:
    """Extend ``chosen`` edge by edge in index order while it stays a triangle-free 2-matching."""
    chosen = set(chosen)
    deg = [0] * G.n
    for e in chosen:
        u, v = G.edges[e]
        deg[u] += 1
        deg[v] += 1
    for e in sorted(allowed):
        if e in chosen:
            continue
        u, v = G.edges[e]
        if deg[u] < 2 and deg[v] < 2 and not _closes_triangle(G, chosen, u, v):
            chosen.add(e)
            deg[u] += 1
            deg[v] += 1
    return chosen


def _triangle_edges(G: Graph, tri) -> list[int]:
    a, b, c = tri
    return sorted(G.edge_index(x, y) for x, y in ((a, b), (a, c), (b, c)))


@dataclass
class _Search:
    G: Graph
    budget: SolverBudget
    best: set[int] = field(default_factory=set)
    nodes: int = 0
    exhausted: bool = False

    def offer(self, cand: set[int]) -> None:
        if len(cand) > len(self.best) and not triangle_components(self.G.edge_set(cand)):
            self.best = cand


def max_triangle_free_two_matching(
    G: Graph, budget: SolverBudget | None = None, *, raise_on_exhaust: bool = False
) -> TwoMatching:
    """Maximum-cardinality 2-matching with no triangle component.

    Exact branch-and-bound.  Each node fixes some edges in and some out and
    solves the unconstrained 2-matching relaxation on the rest; a triangle
    component of the relaxed optimum is split into at most three children
    (drop its first free edge; keep it and drop the second; ...).  Depth-first,
    children in edge-index order, so the returned optimum is reproducible.

    When the budget runs out, or the node limit is reached, the best
    incumbent is returned with ``optimal=False`` (or raised inside
    :class:`BudgetExhausted` when ``raise_on_exhaust`` is set).
    """
    budget = budget or SolverBudget()
    search = _Search(G, budget)
    start = time.monotonic()
    every = frozenset(range(G.m))
    stack: list[tuple[frozenset[int], frozenset[int]]] = [(frozenset(), frozenset())]
    while stack:
        if search.nodes >= budget.node_limit or time.monotonic() - start > budget.time_limit:
            search.exhausted = True
            break
        fixed_in, fixed_out = stack.pop()
        search.nodes += 1
        cap = [2] * G.n
        for e in fixed_in:
            u, v = G.edges[e]
            cap[u] -= 1
            cap[v] -= 1
        if min(cap) < 0:
            continue
        free = every - fixed_in - fixed_out
        total = set(fixed_in) | max_b_matching(G, free, cap)
        if len(total) <= len(search.best):
            continue
        tris = triangle_components(G.edge_set(total))
        if not tris:
            search.best = total
            continue
        repaired = set(total)
        for tri in tris:
            movable = [e for e in _triangle_edges(G, tri) if e not in fixed_in]
            if movable:
                repaired.discard(movable[0])
        search.offer(_greedy_fill(G, repaired, free))
        movable = [e for e in _triangle_edges(G, tris[0]) if e not in fixed_in]
        children = []
        for i, e in enumerate(movable):
            children.append((fixed_in | frozenset(movable[:i]), fixed_out | {e}))
        stack.extend(reversed(children))
    # reaching the node limit counts as exhaustion even if the stack emptied
    if search.nodes >= budget.node_limit:
        search.exhausted = True
    result = TwoMatching(G.edge_set(search.best), optimal=not search.exhausted, nodes=search.nodes)
    if search.exhausted and raise_on_exhaust:
        raise BudgetExhausted(f"search stopped after {search.nodes} nodes", incumbent=result)
    return result
