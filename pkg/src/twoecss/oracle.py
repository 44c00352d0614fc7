"""Brute-force exact solvers used as ground truth on small instances.

Everything here works straight from the definitions (component counting,
edge deletion) and shares no code with the algorithmic path beyond the
:class:`Graph` container.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator

from .errors import Infeasible, TooLarge
from .graph import EdgeSet, Graph


@dataclass(frozen=True)
class OracleResult:
    value: int
    witness: EdgeSet
    nodes: int
    exact: bool = True


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _labels(n: int, edges, chosen) -> list[int]:
    parent = list(range(n))
    for e in chosen:
        u, v = edges[e]
        ru, rv = _find(parent, u), _find(parent, v)
        if ru != rv:
            parent[ru] = rv
    return [_find(parent, v) for v in range(n)]


def _n_components(n: int, edges, chosen) -> int:
    return len(set(_labels(n, edges, chosen)))


def has_triangle_component(n: int, edges, chosen) -> bool:
    label = _labels(n, edges, chosen)
    vcount: dict[int, int] = {}
    for r in label:
        vcount[r] = vcount.get(r, 0) + 1
    ecount: dict[int, int] = {}
    for e in chosen:
        r = label[edges[e][0]]
        ecount[r] = ecount.get(r, 0) + 1
    return any(k == 3 and ecount.get(r, 0) == 3 for r, k in vcount.items())


def spans_two_edge_connected(n: int, edges, chosen) -> bool:
    """Definition check: connected on all vertices and still connected after deleting any edge."""
    chosen = list(chosen)
    if _n_components(n, edges, chosen) != 1:
        return False
    for i in range(len(chosen)):
        if _n_components(n, edges, chosen[:i] + chosen[i + 1:]) != 1:
            return False
    return True


def bridges_by_definition(F: EdgeSet) -> frozenset[int]:
    G = F.graph
    chosen = sorted(F.members)
    base = _n_components(G.n, G.edges, chosen)
    return frozenset(
        e for i, e in enumerate(chosen)
        if _n_components(G.n, G.edges, chosen[:i] + chosen[i + 1:]) > base
    )


def components_by_definition(n: int, edges, chosen) -> list[tuple[int, ...]]:
    label = _labels(n, edges, chosen)
    groups: dict[int, list[int]] = {}
    for v, r in enumerate(label):
        groups.setdefault(r, []).append(v)
    return sorted(tuple(g) for g in groups.values())


def _check_limit(G: Graph, limit: int) -> None:
    if G.m > limit:
        raise TooLarge(f"graph has {G.m} edges, oracle limit is {limit}")


def _min_degree_subsets(G: Graph, k: int, counter: list[int]) -> Iterator[list[int]]:
    """All k-edge subsets in which every vertex has degree >= 2."""
    n, edges, m = G.n, G.edges, G.m
    deg = [0] * n
    rem = [G.degree(v) for v in range(n)]
    chosen: list[int] = []
    if any(r < 2 for r in rem):
        return

    def rec(i: int):
        counter[0] += 1
        if len(chosen) == k:
            if all(d >= 2 for d in deg):
                yield list(chosen)
            return
        if m - i < k - len(chosen):
            return
        need = sum(2 - d for d in deg if d < 2)
        if need > 2 * (k - len(chosen)):
            return
        u, v = edges[i]
        rem[u] -= 1
        rem[v] -= 1
        deg[u] += 1
        deg[v] += 1
        chosen.append(i)
        yield from rec(i + 1)
        chosen.pop()
        deg[u] -= 1
        deg[v] -= 1
        if deg[u] + rem[u] >= 2 and deg[v] + rem[v] >= 2:
            yield from rec(i + 1)
        rem[u] += 1
        rem[v] += 1

    yield from rec(0)


def exact_min_2ecss(G: Graph, limit: int = 20) -> OracleResult:
    """Minimum 2-edge-connected spanning subgraph by ascending-size subset search."""
    _check_limit(G, limit)
    counter = [0]
    for k in range(G.n, G.m + 1):
        for subset in _min_degree_subsets(G, k, counter):
            if spans_two_edge_connected(G.n, G.edges, subset):
                return OracleResult(k, G.edge_set(subset), counter[0])
    raise Infeasible("graph has no 2-edge-connected spanning subgraph")


def exact_min_tf_cover(G: Graph, limit: int = 24) -> OracleResult:
    """Minimum triangle-free 2-edge-cover by ascending-size subset search."""
    _check_limit(G, limit)
    counter = [0]
    for k in range(G.n, G.m + 1):
        for subset in _min_degree_subsets(G, k, counter):
            if not has_triangle_component(G.n, G.edges, subset):
                return OracleResult(k, G.edge_set(subset), counter[0])
    raise Infeasible("graph has no triangle-free 2-edge-cover")


def exact_min_cover(G: Graph, limit: int = 24) -> OracleResult:
    """Minimum 2-edge-cover (triangles allowed)."""
    _check_limit(G, limit)
    counter = [0]
    for k in range(G.n, G.m + 1):
        for subset in _min_degree_subsets(G, k, counter):
            return OracleResult(k, G.edge_set(subset), counter[0])
    raise Infeasible("graph has no 2-edge-cover")


def _max_two_matching(G: Graph, limit: int, triangle_free: bool) -> OracleResult:
    _check_limit(G, limit)
    n, edges, m = G.n, G.edges, G.m
    deg = [0] * n
    chosen: list[int] = []
    picked = [False] * m
    best: list = [-1, []]
    nodes = [0]

    def closes_triangle(u: int, v: int) -> bool:
        for w, e in G.adjacency[u]:
            if picked[e]:
                f = G.edge_index(v, w)
                if f is not None and picked[f]:
                    return True
        return False

    def rec(i: int):
        nodes[0] += 1
        if len(chosen) + (m - i) <= best[0]:
            return
        if i == m:
            if triangle_free and has_triangle_component(n, edges, chosen):
                return
            best[0] = len(chosen)
            best[1] = list(chosen)
            return
        u, v = edges[i]
        if deg[u] < 2 and deg[v] < 2 and not (triangle_free and closes_triangle(u, v)):
            deg[u] += 1
            deg[v] += 1
            picked[i] = True
            chosen.append(i)
            rec(i + 1)
            chosen.pop()
            picked[i] = False
            deg[u] -= 1
            deg[v] -= 1
        rec(i + 1)

    rec(0)
    return OracleResult(best[0], G.edge_set(best[1]), nodes[0])


def exact_max_tf_2matching(G: Graph, limit: int = 24) -> OracleResult:
    """Maximum triangle-free 2-matching by exhaustive include/exclude enumeration."""
    return _max_two_matching(G, limit, triangle_free=True)


def exact_max_2matching(G: Graph, limit: int = 24) -> OracleResult:
    return _max_two_matching(G, limit, triangle_free=False)


# ---------------------------------------------------------------------------
# small graph enumeration


def enumerate_small_graphs(n: int, filter: Callable[[Graph], bool] | None = None) -> Iterator[Graph]:
    """All labeled simple graphs on ``n`` vertices (``2**C(n,2)`` before filtering)."""
    if n > 7:
        raise TooLarge(f"labeled enumeration is limited to n <= 7, got {n}")
    if n < 1:
        raise TooLarge(f"need n >= 1, got {n}")
    slots = list(combinations(range(n), 2))
    for mask in range(1 << len(slots)):
        G = Graph(n, [slots[i] for i in range(len(slots)) if mask >> i & 1])
        if filter is None or filter(G):
            yield G


def connected_min_degree_two(G: Graph) -> bool:
    if any(G.degree(v) < 2 for v in range(G.n)):
        return False
    return _n_components(G.n, G.edges, range(G.m)) == 1
