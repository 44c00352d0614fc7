"""Shared graph builders and seeded random instance generators for the tests."""

from __future__ import annotations

import random
from itertools import combinations

from twoecss.cover import min_triangle_free_cover
from twoecss.errors import NoCoverExists
from twoecss.graph import Graph, build_graph, degrees, triangle_components
from twoecss.oracle import connected_min_degree_two


def cycle_pairs(vertices):
    vs = list(vertices)
    return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def cycle_graph(n: int) -> Graph:
    return build_graph(n, cycle_pairs(range(n)))


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, list(combinations(range(n), 2)))


BOWTIE_PAIRS = [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]
K23_PAIRS = [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]


def bowtie() -> Graph:
    return build_graph(5, BOWTIE_PAIRS)


def k23() -> Graph:
    return build_graph(5, K23_PAIRS)


def petersen() -> Graph:
    outer = cycle_pairs(range(5))
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return build_graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def random_connected_min_deg2(rng: random.Random, n: int, tries: int = 10000) -> Graph:
    for _ in range(tries):
        G = random_graph(rng, n, rng.uniform(0.25, 0.75))
        if connected_min_degree_two(G):
            return G
    raise RuntimeError("could not sample a connected min-degree-2 graph")


def _random_cycle_through(G: Graph, v: int, rng: random.Random, max_len: int = 6):
    for _ in range(60):
        walk = [v]
        while len(walk) <= max_len:
            nbrs = G.neighbors(walk[-1])
            if len(walk) >= 3 and v in nbrs and rng.random() < 0.6:
                return [G.edge_index(walk[i], walk[(i + 1) % len(walk)]) for i in range(len(walk))]
            choices = [w for w in nbrs if w not in walk]
            if not choices:
                break
            walk.append(rng.choice(choices))
    return None


def _finish(G: Graph, F: set[int], rng: random.Random) -> frozenset[int]:
    deg = degrees(G.edge_set(F))
    for v in rng.sample(range(G.n), G.n):
        es = [e for _, e in G.adjacency[v] if e not in F]
        rng.shuffle(es)
        while deg[v] < 2 and es:
            e = es.pop()
            F.add(e)
            a, b = G.edges[e]
            deg[a] += 1
            deg[b] += 1
    while tris := triangle_components(G.edge_set(F)):
        tri = tris[0]
        F.add(rng.choice([e for x in tri for y, e in G.adjacency[x] if y not in tri]))
    return frozenset(F)


def random_tf_cover(G: Graph, rng: random.Random) -> frozenset[int]:
    """A random triangle-free 2-edge-cover of ``G`` (needs min degree 2 and no K3 component)."""
    mode = rng.choice(("random", "cycles", "cycles", "padded-min"))
    F: set[int] = set()
    if mode == "random":
        p = rng.choice((0.2, 0.4, 0.6))
        F = {e for e in range(G.m) if rng.random() < p}
    elif mode == "cycles":
        for _ in range(4 * G.n):
            deg = degrees(G.edge_set(F))
            low = [v for v in range(G.n) if deg[v] < 2]
            if not low:
                break
            cyc = _random_cycle_through(G, rng.choice(low), rng)
            if cyc:
                F.update(cyc)
    else:
        try:
            C, _ = min_triangle_free_cover(G)
            F = set(C.edges.members)
        except NoCoverExists:
            pass
        extra = [e for e in range(G.m) if e not in F]
        F.update(rng.sample(extra, min(len(extra), rng.randint(0, 3))))
    return _finish(G, F, rng)


def random_cover(G: Graph, rng: random.Random) -> frozenset[int]:
    """A random 2-edge-cover of ``G``, seeded with triangles of ``G`` when it has any."""
    F: set[int] = set()
    tris = [t for t in combinations(range(G.n), 3)
            if G.has_edge(t[0], t[1]) and G.has_edge(t[1], t[2]) and G.has_edge(t[0], t[2])]
    used: set[int] = set()
    for t in rng.sample(tris, len(tris)):
        if used.isdisjoint(t) and rng.random() < 0.7:
            used.update(t)
            F.update(G.edge_index(a, b) for a, b in combinations(t, 2))
    for _ in range(2 * G.n):
        deg = degrees(G.edge_set(F))
        low = [v for v in range(G.n) if deg[v] < 2 and v not in used]
        if not low:
            break
        cyc = _random_cycle_through(G, rng.choice(low), rng)
        if cyc:
            F.update(cyc)
    deg = degrees(G.edge_set(F))
    for v in range(G.n):
        es = [e for _, e in G.adjacency[v] if e not in F]
        rng.shuffle(es)
        while deg[v] < 2 and es:
            e = es.pop()
            F.add(e)
            a, b = G.edges[e]
            deg[a] += 1
            deg[b] += 1
    return frozenset(F)
