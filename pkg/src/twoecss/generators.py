"""Seeded instance generators."""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import GenerationFailed
from .graph import Graph, is_two_vertex_connected

FAMILIES = ("cycle", "random-2vc", "ham-plus-chords")


def cycle(n: int) -> Graph:
    if n < 3:
        raise GenerationFailed(f"a cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def random_2vc(n: int, density, seed: int, max_tries: int = 1000) -> Graph:
    """Erdos-Renyi ``G(n, density)`` resampled until 2-vertex-connected."""
    rng = random.Random(seed)
    p = float(Fraction(density))
    for _ in range(max_tries):
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        G = Graph(n, pairs)
        if is_two_vertex_connected(G):
            return G
    raise GenerationFailed(f"no 2-vertex-connected G({n}, {density}) sample in {max_tries} tries")


def ham_plus_chords(n: int, density, seed: int) -> Graph:
    """Random Hamiltonian cycle plus each remaining pair with probability ``density``."""
    if n < 3:
        raise GenerationFailed(f"a Hamiltonian cycle needs n >= 3, got {n}")
    rng = random.Random(seed)
    p = float(Fraction(density))
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(order[i], order[(i + 1) % n]) for i in range(n)]
    ring = {frozenset(e) for e in pairs}
    for u in range(n):
        for v in range(u + 1, n):
            if frozenset((u, v)) not in ring and rng.random() < p:
                pairs.append((u, v))
    return Graph(n, pairs)


def generate(family: str, n: int, density=Fraction(1, 5), seed: int = 0) -> Graph:
    if family == "cycle":
        return cycle(n)
    if family == "random-2vc":
        return random_2vc(n, density, seed)
    if family == "ham-plus-chords":
        return ham_plus_chords(n, density, seed)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
