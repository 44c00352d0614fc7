"""Detectors for the directly decidable parts of "(5/4, eps)-structured".

General 5/4-contractible subgraph detection is not attempted; the report
says so and only lists the two special configurations that the rewrite
system itself relies on ruling out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import EpsilonOutOfRange
from .graph import Graph, is_two_vertex_connected

CONTRACTIBILITY_NOTE = "not checked (general case undecided by this artifact)"


def _components_without(G: Graph, removed: set[int]) -> list[list[int]]:
    seen = set(removed)
    comps = []
    for s in range(G.n):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y, _ in G.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def find_irrelevant_edges(G: Graph) -> list[int]:
    """Edges ``uv`` such that deleting both endpoints disconnects the rest."""
    if G.n < 3:
        return []
    return [e for e, (u, v) in enumerate(G.edges) if len(_components_without(G, {u, v})) > 1]


@dataclass(frozen=True)
class TwoCut:
    pair: tuple[int, int]
    component_sizes: tuple[int, ...]


def find_non_isolating_two_cuts(G: Graph) -> list[TwoCut]:
    """Pairs ``{u, v}`` leaving >= 3 components, or exactly 2 components of >= 2 vertices each."""
    out = []
    for u, v in combinations(range(G.n), 2):
        sizes = tuple(len(c) for c in _components_without(G, {u, v}))
        if len(sizes) >= 3 or (len(sizes) == 2 and min(sizes) >= 2):
            out.append(TwoCut((u, v), sizes))
    return out


def check_size(G: Graph, eps) -> bool:
    """Whether ``G`` has at least ``2/eps`` vertices (exact rational comparison)."""
    eps = Fraction(eps)
    if eps <= 0:
        raise EpsilonOutOfRange(f"epsilon must be positive, got {eps}")
    return G.n >= 2 / eps


def find_degree_two_k23(G: Graph) -> list[tuple[tuple[int, int], tuple[int, int, int]]]:
    """K2,3 subgraphs whose three middle vertices have degree exactly 2 in ``G``.

    Every 2-edge-connected spanning subgraph must keep all six edges, so such
    a K2,3 is 5/4-contractible.
    """
    out = []
    for a, b in combinations(range(G.n), 2):
        mids = [
            w for w in range(G.n)
            if G.degree(w) == 2 and set(G.neighbors(w)) == {a, b}
        ]
        if len(mids) >= 3:
            out.append(((a, b), tuple(mids[:3])))
    return out


@dataclass(frozen=True)
class PendantCycle:
    """Cycle ``v1 .. vl`` whose ``v2`` and ``vl`` have no neighbours outside it."""

    cycle: tuple[int, ...]

    @property
    def attachment(self) -> int:
        return self.cycle[0]


def find_pendant_short_cycles(G: Graph) -> list[PendantCycle]:
    """Cycles of length 3..5 forcing >= 4/5 of their edges into every solution.

    The two cycle-neighbours ``v2, vl`` of ``v1`` must have all their
    neighbours on the cycle; for length 4 or 5 they must also be
    non-adjacent (otherwise a chord lets a solution use fewer cycle edges).
    """
    seen = set()
    out = []
    low = [v for v in range(G.n) if G.degree(v) <= 4]
    lowset = set(low)
    for v1 in range(G.n):
        nb = sorted(w for w in G.neighbors(v1) if w in lowset)
        for a, b in combinations(nb, 2):
            paths = []
            if G.has_edge(a, b):
                paths.append(())
            for x in G.neighbors(a):
                if x in (v1, b):
                    continue
                if G.has_edge(x, b):
                    paths.append((x,))
                for y in G.neighbors(x):
                    if y not in (v1, a, b) and G.has_edge(y, b):
                        paths.append((x, y))
            for mid in paths:
                cyc = (v1, a, *mid, b)
                verts = set(cyc)
                if not set(G.neighbors(a)) <= verts or not set(G.neighbors(b)) <= verts:
                    continue
                if len(cyc) > 3 and G.has_edge(a, b):
                    continue
                key = (frozenset(verts), v1)
                if key in seen:
                    continue
                seen.add(key)
                out.append(PendantCycle(cyc))
    return out


@dataclass
class StructureReport:
    two_vertex_connected: bool
    size_ok: bool
    size_threshold: Fraction
    irrelevant_edges: list[int] = field(default_factory=list)
    non_isolating_cuts: list[TwoCut] = field(default_factory=list)
    contractibility: str = CONTRACTIBILITY_NOTE
    contractible_k23: list = field(default_factory=list)
    contractible_pendant_cycles: list[PendantCycle] = field(default_factory=list)

    @property
    def passes_decidable_checks(self) -> bool:
        """2-vertex-connected with no irrelevant edge and no non-isolating 2-cut (size ignored)."""
        return self.two_vertex_connected and not self.irrelevant_edges and not self.non_isolating_cuts

    def to_text(self) -> str:
        rows = [
            ("two_vertex_connected", self.two_vertex_connected),
            ("size_ok", self.size_ok),
            ("size_threshold", self.size_threshold),
            ("irrelevant_edges", self.irrelevant_edges),
            ("non_isolating_cuts", [(c.pair, c.component_sizes) for c in self.non_isolating_cuts]),
            ("contractibility", self.contractibility),
            ("contractible_k23", self.contractible_k23),
            ("contractible_pendant_cycles", [c.cycle for c in self.contractible_pendant_cycles]),
        ]
        return "".join(f"{k}: {v}\n" for k, v in rows)


def structure_report(G: Graph, eps) -> StructureReport:
    eps = Fraction(eps)
    return StructureReport(
        two_vertex_connected=is_two_vertex_connected(G),
        size_ok=check_size(G, eps),
        size_threshold=2 / eps,
        irrelevant_edges=find_irrelevant_edges(G),
        non_isolating_cuts=find_non_isolating_two_cuts(G),
        contractible_k23=find_degree_two_k23(G),
        contractible_pendant_cycles=find_pendant_short_cycles(G),
    )
