"""2-edge-covers and their exchange with 2-matchings.

``matching_to_cover`` grows a triangle-free 2-matching into a triangle-free
2-edge-cover of size at most ``2n - |M|``; ``cover_to_matching`` shrinks a
triangle-free 2-edge-cover into a triangle-free 2-matching of size at least
``2n - |C|``.  Together they make a maximum triangle-free 2-matching give a
minimum triangle-free 2-edge-cover.

Choice rule in both loops: the lowest-index offending vertex, then its
lowest-index eligible edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import InternalInvariant, NoCoverExists, PreconditionViolated
from .graph import EdgeSet, Graph, connected_components, degrees, triangle_components
from .matching import (
    SolverBudget,
    TwoMatching,
    is_two_matching,
    max_triangle_free_two_matching,
    max_two_matching,
)


@dataclass(frozen=True)
class Cover:
    edges: EdgeSet
    optimal: bool = True

    def __post_init__(self):
        if not is_two_edge_cover(self.edges):
            raise ValueError("edge set has a vertex of degree < 2")

    def __len__(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> list[int]:
        return degrees(self.edges)


@dataclass(frozen=True)
class ConversionStep:
    rule: str
    added: tuple[int, ...]
    removed: tuple[int, ...]
    potential_before: int
    potential_after: int


@dataclass
class ConversionTrace:
    steps: list[ConversionStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def rules(self) -> list[str]:
        return [s.rule for s in self.steps]


def is_two_edge_cover(F: EdgeSet) -> bool:
    return all(d >= 2 for d in degrees(F))


def deficiency(F: EdgeSet) -> int:
    """Sum over vertices of ``max(2 - d_F(v), 0)``."""
    return sum(max(2 - d, 0) for d in degrees(F))


def excess(F: EdgeSet) -> int:
    """Sum over vertices of ``max(d_F(v) - 2, 0)``."""
    return sum(max(d - 2, 0) for d in degrees(F))


def _edges_of(x) -> EdgeSet:
    return x.edges if isinstance(x, (TwoMatching, Cover)) else x


def _check_expandable(G: Graph) -> None:
    for comp in connected_components(G.full()):
        if len(comp) < 4:
            raise PreconditionViolated(f"component {list(comp)} has fewer than 4 vertices")
    for v in range(G.n):
        if G.degree(v) < 2:
            raise PreconditionViolated(f"vertex {v} has degree {G.degree(v)} < 2")


def _triangle_at(tris, v: int):
    for tri in tris:
        if v in tri:
            return tri
    return None


def _expand(G: Graph, start: set[int], allow_triangles: bool) -> tuple[set[int], ConversionTrace]:
    F = set(start)
    deg = [0] * G.n
    for e in F:
        u, v = G.edges[e]
        deg[u] += 1
        deg[v] += 1
    trace = ConversionTrace()

    def g() -> int:
        return sum(max(2 - d, 0) for d in deg)

    def add(e: int) -> None:
        F.add(e)
        a, b = G.edges[e]
        deg[a] += 1
        deg[b] += 1

    while True:
        v = next((x for x in range(G.n) if deg[x] < 2), None)
        if v is None:
            return F, trace
        vw = next((e for _, e in G.adjacency[v] if e not in F), None)
        if vw is None:
            raise InternalInvariant(f"vertex {v} is deficient but has no unused edge")
        before = g()
        w = G.other(vw, v)
        if allow_triangles:
            add(vw)
            trace.steps.append(ConversionStep("i", (vw,), (), before, g()))
            continue
        tri = _triangle_at(triangle_components(G.edge_set(F | {vw})), v)
        if tri is None:
            add(vw)
            trace.steps.append(ConversionStep("i", (vw,), (), before, g()))
            continue
        inside = set(tri)
        out = sorted(
            e for x in tri for y, e in G.adjacency[x] if y not in inside
        )
        if not out:
            raise InternalInvariant(f"triangle {tri} has no edge leaving it")
        if deg[v] != 1 or deg[w] != 1:
            raise InternalInvariant(f"case (ii) at {v}-{w} with degrees {deg[v]}, {deg[w]}")
        add(vw)
        add(out[0])
        trace.steps.append(ConversionStep("ii", (vw, out[0]), (), before, g()))


def matching_to_cover(G: Graph, M: TwoMatching | EdgeSet) -> tuple[Cover, ConversionTrace]:
    """Grow a triangle-free 2-matching into a triangle-free 2-edge-cover.

    Every component of ``G`` must have at least 4 vertices and ``G`` minimum
    degree 2.  While some vertex ``v`` is deficient, its first unused edge
    ``vw`` is added; if that would close a triangle component ``{u, v, w}``,
    the first edge leaving the triangle is added along with it.  The result
    has at most ``2n - |M|`` edges.
    """
    F = _edges_of(M)
    _check_expandable(G)
    if not is_two_matching(F):
        raise PreconditionViolated("input is not a 2-matching")
    if triangle_components(F):
        raise PreconditionViolated(f"input has triangle components {triangle_components(F)}")
    chosen, trace = _expand(G, set(F.members), allow_triangles=False)
    optimal = M.optimal if isinstance(M, TwoMatching) else True
    return Cover(G.edge_set(chosen), optimal=optimal), trace


def cover_to_matching(G: Graph, C: Cover | EdgeSet) -> tuple[TwoMatching, ConversionTrace]:
    """Shrink a triangle-free 2-edge-cover into a triangle-free 2-matching of size >= 2n - |C|."""
    start = _edges_of(C)
    if not is_two_edge_cover(start):
        raise PreconditionViolated("input is not a 2-edge-cover")
    if triangle_components(start):
        raise PreconditionViolated(f"input has triangle components {triangle_components(start)}")
    F = set(start.members)
    deg = degrees(start)
    trace = ConversionTrace()

    def g() -> int:
        return sum(max(d - 2, 0) for d in deg)

    def drop(e: int) -> None:
        F.discard(e)
        a, b = G.edges[e]
        deg[a] -= 1
        deg[b] -= 1

    def triangle_edge_at(tri, x: int) -> int:
        return min(G.edge_index(x, y) for y in tri if y != x)

    while True:
        v = next((x for x in range(G.n) if deg[x] > 2), None)
        if v is None:
            break
        vw = min(e for _, e in G.adjacency[v] if e in F)
        w = G.other(vw, v)
        before = g()
        tris = triangle_components(G.edge_set(F - {vw}))
        if not tris:
            drop(vw)
            trace.steps.append(ConversionStep("i", (), (vw,), before, g()))
            continue
        tri = _triangle_at(tris, v)
        if tri is not None:
            e = triangle_edge_at(tri, v)
            drop(e)
            trace.steps.append(ConversionStep("ii", (), (e,), before, g()))
            continue
        tri = _triangle_at(tris, w)
        if tri is None:
            raise InternalInvariant(f"removing {vw} creates triangles {tris} away from both endpoints")
        if deg[w] != 3:
            raise InternalInvariant(f"case (iii) at vertex {w} with degree {deg[w]} != 3")
        e = triangle_edge_at(tri, w)
        drop(e)
        trace.steps.append(ConversionStep("iii", (), (e,), before, g()))

    M = G.edge_set(F)
    if triangle_components(M):
        raise InternalInvariant("conversion produced a triangle component")
    return TwoMatching(M), trace


def _check_coverable(G: Graph, triangle_free: bool) -> None:
    for v in range(G.n):
        if G.degree(v) <= 1:
            raise NoCoverExists(f"vertex {v} has degree {G.degree(v)}", witness=v)
    if triangle_free:
        for comp in connected_components(G.full()):
            if len(comp) < 4:
                raise NoCoverExists(
                    f"component {list(comp)} is a triangle; its only 2-edge-cover is a triangle",
                    witness=comp,
                )


def min_triangle_free_cover(G: Graph, budget: SolverBudget | None = None) -> tuple[Cover, bool]:
    """Minimum triangle-free 2-edge-cover and whether its minimality is proven.

    Uses ``2n - |M*|`` duality with a maximum triangle-free 2-matching
    ``M*``; the flag is false when the matching search hit its budget.
    """
    _check_coverable(G, triangle_free=True)
    M = max_triangle_free_two_matching(G, budget)
    C, _ = matching_to_cover(G, M)
    if M.optimal and len(C) != 2 * G.n - len(M):
        raise InternalInvariant(f"cover size {len(C)} != 2n - |M| = {2 * G.n - len(M)}")
    return C, M.optimal


def min_cover(G: Graph, budget: SolverBudget | None = None) -> Cover:
    """Minimum 2-edge-cover, triangles allowed."""
    _check_coverable(G, triangle_free=False)
    M = max_two_matching(G, budget)
    chosen, _ = _expand(G, set(M.edges.members), allow_triangles=True)
    return Cover(G.edge_set(chosen), optimal=M.optimal)
