"""End-to-end 2-ECSS pipeline: min triangle-free cover, rewrite, glue, verify.

The gluing step is a simple augmentation heuristic with no worst-case
guarantee of its own.  The report carries the cover-based bound
``(13/10 + t/30 - b/20) |H'|`` for comparison and, when an exact optimum is
supplied, the measured ratio.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .canonical import check_semi_canonical, semi_canonicalize
from .cover import Cover, min_triangle_free_cover
from .errors import EpsilonOutOfRange, Infeasible, InternalInvariant, PreconditionViolated, StructureViolation
from .graph import (
    EdgeSet,
    Graph,
    connected_components,
    find_bridges,
    is_two_edge_connected,
    triangle_components,
    two_edge_classes,
)
from .matching import SolverBudget

log = logging.getLogger(__name__)

DEFAULT_EPSILON = Fraction(1, 24)
RECORD_FIELDS = (
    "cover_size",
    "canonical_size",
    "bridge_fraction",
    "triangle_fraction",
    "bound",
    "solution_size",
    "optimal",
    "opt",
    "ratio",
)


def bound_value(size: int, b, t) -> Fraction:
    """``(13/10 + t/30 - b/20) * size`` in exact rationals."""
    b, t = Fraction(b), Fraction(t)
    if not (0 <= b <= 1 and 0 <= t <= 1):
        raise ValueError(f"fractions must lie in [0, 1], got b={b}, t={t}")
    return (Fraction(13, 10) + t / 30 - b / 20) * size


@dataclass
class PipelineReport:
    cover_size: int
    canonical_size: int
    bridge_fraction: Fraction
    triangle_fraction: Fraction
    bound: Fraction
    solution_size: int
    optimal: bool
    opt: int | None = None
    ratio: Fraction | None = None
    rewrite_steps: int = 0
    structure_violation: str | None = None

    def with_opt(self, opt: int) -> PipelineReport:
        self.opt = opt
        self.ratio = Fraction(self.solution_size, opt)
        return self

    def to_record(self) -> dict:
        rec = {}
        for name in RECORD_FIELDS:
            value = getattr(self, name)
            rec[name] = str(value) if isinstance(value, Fraction) else value
        return rec

    def to_text(self) -> str:
        rows = [(name, getattr(self, name)) for name in RECORD_FIELDS]
        rows.append(("rewrite_steps", self.rewrite_steps))
        if self.structure_violation:
            rows.append(("structure_violation", self.structure_violation))
        return "".join(f"{k}: {'-' if v is None else v}\n" for k, v in rows)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


def verify_solution(G: Graph, S) -> Verdict:
    """Check that ``S`` (an edge set or vertex pairs) is a 2-edge-connected spanning subgraph of ``G``."""
    if not isinstance(S, EdgeSet):
        eids = []
        for u, v in S:
            e = G.edge_index(u, v) if 0 <= u < G.n and 0 <= v < G.n else None
            if e is None:
                return Verdict(False, "foreign-edge", (u, v))
            eids.append(e)
        S = G.edge_set(eids)
    comps = connected_components(S)
    if len(comps) > 1:
        lonely = [c[0] for c in comps if len(c) == 1]
        if lonely:
            return Verdict(False, "isolated-vertex", lonely[0])
        return Verdict(False, "disconnected", comps[1])
    bridges = find_bridges(S)
    if bridges:
        return Verdict(False, "bridge", G.edges[min(bridges)])
    return Verdict(True)


def _infeasibility_witness(G: Graph) -> Infeasible:
    full = G.full()
    comps = connected_components(full)
    if len(comps) > 1:
        return Infeasible(f"graph is disconnected; component {list(comps[1])} is unreachable", comps[1])
    bridge = G.edges[min(find_bridges(full))]
    return Infeasible(f"graph has bridge {bridge[0]}-{bridge[1]}", bridge)


def _leaf_choice(G: Graph, S: set[int], comp, cls, bridges) -> list[int]:
    # bridge tree over 2-edge-connected classes
    tree: dict[int, list[int]] = {}
    for e in bridges:
        a, b = (cls[x] for x in G.edges[e])
        tree.setdefault(a, []).append(b)
        tree.setdefault(b, []).append(a)
    members: dict[int, list[int]] = {}
    for v in range(G.n):
        members.setdefault(cls[v], []).append(v)
    leaves = sorted((c for c, nb in tree.items() if len(nb) == 1), key=lambda c: members[c][0])
    fallback = None
    for leaf in leaves:
        depth = {leaf: 0}
        queue = [leaf]
        for c in queue:
            for d in tree[c]:
                if d not in depth:
                    depth[d] = depth[c] + 1
                    queue.append(d)
        best = None
        for v in members[leaf]:
            for w, e in G.adjacency[v]:
                if e in S or cls[w] == leaf:
                    continue
                if comp[w] == comp[v]:
                    key = (-depth[cls[w]], e)
                    if best is None or key < best:
                        best = key
                elif fallback is None or e < fallback:
                    fallback = e
        if best is not None:
            return [best[1]]
    if fallback is None:
        raise Infeasible("no edge leaves a leaf block; graph is not 2-edge-connected")
    return [fallback]


def _component_choice(G: Graph, S: set[int], comp) -> list[int]:
    sizes: dict[int, int] = {}
    for c in comp:
        sizes[c] = sizes.get(c, 0) + 1
    first_vertex: dict[int, int] = {}
    for v, c in enumerate(comp):
        first_vertex.setdefault(c, v)
    smallest = min(sizes, key=lambda c: (sizes[c], first_vertex[c]))
    links: dict[int, list[int]] = {}
    for v in range(G.n):
        if comp[v] != smallest:
            continue
        for w, e in G.adjacency[v]:
            if comp[w] != smallest and e not in S:
                links.setdefault(comp[w], []).append(e)
    if not links:
        raise Infeasible(f"component containing vertex {first_vertex[smallest]} has no outgoing edge")
    for other in sorted(links, key=lambda c: first_vertex[c]):
        es = sorted(links[other])
        if len(es) >= 2:
            return es[:2]
    return [min(e for es in links.values() for e in es)]


def glue(G: Graph, Hc, *, check: bool = True, minimalize: bool = False) -> EdgeSet:
    """Augment a 2-edge-cover into a 2-edge-connected spanning subgraph.

    While the current set has a bridge, a non-solution edge is added from
    a leaf 2-edge-connected class to the farthest class of the same
    component it can reach (or, failing that, to another component).  When
    it is bridgeless but disconnected, the smallest component is joined to
    another by two edges where possible, else by one.  Every addition
    lowers ``(components, bridges)`` lexicographically.

    The result contains ``Hc``; ``minimalize`` additionally drops edges
    (highest index first) whose removal keeps it 2-edge-connected.
    """
    H = Hc.edges if isinstance(Hc, Cover) else Hc
    if not is_two_edge_connected(G.full()):
        raise _infeasibility_witness(G)
    if check:
        report = check_semi_canonical(G, H)
        if not report.ok:
            raise PreconditionViolated("cover is not semi-canonical:\n" + report.to_text())
    S = set(H.members)
    while True:
        comp, cls, bridges = two_edge_classes(G.edge_set(S))
        if bridges:
            add = _leaf_choice(G, S, comp, cls, bridges)
        elif max(comp) > 0:
            add = _component_choice(G, S, comp)
        else:
            break
        S.update(add)
    if minimalize:
        for e in sorted(S, reverse=True):
            if is_two_edge_connected(G.edge_set(S - {e})):
                S.discard(e)
    return G.edge_set(S)


def _fractions(Hp: EdgeSet) -> tuple[Fraction, Fraction]:
    size = len(Hp)
    b = Fraction(len(find_bridges(Hp)), size)
    tri = 3 * len(triangle_components(Hp))
    return b, Fraction(tri, size)


def solve(
    G: Graph,
    eps=DEFAULT_EPSILON,
    budget: SolverBudget | None = None,
    *,
    strict_structure: bool = False,
    minimalize: bool = False,
) -> tuple[EdgeSet, PipelineReport]:
    """Minimum triangle-free 2-edge-cover -> semi-canonical cover -> 2ECSS.

    A :class:`StructureViolation` from the rewrite step is re-raised when
    ``strict_structure`` is set; otherwise gluing proceeds from the last
    valid cover and the report records the violation.  ``eps`` only
    matters for reporting; this pipeline does not reduce to structured
    graphs.
    """
    if Fraction(eps) <= 0:
        raise EpsilonOutOfRange(f"epsilon must be positive, got {eps}")
    if not is_two_edge_connected(G.full()):
        raise _infeasibility_witness(G)
    H, optimal = min_triangle_free_cover(G, budget)
    violation = None
    try:
        Hp, trace = semi_canonicalize(G, H, check_structure=False)
        steps = len(trace)
    except StructureViolation as exc:
        if strict_structure:
            raise
        log.info("rewrite stopped: %s", exc)
        Hp, steps = exc.partial, len(exc.trace)
        violation = f"{exc.kind} {exc.witness}"
    b, t = _fractions(Hp.edges)
    if t != 0:
        raise InternalInvariant("rewritten cover has triangle components")
    S = glue(G, Hp, check=False, minimalize=minimalize)
    verdict = verify_solution(G, S)
    if not verdict:
        raise InternalInvariant(f"glue produced an invalid solution: {verdict}")
    report = PipelineReport(
        cover_size=len(H),
        canonical_size=len(Hp),
        bridge_fraction=b,
        triangle_fraction=t,
        bound=bound_value(len(Hp), b, t),
        solution_size=len(S),
        optimal=optimal,
        rewrite_steps=steps,
        structure_violation=violation,
    )
    return S, report


@dataclass(frozen=True)
class LowerBound:
    value: int
    certified: bool


def lower_bound(G: Graph, budget: SolverBudget | None = None) -> LowerBound:
    """Size of a minimum triangle-free 2-edge-cover; a lower bound on OPT when certified."""
    if G.n < 4:
        raise PreconditionViolated(f"lower bound needs n >= 4, got {G.n}")
    C, optimal = min_triangle_free_cover(G, budget)
    return LowerBound(len(C), optimal)
