"""Semi-canonical 2-edge-covers: a checker and a size-non-increasing rewrite system.

Conditions checked:

1. every 2EC component is a cycle or has at least 7 edges;
2. every leaf block has at least 6 edges, every inner block at least 4;
3. no swap of ``k <= 3`` cover edges (one of them in a triangle component)
   for ``k`` non-cover edges yields a 2-edge-cover with fewer components;
4. no 2-for-2 swap merges two 4-cycle components into one.

The rewrite system repeatedly applies the first applicable operation among
(a) drop a redundant edge, (b) merge two 4-cycles, (c) fix a small
non-cycle 2EC component, (d) fix a small leaf block, (e) fix a triangle
inner block.  Each step strictly decreases ``(size, components, bridges)``
lexicographically, which is checked at run time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .cover import Cover
from .errors import InternalInvariant, PreconditionViolated, StructureViolation
from .graph import (
    Block,
    Decomposition,
    EdgeSet,
    Graph,
    TwoECComponent,
    connected_components,
    count_components,
    decompose,
    degrees,
    find_bridges,
    is_two_vertex_connected,
    triangle_components,
)
from .structured import find_irrelevant_edges, find_non_isolating_two_cuts

DEFAULT_SEARCH_CAP = 200


@dataclass(frozen=True)
class Violation:
    condition: int
    witness: object
    description: str


@dataclass
class ViolationReport:
    violations: list[Violation] = field(default_factory=list)
    # False when the swap searches for conditions 3/4 were skipped (graph too large)
    verified: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations

    def conditions(self) -> set[int]:
        return {v.condition for v in self.violations}

    def to_text(self) -> str:
        if not self.violations:
            lines = ["semi-canonical: yes" if self.verified else "semi-canonical: not verified (swap search skipped)"]
        else:
            lines = [f"condition {v.condition}: {v.description}" for v in self.violations]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RewriteStep:
    op: str
    removed: tuple[int, ...]
    added: tuple[int, ...]
    before: tuple[int, int, int]
    after: tuple[int, int, int]
    note: str = ""


@dataclass
class RewriteTrace:
    graph: Graph
    steps: list[RewriteStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def ops(self) -> list[str]:
        return [s.op for s in self.steps]

    def to_log(self) -> str:
        def fmt(eids):
            return "[" + ",".join(f"{u}-{v}" for u, v in (self.graph.edges[e] for e in eids)) + "]"

        lines = []
        for s in self.steps:
            line = (
                f"op={s.op} removed={fmt(s.removed)} added={fmt(s.added)} "
                f"potential=({s.before[0]},{s.before[1]},{s.before[2]})"
                f"->({s.after[0]},{s.after[1]},{s.after[2]})"
            )
            if s.note:
                line += f" note={s.note}"
            lines.append(line)
        return "".join(line + "\n" for line in lines)


def _edge_set(G: Graph, H) -> EdgeSet:
    if isinstance(H, Cover):
        return H.edges
    if isinstance(H, EdgeSet):
        return H
    return G.edge_set(H)


def potential(F: EdgeSet) -> tuple[int, int, int]:
    return len(F), count_components(F), len(find_bridges(F))


def _is_cover(G: Graph, chosen: Iterable[int]) -> bool:
    deg = [0] * G.n
    for e in chosen:
        u, v = G.edges[e]
        deg[u] += 1
        deg[v] += 1
    return min(deg) >= 2


# ---------------------------------------------------------------------------
# recognizers


def _pair_degrees(pairs) -> dict[int, int]:
    deg: dict[int, int] = {}
    for u, v in pairs:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return deg


def recognize_bowtie(pairs) -> tuple[int, int, int, int, int] | None:
    """Label a bowtie as ``(u, v1, v2, v3, v4)`` with triangles ``u v1 v2`` and ``u v3 v4``."""
    pairs = [tuple(p) for p in pairs]
    deg = _pair_degrees(pairs)
    if len(deg) != 5 or len(pairs) != 6:
        return None
    centers = [x for x, d in deg.items() if d == 4]
    if len(centers) != 1 or any(d != 2 for x, d in deg.items() if x != centers[0]):
        return None
    u = centers[0]
    rim = sorted(tuple(sorted(p)) for p in pairs if u not in p)
    if len(rim) != 2 or set(rim[0]) & set(rim[1]):
        return None
    (v1, v2), (v3, v4) = rim
    return u, v1, v2, v3, v4


def recognize_k23(pairs) -> tuple[tuple[int, int], tuple[int, int, int]] | None:
    """Label a K2,3 as ``((v1, v2), (w1, w2, w3))``."""
    pairs = [tuple(p) for p in pairs]
    deg = _pair_degrees(pairs)
    if len(deg) != 5 or len(pairs) != 6:
        return None
    big = sorted(x for x, d in deg.items() if d == 3)
    small = sorted(x for x, d in deg.items() if d == 2)
    if len(big) != 2 or len(small) != 3:
        return None
    edges = {frozenset(p) for p in pairs}
    if any(frozenset((w, b)) not in edges for w in small for b in big):
        return None
    return (big[0], big[1]), (small[0], small[1], small[2])


# ---------------------------------------------------------------------------
# swap searches


def _labels(G: Graph, chosen) -> list[int]:
    comps = connected_components(G.edge_set(chosen))
    label = [0] * G.n
    for i, comp in enumerate(comps):
        for v in comp:
            label[v] = i
    return label


def _swap_improves(G: Graph, H: frozenset[int], F, Fp, cc: int) -> bool:
    result = (H - set(F)) | set(Fp)
    return _is_cover(G, result) and count_components(G.edge_set(result)) < cc


def find_triangle_swap(
    G: Graph, H: frozenset[int], *, prune: bool = True
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """First ``(F, F')`` violating condition 3, or None."""
    Hs = G.edge_set(H)
    tri_edges = set()
    for tri in triangle_components(Hs):
        for a, b in combinations(tri, 2):
            tri_edges.add(G.edge_index(a, b))
    if not tri_edges:
        return None
    cc = count_components(Hs)
    label = _labels(G, H)
    deg = degrees(Hs)
    outside = [e for e in range(G.m) if e not in H]
    for k in (1, 2, 3):
        for F in combinations(sorted(H), k):
            if not tri_edges.intersection(F):
                continue
            need = list(deg)
            for e in F:
                u, v = G.edges[e]
                need[u] -= 1
                need[v] -= 1
            short = {v for v in range(G.n) if need[v] < 2}
            if sum(2 - need[v] for v in short) > 2 * k:
                continue
            if prune:
                touched = {label[G.edges[e][0]] for e in F}
                cands = [e for e in outside if label[G.edges[e][0]] in touched or label[G.edges[e][1]] in touched]
            else:
                cands = outside
            for Fp in combinations(cands, k):
                if _swap_improves(G, H, F, Fp, cc):
                    return F, Fp
    return None


def _four_cycles(D: Decomposition) -> list[TwoECComponent]:
    return [c for c in D.twoec_components if c.cycle_length == 4]


def find_four_cycle_merge(
    G: Graph, H: frozenset[int], D: Decomposition | None = None, *, prune: bool = True
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """First ``(F, F')`` violating condition 4, or None.

    With ``prune`` the added pair is drawn only from edges between the two
    cycles; without it every pair of non-cover edges is tried and filtered
    by the definition.
    """
    D = D or decompose(G.edge_set(H))
    cycles = _four_cycles(D)
    if len(cycles) < 2:
        return None
    cc = len(D.components)
    outside = [e for e in range(G.m) if e not in H]
    for C1, C2 in combinations(cycles, 2):
        s1, s2 = set(C1.vertices), set(C2.vertices)

        def crosses(e: int) -> bool:
            u, v = G.edges[e]
            return (u in s1 and v in s2) or (u in s2 and v in s1)

        pool = [e for e in outside if crosses(e)] if prune else outside
        if prune and len(pool) < 2:
            continue
        inner = sorted(C1.edges | C2.edges)
        for F in combinations(inner, 2):
            for Fp in combinations(pool, 2):
                if not prune and not all(crosses(e) for e in Fp):
                    continue
                if _swap_improves(G, H, F, Fp, cc):
                    return F, Fp
    return None


# ---------------------------------------------------------------------------
# checker


def check_semi_canonical(
    G: Graph, H, *, prune: bool = True, search_cap: int = DEFAULT_SEARCH_CAP
) -> ViolationReport:
    """Report every violated condition with a witness.

    The swap searches behind conditions 3 and 4 are skipped for graphs with
    more than ``search_cap`` edges; the report is then marked unverified.
    """
    Hs = _edge_set(G, H)
    if not _is_cover(G, Hs.members):
        raise PreconditionViolated("H is not a 2-edge-cover")
    D = decompose(Hs)
    report = ViolationReport()
    for comp in D.twoec_components:
        if not comp.is_cycle and len(comp.edges) < 7:
            report.violations.append(Violation(
                1, comp, f"2EC component on {list(comp.vertices)} is not a cycle and has {len(comp.edges)} < 7 edges"))
    for block in D.blocks:
        limit = 6 if block.is_leaf else 4
        if len(block.edges) < limit:
            kind = "leaf" if block.is_leaf else "inner"
            report.violations.append(Violation(
                2, block, f"{kind} block on {list(block.vertices)} has {len(block.edges)} < {limit} edges"))
    if G.m > search_cap:
        report.verified = False
        return report
    H = Hs.members
    swap = find_triangle_swap(G, H, prune=prune)
    if swap is not None:
        report.violations.append(Violation(
            3, swap, f"swapping out {_pairs(G, swap[0])} for {_pairs(G, swap[1])} reduces components"))
    merge = find_four_cycle_merge(G, H, D, prune=prune)
    if merge is not None:
        report.violations.append(Violation(
            4, merge, f"swapping out {_pairs(G, merge[0])} for {_pairs(G, merge[1])} merges two 4-cycles"))
    return report


def _pairs(G: Graph, eids) -> list[tuple[int, int]]:
    return [G.edges[e] for e in eids]


# ---------------------------------------------------------------------------
# rewrite system


class _Rewriter:
    def __init__(self, G: Graph, H: frozenset[int]):
        self.G = G
        self.H = set(H)
        self.trace = RewriteTrace(G)

    def edge(self, u: int, v: int) -> int:
        e = self.G.edge_index(u, v)
        if e is None:
            raise InternalInvariant(f"expected edge {u}-{v} in G")
        return e

    def apply(self, op: str, removed, added, note: str = "") -> None:
        G = self.G
        before = potential(G.edge_set(self.H))
        new = (self.H - set(removed)) | set(added)
        Fs = G.edge_set(new)
        if not _is_cover(G, new):
            raise InternalInvariant(f"operation {op} broke the 2-edge-cover property")
        if triangle_components(Fs):
            raise InternalInvariant(f"operation {op} created a triangle component")
        after = potential(Fs)
        if not after < before:
            raise InternalInvariant(f"operation {op} did not decrease the potential: {before} -> {after}")
        self.H = new
        self.trace.steps.append(RewriteStep(op, tuple(sorted(removed)), tuple(sorted(added)), before, after, note))

    # (a)
    def redundant_edge(self) -> int | None:
        G, H = self.G, self.H
        deg = degrees(G.edge_set(H))
        for e in sorted(H):
            u, v = G.edges[e]
            if deg[u] >= 3 and deg[v] >= 3 and not triangle_components(G.edge_set(H - {e})):
                return e
        return None

    # (c)
    def fix_small_component(self, comp: TwoECComponent) -> None:
        G = self.G
        if len(comp.vertices) != 5 or len(comp.edges) != 6:
            raise InternalInvariant(
                f"small non-cycle 2EC component with {len(comp.vertices)} vertices and {len(comp.edges)} edges")
        pairs = [G.edges[e] for e in comp.edges]
        inside = set(comp.vertices)
        bow = recognize_bowtie(pairs)
        if bow is not None:
            u, v1, v2, v3, v4 = bow
            links = sorted(
                e for a in (v1, v2) for b in (v3, v4) if (e := G.edge_index(a, b)) is not None
            )
            if links:
                a, b = G.edges[links[0]]
                self.apply("c1", (self.edge(u, a), self.edge(u, b)), (links[0],), "five-cycle")
                return
            out = sorted(
                e for w in (v1, v2, v3, v4) for z, e in G.adjacency[w] if z not in inside
            )
            if not out:
                raise StructureViolation(
                    f"bowtie centre {u} separates {[v1, v2, v3, v4]} from the rest", "cut-vertex", (u,))
            e = out[0]
            w = next(x for x in G.edges[e] if x in inside)
            self.apply("c1", (self.edge(u, w),), (e,), "swap")
            return
        k23 = recognize_k23(pairs)
        if k23 is None:
            raise InternalInvariant(f"5-vertex 6-edge component {sorted(inside)} is neither a bowtie nor K2,3")
        (v1, v2), ws = k23
        if all(G.degree(w) == 2 for w in ws):
            raise StructureViolation(
                f"K2,3 on {sorted(inside)} has all middle vertices of degree 2", "contractible-k23",
                tuple(sorted(inside)))
        chords = sorted(e for a, b in combinations(ws, 2) if (e := G.edge_index(a, b)) is not None)
        if chords:
            wi, wj = G.edges[chords[0]]
            self.apply("c2", (self.edge(v2, wi), self.edge(v1, wj)), (chords[0],), "five-cycle")
            return
        out = sorted(e for w in ws for z, e in G.adjacency[w] if z not in inside)
        if not out:
            raise InternalInvariant(f"K2,3 on {sorted(inside)} has a degree>=3 middle vertex but no outside edge")
        e = out[0]
        wi = next(x for x in G.edges[e] if x in inside)
        self.apply("c2", (self.edge(v1, wi),), (e,), "swap")

    def _cycle_order(self, block: Block, v1: int) -> list[int]:
        G = self.G
        adj: dict[int, list[int]] = {v: [] for v in block.vertices}
        for e in block.edges:
            a, b = G.edges[e]
            adj[a].append(b)
            adj[b].append(a)
        if any(len(x) != 2 for x in adj.values()):
            raise InternalInvariant(f"small block on {list(block.vertices)} is not a cycle")
        order = [v1, min(adj[v1])]
        while len(order) < len(block.vertices):
            prev, cur = order[-2], order[-1]
            order.append(next(x for x in adj[cur] if x != prev))
        return order

    # (d), and (e) through it
    def fix_small_block(self, block: Block, v1: int, op: str) -> None:
        G = self.G
        order = self._cycle_order(block, v1)
        inside = set(block.vertices)
        ell = len(order)
        v2, vl = order[1], order[-1]
        outs = sorted(
            e for w in (v2, vl) for z, e in G.adjacency[w] if z not in inside and e not in self.H
        )
        if outs:
            e = outs[0]
            w = next(x for x in G.edges[e] if x in (v2, vl))
            self.apply(op, (self.edge(v1, w),), (e,), "d1")
            return
        if ell == 3 or not G.has_edge(v2, vl):
            raise StructureViolation(
                f"cycle {order} keeps >= 4/5 of its edges in every solution", "contractible-cycle", tuple(order))
        middle = order[2:-1]
        exits = sorted(e for w in middle for z, e in G.adjacency[w] if z not in inside)
        if not exits:
            raise StructureViolation(
                f"vertex {v1} separates {order[1:]} from the rest", "cut-vertex", (v1,))
        e = exits[0]
        x = next(y for y in G.edges[e] if y in inside)
        if x != order[2]:
            order = [order[0]] + order[1:][::-1]
            v2, vl = order[1], order[-1]
        v3 = order[2]
        if x != v3:
            raise InternalInvariant(f"exit vertex {x} is not adjacent to an end of the cycle {order}")
        self.apply(op, (self.edge(v1, vl), self.edge(v2, v3)), (e, self.edge(v2, vl)), "d2")

    def step(self) -> bool:
        G = self.G
        e = self.redundant_edge()
        if e is not None:
            self.apply("a", (e,), ())
            return True
        H = frozenset(self.H)
        D = decompose(G.edge_set(H))
        merge = find_four_cycle_merge(G, H, D)
        if merge is not None:
            self.apply("b", merge[0], merge[1])
            return True
        for comp in D.twoec_components:
            if not comp.is_cycle and len(comp.edges) < 7:
                self.fix_small_component(comp)
                return True
        for block in D.blocks:
            if block.is_leaf and len(block.edges) <= 5:
                bridge = block.bridges[0]
                v1 = next(x for x in G.edges[bridge] if x in block.vertices)
                self.fix_small_block(block, v1, "d")
                return True
        for block in D.blocks:
            if not block.is_leaf and len(block.edges) <= 3:
                inside = set(block.vertices)
                feet = {x for b in block.bridges for x in G.edges[b] if x in inside}
                if len(feet) != 1:
                    raise InternalInvariant(
                        f"triangle inner block {list(block.vertices)} has bridges at {sorted(feet)}")
                self.fix_small_block(block, feet.pop(), "e")
                return True
        return False


def passes_structure_checks(G: Graph) -> bool:
    return is_two_vertex_connected(G) and not find_irrelevant_edges(G) and not find_non_isolating_two_cuts(G)


def semi_canonicalize(G: Graph, H, *, check_structure: bool = True) -> tuple[Cover, RewriteTrace]:
    """Rewrite a triangle-free 2-edge-cover into a semi-canonical one of no larger size.

    With ``check_structure`` the graph must be 2-vertex-connected and free
    of irrelevant edges and non-isolating 2-vertex-cuts.  Configurations
    that only a non-structured graph can contain raise
    :class:`StructureViolation` naming the offending vertices.
    """
    Hs = _edge_set(G, H)
    if not _is_cover(G, Hs.members):
        raise PreconditionViolated("H is not a 2-edge-cover")
    if triangle_components(Hs):
        raise PreconditionViolated(f"H has triangle components {triangle_components(Hs)}")
    if check_structure and not passes_structure_checks(G):
        raise PreconditionViolated("G fails the decidable structured-graph checks")
    rw = _Rewriter(G, Hs.members)
    optimal = H.optimal if isinstance(H, Cover) else True
    try:
        while rw.step():
            pass
    except StructureViolation as exc:
        # the cover reached so far is still a valid triangle-free 2-edge-cover
        exc.partial = Cover(G.edge_set(rw.H), optimal=optimal)
        exc.trace = rw.trace
        raise
    return Cover(G.edge_set(rw.H), optimal=optimal), rw.trace


def replay(trace: RewriteTrace, H: EdgeSet) -> list[EdgeSet]:
    """Every intermediate edge set of a trace, starting from ``H``."""
    states = [H]
    cur = set(H.members)
    for s in trace.steps:
        cur = (cur - set(s.removed)) | set(s.added)
        states.append(H.graph.edge_set(cur))
    return states
