"""Simple undirected graphs, edge subsets, and structural decompositions.

Vertices are ``0..n-1``; an edge is identified by its position in the
construction-order edge list.  Every algorithm in the package manipulates
:class:`EdgeSet` values, i.e. subsets of a fixed graph's edge indices.

Ordering rule used by all decompositions: components, blocks and 2EC
components are sorted by their smallest vertex; vertex tuples are sorted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ParallelEdge, ParseError, SelfLoop, VertexOutOfRange

Pair = tuple[int, int]


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("n", "edges", "adjacency", "_index")

    def __init__(self, n: int, edges: Sequence[Pair]):
        if n < 1:
            raise VertexOutOfRange(f"vertex count must be >= 1, got {n}")
        index: dict[Pair, int] = {}
        adjacency: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        clean = []
        for eid, (u, v) in enumerate(edges):
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}", (u, v))
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}: ({u}, {v})", (u, v))
            key = (u, v) if u < v else (v, u)
            if key in index:
                raise ParallelEdge(f"edge ({u}, {v}) duplicates edge {index[key]}", (u, v))
            index[key] = eid
            adjacency[u].append((v, eid))
            adjacency[v].append((u, eid))
            clean.append((u, v))
        self.n = n
        self.edges: tuple[Pair, ...] = tuple(clean)
        self.adjacency: tuple[tuple[tuple[int, int], ...], ...] = tuple(tuple(a) for a in adjacency)
        self._index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_index(self, u: int, v: int) -> int | None:
        return self._index.get((u, v) if u < v else (v, u))

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_index(u, v) is not None

    def other(self, eid: int, v: int) -> int:
        a, b = self.edges[eid]
        return b if a == v else a

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> list[int]:
        return [w for w, _ in self.adjacency[v]]

    def full(self) -> EdgeSet:
        return EdgeSet(self, frozenset(range(self.m)))

    def empty(self) -> EdgeSet:
        return EdgeSet(self, frozenset())

    def edge_set(self, eids: Iterable[int]) -> EdgeSet:
        return EdgeSet(self, frozenset(eids))

    def edge_set_from_pairs(self, pairs: Iterable[Pair]) -> EdgeSet:
        eids = []
        for u, v in pairs:
            eid = self.edge_index(u, v)
            if eid is None:
                raise KeyError(f"({u}, {v}) is not an edge of the graph")
            eids.append(eid)
        return self.edge_set(eids)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edge_pairs: Iterable[Pair]) -> Graph:
    return Graph(n, list(edge_pairs))


@dataclass(frozen=True)
class EdgeSet:
    """A subset of one graph's edges, addressed by edge index."""

    graph: Graph
    members: frozenset[int]

    def __post_init__(self):
        m = self.graph.m
        for eid in self.members:
            if not 0 <= eid < m:
                raise IndexError(f"edge index {eid} out of range for {self.graph!r}")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __contains__(self, eid) -> bool:
        return eid in self.members

    def _same(self, other: EdgeSet) -> None:
        if other.graph is not self.graph and other.graph != self.graph:
            raise ValueError("edge sets belong to different graphs")

    def __or__(self, other: EdgeSet) -> EdgeSet:
        self._same(other)
        return EdgeSet(self.graph, self.members | other.members)

    def __sub__(self, other: EdgeSet) -> EdgeSet:
        self._same(other)
        return EdgeSet(self.graph, self.members - other.members)

    def __and__(self, other: EdgeSet) -> EdgeSet:
        self._same(other)
        return EdgeSet(self.graph, self.members & other.members)

    def with_edges(self, *eids: int) -> EdgeSet:
        return EdgeSet(self.graph, self.members.union(eids))

    def without_edges(self, *eids: int) -> EdgeSet:
        return EdgeSet(self.graph, self.members.difference(eids))

    def complement(self) -> EdgeSet:
        return EdgeSet(self.graph, frozenset(range(self.graph.m)) - self.members)

    def pairs(self) -> list[Pair]:
        return [self.graph.edges[e] for e in sorted(self.members)]

    def __repr__(self) -> str:
        return f"EdgeSet({sorted(self.members)})"


# ---------------------------------------------------------------------------
# degree and connectivity


def degree_in(F: EdgeSet, v: int) -> int:
    return sum(1 for _, e in F.graph.adjacency[v] if e in F.members)


def degrees(F: EdgeSet) -> list[int]:
    deg = [0] * F.graph.n
    edges = F.graph.edges
    for e in F.members:
        u, v = edges[e]
        deg[u] += 1
        deg[v] += 1
    return deg


def _local_adjacency(n: int, edges: Sequence[Pair], members: Iterable[int]) -> list[list[tuple[int, int]]]:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for e in sorted(members):
        u, v = edges[e]
        adj[u].append((v, e))
        adj[v].append((u, e))
    return adj


def _component_labels(n: int, adj: Sequence[Sequence[tuple[int, int]]]) -> list[int]:
    """Label vertices by component; labels follow increasing minimum vertex."""
    label = [-1] * n
    count = 0
    for s in range(n):
        if label[s] != -1:
            continue
        label[s] = count
        stack = [s]
        while stack:
            x = stack.pop()
            for y, _ in adj[x]:
                if label[y] == -1:
                    label[y] = count
                    stack.append(y)
        count += 1
    return label


def _group(label: Sequence[int]) -> list[tuple[int, ...]]:
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(label):
        groups.setdefault(c, []).append(v)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def connected_components(F: EdgeSet) -> list[tuple[int, ...]]:
    """Vertex partition of the spanning subgraph ``(V, F)``."""
    G = F.graph
    return _group(_component_labels(G.n, _local_adjacency(G.n, G.edges, F.members)))


def count_components(F: EdgeSet) -> int:
    G = F.graph
    return max(_component_labels(G.n, _local_adjacency(G.n, G.edges, F.members))) + 1


def _bridges(n: int, adj: Sequence[Sequence[tuple[int, int]]]) -> set[int]:
    # iterative low-link DFS; skips only the tree edge by id, so it stays
    # correct for any edge multiset
    disc = [-1] * n
    low = [0] * n
    out: set[int] = set()
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for w, e in it:
                if e == pe:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, e, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < low[v]:
                    low[v] = disc[w]
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
                if low[v] > disc[p]:
                    out.add(pe)
    return out


def find_bridges(F: EdgeSet) -> frozenset[int]:
    """Edges of ``F`` whose removal increases the number of components."""
    G = F.graph
    return frozenset(_bridges(G.n, _local_adjacency(G.n, G.edges, F.members)))


def is_two_edge_connected(F: EdgeSet) -> bool:
    """True iff ``(V, F)`` is connected on the whole vertex set and bridgeless."""
    G = F.graph
    adj = _local_adjacency(G.n, G.edges, F.members)
    if max(_component_labels(G.n, adj)) != 0:
        return False
    return not _bridges(G.n, adj)


def cut_vertices(G: Graph) -> set[int]:
    n = G.n
    adj = G.adjacency
    disc = [-1] * n
    low = [0] * n
    cuts: set[int] = set()
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for w, e in it:
                if e == pe:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, e, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < low[v]:
                    low[v] = disc[w]
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
                if p == root:
                    root_children += 1
                elif low[v] >= disc[p]:
                    cuts.add(p)
        if root_children > 1:
            cuts.add(root)
    return cuts


def is_connected(G: Graph) -> bool:
    return max(_component_labels(G.n, G.adjacency)) == 0


def is_two_vertex_connected(G: Graph) -> bool:
    if G.n < 3 or not is_connected(G):
        return False
    return not cut_vertices(G)


# ---------------------------------------------------------------------------
# decomposition


@dataclass(frozen=True)
class Block:
    """Maximal 2-edge-connected piece (>= 3 vertices) of a component that has bridges."""

    vertices: tuple[int, ...]
    edges: frozenset[int]
    bridges: tuple[int, ...]

    @property
    def is_leaf(self) -> bool:
        return len(self.bridges) == 1


@dataclass(frozen=True)
class TwoECComponent:
    vertices: tuple[int, ...]
    edges: frozenset[int]
    # i when the component is a cycle of length i, else None
    cycle_length: int | None

    @property
    def is_cycle(self) -> bool:
        return self.cycle_length is not None

    @property
    def is_triangle(self) -> bool:
        return self.cycle_length == 3


@dataclass(frozen=True)
class Decomposition:
    components: tuple[tuple[int, ...], ...]
    bridges: frozenset[int]
    blocks: tuple[Block, ...]
    twoec_components: tuple[TwoECComponent, ...]

    @property
    def leaf_blocks(self) -> tuple[Block, ...]:
        return tuple(b for b in self.blocks if b.is_leaf)

    @property
    def inner_blocks(self) -> tuple[Block, ...]:
        return tuple(b for b in self.blocks if not b.is_leaf)


def two_edge_classes(F: EdgeSet) -> tuple[list[int], list[int], set[int]]:
    """Return ``(component label, 2-edge-connected class label, bridges)`` for ``F``.

    Classes are the components of ``F`` minus its bridges, so isolated
    vertices and vertices hanging off bridges get singleton classes.
    """
    G = F.graph
    adj = _local_adjacency(G.n, G.edges, F.members)
    comp = _component_labels(G.n, adj)
    bridges = _bridges(G.n, adj)
    if bridges:
        inner = [[(w, e) for w, e in row if e not in bridges] for row in adj]
        cls = _component_labels(G.n, inner)
    else:
        cls = comp
    return comp, cls, bridges


def decompose(F: EdgeSet) -> Decomposition:
    """Components, bridges, blocks and 2EC components of ``F``.

    A 2EC component here is a bridgeless component with at least one edge;
    isolated vertices appear only in ``components``.
    """
    G = F.graph
    comp, cls, bridges = two_edge_classes(F)
    components = _group(comp)
    comp_has_bridge = set()
    for e in bridges:
        comp_has_bridge.add(comp[G.edges[e][0]])

    class_edges: dict[int, set[int]] = {}
    for e in F.members:
        if e in bridges:
            continue
        class_edges.setdefault(cls[G.edges[e][0]], set()).add(e)
    class_bridges: dict[int, list[int]] = {}
    for e in sorted(bridges):
        u, v = G.edges[e]
        class_bridges.setdefault(cls[u], []).append(e)
        class_bridges.setdefault(cls[v], []).append(e)

    blocks = []
    twoec = []
    for verts in _group(cls):
        c = cls[verts[0]]
        edges = frozenset(class_edges.get(c, ()))
        if not edges:
            continue
        if comp[verts[0]] in comp_has_bridge:
            blocks.append(Block(verts, edges, tuple(class_bridges.get(c, ()))))
        else:
            length = len(verts) if len(edges) == len(verts) else None
            twoec.append(TwoECComponent(verts, edges, length))
    return Decomposition(tuple(components), frozenset(bridges), tuple(blocks), tuple(twoec))


def triangle_components(F: EdgeSet) -> list[tuple[int, int, int]]:
    """Vertex triples of the components of ``F`` that are triangles.

    In a simple graph a component with three vertices and three edges is
    exactly a triangle.
    """
    G = F.graph
    adj = _local_adjacency(G.n, G.edges, F.members)
    label = _component_labels(G.n, adj)
    size: dict[int, int] = {}
    for c in label:
        size[c] = size.get(c, 0) + 1
    edge_count: dict[int, int] = {}
    for e in F.members:
        c = label[G.edges[e][0]]
        edge_count[c] = edge_count.get(c, 0) + 1
    tri = {c for c, k in size.items() if k == 3 and edge_count.get(c, 0) == 3}
    if not tri:
        return []
    out: dict[int, list[int]] = {}
    for v, c in enumerate(label):
        if c in tri:
            out.setdefault(c, []).append(v)
    return sorted(tuple(vs) for vs in out.values())  # type: ignore[misc]


def is_triangle_free(F: EdgeSet) -> bool:
    """No component of ``F`` is a triangle (triangles inside larger components are fine)."""
    return not triangle_components(F)


# ---------------------------------------------------------------------------
# text format


def format_graph(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def _data_lines(text: str) -> list[tuple[int, list[str]]]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))
    return rows


def _int_pair(lineno: int, parts: list[str]) -> Pair:
    if len(parts) != 2:
        raise ParseError(f"line {lineno}: expected two integers, got {' '.join(parts)!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"line {lineno}: expected two integers, got {' '.join(parts)!r}") from None


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` header + ``m`` lines of ``u v`` format; ``#`` lines are comments."""
    rows = _data_lines(text)
    if not rows:
        raise ParseError("empty graph file")
    n, m = _int_pair(*rows[0])
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"header declares {m} edges but {len(body)} edge lines follow")
    pairs = [_int_pair(lineno, parts) for lineno, parts in body]
    try:
        return Graph(n, pairs)
    except (SelfLoop, ParallelEdge, VertexOutOfRange) as exc:
        raise ParseError(str(exc)) from exc


def parse_edge_list(text: str, G: Graph) -> EdgeSet:
    """Parse one ``u v`` edge per line into an edge set of ``G``."""
    eids = []
    for lineno, parts in _data_lines(text):
        u, v = _int_pair(lineno, parts)
        eid = G.edge_index(u, v)
        if eid is None:
            raise ParseError(f"line {lineno}: ({u}, {v}) is not an edge of the graph")
        eids.append(eid)
    return G.edge_set(eids)


def format_edge_list(F: EdgeSet) -> str:
    return "".join(f"{u} {v}\n" for u, v in F.pairs())


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())
