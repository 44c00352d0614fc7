import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from helpers import bowtie, complete_graph, cycle_graph, cycle_pairs, path_graph, petersen, random_graph
from twoecss.errors import ParallelEdge, ParseError, SelfLoop, VertexOutOfRange
from twoecss.graph import (
    build_graph,
    connected_components,
    cut_vertices,
    decompose,
    degrees,
    find_bridges,
    format_edge_list,
    format_graph,
    is_triangle_free,
    is_two_edge_connected,
    is_two_vertex_connected,
    parse_edge_list,
    parse_graph,
    triangle_components,
)
from twoecss.oracle import bridges_by_definition


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, chosen)


def to_nx(F):
    g = nx.Graph()
    g.add_nodes_from(range(F.graph.n))
    g.add_edges_from(F.pairs())
    return g


def test_build_rejects_bad_edges():
    with pytest.raises(SelfLoop):
        build_graph(3, [(1, 1)])
    with pytest.raises(ParallelEdge):
        build_graph(3, [(0, 1), (1, 0)])
    with pytest.raises(VertexOutOfRange):
        build_graph(3, [(0, 3)])


def test_edge_lookup_keeps_orientation():
    G = build_graph(3, [(2, 0), (0, 1)])
    assert G.edges[0] == (2, 0)
    assert G.edge_index(0, 2) == 0 and G.edge_index(2, 1) is None
    assert G.other(0, 2) == 0


def test_edge_set_algebra():
    G = cycle_graph(5)
    A, B = G.edge_set([0, 1, 2]), G.edge_set([2, 3])
    assert len(A | B) == 4 and len(A - B) == 2 and list(A & B) == [2]
    assert len(A.complement()) == 2
    assert A.with_edges(4).members == frozenset({0, 1, 2, 4})


def test_small_examples():
    C = cycle_graph(6).full()
    assert degrees(C) == [2] * 6
    assert is_two_edge_connected(C) and not find_bridges(C)
    P = path_graph(4).full()
    assert len(find_bridges(P)) == 3 and not is_two_edge_connected(P)
    B = bowtie()
    assert is_two_edge_connected(B.full())
    assert cut_vertices(B) == {0} and not is_two_vertex_connected(B)
    assert is_two_vertex_connected(petersen())
    assert triangle_components(complete_graph(3).full()) == [(0, 1, 2)]
    assert triangle_components(B.full()) == []
    assert not is_triangle_free(build_graph(7, cycle_pairs([0, 1, 2]) + cycle_pairs([3, 4, 5, 6])).full())


def test_decomposition_example():
    # triangle - bridge - 4-cycle, plus an isolated vertex
    G = build_graph(8, cycle_pairs([0, 1, 2]) + [(2, 3)] + cycle_pairs([3, 4, 5, 6]))
    D = decompose(G.full())
    assert [list(c) for c in D.components] == [[0, 1, 2, 3, 4, 5, 6], [7]]
    assert [G.edges[e] for e in D.bridges] == [(2, 3)]
    assert len(D.blocks) == 2 and all(b.is_leaf for b in D.blocks)
    assert D.twoec_components == ()
    H = build_graph(7, cycle_pairs([0, 1, 2]) + cycle_pairs([3, 4, 5, 6]))
    D2 = decompose(H.full())
    assert sorted(c.cycle_length for c in D2.twoec_components) == [3, 4]
    assert [c.is_triangle for c in D2.twoec_components] == [True, False]


def test_inner_block():
    G = build_graph(9, cycle_pairs([0, 1, 2]) + [(0, 3), (1, 6)] + cycle_pairs([3, 4, 5]) + cycle_pairs([6, 7, 8]))
    D = decompose(G.full())
    inner = [b for b in D.blocks if not b.is_leaf]
    assert [b.vertices for b in inner] == [(0, 1, 2)]
    assert len(D.leaf_blocks) == 2


def test_format_round_trip():
    G = petersen()
    assert parse_graph(format_graph(G)) == G
    F = G.edge_set([0, 5, 9])
    assert parse_edge_list(format_edge_list(F), G) == F


@pytest.mark.parametrize("text", ["", "3 2\n0 1\n", "3 1\n0 x\n", "3 1\n0 0\n", "2 1\n0 5\n", "3 2\n0 1\n1 0\n"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_graph(text)


def test_parse_comments():
    G = parse_graph("# triangle\n3 3\n0 1\n# mid\n1 2\n2 0\n")
    assert G.m == 3
    with pytest.raises(ParseError):
        parse_edge_list("0 2\n1 3\n", G)


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_bridges_match_definition_and_networkx(G):
    F = G.full()
    assert find_bridges(F) == bridges_by_definition(F)
    assert {frozenset(G.edges[e]) for e in find_bridges(F)} == {frozenset(e) for e in nx.bridges(to_nx(F))}


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_connectivity_matches_networkx(G):
    g = to_nx(G.full())
    assert sorted(map(sorted, nx.connected_components(g))) == [list(c) for c in connected_components(G.full())]
    assert cut_vertices(G) == set(nx.articulation_points(g))
    expected_2ec = G.n >= 2 and nx.is_connected(g) and not any(nx.bridges(g)) if G.n > 1 else True
    assert is_two_edge_connected(G.full()) == expected_2ec


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_degree_sum(G):
    assert sum(degrees(G.full())) == 2 * G.m


def _bridgeless_connected(G, eids):
    g = nx.Graph([G.edges[e] for e in eids])
    return nx.is_connected(g) and not any(nx.bridges(g))


@settings(max_examples=150, deadline=None)
@given(graphs(), st.integers(0, 2**32))
def test_decomposition_invariants(G, seed):
    rng = random.Random(seed)
    F = G.edge_set([e for e in range(G.m) if rng.random() < 0.7])
    D = decompose(F)
    covered = sorted(v for c in D.components for v in c)
    assert covered == list(range(G.n))
    block_edges = [e for b in D.blocks for e in b.edges]
    assert len(block_edges) == len(set(block_edges))
    assert set(block_edges).isdisjoint(D.bridges)
    for b in D.blocks:
        assert b.is_leaf == (len(b.bridges) == 1)
        assert _bridgeless_connected(G, b.edges)
    for c in D.twoec_components:
        assert _bridgeless_connected(G, c.edges)
        assert (c.cycle_length is not None) == (len(c.edges) == len(c.vertices))
