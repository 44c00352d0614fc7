import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import bowtie, complete_graph, cycle_graph, cycle_pairs, petersen, random_connected_min_deg2
from twoecss.cover import (
    Cover,
    cover_to_matching,
    deficiency,
    excess,
    is_two_edge_cover,
    matching_to_cover,
    min_cover,
    min_triangle_free_cover,
)
from twoecss.errors import NoCoverExists, PreconditionViolated
from twoecss.graph import build_graph, triangle_components
from twoecss.matching import is_two_matching, max_triangle_free_two_matching
from twoecss.oracle import exact_min_cover, exact_min_tf_cover


def test_deficiency_and_excess():
    G = complete_graph(4)
    F = G.edge_set_from_pairs([(0, 1), (0, 2), (0, 3)])
    assert deficiency(F) == 3
    assert excess(F) == 1


def test_cover_validates():
    G = cycle_graph(4)
    with pytest.raises(ValueError):
        Cover(G.edge_set([0, 1]))
    assert is_two_edge_cover(G.full())


def test_triangle_has_no_triangle_free_cover():
    with pytest.raises(NoCoverExists):
        min_triangle_free_cover(complete_graph(3))
    with pytest.raises(NoCoverExists):
        min_triangle_free_cover(build_graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)]))


def test_known_minimum_covers():
    C, optimal = min_triangle_free_cover(complete_graph(4))
    assert len(C) == 4 and optimal
    C, _ = min_triangle_free_cover(bowtie())
    assert len(C) == 6
    C, _ = min_triangle_free_cover(petersen())
    assert len(C) == 10
    assert len(min_cover(build_graph(6, cycle_pairs([0, 1, 2]) + cycle_pairs([3, 4, 5])))) == 6


def test_two_triangles_and_link():
    G = build_graph(6, cycle_pairs([0, 1, 2]) + cycle_pairs([3, 4, 5]) + [(0, 3)])
    C, _ = min_triangle_free_cover(G)
    assert len(C) == 7 and not triangle_components(C.edges)


def test_matching_to_cover_case_ii():
    # matching is the path 0-1-2 plus the 4-cycle; adding 0-2 would close a triangle
    G = build_graph(7, cycle_pairs([0, 1, 2]) + cycle_pairs([3, 4, 5, 6]) + [(2, 3)])
    M = G.edge_set_from_pairs([(0, 1), (1, 2)] + cycle_pairs([3, 4, 5, 6]))
    C, trace = matching_to_cover(G, M)
    assert "ii" in trace.rules()
    assert len(C) <= 2 * G.n - len(M)
    assert not triangle_components(C.edges)


def test_matching_to_cover_preconditions():
    G = complete_graph(4)
    with pytest.raises(PreconditionViolated):
        matching_to_cover(G, G.full())
    with pytest.raises(PreconditionViolated):
        matching_to_cover(G, G.edge_set_from_pairs(cycle_pairs([0, 1, 2])))
    with pytest.raises(PreconditionViolated):
        matching_to_cover(complete_graph(3), complete_graph(3).empty())


def test_cover_to_matching_preconditions():
    G = complete_graph(4)
    with pytest.raises(PreconditionViolated):
        cover_to_matching(G, G.edge_set([0]))


def test_cover_to_matching_on_k4():
    G = complete_graph(4)
    M, trace = cover_to_matching(G, G.full())
    assert len(M) >= 2 * G.n - G.m
    assert is_two_matching(M.edges) and not triangle_components(M.edges)
    for s in trace:
        assert s.potential_after < s.potential_before


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(4, 8))
def test_duality_and_oracle(seed, n):
    rng = random.Random(seed)
    G = random_connected_min_deg2(rng, n)
    if G.m > 18:
        return
    C, optimal = min_triangle_free_cover(G)
    assert optimal
    assert len(C) == 2 * n - len(max_triangle_free_two_matching(G))
    assert len(C) == exact_min_tf_cover(G).value
    assert len(min_cover(G)) == exact_min_cover(G).value
    M, trace = cover_to_matching(G, C)
    assert len(M) >= 2 * n - len(C)
    C2, trace2 = matching_to_cover(G, M)
    assert len(C2) <= 2 * n - len(M)
    for s in list(trace) + list(trace2):
        assert s.potential_after < s.potential_before
