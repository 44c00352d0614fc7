import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import bowtie, complete_graph, cycle_graph, cycle_pairs, petersen, random_graph
from twoecss.errors import BudgetExhausted
from twoecss.graph import build_graph, triangle_components
from twoecss.matching import (
    SolverBudget,
    TwoMatching,
    is_two_matching,
    max_b_matching,
    max_triangle_free_two_matching,
    max_two_matching,
)
from twoecss.oracle import exact_max_2matching, exact_max_tf_2matching


def test_budget_validation():
    with pytest.raises(ValueError):
        SolverBudget(0, 1.0)
    with pytest.raises(ValueError):
        SolverBudget(10, -1.0)


def test_two_matching_rejects_degree_three():
    G = complete_graph(4)
    with pytest.raises(ValueError):
        TwoMatching(G.full())


def test_b_matching_capacities():
    G = complete_graph(4)
    assert len(max_b_matching(G, range(G.m), [1, 1, 1, 1])) == 2
    assert len(max_b_matching(G, range(G.m), [2, 2, 2, 2])) == 4
    assert len(max_b_matching(G, [0], [2, 2, 2, 2])) == 1


@pytest.mark.parametrize(
    "G, plain, tf",
    [
        (complete_graph(3), 3, 2),
        (complete_graph(4), 4, 4),
        (cycle_graph(7), 7, 7),
        (bowtie(), 4, 4),
        (build_graph(6, cycle_pairs([0, 1, 2]) + cycle_pairs([3, 4, 5])), 6, 4),
        (petersen(), 10, 10),
    ],
)
def test_known_values(G, plain, tf):
    assert len(max_two_matching(G)) == plain
    M = max_triangle_free_two_matching(G)
    assert len(M) == tf and M.optimal
    assert not triangle_components(M.edges)


def test_two_triangles_joined():
    # six edges would force the two triangles themselves
    G = build_graph(6, cycle_pairs([0, 1, 2]) + cycle_pairs([3, 4, 5]) + [(0, 3)])
    assert len(max_two_matching(G)) == 6
    assert len(max_triangle_free_two_matching(G)) == 5


def test_budget_of_one_node_is_not_optimal():
    G = build_graph(6, cycle_pairs([0, 1, 2]) + cycle_pairs([3, 4, 5]) + [(0, 3)])
    M = max_triangle_free_two_matching(G, SolverBudget(node_limit=1))
    assert not M.optimal
    assert is_two_matching(M.edges) and not triangle_components(M.edges)
    with pytest.raises(BudgetExhausted) as info:
        max_triangle_free_two_matching(G, SolverBudget(node_limit=1), raise_on_exhaust=True)
    assert info.value.incumbent is not None


def test_deterministic():
    G = petersen()
    assert max_triangle_free_two_matching(G).edges == max_triangle_free_two_matching(G).edges


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32), st.integers(3, 8))
def test_matches_oracle(seed, n):
    rng = random.Random(seed)
    G = random_graph(rng, n, rng.uniform(0.2, 0.9))
    if G.m > 18:
        return
    M = max_triangle_free_two_matching(G)
    assert M.optimal and is_two_matching(M.edges) and not triangle_components(M.edges)
    assert len(M) == exact_max_tf_2matching(G).value
    assert len(max_two_matching(G)) == exact_max_2matching(G).value
