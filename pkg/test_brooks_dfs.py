"""
Tests for the forced-DFS coloring
"""

import pytest

from brooks_dfs import (
    NotSeparation,
    case1_color_ham_path,
    case2a_split_color,
    case2b_remove_pair_color,
    choose_v_x_y,
    color_regular_dfs,
    find_first_branching,
)
from coloring_core import validate_coloring
from graph_core import connected_components
from greedy_color import dfs
from instrumentation import InternalAssertion, Trace
from testkit import named_graph, regular_corpus


def test_choose_v_x_y(k33, petersen, wagner, bridged_cubic):
    assert choose_v_x_y(k33, range(6)) == (0, 3, 4)
    assert choose_v_x_y(petersen, range(10)) == (0, 1, 4)
    assert choose_v_x_y(wagner, range(8)) == (0, 1, 4)
    assert choose_v_x_y(bridged_cubic, range(10)) == (0, 2, 3)


def test_ham_path_on_k33(k33):
    tree = dfs(k33, 3, forced=(3, 0, 4))
    assert find_first_branching(tree) is None
    c = case1_color_ham_path(k33, tree.order, 0, 3, 4, 3)
    assert c.colors == [2, 2, 2, 1, 1, 1]


@pytest.mark.parametrize('name', ['k33', 'prism', 'petersen'])
def test_ham_path_branch(name):
    g = named_graph(name)
    result = color_regular_dfs(g, range(g.n), trace=Trace(enabled=True))
    assert result.instrumentation.branches == {'ham-path'}
    assert validate_coloring(g, result.coloring, require_total=True)
    assert max(result.coloring.colors) <= 3
    assert result.components[0].algorithm == 'B'


def test_pair_removal_on_wagner(wagner):
    result = color_regular_dfs(wagner, range(8))
    assert result.instrumentation.branches == {'pair-removal'}
    assert result.coloring.colors == [2, 3, 1, 2, 3, 1, 2, 1]


def test_split_on_bridged_cubic(bridged_cubic):
    result = color_regular_dfs(bridged_cubic, range(10))
    assert result.instrumentation.branches == {'split'}
    assert result.coloring.colors == [3, 2, 1, 1, 2, 3, 1, 2, 2, 1]


def test_split_sides_agree_on_cut(bridged_cubic):
    c, plan = case2a_split_color(bridged_cubic, range(10), 4, 3)
    assert plan.cut == 4
    assert plan.sides == ((0, 1, 2, 3), (5, 6, 7, 8, 9))
    assert validate_coloring(bridged_cubic, c, require_total=True)


def test_split_rejects_non_cut(petersen):
    with pytest.raises(NotSeparation):
        case2a_split_color(petersen, range(10), 0, 3)


def test_pair_removal_rejects_adjacent_children(petersen):
    with pytest.raises(InternalAssertion):
        case2b_remove_pair_color(petersen, range(10), 0, 1, 2, 3)


def test_rejects_complete_component():
    k4 = named_graph('complete(4)')
    with pytest.raises(ValueError):
        color_regular_dfs(k4, range(4))


def test_random_regular_graphs_always_succeed():
    for g in regular_corpus(40, degrees=(3, 4, 5), max_n=24, seed=3):
        for comp in connected_components(g):
            if len(comp) == g.degree(comp[0]) + 1:
                continue
            result = color_regular_dfs(g, comp, debug=True)
            assert validate_coloring(g, result.coloring, require_total=True, members=comp)
            assert max(result.coloring.colors[u] for u in comp) <= g.degree(comp[0])
