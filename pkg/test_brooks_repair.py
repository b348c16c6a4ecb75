"""
Tests for the delete-and-repair coloring

Each repair step is driven from a small handcrafted state: v is vertex 0
and its first three neighbors 1, 2, 3 carry colors 1, 2, 3.
"""

import pytest

from brooks_repair import (
    RepairState,
    color_regular_repair,
    delete_and_color,
    step_adjacent_pair_recolor,
    step_choose_roles,
    step_final_maneuver,
    step_free_color,
    step_normalize_pair,
    step_third_color_break,
)
from coloring_core import Coloring, validate_coloring
from graph_core import build_graph, connected_components
from instrumentation import InternalAssertion, Trace
from testkit import exhaustive_regular, named_graph, prepared_instance, regular_corpus

STAR = [(0, 1), (0, 2), (0, 3)]


def _state(n, edges, colors, k=3, roles=True):
    g = build_graph(n, edges)
    state = RepairState(g=g, coloring=Coloring(k, colors), v=0,
                        members=frozenset(range(n)), trace=Trace(enabled=True), debug=True)
    if roles:
        state.roles = {1: 1, 2: 2, 3: 3}
        state.role_colors = {1: 1, 2: 2, 3: 3}
    return state


def _branches(state):
    return state.trace.counters.branches


# -- free color ----------------------------------------------------------

def test_free_color_at_v():
    state = _state(4, STAR, [0, 1, 2, 2], roles=False)
    outcome = step_free_color(state)
    assert outcome.done
    assert outcome.coloring.colors == [3, 1, 2, 2]
    assert _branches(state) == {'free-color'}


def test_neighbor_moves_aside():
    edges = STAR + [(1, 4), (1, 5)]
    state = _state(6, edges, [0, 1, 2, 3, 2, 3], roles=False)
    outcome = step_free_color(state)
    assert outcome.done
    assert state.mu == 1
    assert outcome.coloring.colors == [2, 1, 1, 3, 2, 3]
    assert _branches(state) == {'neighbor-recolor'}


RAINBOW = STAR + [(1, 4), (1, 5), (2, 6), (2, 7), (3, 8), (3, 9)]
RAINBOW_COLORS = [0, 1, 2, 3, 2, 3, 1, 3, 1, 2]


def test_saturated_neighborhood_continues():
    state = _state(10, RAINBOW, RAINBOW_COLORS, roles=False)
    outcome = step_free_color(state)
    assert not outcome.done
    assert state.coloring.colors == RAINBOW_COLORS


# -- roles ---------------------------------------------------------------

def test_roles_on_independent_neighbors():
    state = _state(10, RAINBOW, RAINBOW_COLORS, roles=False)
    assert not step_choose_roles(state).done
    assert state.roles == {1: 1, 2: 3, 3: 2}
    assert state.role_colors == {1: 1, 2: 3, 3: 2}


def test_roles_swap_one_and_three():
    state = _state(4, STAR + [(2, 3)], [0, 1, 2, 3], roles=False)
    step_choose_roles(state)
    assert state.roles == {1: 2, 2: 3, 3: 1}


def test_roles_on_k33(k33):
    state = RepairState(g=k33, coloring=Coloring(3, [0, 1, 1, 1, 2, 3]), v=0,
                        members=frozenset(range(6)))
    step_choose_roles(state)
    assert (state.roles[1], state.roles[2], state.roles[3]) == (3, 5, 4)


def test_roles_fail_on_clique_neighborhood():
    k4 = named_graph('complete(4)')
    state = RepairState(g=k4, coloring=Coloring(3, [0, 1, 2, 3]), v=0,
                        members=frozenset(range(4)))
    with pytest.raises(InternalAssertion) as info:
        step_choose_roles(state)
    assert info.value.step == 'choose_roles'


# -- normalization ------------------------------------------------------

def test_normalize_different_components():
    state = _state(4, STAR, [0, 1, 2, 3])
    outcome = step_normalize_pair(state, (1, 3))
    assert outcome.done
    assert outcome.coloring.colors == [1, 3, 2, 3]
    assert _branches(state) == {'different-components'}


def test_normalize_non_path_component():
    # 1-3 chain: 1 - 4 - 5 - 3, and 4 also sees 6 (colored 1)
    edges = STAR + [(1, 4), (4, 5), (4, 6), (5, 3)]
    state = _state(7, edges, [0, 1, 2, 3, 3, 1, 1])
    outcome = step_normalize_pair(state, (1, 3))
    assert outcome.done
    assert state.mu == 2
    assert outcome.coloring.colors == [1, 3, 2, 3, 2, 1, 1]
    assert _branches(state) == {'non-path-component'}


def test_normalize_keeps_simple_path():
    edges = STAR + [(1, 4), (4, 5), (5, 3)]
    state = _state(6, edges, [0, 1, 2, 3, 3, 1])
    outcome = step_normalize_pair(state, (1, 3))
    assert not outcome.done
    assert state.paths['13'].walk == [1, 4, 5, 3]


# -- third color --------------------------------------------------------

# vertex 6 is isolated
PATH13 = STAR + [(1, 4), (4, 5), (5, 3), (1, 7)]


def test_third_color_break_on_interior_vertex():
    state = _state(8, PATH13, [0, 1, 2, 3, 3, 1, 1, 2])
    assert not step_normalize_pair(state, (1, 3)).done
    outcome = step_third_color_break(state, (1, 3))
    assert outcome.done
    assert outcome.coloring.colors[:6] == [1, 3, 2, 3, 2, 1]
    assert state.trace.counters.path_edge_examinations == 3
    assert _branches(state) == {'third-color-break'}


def test_third_color_present_everywhere_continues():
    edges = PATH13 + [(4, 8), (5, 9), (3, 10)]
    state = _state(11, edges, [0, 1, 2, 3, 3, 1, 1, 2, 2, 2, 2])
    step_normalize_pair(state, (1, 3))
    outcome = step_third_color_break(state, (1, 3))
    assert not outcome.done
    assert state.third_counts['13'] == [1, 1, 1, 1]
    assert state.trace.counters.path_edge_examinations == 6


def test_third_color_missing_at_endpoint_fails():
    edges = STAR + [(1, 4), (4, 5), (5, 3)]
    state = _state(6, edges, [0, 1, 2, 3, 3, 1])
    step_normalize_pair(state, (1, 3))
    with pytest.raises(InternalAssertion):
        step_third_color_break(state, (1, 3))


# -- adjacent pair ------------------------------------------------------

def test_adjacent_pair_recolor():
    edges = STAR + [(1, 2), (2, 3), (1, 4), (3, 5)]
    state = _state(6, edges, [0, 1, 2, 3, 3, 1])
    outcome = step_adjacent_pair_recolor(state)
    assert outcome.done
    assert outcome.coloring.colors == [1, 2, 3, 2, 3, 1]
    assert _branches(state) == {'adjacent-pair'}


def test_adjacent_pair_not_applicable():
    edges = STAR + [(1, 2), (1, 4), (3, 5)]
    state = _state(6, edges, [0, 1, 2, 3, 3, 1])
    assert not step_adjacent_pair_recolor(state).done


# -- final maneuver -----------------------------------------------------

# v=0; 1-3 path 1-4-5-3; 2-3 path 2-6-7-3; vertices 8.. supply color 1
FINAL_ABSENT = STAR + [(1, 4), (4, 5), (5, 3), (2, 6), (6, 7), (7, 3),
                       (2, 8), (6, 9), (7, 10)]
FINAL_ABSENT_COLORS = [0, 1, 2, 3, 3, 1, 3, 2, 1, 1, 1]


def _prepared(n, edges, colors, k=3):
    state = _state(n, edges, colors, k=k)
    assert not step_normalize_pair(state, (1, 3)).done
    assert not step_normalize_pair(state, (2, 3)).done
    assert not step_third_color_break(state, (2, 3)).done
    return state


def test_final_maneuver_two_one_neighbors():
    edges = FINAL_ABSENT + [(6, 11)]
    state = _prepared(12, edges, FINAL_ABSENT_COLORS + [1], k=4)
    assert state.third_counts['23'] == [1, 2, 1, 1]
    outcome = step_final_maneuver(state)
    assert outcome.done
    assert outcome.coloring.colors[6] == 4
    assert outcome.coloring.colors[2] == 3
    assert outcome.coloring.colors[0] == 2
    assert _branches(state) == {'final-maneuver-(i)'}


def test_final_maneuver_edge_absent():
    state = _prepared(11, FINAL_ABSENT, FINAL_ABSENT_COLORS)
    outcome = step_final_maneuver(state)
    assert outcome.done
    assert state.w == 7
    assert outcome.coloring.colors == [2, 3, 3, 1, 1, 3, 2, 3, 1, 1, 1]
    assert _branches(state) == {'final-maneuver-(ii-absent)'}
    assert state.trace.counters.path_edges == 6


def test_final_maneuver_edge_present():
    edges = STAR + [(1, 2), (1, 4), (4, 5), (5, 3), (2, 6), (6, 7), (7, 3), (6, 8), (7, 9)]
    state = _prepared(10, edges, [0, 1, 2, 3, 3, 1, 3, 2, 1, 1])
    outcome = step_final_maneuver(state)
    assert outcome.done
    assert outcome.coloring.colors == [3, 2, 1, 1, 1, 3, 2, 3, 1, 1]
    assert _branches(state) == {'final-maneuver-(ii-present)'}


# -- whole algorithm ----------------------------------------------------

def test_delete_and_color_leaves_v_blank(petersen):
    c = delete_and_color(petersen, range(10), 0, 3)
    assert c.colors[0] == 0
    assert validate_coloring(petersen, c, require_total=False)
    assert all(c.colors[u] for u in range(1, 10))


@pytest.mark.parametrize('name', ['k33', 'prism', 'petersen'])
def test_free_color_on_named_cubic_graphs(name):
    g = named_graph(name)
    result = color_regular_repair(g, range(g.n), trace=Trace(enabled=True), debug=True)
    assert validate_coloring(g, result.coloring, require_total=True)
    assert result.palette == 3
    assert max(result.coloring.colors) <= 3
    assert 'free-color' in result.instrumentation.branches
    assert result.components[0].algorithm == 'A'
    assert result.trace


def test_k33_leaves_v_neighbors_one_color(k33):
    result = color_regular_repair(k33, range(6))
    assert result.coloring.colors == [2, 2, 2, 1, 1, 1]


def test_rejects_non_regular_input(bowtie):
    with pytest.raises(ValueError):
        color_regular_repair(bowtie, range(5))


def _replay(case, debug=True):
    inst = prepared_instance(case)
    g = inst.graph
    result = color_regular_repair(g, range(g.n), trace=Trace(enabled=True), debug=debug,
                                  start=inst.start)
    assert validate_coloring(g, result.coloring, require_total=True)
    return result


@pytest.mark.parametrize('case, colors', [
    ('adjacent-pair', [1, 2, 3, 2, 3, 1, 2, 2, 1, 3]),
    ('third-color-break', [1, 3, 2, 3, 4, 2, 1, 4, 4, 2, 2, 1]),
    ('final-maneuver-(i)', [2, 1, 3, 3, 4, 3, 1, 2, 4, 1, 2, 4]),
    ('final-maneuver-(ii-absent)', [2, 3, 1, 3, 1, 2, 2, 3, 2, 1]),
    ('final-maneuver-(ii-present)', [3, 2, 1, 1, 1, 3, 2, 3, 2, 1]),
])
def test_prepared_start_reaches_deep_branch(case, colors):
    result = _replay(case)
    assert result.coloring.colors == colors
    assert case in result.instrumentation.branches
    assert result.trace[0].step == 'prepared_start'


@pytest.mark.parametrize('case, path_edges, examinations', [
    ('adjacent-pair', 5, 10),
    ('third-color-break', 5, 4),
    ('final-maneuver-(i)', 7, 14),
])
def test_path_edges_examined_at_most_twice(case, path_edges, examinations):
    counters = _replay(case, debug=False).instrumentation
    assert counters.path_edges == path_edges
    assert counters.path_edge_examinations == examinations
    assert counters.path_edge_examinations <= 2 * counters.path_edges


@pytest.mark.parametrize('case, path_edges, examinations', [
    ('final-maneuver-(ii-absent)', 9, 26),
    ('final-maneuver-(ii-present)', 7, 32),
])
def test_closing_interchange_rereads_path_edges(case, path_edges, examinations):
    # the 2-3 chain at w is traversed after every path vertex was scanned once
    counters = _replay(case, debug=False).instrumentation
    assert counters.path_edges == path_edges
    assert counters.path_edge_examinations == examinations
    assert counters.path_edge_examinations > 2 * counters.path_edges


def test_chain_at_w_can_leave_the_stored_path():
    inst = prepared_instance('final-maneuver-(ii-absent)')
    result = color_regular_repair(inst.graph, range(10), trace=Trace(enabled=True),
                                  start=inst.start)
    swaps = [event for event in result.trace if event.note == 'kempe-swap']
    assert [set(event.vertices) for event in swaps] == [{1, 4, 5, 2}, {7, 5, 6, 3}]


def test_start_coloring_is_checked(petersen):
    with pytest.raises(ValueError):
        color_regular_repair(petersen, range(10), start=Coloring(3, [1] * 10))
    with pytest.raises(ValueError):
        color_regular_repair(petersen, range(10), start=Coloring(3, [0] * 10))


def _assert_repairs(g):
    for comp in connected_components(g):
        d = g.degree(comp[0])
        if len(comp) == d + 1:
            continue
        result = color_regular_repair(g, comp, debug=True)
        assert validate_coloring(g, result.coloring, require_total=True, members=comp)
        assert max(result.coloring.colors[u] for u in comp) <= d
        counters = result.instrumentation
        if counters.path_edges and not counters.branches & {
                'final-maneuver-(ii-absent)', 'final-maneuver-(ii-present)'}:
            assert counters.path_edge_examinations <= 2 * counters.path_edges


def test_random_regular_graphs_repair_without_assertions():
    for g in regular_corpus(25, degrees=(3, 4), max_n=20, seed=11):
        _assert_repairs(g)


@pytest.mark.slow
@pytest.mark.parametrize('n, d', [(6, 3), (6, 4), (7, 4), (8, 3), (8, 4), (8, 5), (8, 6)])
def test_every_small_regular_graph_repairs(n, d):
    count = 0
    for g in exhaustive_regular(n, d):
        _assert_repairs(g)
        count += 1
    assert count > 0


@pytest.mark.slow
def test_large_random_regular_corpus_repairs():
    for g in regular_corpus(1000, degrees=(3, 4, 5, 6), max_n=64, seed=3):
        _assert_repairs(g)
