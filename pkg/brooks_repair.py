"""
Delete-and-Repair Coloring Module

Colors a connected Δ-regular non-complete component (Δ >= 3) with Δ colors:
delete the smallest vertex v, color the rest greedily, then free a color
at v through a fixed chain of repair steps that recolor vertices and swap
Kempe chains among v's neighbors.

Each step either finishes (Done) or hands the state on (Continue). The
chain runs once in order; a failed expectation raises InternalAssertion.

Path edge examinations: once normalization has stored the three paths,
every adjacency entry read by a neighbor-color scan or a Kempe traversal
is charged to `path_edge_examinations` when its edge lies on one of the
paths. Each path vertex is scanned once and its color profile reused.
Validation passes are not charged.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import partial
from typing import Optional

import config
from coloring_core import (
    ColorResult,
    Coloring,
    ComponentReport,
    KempeComponent,
    colors_used,
    kempe_component,
    kempe_swap,
    missing_colors,
    neighbor_color_count,
    swap_prefix_on_path,
    validate_coloring,
)
from graph_core import Graph, GraphClass, adjacent, connected_components, induced_subgraph
from greedy_color import NoFreeColor, color_low_degree_component
from instrumentation import Counters, InternalAssertion, Trace

logger = logging.getLogger(__name__)


@dataclass
class RepairState:
    """
    Working state of one repair run.

    `roles` maps role 1..Δ to a neighbor of v and `role_colors` to that
    neighbor's color when roles were fixed. `paths` holds the normalized
    Kempe paths keyed '13', '23' and '12'; `third_counts` caches, per path,
    how many neighbors of each path vertex carry the third color.
    `profiles` holds the neighbor-color Counter of each scanned path vertex
    and `path_degree` the number of path edges at each path vertex.
    """
    g: Graph
    coloring: Coloring
    v: int
    members: frozenset
    trace: Trace = field(default_factory=Trace)
    debug: bool = False
    roles: dict = field(default_factory=dict)
    role_colors: dict = field(default_factory=dict)
    mu: Optional[int] = None
    w: Optional[int] = None
    paths: dict = field(default_factory=dict)
    third_counts: dict = field(default_factory=dict)
    profiles: dict = field(default_factory=dict)
    path_degree: Optional[Counter] = None

    @property
    def counters(self) -> Counters:
        return self.trace.counters

    @property
    def k(self) -> int:
        return self.coloring.k


@dataclass(frozen=True)
class StepOutcome:
    done: bool
    state: RepairState

    @property
    def coloring(self) -> Optional[Coloring]:
        return self.state.coloring if self.done else None


def _fail(state: RepairState, step: str, detail: str):
    raise InternalAssertion(step, detail, state.trace)


def _recolor(state: RepairState, u: int, col: int, step: str) -> None:
    before = state.coloring.colors[u]
    state.coloring.colors[u] = col
    state.counters.recolorings += 1
    state.trace.emit(step, (u,), (before,), (col,))


def _swap(state: RepairState, comp: KempeComponent, step: str) -> None:
    before = [state.coloring.colors[u] for u in comp.members]
    kempe_swap(state.g, state.coloring, comp, check=state.debug, counters=state.counters)
    after = [state.coloring.colors[u] for u in comp.members]
    state.trace.emit(step, comp.members, before, after, note='kempe-swap')


def _swap_prefix(state: RepairState, path: list, upto: int, a: int, b: int, step: str) -> None:
    prefix = swap_prefix_on_path(state.g, state.coloring, path, upto, a, b)
    if prefix:
        state.counters.kempe_swaps += 1
        state.trace.emit(step, prefix, note=f'prefix-swap {a}<->{b}')


def _checkpoint(state: RepairState, step: str) -> None:
    if not state.debug:
        return
    verdict = validate_coloring(state.g, state.coloring, members=state.members)
    if not verdict:
        _fail(state, step, f"partial coloring broken: {verdict}")


def _free_options(state: RepairState, u: int) -> list:
    own = state.coloring.colors[u]
    return [col for col in missing_colors(state.g, state.coloring, u, state.counters) if col != own]


def _finish(state: RepairState, col: int, step: str) -> StepOutcome:
    g, c, v = state.g, state.coloring, state.v
    if any(c.colors[w] == col for w in g.adj[v]):
        _fail(state, step, f"color {col} is not free at v={v}")
    _recolor(state, v, col, step)
    verdict = validate_coloring(g, c, require_total=True, members=state.members)
    if not verdict:
        _fail(state, step, f"final coloring invalid: {verdict}")
    return StepOutcome(True, state)


def _role_vertices(state: RepairState, pair):
    i, j = pair
    return (state.roles[i], state.roles[j], state.role_colors[i], state.role_colors[j])


def _third_role(pair) -> int:
    return ({1, 2, 3} - set(pair)).pop()


def _key(pair) -> str:
    return f"{pair[0]}{pair[1]}"


def _establish_paths(state: RepairState) -> None:
    """Record the path edges once; the examination counter starts here."""
    if state.path_degree is not None:
        return
    degree = Counter()
    edges = 0
    for comp in state.paths.values():
        walk = comp.walk
        edges += len(walk) - 1
        for u, w in zip(walk, walk[1:]):
            degree[u] += 1
            degree[w] += 1
    state.path_degree = degree
    state.counters.path_edges = edges
    state.counters.path_edge_examinations = 0


def _charge_path_reads(state: RepairState, scanned) -> None:
    """Charge the path edges met while reading the adjacency of `scanned`."""
    degree = state.path_degree
    if degree is None:
        return
    state.counters.path_edge_examinations += sum(degree[u] for u in scanned)


def _profile(state: RepairState, x: int) -> Counter:
    """Neighbor-color counts of x, read once per repair run."""
    profile = state.profiles.get(x)
    if profile is None:
        colors = state.coloring.colors
        nbrs = state.g.adj[x]
        profile = state.profiles[x] = Counter(colors[w] for w in nbrs)
        state.counters.edges_examined += len(nbrs)
        _charge_path_reads(state, (x,))
    return profile


def _kempe(state: RepairState, start: int, a: int, b: int) -> KempeComponent:
    comp = kempe_component(state.g, state.coloring, start, a, b, state.counters)
    _charge_path_reads(state, comp.members)
    _charge_path_reads(state, comp.walk)
    return comp


# ----------------------------------------------------------------------
# Steps
# ----------------------------------------------------------------------

def step_free_color(state: RepairState) -> StepOutcome:
    """Finish if a color is free at v, or if one neighbor can move aside."""
    g, c, v = state.g, state.coloring, state.v
    free = missing_colors(g, c, v, state.counters)
    if free:
        state.trace.branch('free-color', (v,))
        return _finish(state, free[0], 'free_color')

    for vj in g.adj[v]:
        options = _free_options(state, vj)
        if options:
            own = c.colors[vj]
            state.mu = options[0]
            state.trace.branch('neighbor-recolor', (vj,))
            _recolor(state, vj, options[0], 'free_color')
            _checkpoint(state, 'free_color')
            return _finish(state, own, 'free_color')

    # every neighbor of v now sees each other color exactly once
    for vj in g.adj[v]:
        own = c.colors[vj]
        seen = {}
        for w in g.adj[vj]:
            col = c.colors[w]
            if col and col != own:
                seen[col] = seen.get(col, 0) + 1
        if len(seen) != c.k - 1 or any(count != 1 for count in seen.values()):
            _fail(state, 'free_color', f"neighbor {vj} is not rainbow-saturated")
    return StepOutcome(False, state)


def step_choose_roles(state: RepairState) -> StepOutcome:
    """Assign roles 1..Δ to v's neighbors; roles 1 and 3 are non-adjacent."""
    g, c, v = state.g, state.coloring, state.v
    nbrs = g.adj[v]
    pair = next(
        ((a, b) for i, a in enumerate(nbrs) for b in nbrs[i + 1:] if not adjacent(g, a, b)),
        None,
    )
    if pair is None:
        _fail(state, 'choose_roles', f"neighborhood of v={v} is a clique")
    r1, r3 = pair
    r2 = next(u for u in nbrs if u not in pair)
    if adjacent(g, r2, r3) and not adjacent(g, r1, r2):
        r1, r3 = r3, r1
    rest = [u for u in nbrs if u not in (r1, r2, r3)]
    state.roles = {1: r1, 2: r2, 3: r3}
    state.roles.update({i: u for i, u in enumerate(rest, start=4)})
    state.role_colors = {i: c.colors[u] for i, u in state.roles.items()}
    state.trace.emit('choose_roles', (r1, r2, r3),
                     note='colors ' + ','.join(str(state.role_colors[i]) for i in (1, 2, 3)))
    return StepOutcome(False, state)


def step_normalize_pair(state: RepairState, pair) -> StepOutcome:
    """Make the (i, j) Kempe component through role i a simple path ending at role j."""
    g, c = state.g, state.coloring
    step = f'normalize_{_key(pair)}'
    vi, vj, a, b = _role_vertices(state, pair)
    comp = kempe_component(g, c, vi, a, b, state.counters)

    if vj not in comp:
        state.trace.branch('different-components', (vi, vj))
        _swap(state, comp, step)
        _checkpoint(state, step)
        return _finish(state, a, step)

    if not comp.is_simple_path:
        y = comp.first_branch_from
        if y is None or vj in comp.walk:
            _fail(state, step, f"no branch vertex between {vi} and {vj}")
        options = _free_options(state, y)
        if not options:
            _fail(state, step, f"branch vertex {y} has no spare color")
        state.mu = options[0]
        state.trace.branch('non-path-component', (y,))
        _recolor(state, y, options[0], step)
        _swap_prefix(state, comp.walk + [y], y, a, b, step)
        _checkpoint(state, step)
        return _finish(state, a, step)

    if comp.walk[-1] != vj:
        _fail(state, step, f"path from {vi} does not end at {vj}")
    state.paths[_key(pair)] = comp
    return StepOutcome(False, state)


def step_third_color_break(state: RepairState, pair) -> StepOutcome:
    """Finish at the first path vertex with no neighbor of the third color."""
    key = _key(pair)
    step = f'third_color_{key}'
    _establish_paths(state)
    path = state.paths[key].walk
    a, b = state.role_colors[pair[0]], state.role_colors[pair[1]]
    third = state.role_colors[_third_role(pair)]
    last = len(path) - 1
    counts = []
    for idx, x in enumerate(path):
        count = _profile(state, x)[third]
        counts.append(count)
        if count == 0:
            if idx in (0, last):
                _fail(state, step, f"path endpoint {x} has no neighbor colored {third}")
            state.trace.branch('third-color-break', (x,))
            _recolor(state, x, third, step)
            _swap_prefix(state, path, x, a, b, step)
            _checkpoint(state, step)
            return _finish(state, a, step)
    state.third_counts[key] = counts
    return StepOutcome(False, state)


def step_adjacent_pair_recolor(state: RepairState) -> StepOutcome:
    """Roles 1-2-3 form an induced path: shift colors along it."""
    g = state.g
    v1, v2, v3 = state.roles[1], state.roles[2], state.roles[3]
    if adjacent(g, v1, v3):
        _fail(state, 'adjacent_pair', f"roles 1 and 3 ({v1}, {v3}) are adjacent")
    if not (adjacent(g, v1, v2) and adjacent(g, v2, v3)):
        return StepOutcome(False, state)
    c1, c2, c3 = (state.role_colors[i] for i in (1, 2, 3))
    state.trace.branch('adjacent-pair', (v1, v2, v3))
    _recolor(state, v1, c2, 'adjacent_pair')
    _recolor(state, v3, c2, 'adjacent_pair')
    _recolor(state, v2, c3, 'adjacent_pair')
    _checkpoint(state, 'adjacent_pair')
    return _finish(state, c1, 'adjacent_pair')


def step_final_maneuver(state: RepairState) -> StepOutcome:
    """
    Last resort once roles 2 and 3 are non-adjacent and every vertex on the
    2-3 path has a neighbor colored 1.

    (i) a path vertex with two such neighbors takes a spare color, which
    cuts role 2 off from role 3 in the 2-3 chain; the part of the path
    before it is that chain and gets swapped.
    (ii) otherwise swap the whole 1-3 path, then the 2-3 chain at role 3's
    unique neighbor colored 2, which must reach role 2. That chain is
    traversed, not taken from the stored path, since 1-3 path vertices
    turned 3 may join it.
    """
    g, c = state.g, state.coloring
    step = 'final_maneuver'
    v1, v2, v3 = state.roles[1], state.roles[2], state.roles[3]
    c1, c2, c3 = (state.role_colors[i] for i in (1, 2, 3))
    if adjacent(g, v1, v3) or adjacent(g, v2, v3):
        _fail(state, step, "roles 1-3 or 2-3 are adjacent")
    _establish_paths(state)

    path23 = state.paths['23'].walk
    counts = state.third_counts['23']
    for x, count in zip(path23, counts):
        if count >= 2:
            own = c.colors[x]
            profile = _profile(state, x)
            options = [col for col in range(1, c.k + 1) if not profile[col] and col != own]
            if not options:
                _fail(state, step, f"vertex {x} has no spare color")
            state.mu = options[0]
            state.trace.branch('final-maneuver-(i)', (x,))
            _recolor(state, x, options[0], step)
            if state.debug:
                chain = kempe_component(g, c, v2, c2, c3)
                if v3 in chain or set(chain.members) != set(path23[:path23.index(x)]):
                    _fail(state, step, f"{c2}-{c3} chain at role 2 is not the path before {x}")
            _swap_prefix(state, path23, x, c2, c3, step)
            _checkpoint(state, step)
            return _finish(state, c2, step)
    if any(count != 1 for count in counts):
        _fail(state, step, "2-3 path vertex without a neighbor colored 1")

    _swap(state, state.paths['13'], step)
    w = state.w = path23[-2]
    if c.colors[w] != c2:
        _fail(state, step, f"role 3's path neighbor {w} is not colored {c2}")
    chain = _kempe(state, w, c2, c3)
    if v2 not in chain:
        _fail(state, step, f"{c2}-{c3} chain at {w} misses role 2")
    _swap(state, chain, step)
    if c.colors[v2] != c3:
        _fail(state, step, f"role 2 did not turn {c3}")

    if not adjacent(g, v1, v2):
        state.trace.branch('final-maneuver-(ii-absent)', (v1, v2, w))
        if c.colors[v1] != c3:
            _fail(state, step, f"role 1 is {c.colors[v1]}, expected {c3}")
        _checkpoint(state, step)
        return _finish(state, c2, step)

    state.trace.branch('final-maneuver-(ii-present)', (v1, v2, w))
    if c.colors[v1] != c2:
        _recolor(state, v1, c2, step)
    leftover = neighbor_color_count(g, c, v2, c1, state.counters)
    _charge_path_reads(state, (v2,))
    if leftover:
        _fail(state, step, f"role 2 still has a neighbor colored {c1}")
    _recolor(state, v2, c1, step)
    _checkpoint(state, step)
    return _finish(state, c3, step)


REPAIR_CHAIN = (
    step_free_color,
    step_choose_roles,
    partial(step_normalize_pair, pair=(1, 3)),
    partial(step_normalize_pair, pair=(2, 3)),
    partial(step_normalize_pair, pair=(1, 2)),
    partial(step_third_color_break, pair=(1, 3)),
    partial(step_third_color_break, pair=(1, 2)),
    partial(step_third_color_break, pair=(2, 3)),
    step_adjacent_pair_recolor,
    step_final_maneuver,
)


# ----------------------------------------------------------------------
# Entry point
# ----------------------------------------------------------------------

def delete_and_color(g: Graph, comp, v: int, k: int,
                     counters: Optional[Counters] = None) -> Coloring:
    """Color comp - v with k colors, one greedy run per remaining component."""
    rest = [u for u in comp if u != v]
    sub, _, new_to_old = induced_subgraph(g, rest)
    coloring = Coloring.empty(g.n, k)
    for part in connected_components(sub):
        part_coloring = color_low_degree_component(sub, part, k, counters)
        for new in part:
            coloring.colors[new_to_old[new]] = part_coloring.colors[new]
    return coloring


def _check_start(g: Graph, comp: list, v: int, k: int, start: Coloring) -> Coloring:
    if start.k != k or len(start) != g.n:
        raise ValueError(f"start coloring must have k={k} and {g.n} entries")
    if start.colors[v] != 0 or any(start.colors[u] == 0 for u in comp if u != v):
        raise ValueError(f"start coloring must leave exactly v={v} uncolored")
    verdict = validate_coloring(g, start, members=comp)
    if not verdict:
        raise ValueError(f"start coloring is not proper: {verdict}")
    return start.copy()


def color_regular_repair(g: Graph, comp, trace: Optional[Trace] = None,
                         debug: Optional[bool] = None,
                         start: Optional[Coloring] = None) -> ColorResult:
    """
    Δ-color one connected Δ-regular non-complete component (Δ >= 3).

    `start` replaces the greedy coloring of comp - v: a proper coloring of
    every vertex but v, used to replay a prepared repair instance.
    """
    comp = sorted(comp)
    if not comp:
        raise ValueError("component is empty")
    k = len(g.adj[comp[0]])
    if k < 3 or any(len(g.adj[u]) != k for u in comp) or len(comp) == k + 1:
        raise ValueError("component must be Δ-regular, non-complete, with Δ >= 3")
    trace = trace if trace is not None else Trace()
    debug = config.DEBUG_CHECKS if debug is None else debug

    v = comp[0]
    if start is not None:
        coloring = _check_start(g, comp, v, k, start)
        trace.emit('prepared_start', (v,), note=f'k={k}')
    else:
        try:
            coloring = delete_and_color(g, comp, v, k, trace.counters)
        except NoFreeColor as e:
            raise InternalAssertion('delete_and_color', str(e), trace) from e
        trace.emit('delete_and_color', (v,), note=f'k={k}')
    state = RepairState(g=g, coloring=coloring, v=v, members=frozenset(comp),
                        trace=trace, debug=debug)
    for step in REPAIR_CHAIN:
        outcome = step(state)
        if outcome.done:
            break
    else:
        _fail(state, 'repair', "chain ended without a free color at v")

    logger.debug("Repair colored %d vertices, branches=%s", len(comp),
                 sorted(trace.counters.branches))
    report = ComponentReport(comp, GraphClass.REGULAR, colors_used(coloring, comp), 'A')
    return ColorResult(coloring=coloring, palette=k, components=[report],
                       instrumentation=trace.counters,
                       trace=trace.events if trace.enabled else None)
