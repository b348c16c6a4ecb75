"""
Forced-DFS Coloring Module

Colors a connected Δ-regular non-complete component (Δ >= 3) with Δ colors
from a single spanning tree: pick v with two non-adjacent neighbors x, y,
run a DFS from x that starts along x-v-y, then

- tree is a Hamiltonian path: color x, y with 1 and greedy the rest in two
  sweeps meeting at a third neighbor z of v, v last;
- the first branching vertex (or one of its first two children) separates
  the component: color each side with the cut vertex as root, then align;
- otherwise drop the first two children s, t of the branching vertex p,
  color them 1 and greedy the remainder toward p.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import config
from coloring_core import ColorResult, Coloring, ComponentReport, colors_used, \
    min_missing_color, validate_coloring
from graph_core import Graph, GraphClass, adjacent, induced_subgraph, is_connected, \
    is_separation_vertex
from greedy_color import DfsTree, NoFreeColor, dfs, greedy_post_order
from instrumentation import Counters, InternalAssertion, Trace

logger = logging.getLogger(__name__)


class NotSeparation(InternalAssertion):
    def __init__(self, cut):
        super().__init__('case2a', f"vertex {cut} does not separate the component")
        self.cut = cut


@dataclass(frozen=True)
class SplitPlan:
    cut: int
    sides: tuple


@dataclass
class DfsCaseState:
    v: int
    x: int
    y: int
    tree: Optional[DfsTree] = None
    case: str = ''
    z: Optional[int] = None
    p: Optional[int] = None
    s: Optional[int] = None
    t: Optional[int] = None
    plan: Optional[SplitPlan] = None


def choose_v_x_y(g: Graph, comp: Sequence[int]):
    """Smallest v with two non-adjacent neighbors; (x, y) lexicographically smallest."""
    for v in sorted(comp):
        nbrs = g.adj[v]
        for i, x in enumerate(nbrs):
            for y in nbrs[i + 1:]:
                if not adjacent(g, x, y):
                    return v, x, y
    raise InternalAssertion('choose_v_x_y', "every neighborhood is a clique")


def find_first_branching(tree: DfsTree):
    """First vertex in preorder with two or more children, with its first two."""
    for u in tree.order:
        kids = tree.children[u]
        if len(kids) >= 2:
            return u, kids[0], kids[1]
    return None


def case1_color_ham_path(g: Graph, path: Sequence[int], v: int, x: int, y: int, k: int,
                         counters: Optional[Counters] = None) -> Coloring:
    """
    `path` is x, v, y, u4, ..., un. Color x and y with 1, sweep forward up
    to the neighbor z of v, sweep backward from un down to z, then color v.
    """
    path = list(path)
    if path[:3] != [x, v, y]:
        raise InternalAssertion('case1', f"path does not start with {x},{v},{y}")
    z = next((u for u in g.adj[v] if u not in (x, y)), None)
    if z is None:
        raise InternalAssertion('case1', f"v={v} has no third neighbor")
    split = path.index(z)
    coloring = Coloring.empty(g.n, k)
    coloring.colors[x] = coloring.colors[y] = 1
    sweep = path[3:split] + path[:split - 1:-1] + [v]
    colors = coloring.colors
    for u in sweep:
        col = min_missing_color(g, coloring, u, counters)
        if col == 0:
            raise InternalAssertion('case1', f"no free color at {u}")
        colors[u] = col
    return coloring


def case2a_split_color(g: Graph, comp: Sequence[int], cut: int, k: int,
                       counters: Optional[Counters] = None):
    """
    Color each side plus the cut vertex on its own, rooted at the cut, and
    transpose colors so every side agrees on the cut's color.
    Returns (Coloring, SplitPlan).
    """
    separates, sides = is_separation_vertex(g, comp, cut)
    if not separates:
        raise NotSeparation(cut)
    coloring = Coloring.empty(g.n, k)
    anchor = None
    for side in sides:
        sub, old_to_new, new_to_old = induced_subgraph(g, list(side) + [cut])
        root = old_to_new[cut]
        if len(sub.adj[root]) >= k:
            raise InternalAssertion('case2a', f"cut {cut} has full degree inside a side")
        part = greedy_post_order(sub, range(sub.n), k, root, counters=counters)
        cut_color = part.colors[root]
        if anchor is None:
            anchor = cut_color
        for new, old in enumerate(new_to_old):
            col = part.colors[new]
            if col == cut_color:
                col = anchor
            elif col == anchor:
                col = cut_color
            coloring.colors[old] = col
    return coloring, SplitPlan(cut, tuple(tuple(side) for side in sides))


def case2b_remove_pair_color(g: Graph, comp: Sequence[int], p: int, s: int, t: int, k: int,
                             counters: Optional[Counters] = None) -> Coloring:
    if adjacent(g, s, t):
        raise InternalAssertion('case2b', f"children {s} and {t} are adjacent")
    rest = [u for u in comp if u != s and u != t]
    if not is_connected(g, rest):
        raise InternalAssertion('case2b', f"removing {s} and {t} disconnects the component")
    return greedy_post_order(g, rest, k, p, precolored={s: 1, t: 1}, counters=counters)


def color_regular_dfs(g: Graph, comp, trace: Optional[Trace] = None,
                      debug: Optional[bool] = None) -> ColorResult:
    """Δ-color one connected Δ-regular non-complete component (Δ >= 3)."""
    comp = sorted(comp)
    if not comp:
        raise ValueError("component is empty")
    k = len(g.adj[comp[0]])
    if k < 3 or any(len(g.adj[u]) != k for u in comp) or len(comp) == k + 1:
        raise ValueError("component must be Δ-regular, non-complete, with Δ >= 3")
    trace = trace if trace is not None else Trace()
    debug = config.DEBUG_CHECKS if debug is None else debug
    counters = trace.counters
    members = set(comp)

    v, x, y = choose_v_x_y(g, comp)
    state = DfsCaseState(v=v, x=x, y=y)
    tree = state.tree = dfs(g, x, forced=(x, v, y), members=members, counters=counters)
    trace.emit('forced_dfs', (x, v, y))
    if len(tree.order) != len(comp):
        raise InternalAssertion('forced_dfs', "tree does not span the component", trace)

    try:
        branching = find_first_branching(tree)
        if branching is None:
            state.case = 'ham-path'
            state.z = next(u for u in g.adj[v] if u not in (x, y))
            trace.branch('ham-path', (x, v, y), note=f'z={state.z}')
            coloring = case1_color_ham_path(g, tree.order, v, x, y, k, counters)
        else:
            p, s, t = state.p, state.s, state.t = branching
            if p == tree.root:
                cut = p
            elif tree.is_articulation(s):
                cut = s
            elif tree.is_articulation(t):
                cut = t
            else:
                cut = None
            if cut is not None:
                state.case = 'split'
                trace.branch('split', (cut,), note=f'p={p}')
                coloring, state.plan = case2a_split_color(g, comp, cut, k, counters)
            else:
                state.case = 'pair-removal'
                trace.branch('pair-removal', (p, s, t))
                coloring = case2b_remove_pair_color(g, comp, p, s, t, k, counters)
    except InternalAssertion as e:
        raise InternalAssertion(e.step, e.detail, trace) from e
    except NoFreeColor as e:
        raise InternalAssertion(state.case, str(e), trace) from e

    verdict = validate_coloring(g, coloring, require_total=True, members=members)
    if not verdict:
        raise InternalAssertion(state.case, f"coloring invalid: {verdict}", trace)
    if debug:
        trace.emit('validated', note=state.case)

    logger.debug("Forced DFS colored %d vertices via %s", len(comp), state.case)
    report = ComponentReport(comp, GraphClass.REGULAR, colors_used(coloring, comp), 'B')
    return ColorResult(coloring=coloring, palette=k, components=[report],
                       instrumentation=counters,
                       trace=trace.events if trace.enabled else None)
