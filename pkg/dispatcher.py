"""
Dispatcher Module

Colors a whole graph: splits it into components, classifies each one,
colors it with the method for its class, merges the results under one
palette and validates the final coloring.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import config
from brooks_dfs import color_regular_dfs
from brooks_repair import color_regular_repair
from coloring_core import ColorResult, Coloring, ComponentReport, colors_used, validate_coloring
from graph_core import Graph, GraphClass, classify_component, connected_components
from greedy_color import color_low_degree_component
from instrumentation import Counters, InternalAssertion, Trace

logger = logging.getLogger(__name__)


class AlgoChoice(str, Enum):
    A = 'a'
    B = 'b'
    GREEDY = 'greedy'
    AUTO = 'auto'


class IllegalAlgorithm(ValueError):
    pass


class AlgorithmFailure(RuntimeError):
    """Every permitted algorithm failed on some component."""

    def __init__(self, message, events=None):
        super().__init__(message)
        self.events = list(events or [])


@dataclass(frozen=True)
class ColorOptions:
    trace: bool = False
    debug: Optional[bool] = None
    fallback: bool = True


_REGULAR_ORDER = {
    AlgoChoice.A: ('A', 'B'),
    AlgoChoice.B: ('B', 'A'),
    AlgoChoice.AUTO: ('B', 'A'),
}

_REGULAR_ALGORITHMS = {
    'A': color_regular_repair,
    'B': color_regular_dfs,
}


def required_palette(classes: Iterable[tuple]) -> int:
    """
    Palette size for (class, component size, Δ(G)) triples: the clique size
    for complete components, 3 for odd cycles, 2 for paths and even cycles,
    1 for isolated vertices and Δ(G) otherwise. 0 for the empty graph.
    """
    palette = 0
    for graph_class, size, delta in classes:
        if graph_class is GraphClass.COMPLETE:
            need = size
        elif graph_class is GraphClass.ODD_CYCLE:
            need = 3
        elif graph_class in (GraphClass.EVEN_CYCLE, GraphClass.PATH):
            need = 2
        elif graph_class is GraphClass.TRIVIAL:
            need = 1 if size else 0
        else:
            need = delta
        palette = max(palette, need)
    return palette


def _color_complete(g: Graph, comp, coloring: Coloring) -> str:
    for i, u in enumerate(comp, start=1):
        coloring.colors[u] = i
    return 'complete'


def _color_parity(g: Graph, comp, coloring: Coloring, counters: Counters) -> str:
    colors = coloring.colors
    root = comp[0]
    colors[root] = 1
    queue = [root]
    for u in queue:
        counters.edges_examined += len(g.adj[u])
        for w in g.adj[u]:
            if colors[w] == 0:
                colors[w] = 3 - colors[u]
                queue.append(w)
    return 'parity'


def _color_odd_cycle(g: Graph, comp, coloring: Coloring, counters: Counters) -> str:
    walk = [comp[0]]
    prev = None
    cur = comp[0]
    while len(walk) < len(comp):
        nxt = next(w for w in g.adj[cur] if w != prev)
        walk.append(nxt)
        prev, cur = cur, nxt
    counters.edges_examined += 2 * len(comp)
    for i, u in enumerate(walk):
        coloring.colors[u] = 1 + i % 2
    coloring.colors[walk[-1]] = 3
    return 'odd-cycle'


def _color_regular(g: Graph, comp, algo: AlgoChoice, coloring: Coloring,
                   counters: Counters, events: list, options: ColorOptions):
    """Try the regular-component algorithms in order; returns (label, fallbacks)."""
    order = _REGULAR_ORDER[algo]
    if not options.fallback:
        order = order[:1]
    failures = []
    for attempt, name in enumerate(order):
        trace = Trace(enabled=options.trace)
        try:
            result = _REGULAR_ALGORITHMS[name](g, comp, trace=trace, debug=options.debug)
        except InternalAssertion as e:
            logger.warning("Algorithm %s failed on component at %d: %s", name, comp[0], e)
            failures.append(e)
            events.extend(e.events)
            continue
        for u in comp:
            coloring.colors[u] = result.coloring.colors[u]
        counters.merge(result.instrumentation)
        events.extend(trace.events)
        return name, attempt
    raise AlgorithmFailure(
        f"all algorithms failed on component starting at {comp[0]}: "
        + '; '.join(str(e) for e in failures),
        events,
    )


def color_graph(g: Graph, algo: AlgoChoice = AlgoChoice.AUTO,
                options: Optional[ColorOptions] = None) -> ColorResult:
    """
    Color g with palette required_palette(...): at most Δ(G) colors unless
    a component is a complete graph or an odd cycle.
    """
    options = options or ColorOptions()
    algo = AlgoChoice(algo)
    debug = config.DEBUG_CHECKS if options.debug is None else options.debug
    options = ColorOptions(trace=options.trace, debug=debug, fallback=options.fallback)

    delta = g.max_degree
    comps = connected_components(g)
    classes = [classify_component(g, comp) for comp in comps]
    if algo is AlgoChoice.GREEDY and GraphClass.REGULAR in classes:
        raise IllegalAlgorithm("greedy cannot color a Δ-regular non-complete component")
    palette = required_palette(
        (cls, len(comp), delta) for cls, comp in zip(classes, comps)
    )

    coloring = Coloring.empty(g.n, palette)
    counters = Counters()
    events = []
    reports = []
    fallbacks = 0
    for comp, graph_class in zip(comps, classes):
        if graph_class is GraphClass.TRIVIAL:
            coloring.colors[comp[0]] = 1
            label = 'trivial'
        elif graph_class is GraphClass.COMPLETE:
            label = _color_complete(g, comp, coloring)
        elif graph_class in (GraphClass.PATH, GraphClass.EVEN_CYCLE):
            label = _color_parity(g, comp, coloring, counters)
        elif graph_class is GraphClass.ODD_CYCLE:
            label = _color_odd_cycle(g, comp, coloring, counters)
        elif graph_class is GraphClass.LOW_DEGREE:
            k = max(len(g.adj[u]) for u in comp)
            part = color_low_degree_component(g, comp, k, counters)
            for u in comp:
                coloring.colors[u] = part.colors[u]
            label = 'greedy'
        else:
            label, failed = _color_regular(g, comp, algo, coloring, counters, events, options)
            fallbacks += failed
        reports.append(ComponentReport(comp, graph_class, colors_used(coloring, comp), label))

    verdict = validate_coloring(g, coloring, require_total=True)
    if not verdict:
        raise AlgorithmFailure(f"merged coloring failed validation: {verdict}", events)
    logger.info("Colored n=%d m=%d with palette %d over %d component(s), %d fallback(s)",
                g.n, g.m, palette, len(comps), fallbacks)
    return ColorResult(
        coloring=coloring,
        palette=palette,
        components=reports,
        instrumentation=counters,
        trace=events if options.trace else None,
        fallbacks=fallbacks,
    )


if __name__ == "__main__":
    from testkit import named_graph

    for name in ('petersen', 'wagner', 'complete(5)', 'cycle(7)', 'bowtie'):
        result = color_graph(named_graph(name), options=ColorOptions(trace=True))
        print("=" * 60)
        print(f"{name}: palette {result.palette}, fallbacks {result.fallbacks}")
        for report in result.components:
            print(f"  {report.graph_class.value:<24} algorithm={report.algorithm} "
                  f"colors_used={report.colors_used}")
        print(f"  colors: {result.coloring.colors}")
        print(f"  branches: {sorted(result.instrumentation.branches)}")
