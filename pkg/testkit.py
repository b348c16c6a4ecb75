"""
Test Kit Module

Deterministic graph generators, an exact k-colorability oracle and a
search for instances that drive a requested proof branch.

All randomness flows from an integer seed through numpy's PCG64.
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

import config
from brooks_dfs import color_regular_dfs
from brooks_repair import color_regular_repair
from coloring_core import Coloring
from graph_core import Graph, GraphClass, build_graph, classify_component, is_connected
from instrumentation import InternalAssertion, Trace

logger = logging.getLogger(__name__)


class GenRetryExhausted(RuntimeError):
    pass


class UnknownName(ValueError):
    pass


class SearchExhausted(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes):
        super().__init__(f"search exceeded its budget after {nodes} nodes")
        self.nodes = nodes


GEN_KINDS = ('gnp', 'regular', 'named', 'exhaustive')


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int = 0
    p: float = 0.0
    d: int = 0
    name: str = ''
    seed: int = 0

    def __post_init__(self):
        if self.kind not in GEN_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.kind == 'gnp' and not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if self.kind == 'regular':
            if self.d < 0 or self.d >= max(self.n, 1):
                raise ValueError(f"degree {self.d} impossible on {self.n} vertices")
            if (self.n * self.d) % 2:
                raise ValueError("n * d must be even")

    @classmethod
    def gnp(cls, n, p, seed=0):
        return cls('gnp', n=n, p=p, seed=seed)

    @classmethod
    def regular(cls, n, d, seed=0):
        return cls('regular', n=n, d=d, seed=seed)

    @classmethod
    def named(cls, name):
        return cls('named', name=name)

    @classmethod
    def exhaustive(cls, n):
        return cls('exhaustive', n=n)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


# ----------------------------------------------------------------------
# Generators
# ----------------------------------------------------------------------

def gnp_graph(n: int, p: float, seed: int = 0) -> Graph:
    """Each of the n(n-1)/2 pairs is an edge with probability p."""
    rng = make_rng(seed)
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.shape[0]) < p
    return build_graph(n, np.stack([rows[keep], cols[keep]], axis=1))


def _has_free_pair(edges: set, stubs: list) -> bool:
    pending = sorted(set(stubs))
    for i, s1 in enumerate(pending):
        for s2 in pending[i + 1:]:
            if (s1, s2) not in edges:
                return True
    return False


def _try_pairing(n: int, d: int, rng: np.random.Generator) -> Optional[set]:
    """
    One pairing attempt: shuffle the point stubs, keep the pairs that form
    new edges and re-pair the rest until done or stuck.
    """
    edges = set()
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    while stubs.size:
        rng.shuffle(stubs)
        pairs = stubs.reshape(-1, 2)
        lo = np.minimum(pairs[:, 0], pairs[:, 1]).tolist()
        hi = np.maximum(pairs[:, 0], pairs[:, 1]).tolist()
        leftover = []
        for a, b in zip(lo, hi):
            if a != b and (a, b) not in edges:
                edges.add((a, b))
            else:
                leftover.extend((a, b))
        if leftover and not _has_free_pair(edges, leftover):
            return None
        stubs = np.asarray(leftover, dtype=np.int64)
    return edges


def random_regular_graph(n: int, d: int, seed: int = 0,
                         retries: Optional[int] = None) -> Graph:
    """Simple d-regular graph on n vertices from the pairing model."""
    GenSpec.regular(n, d, seed)
    retries = config.REGULAR_RETRIES if retries is None else retries
    if d == 0 or n == 0:
        return build_graph(n, [])
    rng = make_rng(seed)
    for attempt in range(retries + 1):
        edges = _try_pairing(n, d, rng)
        if edges is not None:
            if attempt:
                logger.debug("Pairing for n=%d d=%d succeeded after %d retries", n, d, attempt)
            return build_graph(n, sorted(edges))
    raise GenRetryExhausted(f"no simple {d}-regular graph on {n} vertices after {retries} retries")


def _complete_edges(c):
    return list(itertools.combinations(range(c), 2))


def _cycle_edges(c):
    return [(i, (i + 1) % c) for i in range(c)]


_NAMED = {
    'petersen': lambda: (10, [(i, (i + 1) % 5) for i in range(5)]
                         + [(i, i + 5) for i in range(5)]
                         + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]),
    'prism': lambda: (6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                          (0, 3), (1, 4), (2, 5)]),
    'bowtie': lambda: (5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]),
    'k33': lambda: (6, [(i, j) for i in range(3) for j in range(3, 6)]),
    'wagner': lambda: (8, _cycle_edges(8) + [(i, i + 4) for i in range(4)]),
    'bridged-cubic': lambda: (10, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4),
                                   (4, 9), (5, 6), (5, 7), (5, 8), (6, 7), (6, 8), (7, 9),
                                   (8, 9)]),
}

_FAMILY = re.compile(r'^(complete|cycle|k|c)\(?(\d+)\)?$')

NAMED_GRAPHS = tuple(_NAMED) + ('complete(c)', 'cycle(c)')


def named_graph(name: str) -> Graph:
    """
    Look up a named graph: petersen, prism, bowtie, k33, wagner,
    bridged-cubic, complete(c) / k<c>, cycle(c) / c<c>.
    """
    key = name.strip().lower()
    if key in _NAMED:
        n, edges = _NAMED[key]()
        return build_graph(n, edges)
    match = _FAMILY.match(key)
    if match:
        family, size = match.group(1), int(match.group(2))
        if family in ('complete', 'k'):
            return build_graph(size, _complete_edges(size))
        if size < 3:
            raise UnknownName(f"cycle needs at least 3 vertices, got {size}")
        return build_graph(size, _cycle_edges(size))
    raise UnknownName(f"unknown graph name {name!r}; known: {', '.join(NAMED_GRAPHS)}")


def exhaustive_connected(n: int) -> Iterator[Graph]:
    """Every connected labeled graph on n >= 1 vertices, in edge-bitmask order."""
    if n <= 0:
        return
    pairs = list(itertools.combinations(range(n), 2))
    full = (1 << n) - 1
    for mask in range(1 << len(pairs)):
        nbr_bits = [0] * n
        edges = []
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                nbr_bits[u] |= 1 << v
                nbr_bits[v] |= 1 << u
                edges.append((u, v))
        reached = frontier = 1
        while frontier:
            grown = 0
            bits = frontier
            while bits:
                low = bits & -bits
                grown |= nbr_bits[low.bit_length() - 1]
                bits ^= low
            frontier = grown & ~reached
            reached |= grown
        if reached == full:
            yield build_graph(n, edges)


def exhaustive_regular(n: int, d: int) -> Iterator[Graph]:
    """Every labeled d-regular graph on n vertices, connected or not."""
    if n <= 0 or d < 0 or d >= n or (n * d) % 2:
        return
    degree = [0] * n
    edges = []

    def extend(u, lo):
        if u == n:
            yield build_graph(n, edges)
            return
        if degree[u] == d:
            yield from extend(u + 1, u + 2)
            return
        open_slots = sum(1 for w in range(lo, n) if degree[w] < d)
        if open_slots < d - degree[u]:
            return
        for w in range(lo, n):
            if degree[w] < d:
                degree[u] += 1
                degree[w] += 1
                edges.append((u, w))
                yield from extend(u, w + 1)
                edges.pop()
                degree[u] -= 1
                degree[w] -= 1

    yield from extend(0, 1)


def generate(spec: GenSpec) -> Graph:
    if spec.kind == 'gnp':
        return gnp_graph(spec.n, spec.p, spec.seed)
    if spec.kind == 'regular':
        return random_regular_graph(spec.n, spec.d, spec.seed)
    if spec.kind == 'named':
        return named_graph(spec.name)
    raise ValueError("exhaustive specs yield many graphs; use stream()")


def stream(spec: GenSpec) -> Iterator[Graph]:
    if spec.kind == 'exhaustive':
        yield from exhaustive_connected(spec.n)
    else:
        yield generate(spec)


def regular_corpus(count: int, degrees=(3, 4, 5), max_n: int = 40,
                   seed: int = 0) -> Iterator[Graph]:
    """`count` random regular graphs with degree and order drawn from the seed."""
    rng = make_rng(seed)
    for _ in range(count):
        d = int(rng.choice(degrees))
        n = int(rng.integers(d + 2, max_n + 1))
        if (n * d) % 2:
            n = n + 1 if n < max_n else n - 1
        yield random_regular_graph(n, d, int(rng.integers(2 ** 32)))


def gnp_corpus(count: int, max_n: int = 30, seed: int = 0) -> Iterator[Graph]:
    rng = make_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, max_n + 1))
        p = float(rng.random())
        yield gnp_graph(n, p, int(rng.integers(2 ** 32)))


# ----------------------------------------------------------------------
# Exact oracle
# ----------------------------------------------------------------------

def k_colorable(g: Graph, k: int, budget: Optional[int] = None):
    """
    Backtracking search for a proper k-coloring.

    Vertices are tried by descending degree, the first gets color 1 and a
    vertex never opens more than one new color. Returns (True, Coloring)
    or (False, None); raises BudgetExceeded past `budget` search nodes.
    """
    n = g.n
    if n == 0:
        return True, Coloring.empty(0, max(k, 0))
    if k <= 0:
        return False, None
    order = sorted(range(n), key=lambda v: (-len(g.adj[v]), v))
    adj = g.adj
    colors = [0] * n
    nodes = 0

    def place(i, used):
        nonlocal nodes
        if i == n:
            return True
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(nodes)
        v = order[i]
        taken = {colors[w] for w in adj[v]}
        for col in range(1, min(k, used + 1) + 1):
            if col in taken:
                continue
            colors[v] = col
            if place(i + 1, max(used, col)):
                return True
        colors[v] = 0
        return False

    if place(0, 0):
        return True, Coloring(k, colors)
    return False, None


def chromatic_number(g: Graph, budget: Optional[int] = None):
    """Smallest k with a proper k-coloring, and a witness."""
    if g.n == 0:
        return 0, Coloring.empty(0, 0)
    for k in range(1, g.n + 1):
        ok, witness = k_colorable(g, k, budget)
        if ok:
            return k, witness
    raise AssertionError("every graph is n-colorable")


def brute_force_colorable(g: Graph, k: int) -> bool:
    """Enumerate all k^n assignments. Only for tiny graphs."""
    edges = list(g.edges())
    for assignment in itertools.product(range(1, k + 1), repeat=g.n):
        if all(assignment[u] != assignment[v] for u, v in edges):
            return True
    return g.n == 0


# ----------------------------------------------------------------------
# Case instances
# ----------------------------------------------------------------------

CASE_BRANCHES = {
    'free-color': 'A',
    'neighbor-recolor': 'A',
    'different-components': 'A',
    'non-path-component': 'A',
    'third-color-break': 'A',
    'adjacent-pair': 'A',
    'roles-triangle': 'A',
    'final-maneuver-(i)': 'A',
    'final-maneuver-(ii-absent)': 'A',
    'final-maneuver-(ii-present)': 'A',
    'ham-path': 'B',
    'split': 'B',
    'pair-removal': 'B',
}

_CASE_ALIASES = {'roles-triangle': 'adjacent-pair'}

_STREAM_NAMES = ('k33', 'prism', 'petersen', 'wagner', 'bridged-cubic')

# Deep repair branches need a particular coloring of G - 0 that greedy
# seldom produces, so these instances carry it: (n, edges, start colors).
_ADJACENT_PAIR = (10, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 4), (3, 5), (4, 5),
                       (4, 6), (5, 7), (6, 8), (6, 9), (7, 8), (7, 9), (8, 9)],
                  [0, 1, 2, 3, 3, 1, 2, 2, 1, 3])

_PREPARED = {
    'adjacent-pair': _ADJACENT_PAIR,
    'roles-triangle': _ADJACENT_PAIR,
    'third-color-break': (
        12,
        [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (1, 5), (2, 3), (2, 4), (3, 4),
         (3, 6), (5, 6), (5, 7), (5, 8), (6, 9), (6, 10), (7, 9), (7, 10), (7, 11),
         (8, 9), (8, 10), (8, 11), (9, 11), (10, 11)],
        [0, 1, 2, 3, 4, 3, 1, 4, 4, 2, 2, 1],
    ),
    'final-maneuver-(i)': (
        12,
        [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (1, 5), (2, 4), (2, 7), (3, 4),
         (3, 6), (3, 8), (5, 6), (5, 10), (5, 11), (6, 8), (6, 10), (7, 8), (7, 9),
         (7, 11), (8, 9), (9, 10), (9, 11), (10, 11)],
        [0, 1, 2, 3, 4, 3, 1, 3, 2, 1, 2, 4],
    ),
    'final-maneuver-(ii-absent)': (
        10,
        [(0, 1), (0, 2), (0, 3), (1, 4), (1, 8), (2, 5), (2, 7), (3, 6), (3, 9), (4, 5),
         (4, 8), (5, 7), (6, 7), (6, 9), (8, 9)],
        [0, 1, 3, 2, 3, 1, 3, 2, 2, 1],
    ),
    'final-maneuver-(ii-present)': (
        10,
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 6), (3, 5), (3, 7), (4, 5), (4, 8),
         (5, 8), (6, 7), (6, 9), (7, 9), (8, 9)],
        [0, 1, 2, 3, 3, 1, 3, 2, 2, 1],
    ),
}


@dataclass(frozen=True)
class CaseInstance:
    """A graph for one branch, plus the coloring of G - 0 its replay starts from."""
    case: str
    graph: Graph
    start: Optional[Coloring] = None


def prepared_instance(case: str) -> Optional[CaseInstance]:
    entry = _PREPARED.get(case)
    if entry is None:
        return None
    n, edges, colors = entry
    g = build_graph(n, edges)
    return CaseInstance(case, g, Coloring(g.max_degree, colors))


def _candidates(seed: int) -> Iterator[Graph]:
    for name in _STREAM_NAMES:
        yield named_graph(name)
    rng = make_rng(seed)
    while True:
        d = int(rng.choice((3, 4, 5)))
        n = int(rng.integers(d + 2, 17))
        if (n * d) % 2:
            n += 1
        g = random_regular_graph(n, d, int(rng.integers(2 ** 32)))
        if is_connected(g, range(g.n)) and classify_component(g, range(g.n)) is GraphClass.REGULAR:
            yield g


def branches_hit(g: Graph, algorithm: str, start: Optional[Coloring] = None) -> set:
    """Branch identifiers recorded while coloring connected regular g."""
    trace = Trace()
    try:
        if algorithm == 'A':
            color_regular_repair(g, range(g.n), trace=trace, debug=False, start=start)
        else:
            color_regular_dfs(g, range(g.n), trace=trace, debug=False)
    except InternalAssertion:
        pass
    return set(trace.counters.branches)


def case_instance(case: str, seed: Optional[int] = None,
                  budget: Optional[int] = None) -> CaseInstance:
    """
    An instance whose replay records the branch `case`: the prepared one
    when there is one and its replay confirms the branch, otherwise the
    first searched candidate that does.
    """
    if case not in CASE_BRANCHES:
        raise UnknownName(f"unknown case {case!r}; known: {', '.join(CASE_BRANCHES)}")
    algorithm = CASE_BRANCHES[case]
    branch = _CASE_ALIASES.get(case, case)
    seed = config.DEFAULT_SEED if seed is None else seed
    budget = config.CASE_SEARCH_BUDGET if budget is None else budget

    prepared = prepared_instance(case)
    if prepared is not None:
        if branch in branches_hit(prepared.graph, algorithm, prepared.start):
            return prepared
        logger.warning("Prepared instance for %s missed its branch; searching", case)

    for attempt, g in enumerate(_candidates(seed)):
        if attempt >= budget:
            break
        if branch in branches_hit(g, algorithm):
            logger.info("Case %s found after %d candidate(s): n=%d m=%d", case, attempt + 1, g.n, g.m)
            return CaseInstance(case, g)
    raise SearchExhausted(f"no instance for case {case!r} within {budget} candidates")


def generate_case_instance(case: str, seed: Optional[int] = None,
                           budget: Optional[int] = None) -> Graph:
    """Graph of `case_instance`; replay it with the instance's start coloring."""
    return case_instance(case, seed, budget).graph


if __name__ == "__main__":
    for name in ('petersen', 'k33', 'complete(4)', 'bowtie'):
        chi, witness = chromatic_number(named_graph(name))
        print(f"{name:<12} chi={chi} witness={witness.colors}")
    for n in range(1, 6):
        print(f"connected graphs on {n} labelled vertices: "
              f"{sum(1 for _ in exhaustive_connected(n))}")
    for case in CASE_BRANCHES:
        try:
            inst = case_instance(case)
        except SearchExhausted as e:
            print(f"{case:<28} {e}")
            continue
        g = inst.graph
        origin = 'prepared' if inst.start is not None else 'searched'
        print(f"{case:<28} n={g.n} m={g.m} degree={g.max_degree} {origin}")
