"""
Coloring Core Module

Partial vertex colorings, validation, Kempe components and swaps, and the
result types returned by the coloring algorithms.

Color 0 means uncolored; proper colors are 1..k.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from graph_core import Graph, GraphClass
from instrumentation import Counters

logger = logging.getLogger(__name__)


class ColoringError(ValueError):
    """Base class for coloring errors."""


class StartNotInClasses(ColoringError):
    def __init__(self, start, a, b):
        super().__init__(f"vertex {start} is not colored {a} or {b}")
        self.start = start


class StaleComponent(ColoringError):
    def __init__(self, vertex):
        super().__init__(f"component member {vertex} changed color since computation")
        self.vertex = vertex


class VertexNotOnPath(ColoringError):
    def __init__(self, vertex):
        super().__init__(f"vertex {vertex} is not on the path")
        self.vertex = vertex


class Coloring:
    """Color per vertex plus the palette size k, with a reusable scan buffer."""

    __slots__ = ('k', 'colors', '_marks', '_stamp')

    def __init__(self, k: int, colors: Sequence[int]):
        if k < 0:
            raise ValueError(f"palette size must be non-negative, got {k}")
        self.k = k
        self.colors = list(colors)
        for v, col in enumerate(self.colors):
            if not 0 <= col <= k:
                raise ValueError(f"vertex {v} has color {col} outside 0..{k}")
        self._marks = [0] * (k + 1)
        self._stamp = 0

    @classmethod
    def empty(cls, n: int, k: int) -> "Coloring":
        return cls(k, [0] * n)

    def copy(self) -> "Coloring":
        return Coloring(self.k, self.colors)

    def __len__(self):
        return len(self.colors)

    def __getitem__(self, v):
        return self.colors[v]

    def __setitem__(self, v, col):
        if not 0 <= col <= self.k:
            raise ValueError(f"color {col} outside 0..{self.k}")
        self.colors[v] = col

    def __eq__(self, other):
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.k == other.k and self.colors == other.colors

    __hash__ = None

    def __repr__(self):
        return f"Coloring(k={self.k}, colors={self.colors})"

    def next_stamp(self) -> int:
        self._stamp += 1
        return self._stamp

    # -- serialization -------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({'k': self.k, 'colors': self.colors})

    @classmethod
    def from_json(cls, text) -> "Coloring":
        data = json.loads(text)
        try:
            return cls(int(data['k']), [int(c) for c in data['colors']])
        except (KeyError, TypeError) as e:
            raise ValueError(f"coloring JSON needs 'k' and 'colors': {e}")

    def to_lines(self) -> str:
        return ''.join(f"s {v} {col}\n" for v, col in enumerate(self.colors))

    @classmethod
    def from_lines(cls, text, n: Optional[int] = None, k: Optional[int] = None) -> "Coloring":
        """Parse "s v c" lines (0-based v); "c ..." lines are comments."""
        pairs = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            tokens = raw.split()
            if not tokens or tokens[0] == 'c':
                continue
            if tokens[0] != 's' or len(tokens) != 3:
                raise ValueError(f"line {lineno}: expected 's v c'")
            try:
                pairs[int(tokens[1])] = int(tokens[2])
            except ValueError:
                raise ValueError(f"line {lineno}: non-integer token")
        size = n if n is not None else 1 + max(pairs, default=-1)
        colors = [0] * size
        for v, col in pairs.items():
            if not 0 <= v < size:
                raise ValueError(f"vertex {v} out of range for n={size}")
            colors[v] = col
        palette = k if k is not None else max(colors, default=0)
        return cls(palette, colors)


def parse_coloring(data, n: Optional[int] = None) -> Coloring:
    """Read either coloring format; JSON is recognised by a leading '{'."""
    text = data.decode('utf-8') if isinstance(data, (bytes, bytearray)) else data
    if text.lstrip().startswith('{'):
        coloring = Coloring.from_json(text)
        if n is not None and len(coloring) != n:
            raise ValueError(f"coloring has {len(coloring)} entries, graph has {n} vertices")
        return coloring
    return Coloring.from_lines(text, n=n)


# ----------------------------------------------------------------------
# Validation
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Ok:
    def __bool__(self):
        return True


@dataclass(frozen=True)
class Violation:
    edge: tuple

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Uncolored:
    vertex: int

    def __bool__(self):
        return False


def validate_coloring(g: Graph, c: Coloring, require_total: bool = False,
                      members: Optional[Iterable[int]] = None):
    """
    Scan vertices ascending and report the first defect: Uncolored(u) when
    require_total and u has color 0, else Violation((u, v)) for the first
    monochromatic edge with u < v. Restricting to `members` checks only
    those vertices and the edges among them.
    """
    if len(c) != g.n:
        raise ValueError(f"coloring has {len(c)} entries, graph has {g.n} vertices")
    colors = c.colors
    scope = sorted(set(members)) if members is not None else range(g.n)
    inside = set(scope) if members is not None else None
    for u in scope:
        cu = colors[u]
        if cu == 0:
            if require_total:
                return Uncolored(u)
            continue
        for w in g.adj[u]:
            if w > u and colors[w] == cu and (inside is None or w in inside):
                return Violation((u, w))
    return Ok()


def missing_colors(g: Graph, c: Coloring, v: int, counters: Optional[Counters] = None) -> list:
    """Colors in 1..k used by no neighbor of v, ascending."""
    stamp = c.next_stamp()
    marks = c._marks
    colors = c.colors
    nbrs = g.adj[v]
    for w in nbrs:
        marks[colors[w]] = stamp
    if counters is not None:
        counters.edges_examined += len(nbrs)
    return [col for col in range(1, c.k + 1) if marks[col] != stamp]


def min_missing_color(g: Graph, c: Coloring, v: int, counters: Optional[Counters] = None) -> int:
    """Smallest color free at v, or 0 if all k colors appear around v."""
    stamp = c.next_stamp()
    marks = c._marks
    colors = c.colors
    nbrs = g.adj[v]
    for w in nbrs:
        marks[colors[w]] = stamp
    if counters is not None:
        counters.edges_examined += len(nbrs)
    for col in range(1, c.k + 1):
        if marks[col] != stamp:
            return col
    return 0


def neighbor_color_count(g: Graph, c: Coloring, v: int, col: int,
                         counters: Optional[Counters] = None) -> int:
    colors = c.colors
    nbrs = g.adj[v]
    if counters is not None:
        counters.edges_examined += len(nbrs)
    return sum(1 for w in nbrs if colors[w] == col)


def colors_used(c: Coloring, vertices: Optional[Iterable[int]] = None) -> int:
    scope = c.colors if vertices is None else (c.colors[v] for v in vertices)
    return len({col for col in scope if col})


# ----------------------------------------------------------------------
# Kempe components
# ----------------------------------------------------------------------

@dataclass
class KempeComponent:
    """
    Connected component of the subgraph induced by colors {a, b} that
    contains `start`. `members` is in traversal order. `walk` follows the
    component from `start` while internal degrees stay at most 2: the whole
    path when the component is a path with `start` at one end, otherwise
    the vertices before `first_branch_from`.
    """
    colors: tuple
    start: int
    members: list
    internal_degree: dict
    is_simple_path: bool
    endpoints: tuple
    first_branch_from: Optional[int]
    walk: list
    member_set: frozenset = field(repr=False, default=frozenset())

    def __contains__(self, v):
        return v in self.member_set

    def __len__(self):
        return len(self.members)


def kempe_component(g: Graph, c: Coloring, start: int, a: int, b: int,
                    counters: Optional[Counters] = None) -> KempeComponent:
    colors = c.colors
    if a == b or a <= 0 or b <= 0 or colors[start] not in (a, b):
        raise StartNotInClasses(start, a, b)
    adj = g.adj
    seen = {start}
    order = [start]
    degree = {}
    examined = 0
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        d = 0
        for w in adj[u]:
            cw = colors[w]
            if cw == a or cw == b:
                d += 1
                if w not in seen:
                    seen.add(w)
                    order.append(w)
        examined += len(adj[u])
        degree[u] = d

    ends = [u for u in order if degree[u] <= 1]
    is_path = all(d <= 2 for d in degree.values()) and (len(order) == 1 or len(ends) == 2)
    endpoints = tuple(sorted(ends)) if is_path else ()

    walk = []
    branch = None
    if degree[start] <= 1:
        prev, cur = None, start
        while True:
            if degree[cur] > 2:
                branch = cur
                break
            walk.append(cur)
            nxt = None
            for w in adj[cur]:
                if w != prev and colors[w] in (a, b):
                    nxt = w
                    break
            examined += len(adj[cur])
            if nxt is None:
                break
            prev, cur = cur, nxt

    if counters is not None:
        counters.edges_examined += examined
    return KempeComponent(
        colors=(a, b),
        start=start,
        members=order,
        internal_degree=degree,
        is_simple_path=is_path,
        endpoints=endpoints,
        first_branch_from=branch,
        walk=walk,
        member_set=frozenset(order),
    )


def kempe_swap(g: Graph, c: Coloring, comp: KempeComponent, check: bool = False,
               counters: Optional[Counters] = None) -> None:
    """Exchange the two colors on every member of `comp`."""
    a, b = comp.colors
    colors = c.colors
    if check:
        for u in comp.members:
            if colors[u] not in (a, b):
                raise StaleComponent(u)
    for u in comp.members:
        colors[u] = b if colors[u] == a else a
    if counters is not None:
        counters.kempe_swaps += 1


def swap_prefix_on_path(g: Graph, c: Coloring, path: Sequence[int], upto_exclusive: int,
                        a: int, b: int) -> list:
    """Exchange a and b on the vertices of `path` before `upto_exclusive`."""
    try:
        idx = list(path).index(upto_exclusive)
    except ValueError:
        raise VertexNotOnPath(upto_exclusive)
    colors = c.colors
    prefix = list(path[:idx])
    for u in prefix:
        if colors[u] == a:
            colors[u] = b
        elif colors[u] == b:
            colors[u] = a
        else:
            raise StaleComponent(u)
    return prefix


# ----------------------------------------------------------------------
# Results
# ----------------------------------------------------------------------

@dataclass
class ComponentReport:
    vertices: list
    graph_class: GraphClass
    colors_used: int
    algorithm: str

    def as_dict(self) -> dict:
        return {
            'vertices': list(self.vertices),
            'class': self.graph_class.value,
            'colors_used': self.colors_used,
            'algorithm': self.algorithm,
        }


@dataclass
class ColorResult:
    coloring: Coloring
    palette: int
    components: list = field(default_factory=list)
    instrumentation: Counters = field(default_factory=Counters)
    trace: Optional[list] = None
    fallbacks: int = 0

    def trace_lines(self) -> list:
        return [event.format() for event in (self.trace or [])]

    def as_dict(self) -> dict:
        out = {
            'palette': self.palette,
            'colors': list(self.coloring.colors),
            'components': [report.as_dict() for report in self.components],
            'instrumentation': self.instrumentation.as_dict(),
            'fallbacks': self.fallbacks,
        }
        if self.trace is not None:
            out['trace'] = [event.as_dict() for event in self.trace]
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict())
