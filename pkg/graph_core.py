"""
Graph Core Module

Immutable undirected simple graphs in compressed adjacency form, plus
construction, structural queries and the DIMACS / edge-list formats.

Vertices are dense 0-based integers. DIMACS files are 1-based and are
shifted on parse and write.
"""

from __future__ import annotations

import logging
import os
import sys
from bisect import bisect_left
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

logger = logging.getLogger(__name__)


class GraphError(ValueError):
    """Base class for graph construction and parsing errors."""


class SelfLoop(GraphError):
    def __init__(self, u):
        super().__init__(f"self-loop at vertex {u}")
        self.u = u


class DuplicateEdge(GraphError):
    def __init__(self, u, v):
        super().__init__(f"duplicate edge ({u}, {v})")
        self.edge = (u, v)


class VertexOutOfRange(GraphError):
    def __init__(self, u, n):
        super().__init__(f"vertex {u} out of range for n={n}")
        self.u = u
        self.n = n


class MalformedHeader(GraphError):
    pass


class EdgeCountMismatch(GraphError):
    def __init__(self, expected, found):
        super().__init__(f"header declares {expected} edges, found {found}")
        self.expected = expected
        self.found = found


class TokenError(GraphError):
    def __init__(self, line, detail):
        super().__init__(f"line {line}: {detail}")
        self.line = line


class GraphClass(str, Enum):
    COMPLETE = 'Complete'
    ODD_CYCLE = 'OddCycle'
    EVEN_CYCLE = 'EvenCycle'
    PATH = 'Path'
    TRIVIAL = 'TrivialOrSmallDelta'
    LOW_DEGREE = 'HasLowDegreeVertex'
    REGULAR = 'DeltaRegularNonComplete'


@dataclass(frozen=True, eq=False)
class Graph:
    """
    Undirected simple graph.

    `offsets`/`targets` are the compressed adjacency arrays (neighbors of v
    are targets[offsets[v]:offsets[v+1]], ascending). `adj` holds the same
    lists as Python lists for the hot loops.
    """
    n: int
    offsets: np.ndarray
    targets: np.ndarray
    adj: tuple = field(repr=False)

    @property
    def m(self) -> int:
        return int(self.targets.shape[0]) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    @property
    def max_degree(self) -> int:
        if self.n == 0:
            return 0
        return int(self.degrees.max())

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> list:
        return self.adj[v]

    def edges(self) -> Iterator[tuple]:
        """Edges (u, v) with u < v, ascending."""
        for u, nbrs in enumerate(self.adj):
            for v in nbrs[bisect_left(nbrs, u + 1):]:
                yield u, v

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.offsets, other.offsets)
                and np.array_equal(self.targets, other.targets))

    __hash__ = None


def _check_vertex(g: Graph, u: int) -> None:
    if not 0 <= u < g.n:
        raise VertexOutOfRange(u, g.n)


def build_graph(n: int, edges: Iterable[Sequence[int]], dedupe: bool = False) -> Graph:
    """
    Build a Graph on vertices 0..n-1.

    Raises SelfLoop, DuplicateEdge or VertexOutOfRange naming the first
    offender in input order. With dedupe=True duplicate edges are coalesced.
    """
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
    if arr.size == 0:
        arr = np.empty((0, 2), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("edges must be pairs of vertex ids")

    bad = (arr < 0) | (arr >= n)
    if bad.any():
        row = int(np.flatnonzero(bad.any(axis=1))[0])
        col = 0 if bad[row, 0] else 1
        raise VertexOutOfRange(int(arr[row, col]), n)

    loops = np.flatnonzero(arr[:, 0] == arr[:, 1])
    if loops.size:
        raise SelfLoop(int(arr[loops[0], 0]))

    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    keys = lo * max(n, 1) + hi
    order = np.argsort(keys, kind='stable')
    repeated = keys[order][1:] == keys[order][:-1]
    if repeated.any():
        if not dedupe:
            first = int(order[1:][repeated].min())
            raise DuplicateEdge(int(arr[first, 0]), int(arr[first, 1]))
        keep = np.ones(len(order), dtype=bool)
        keep[order[1:][repeated]] = False
        logger.warning("Coalesced %d duplicate edge(s)", int(repeated.sum()))
        lo, hi = lo[keep], hi[keep]

    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    perm = np.lexsort((dst, src))
    targets = dst[perm].astype(np.int32)
    counts = np.bincount(src, minlength=n) if n else np.zeros(0, dtype=np.int64)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])

    flat = targets.tolist()
    bounds = offsets.tolist()
    adj = tuple(flat[bounds[v]:bounds[v + 1]] for v in range(n))
    return Graph(n=n, offsets=offsets, targets=targets, adj=adj)


def adjacent(g: Graph, u: int, v: int) -> bool:
    """True iff {u, v} is an edge. Binary search in the shorter list."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    if len(g.adj[u]) > len(g.adj[v]):
        u, v = v, u
    nbrs = g.adj[u]
    i = bisect_left(nbrs, v)
    return i < len(nbrs) and nbrs[i] == v


class AdjacencyMarker:
    """
    Stamped mark array: after mark(v), `u in marker` answers adjacent(v, u)
    in constant time. The array is reused across calls without clearing.
    """

    def __init__(self, g: Graph):
        self.g = g
        self._marks = [0] * g.n
        self._stamp = 0
        self.center: Optional[int] = None

    def mark(self, v: int) -> None:
        self._stamp += 1
        self.center = v
        stamp = self._stamp
        marks = self._marks
        for w in self.g.adj[v]:
            marks[w] = stamp

    def __contains__(self, u: int) -> bool:
        return self._marks[u] == self._stamp and self._stamp > 0


def _reach(g: Graph, start: int, allowed) -> list:
    """Vertices reachable from start inside `allowed` (None = everything)."""
    seen = {start}
    stack = [start]
    out = []
    adj = g.adj
    while stack:
        u = stack.pop()
        out.append(u)
        for w in adj[u]:
            if w not in seen and (allowed is None or w in allowed):
                seen.add(w)
                stack.append(w)
    return out


def connected_components(g: Graph) -> list:
    """Vertex lists (ascending) of each component, ordered by smallest vertex."""
    seen = [False] * g.n
    comps = []
    adj = g.adj
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [s]
        members = []
        while stack:
            u = stack.pop()
            members.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        members.sort()
        comps.append(members)
    return comps


def is_connected(g: Graph, members: Iterable[int]) -> bool:
    """True iff `members` induces a connected subgraph (empty counts as connected)."""
    allowed = set(members)
    if not allowed:
        return True
    start = min(allowed)
    return len(_reach(g, start, allowed)) == len(allowed)


def classify_component(g: Graph, comp: Sequence[int]) -> GraphClass:
    size = len(comp)
    if size <= 1:
        return GraphClass.TRIVIAL
    degs = [len(g.adj[v]) for v in comp]
    low, high = min(degs), max(degs)
    if low == size - 1:
        return GraphClass.COMPLETE
    if low == high == 2:
        return GraphClass.ODD_CYCLE if size % 2 else GraphClass.EVEN_CYCLE
    if high <= 2:
        return GraphClass.PATH
    if low < high:
        return GraphClass.LOW_DEGREE
    return GraphClass.REGULAR


def is_separation_vertex(g: Graph, comp: Sequence[int], s: int):
    """
    Articulation test for s inside the connected component `comp`.

    Runs a low-link DFS rooted at s: a DFS root separates exactly when it
    has two or more tree children, and each child's subtree is one side.
    Returns (True, sides) with sides ordered by smallest vertex, or
    (False, []).
    """
    from greedy_color import dfs

    members = set(comp)
    if s not in members:
        raise ValueError(f"vertex {s} is not in the component")
    tree = dfs(g, s, members=members)
    kids = tree.children[s]
    if len(kids) < 2:
        return False, []
    sides = sorted((sorted(tree.subtree(c)) for c in kids), key=lambda side: side[0])
    return True, sides


def _induced(g: Graph, survivors: list, keep) -> tuple:
    old_to_new = {old: new for new, old in enumerate(survivors)}
    edges = [
        (old_to_new[u], old_to_new[w])
        for u in survivors
        for w in g.adj[u]
        if w > u and w in keep
    ]
    sub = build_graph(len(survivors), edges)
    return sub, old_to_new, list(survivors)


def induced_delete(g: Graph, removed: Iterable[int]):
    """Graph minus `removed`, with old->new (dict) and new->old (list) maps."""
    gone = set(removed)
    for u in gone:
        _check_vertex(g, u)
    survivors = [v for v in range(g.n) if v not in gone]
    return _induced(g, survivors, _Complement(gone))


def induced_subgraph(g: Graph, keep: Iterable[int]):
    """Subgraph induced by `keep`, with the same maps as induced_delete."""
    kept = set(keep)
    for u in kept:
        _check_vertex(g, u)
    return _induced(g, sorted(kept), kept)


class _Complement:
    __slots__ = ('_gone',)

    def __init__(self, gone):
        self._gone = gone

    def __contains__(self, v):
        return v not in self._gone


# ----------------------------------------------------------------------
# File formats
# ----------------------------------------------------------------------

def _text(data) -> str:
    if isinstance(data, (bytes, bytearray)):
        return data.decode('utf-8')
    return data


def parse_dimacs(data, dedupe: bool = False) -> Graph:
    """
    Parse DIMACS .col text: "c ..." comments, one "p edge n m" header and
    m lines "e u v" with 1-based endpoints.
    """
    n = m = None
    edges = []
    for lineno, raw in enumerate(_text(data).splitlines(), 1):
        tokens = raw.split()
        if not tokens or tokens[0] == 'c':
            continue
        kind = tokens[0]
        if kind == 'p':
            if n is not None:
                raise MalformedHeader(f"line {lineno}: second header line")
            if len(tokens) != 4 or tokens[1] not in ('edge', 'col'):
                raise MalformedHeader(f"line {lineno}: expected 'p edge n m'")
            try:
                n, m = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise MalformedHeader(f"line {lineno}: non-integer vertex/edge count")
            if n < 0 or m < 0:
                raise MalformedHeader(f"line {lineno}: negative vertex/edge count")
        elif kind == 'e':
            if n is None:
                raise MalformedHeader(f"line {lineno}: edge before 'p' header")
            if len(tokens) != 3:
                raise TokenError(lineno, "expected 'e u v'")
            try:
                u, v = int(tokens[1]) - 1, int(tokens[2]) - 1
            except ValueError:
                raise TokenError(lineno, f"non-integer endpoint in {raw.strip()!r}")
            edges.append((u, v))
        else:
            raise TokenError(lineno, f"unknown line type {kind!r}")
    if n is None:
        raise MalformedHeader("missing 'p edge n m' header")
    if len(edges) != m:
        raise EdgeCountMismatch(m, len(edges))
    return build_graph(n, edges, dedupe=dedupe)


def write_dimacs(g: Graph, comments: Sequence[str] = ()) -> bytes:
    lines = [f"c {text}" for text in comments]
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return ('\n'.join(lines) + '\n').encode('utf-8')


def parse_edgelist(data, dedupe: bool = False) -> Graph:
    """
    Parse whitespace-separated "u v" lines (0-based). Lines starting with
    '#' are comments. The first line is read as an "n m" header only when
    exactly m edge lines follow and every endpoint is below n; otherwise it
    is an edge and n is one more than the largest endpoint.
    """
    rows = []
    for lineno, raw in enumerate(_text(data).splitlines(), 1):
        tokens = raw.split()
        if not tokens or tokens[0].startswith('#'):
            continue
        if len(tokens) != 2:
            raise TokenError(lineno, "expected two integers per line")
        try:
            rows.append((int(tokens[0]), int(tokens[1])))
        except ValueError:
            raise TokenError(lineno, f"non-integer token in {raw.strip()!r}")
    if rows:
        n, m = rows[0]
        body = rows[1:]
        if len(body) == m and all(0 <= x < n for pair in body for x in pair):
            return build_graph(n, body, dedupe=dedupe)
    n = 1 + max((x for pair in rows for x in pair), default=-1)
    return build_graph(n, rows, dedupe=dedupe)


def write_edgelist(g: Graph) -> bytes:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return ('\n'.join(lines) + '\n').encode('utf-8')


def infer_format(path: str) -> str:
    if path == '-':
        return 'dimacs'
    ext = os.path.splitext(path)[1].lower()
    return 'dimacs' if ext in ('.col', '.dimacs') else 'edgelist'


def read_graph(path: str, fmt: Optional[str] = None, dedupe: bool = False) -> Graph:
    """Read a graph from a file path or '-' (stdin)."""
    fmt = fmt or infer_format(path)
    if path == '-':
        data = sys.stdin.buffer.read()
    else:
        with open(path, 'rb') as handle:
            data = handle.read()
    if fmt == 'dimacs':
        return parse_dimacs(data, dedupe=dedupe)
    if fmt == 'edgelist':
        return parse_edgelist(data, dedupe=dedupe)
    raise ValueError(f"Unsupported graph format: {fmt}. Use 'dimacs' or 'edgelist'")


if __name__ == "__main__":
    g = parse_dimacs("p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n")
    print(f"n={g.n} m={g.m} max_degree={g.max_degree}")
    for comp in connected_components(g):
        print(f"component {comp}: {classify_component(g, comp).value}")
    print(write_dimacs(g).decode())
