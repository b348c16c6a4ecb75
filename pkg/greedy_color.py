"""
Greedy Coloring Module

Iterative depth-first search (with an optional forced starting path and
low-links) and greedy coloring in DFS post-order toward a chosen root.

When every vertex is colored after all of its descendants, each non-root
vertex still has its uncolored parent at scan time, so it sees at most
deg-1 colored neighbors. With k at least every non-root degree, and the
root either of degree < k or seeing a repeated color, no vertex runs out.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from coloring_core import Coloring, min_missing_color
from graph_core import Graph, adjacent
from instrumentation import Counters

logger = logging.getLogger(__name__)


class NoFreeColor(RuntimeError):
    def __init__(self, vertex, k):
        super().__init__(f"no color in 1..{k} is free at vertex {vertex}")
        self.vertex = vertex


class NoLowDegreeVertex(ValueError):
    def __init__(self, k):
        super().__init__(f"component has no vertex of degree < {k}")


class ForcedEdgeMissing(ValueError):
    def __init__(self, u, v):
        super().__init__(f"forced path needs edge ({u}, {v})")
        self.edge = (u, v)


@dataclass
class DfsTree:
    """
    Spanning tree of one DFS. Per-vertex lists are indexed by vertex id;
    vertices not reached have parent None and preorder -1.
    """
    root: int
    parent: list
    children: list
    preorder: list
    postorder: list
    low: list
    size: list
    order: list
    post_sequence: list
    forced_prefix: tuple = ()

    def subtree(self, u: int) -> list:
        start = self.preorder[u]
        return self.order[start:start + self.size[u]]

    def is_path(self) -> bool:
        return all(len(self.children[u]) <= 1 for u in self.order)

    def is_articulation(self, u: int) -> bool:
        """Low-link test restricted to the traversed vertices."""
        if u == self.root:
            return len(self.children[u]) >= 2
        return any(self.low[c] >= self.preorder[u] for c in self.children[u])


def dfs(g: Graph, root: int, forced: Sequence[int] = (), members=None,
        counters: Optional[Counters] = None) -> DfsTree:
    """
    Iterative DFS from `root`. A non-empty `forced` sequence must start at
    root; it is walked first as a tree path before normal exploration.
    Neighbors are explored in ascending order. `members` restricts the
    traversal to a vertex set.
    """
    n = g.n
    adj = g.adj
    parent = [None] * n
    children = [[] for _ in range(n)]
    preorder = [-1] * n
    postorder = [-1] * n
    low = [0] * n
    size = [1] * n
    order = []
    post_sequence = []

    def discover(u, p):
        preorder[u] = low[u] = len(order)
        order.append(u)
        parent[u] = p
        if p is not None:
            children[p].append(u)

    if members is not None and root not in members:
        raise ValueError(f"root {root} is outside the traversed vertex set")
    discover(root, None)
    stack = [root]
    cursor = [0]

    forced = tuple(forced)
    if forced:
        if forced[0] != root:
            raise ValueError(f"forced path must start at root {root}")
        for u, w in zip(forced, forced[1:]):
            if not adjacent(g, u, w):
                raise ForcedEdgeMissing(u, w)
            if preorder[w] != -1 or (members is not None and w not in members):
                raise ValueError(f"forced vertex {w} repeated or outside the traversal")
            discover(w, u)
            stack.append(w)
            cursor.append(0)

    examined = 0
    while stack:
        u = stack[-1]
        nbrs = adj[u]
        i = cursor[-1]
        descended = False
        while i < len(nbrs):
            w = nbrs[i]
            i += 1
            examined += 1
            if members is not None and w not in members:
                continue
            if preorder[w] == -1:
                cursor[-1] = i
                discover(w, u)
                stack.append(w)
                cursor.append(0)
                descended = True
                break
            if w != parent[u] and preorder[w] < low[u]:
                low[u] = preorder[w]
        if descended:
            continue
        stack.pop()
        cursor.pop()
        postorder[u] = len(post_sequence)
        post_sequence.append(u)
        p = parent[u]
        if p is not None:
            size[p] += size[u]
            if low[u] < low[p]:
                low[p] = low[u]

    if counters is not None:
        counters.edges_examined += examined
    return DfsTree(
        root=root,
        parent=parent,
        children=children,
        preorder=preorder,
        postorder=postorder,
        low=low,
        size=size,
        order=order,
        post_sequence=post_sequence,
        forced_prefix=forced,
    )


def greedy_post_order(g: Graph, comp: Iterable[int], k: int, root: int,
                      precolored: Optional[Mapping[int, int]] = None,
                      counters: Optional[Counters] = None) -> Coloring:
    """
    Color the vertices of `comp` with colors 1..k.

    Precolored vertices keep their colors and are not traversed (unless one
    is the root). Every other vertex of comp gets the smallest color free
    among all its neighbors in g, in DFS post-order from root, so root is
    colored last. Raises NoFreeColor when the palette runs out.
    """
    precolored = dict(precolored or {})
    coloring = Coloring.empty(g.n, k)
    for v, col in precolored.items():
        coloring[v] = col

    members = set(comp)
    members.difference_update(precolored)
    members.add(root)
    tree = dfs(g, root, members=members, counters=counters)
    if len(tree.order) != len(members):
        raise ValueError(f"vertices of the component are not connected to root {root}")

    colors = coloring.colors
    for u in tree.post_sequence:
        if u in precolored:
            continue
        col = min_missing_color(g, coloring, u, counters)
        if col == 0:
            raise NoFreeColor(u, k)
        colors[u] = col
    logger.debug("Greedy colored %d vertices toward root %d with k=%d", len(members), root, k)
    return coloring


def color_low_degree_component(g: Graph, comp: Sequence[int], k: int,
                               counters: Optional[Counters] = None) -> Coloring:
    """Greedy toward the smallest-index vertex of degree < k."""
    root = next((v for v in sorted(comp) if len(g.adj[v]) < k), None)
    if root is None:
        raise NoLowDegreeVertex(k)
    return greedy_post_order(g, comp, k, root, counters=counters)
