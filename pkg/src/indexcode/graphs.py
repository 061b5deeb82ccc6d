"""Graph machinery on top of the side-information digraph.

The interaction digraph has one vertex per non-empty message group of
the partition; an edge (S, S') means some receiver in group S knows a
message in group S'.  The edge is fully participated when every such
pair of messages appears in the side-information.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .instance import MessagePartition, SideInfoDigraph

__all__ = [
    "InteractionDigraph",
    "interaction_digraph",
    "scc",
    "reduce_noncycle_edges",
    "topological_order",
    "two_cycle",
]

PartKey = tuple[int, ...]


@dataclass(frozen=True)
class InteractionDigraph:
    """Digraph on non-empty partition groups with participation flags."""

    vertices: tuple[PartKey, ...]
    edges: frozenset[tuple[PartKey, PartKey]]
    fully_participated: Mapping[tuple[PartKey, PartKey], bool]

    def has_edge(self, a: PartKey, b: PartKey) -> bool:
        return (a, b) in self.edges

    def is_fully_participated(self, a: PartKey, b: PartKey) -> bool:
        return self.fully_participated.get((a, b), False)

    def out_degree(self, v: PartKey) -> int:
        return sum(1 for (a, _) in self.edges if a == v)


def interaction_digraph(
    d: SideInfoDigraph, parts: MessagePartition
) -> InteractionDigraph:
    """Collapse the side-information digraph onto the partition groups."""
    keys = parts.nonempty_keys()
    group_of: dict[int, PartKey] = {}
    for k in keys:
        for msg in parts.parts[k]:
            group_of[msg] = k
    crossing: dict[tuple[PartKey, PartKey], int] = {}
    for (i, j) in d.edges:
        a, b = group_of[i], group_of[j]
        if a != b:
            crossing[(a, b)] = crossing.get((a, b), 0) + 1
    fully = {
        (a, b): cnt == len(parts.parts[a]) * len(parts.parts[b])
        for (a, b), cnt in crossing.items()
    }
    return InteractionDigraph(
        vertices=keys,
        edges=frozenset(crossing),
        fully_participated=fully,
    )


def scc(
    vertices: Iterable[Hashable],
    edges: Iterable[tuple[Hashable, Hashable]],
) -> list[frozenset]:
    """Strongly connected components, listed in topological order.

    Iterative Tarjan; the natural output order (reverse topological) is
    flipped before returning so earlier components never receive edges
    from later ones.
    """
    verts = list(vertices)
    adj: dict[Hashable, list] = {v: [] for v in verts}
    for a, b in edges:
        adj[a].append(b)
    index_of: dict[Hashable, int] = {}
    low: dict[Hashable, int] = {}
    on_stack: set = set()
    stack: list = []
    components: list[frozenset] = []
    counter = 0
    for root in verts:
        if root in index_of:
            continue
        work = [(root, iter(adj[root]))]
        index_of[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index_of:
                    index_of[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index_of[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index_of[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                components.append(frozenset(comp))
    components.reverse()
    return components


def reduce_noncycle_edges(d: SideInfoDigraph) -> SideInfoDigraph:
    """Drop every edge that lies on no cycle.

    An edge lies on a cycle iff both endpoints share a strongly
    connected component, so the reduction keeps exactly the
    within-component edges.  Removing such edges never changes the
    optimal broadcast rate.
    """
    comps = scc(d.vertices, d.edges)
    comp_of = {v: idx for idx, comp in enumerate(comps) for v in comp}
    kept = frozenset((i, j) for (i, j) in d.edges if comp_of[i] == comp_of[j])
    return SideInfoDigraph(vertices=d.vertices, edges=kept)


def topological_order(
    vertices: Iterable[Hashable],
    edges: Iterable[tuple[Hashable, Hashable]],
) -> Optional[list]:
    """Kahn's algorithm with a min-heap for determinism; None if cyclic."""
    verts = list(vertices)
    indeg = {v: 0 for v in verts}
    adj: dict[Hashable, list] = {v: [] for v in verts}
    for a, b in edges:
        adj[a].append(b)
        indeg[b] += 1
    ready = [v for v in verts if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(order) != len(verts):
        return None
    return order


def two_cycle(h: InteractionDigraph, a: PartKey, b: PartKey) -> bool:
    """True when groups a and b point at each other."""
    return h.has_edge(a, b) and h.has_edge(b, a)
