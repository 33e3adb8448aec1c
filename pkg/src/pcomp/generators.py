"""Graph families and exhaustive enumeration of small graphs up to isomorphism."""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Iterator, Sequence

from pcomp.certificates import caterpillar_graph, cycle_graph, join_form_graph, path_graph, star_graph
from pcomp.graph import Graph
from pcomp.iso import canonical_form


def complete_union(sizes: Sequence[int]) -> Graph:
    """Disjoint union of complete graphs of the given orders."""
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("need at least one component, each of positive order")
    g = Graph.complete(sizes[0])
    for s in sizes[1:]:
        g = g.disjoint_union(Graph.complete(s))
    return g


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def kary_tree(k: int, height: int) -> Graph:
    """Perfect k-ary tree of the given height; root 0, vertices in breadth-first order."""
    if k < 1 or height < 0:
        raise ValueError("need k >= 1 and height >= 0")
    edges = []
    level = [0]
    count = 1
    for _ in range(height):
        nxt = []
        for parent in level:
            for _ in range(k):
                edges.append((parent, count))
                nxt.append(count)
                count += 1
        level = nxt
    return Graph.from_edges(count, edges)


def caterpillar_from_counts(spine_vertices: int, counts: Sequence[int]) -> Graph:
    """Spine of ``spine_vertices`` vertices with counts[i] pendants on interior position i+2."""
    if len(counts) != max(spine_vertices - 2, 0):
        raise ValueError("need one count per interior spine vertex")
    attachments = [pos + 2 for pos, c in enumerate(counts) for _ in range(c)]
    return caterpillar_graph(spine_vertices, attachments)


def enumerate_graphs(n: int, connected: bool = False) -> list[Graph]:
    """One representative of every isomorphism class of graphs on n vertices.

    Built by adding a vertex with every possible neighbourhood to each class
    on n-1 vertices and keeping one graph per canonical form.
    """
    if n < 1:
        raise ValueError("n must be positive")
    level = {canonical_form(Graph.empty(1)): Graph.empty(1)}
    for _ in range(n - 1):
        nxt: dict = {}
        for g in level.values():
            for nbrs in range(1 << g.n):
                h = g.add_vertex([v for v in range(g.n) if nbrs >> v & 1])
                key = canonical_form(h)
                if key not in nxt:
                    nxt[key] = h
        level = nxt
    out = sorted(level.values(), key=lambda g: (g.edge_count(), canonical_form(g)))
    if connected:
        out = [g for g in out if g.is_connected()]
    return out


def enumerate_caterpillars(n: int) -> Iterator[Graph]:
    """Every caterpillar on n >= 3 vertices, one per isomorphism class."""
    if n < 3:
        raise ValueError("caterpillars here have at least 3 vertices")
    seen = set()
    for spine in range(3, n + 1):
        interior = spine - 2
        pendants = n - spine
        for combo in combinations_with_replacement(range(interior), pendants):
            counts = [combo.count(i) for i in range(interior)]
            g = caterpillar_from_counts(spine, counts)
            key = canonical_form(g)
            if key not in seen:
                seen.add(key)
                yield g


__all__ = [
    "caterpillar_from_counts",
    "caterpillar_graph",
    "complete_bipartite",
    "complete_union",
    "cycle_graph",
    "enumerate_caterpillars",
    "enumerate_graphs",
    "join_form_graph",
    "kary_tree",
    "path_graph",
    "star_graph",
]
