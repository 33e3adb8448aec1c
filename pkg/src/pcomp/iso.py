"""Isomorphism, canonical forms and induced-subgraph embeddings for small graphs.

All searches are exact backtracking over colour-refined candidates and are
meant for graphs with at most ~16 vertices.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from pcomp.graph import Graph, bits, popcount


def refine(g: Graph, colors: Sequence[int]) -> list[int]:
    """Colour refinement to a stable partition.

    New colours are ranks of (old colour, sorted neighbour colours), so two
    graphs refined from matching initial colourings get comparable colours.
    """
    colors = list(colors)
    n_classes = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in bits(g.adj[v]))))
            for v in range(g.n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == n_classes:
            return new
        colors, n_classes = new, len(rank)


def _joint_colors(g: Graph, h: Graph) -> tuple[list[int], list[int]]:
    union = g.disjoint_union(h)
    colors = refine(union, union.degrees())
    return colors[: g.n], colors[g.n:]


def _search_order(g: Graph, colors: Sequence[int] | None = None) -> list[int]:
    """Vertex order: start at highest degree, then prefer vertices with most
    already-ordered neighbours; ties by degree, colour class size, index."""
    degs = g.degrees()
    if colors is None:
        colors = [0] * g.n
    class_size = {c: colors.count(c) for c in set(colors)}
    order: list[int] = []
    placed = 0
    remaining = set(range(g.n))
    while remaining:
        v = min(
            remaining,
            key=lambda u: (-popcount(g.adj[u] & placed), class_size[colors[u]], -degs[u], u),
        )
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def are_isomorphic(g: Graph, h: Graph) -> dict[int, int] | None:
    """A bijection V(g) -> V(h) preserving adjacency and non-adjacency, or None."""
    if g.n != h.n or g.edge_count() != h.edge_count():
        return None
    if sorted(g.degrees()) != sorted(h.degrees()):
        return None
    cg, ch = _joint_colors(g, h)
    if sorted(cg) != sorted(ch):
        return None
    by_color: dict[int, int] = {}
    for w, c in enumerate(ch):
        by_color[c] = by_color.get(c, 0) | 1 << w
    order = _search_order(g, cg)
    mapping = [-1] * g.n
    full = h.full_mask

    def extend(i: int, used: int) -> bool:
        if i == g.n:
            return True
        u = order[i]
        cand = by_color[cg[u]] & ~used
        for v in order[:i]:
            img = mapping[v]
            if g.adj[u] >> v & 1:
                cand &= h.adj[img]
            else:
                cand &= full & ~h.adj[img]
            if not cand:
                return False
        for w in bits(cand):
            mapping[u] = w
            if extend(i + 1, used | 1 << w):
                return True
        mapping[u] = -1
        return False

    if extend(0, 0):
        return dict(enumerate(mapping))
    return None


def is_isomorphism(g: Graph, h: Graph, mapping: dict[int, int]) -> bool:
    if g.n != h.n or sorted(mapping) != list(range(g.n)):
        return False
    if sorted(mapping.values()) != list(range(h.n)):
        return False
    return all(
        g.has_edge(u, v) == h.has_edge(mapping[u], mapping[v])
        for u, v in combinations(range(g.n), 2)
    )


def embeds_as_induced_subgraph(
    g: Graph, host: Graph, max_nodes: int | None = None
) -> dict[int, int] | None:
    """An injective map V(g) -> V(host) preserving adjacency and non-adjacency.

    Raises ``TimeoutError`` if ``max_nodes`` search nodes are exceeded.
    """
    if g.n > host.n:
        return None
    gdeg = g.degrees()
    hdeg = host.degrees()
    order = _search_order(g)
    full = host.full_mask
    by_min_degree = [0] * (max(gdeg) + 2)
    for d in range(len(by_min_degree)):
        by_min_degree[d] = sum(1 << w for w in range(host.n) if hdeg[w] >= d)
    mapping = [-1] * g.n
    nodes = 0

    def extend(i: int, used: int) -> bool:
        nonlocal nodes
        if i == g.n:
            return True
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise TimeoutError("embedding search exceeded its node budget")
        u = order[i]
        cand = by_min_degree[gdeg[u]] & ~used
        for v in order[:i]:
            img = mapping[v]
            if g.adj[u] >> v & 1:
                cand &= host.adj[img]
            else:
                cand &= full & ~host.adj[img] & ~(1 << img)
            if not cand:
                return False
        for w in bits(cand):
            mapping[u] = w
            if extend(i + 1, used | 1 << w):
                return True
        mapping[u] = -1
        return False

    if extend(0, 0):
        return dict(enumerate(mapping))
    return None


def is_induced_embedding(g: Graph, host: Graph, mapping: dict[int, int]) -> bool:
    if sorted(mapping) != list(range(g.n)) or len(set(mapping.values())) != g.n:
        return False
    return all(
        g.has_edge(u, v) == host.has_edge(mapping[u], mapping[v])
        for u, v in combinations(range(g.n), 2)
    )


# -- canonical form ------------------------------------------------------


def canonical_form(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Isomorphism-invariant key of ``g``: equal keys iff isomorphic graphs.

    Individualization-refinement; among the leaves of the search tree the
    lexicographically smallest relabelled adjacency wins.  Twins inside a
    cell are interchangeable, so only one of each twin class is branched on.
    """
    best: tuple[int, ...] | None = None

    def key_for(colors: list[int]) -> tuple[int, ...]:
        perm = [0] * g.n
        for v, c in enumerate(colors):
            perm[v] = c
        return g.relabel(perm).adj

    def search(colors: list[int]) -> None:
        nonlocal best
        colors = refine(g, colors)
        if len(set(colors)) == g.n:
            k = key_for(colors)
            if best is None or k < best:
                best = k
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        cell = [v for v in range(g.n) if colors[v] == target]
        seen_twins: set[int] = set()
        for v in cell:
            rep = _twin_representative(g, v, cell)
            if rep in seen_twins:
                continue
            seen_twins.add(rep)
            new = [2 * c + 1 for c in colors]
            new[v] = 2 * target
            search(new)

    search([0] * g.n)
    assert best is not None
    return g.n, best


def _twin_representative(g: Graph, v: int, cell: list[int]) -> int:
    """First vertex of ``cell`` that is a twin of ``v`` (swapping them is an automorphism)."""
    for u in cell:
        if u == v or g.adj[u] & ~(1 << v) == g.adj[v] & ~(1 << u):
            return u
    return v


# -- the subset graph Psi_{n,k} -----------------------------------------


def psi_subsets(n: int, k: int) -> list[frozenset[int]]:
    """Subsets of {0..n-1} of size <= k, by size then lexicographically."""
    out = []
    for size in range(k + 1):
        out.extend(frozenset(c) for c in combinations(range(n), size))
    return out


PSI_MAX_N = 12


def psi_graph(n: int, k: int) -> Graph:
    """Psi_{n,k} restricted to subsets of size <= k (the others are isolated).

    Vertex i is ``psi_subsets(n, k)[i]``; S, T adjacent iff |S u T| <= k.
    """
    if not (1 <= n <= PSI_MAX_N):
        raise ValueError(f"n must lie in 1..{PSI_MAX_N}")
    if not (0 <= k <= n):
        raise ValueError("k must lie in 0..n")
    subsets = psi_subsets(n, k)
    masks = [sum(1 << e for e in s) for s in subsets]
    adj = []
    for i, a in enumerate(masks):
        row = 0
        for j, b in enumerate(masks):
            if i != j and popcount(a | b) <= k:
                row |= 1 << j
        adj.append(row)
    return Graph(len(subsets), tuple(adj))


def embed_in_psi(g: Graph, n: int, k: int, max_nodes: int | None = None) -> list[int] | None:
    """Assign to each vertex of ``g`` a subset of {0..n-1} (as a mask) with
    |S| <= k, distinct, and S, T adjacent iff |S u T| <= k.

    Ground elements are interchangeable, so each new vertex may only use
    previously seen elements plus a run of the next unused ones.
    Raises ``TimeoutError`` past ``max_nodes``.
    """
    order = _search_order(g)
    assigned: list[int] = [0] * g.n
    nodes = 0

    def extend(i: int, used_elems: int, used_sets: set[int]) -> bool:
        nonlocal nodes
        if i == g.n:
            return True
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise TimeoutError("Psi embedding exceeded its node budget")
        u = order[i]
        seen = popcount(used_elems)
        old_elems = list(range(seen))
        for size in range(k + 1):
            for fresh in range(min(size, n - seen) + 1):
                n_old = size - fresh
                if n_old > seen:
                    continue
                fresh_mask = ((1 << fresh) - 1) << seen
                for olds in combinations(old_elems, n_old):
                    s = fresh_mask | sum(1 << e for e in olds)
                    if s in used_sets:
                        continue
                    if all(
                        (popcount(s | assigned[v]) <= k) == bool(g.adj[u] >> v & 1)
                        for v in order[:i]
                    ):
                        assigned[u] = s
                        used_sets.add(s)
                        if extend(i + 1, used_elems | s, used_sets):
                            return True
                        used_sets.discard(s)
        return False

    if extend(0, 0, set()):
        return assigned
    return None
