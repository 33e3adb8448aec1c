"""Structural predicates and recognition of the graph families with closed-form realizers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from pcomp.graph import INF, Graph, bits, condensation, diameter, popcount


def simplicial_flags(g: Graph) -> list[bool]:
    return [g.is_clique(g.adj[v]) for v in range(g.n)]


def induced_p3_center_pairs(g: Graph) -> tuple[tuple[int, int, int], tuple[int, int, int]] | None:
    """Two induced paths u-v-w and x-y-z with v != y and v, y nonadjacent.

    Endpoints may be shared.  A vertex is the middle of an induced P3 exactly
    when it is not simplicial, so this looks for two nonadjacent
    non-simplicial vertices and returns a witness path through each.
    """
    centers = [v for v in range(g.n) if not g.is_clique(g.adj[v])]
    for i, v in enumerate(centers):
        for y in centers[i + 1:]:
            if not g.has_edge(v, y):
                return _p3_through(g, v), _p3_through(g, y)
    return None


def _p3_through(g: Graph, v: int) -> tuple[int, int, int]:
    for u in bits(g.adj[v]):
        rest = g.adj[v] & ~g.adj[u] & ~(1 << u)
        if rest:
            w = next(bits(rest))
            return (u, v, w)
    raise ValueError(f"vertex {v} is simplicial")


def perfect_elimination_order(g: Graph) -> list[int] | None:
    """A perfect elimination ordering via maximum cardinality search, or None if not chordal."""
    n = g.n
    weight = [0] * n
    numbered = 0
    order = []
    for _ in range(n):
        v = max((u for u in range(n) if not numbered >> u & 1), key=lambda u: (weight[u], -u))
        order.append(v)
        numbered |= 1 << v
        for u in bits(g.adj[v] & ~numbered):
            weight[u] += 1
    peo = order[::-1]
    position = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [u for u in bits(g.adj[v]) if position[u] > position[v]]
        if not later:
            continue
        parent = min(later, key=position.__getitem__)
        rest = 0
        for u in later:
            if u != parent:
                rest |= 1 << u
        if rest & ~g.adj[parent]:
            return None
    return peo


def is_chordal(g: Graph) -> bool:
    return perfect_elimination_order(g) is not None


def chordal_maximal_cliques(g: Graph) -> list[int]:
    """Maximal cliques of a chordal graph (at most n of them), as masks."""
    peo = perfect_elimination_order(g)
    if peo is None:
        raise ValueError("graph is not chordal")
    position = {v: i for i, v in enumerate(peo)}
    candidates = []
    for v in peo:
        later = 0
        for u in bits(g.adj[v]):
            if position[u] > position[v]:
                later |= 1 << u
        candidates.append(later | 1 << v)
    cliques = []
    for c in candidates:
        if not any(c != d and c & d == c for d in candidates):
            if c not in cliques:
                cliques.append(c)
    return cliques


def find_induced_path(g: Graph, vertices: int) -> list[int] | None:
    """An induced path on ``vertices`` vertices, or None."""
    if vertices <= 0:
        return []

    def extend(path: list[int], used: int, forbidden: int) -> list[int] | None:
        if len(path) == vertices:
            return path
        last = path[-1]
        for u in bits(g.adj[last] & ~used & ~forbidden):
            # u may touch only the last vertex of the path
            found = extend(path + [u], used | 1 << u, forbidden | g.adj[last])
            if found:
                return found
        return None

    for s in range(g.n):
        found = extend([s], 1 << s, 0)
        if found:
            return found
    return None


def is_forest(g: Graph) -> bool:
    return g.edge_count() == g.n - len(g.components())


@dataclass(frozen=True)
class StructuralPredicates:
    is_chordal: bool
    has_induced_P5: bool
    has_two_disjoint_induced_P3s: bool
    simplicial: tuple[bool, ...]
    is_forest: bool
    component_count: int
    components_nontrivial: bool
    induced_P5: tuple[int, ...] | None = None
    disjoint_P3s: tuple[tuple[int, int, int], tuple[int, int, int]] | None = None


def structural_predicates(g: Graph) -> StructuralPredicates:
    p5 = find_induced_path(g, 5)
    p3s = induced_p3_center_pairs(g)
    comps = g.components()
    return StructuralPredicates(
        is_chordal=is_chordal(g),
        has_induced_P5=p5 is not None,
        has_two_disjoint_induced_P3s=p3s is not None,
        simplicial=tuple(simplicial_flags(g)),
        is_forest=is_forest(g),
        component_count=len(comps),
        components_nontrivial=all(popcount(c) >= 2 for c in comps),
        induced_P5=tuple(p5) if p5 else None,
        disjoint_P3s=p3s,
    )


# -- family recognition --------------------------------------------------

KINDS = (
    "complete-plus-isolated",
    "star",
    "path",
    "cycle",
    "caterpillar",
    "join-form",
    "forest",
    "chordal",
    "other",
)


@dataclass(frozen=True)
class FamilyDescriptor:
    kind: str
    params: dict[str, Any] = field(default_factory=dict, compare=False)


def _path_order(g: Graph) -> list[int] | None:
    """Vertices of ``g`` in path order when ``g`` is a path on >= 2 vertices."""
    if not g.is_connected() or g.edge_count() != g.n - 1:
        return None
    degs = g.degrees()
    if max(degs) > 2:
        return None
    start = min(v for v in range(g.n) if degs[v] == 1)
    order = [start]
    prev = -1
    while len(order) < g.n:
        cur = order[-1]
        nxt = [u for u in bits(g.adj[cur]) if u != prev]
        prev = cur
        order.append(nxt[0])
    return order


def _cycle_order(g: Graph) -> list[int] | None:
    if g.n < 3 or not g.is_connected() or any(d != 2 for d in g.degrees()):
        return None
    order = [0]
    prev = -1
    while len(order) < g.n:
        cur = order[-1]
        nxt = min(u for u in bits(g.adj[cur]) if u != prev)
        prev = cur
        order.append(nxt)
    return order


def caterpillar_spine(g: Graph) -> list[int] | None:
    """A longest path of a caterpillar (its spine), or None if ``g`` is not one.

    Every vertex off the returned spine is a leaf adjacent to an interior
    spine vertex.
    """
    if g.n < 3 or not g.is_connected() or not is_forest(g):
        return None
    degs = g.degrees()
    inner = [v for v in range(g.n) if degs[v] >= 2]
    core = g.induced_subgraph(inner)
    if core.n == 1:
        centre = inner[0]
        leaves = sorted(bits(g.adj[centre]))
        return [leaves[0], centre, leaves[1]]
    order = _path_order(core)
    if order is None:
        return None
    spine_inner = [inner[i] for i in order]
    head = min(u for u in bits(g.adj[spine_inner[0]]) if degs[u] == 1)
    tail = min(u for u in bits(g.adj[spine_inner[-1]]) if degs[u] == 1)
    return [head] + spine_inner + [tail]


def join_form(g: Graph) -> dict[str, Any] | None:
    """Decompose ``g`` as (K_n0 v (K_n1 u ... u K_nk)) u isolated(m), if possible.

    Returns the vertex sets: ``core`` (the K_n0 part), ``parts`` and
    ``isolated``.  When several decompositions exist the one with the
    largest core is returned.
    """
    isolated = [v for v in range(g.n) if not g.adj[v]]
    rest = [v for v in range(g.n) if g.adj[v]]
    if not rest:
        return {"core": [], "parts": [], "isolated": isolated}
    rest_mask = 0
    for v in rest:
        rest_mask |= 1 << v
    core = [v for v in rest if (g.adj[v] | 1 << v) & rest_mask == rest_mask]
    core_mask = 0
    for v in core:
        core_mask |= 1 << v
    others = [v for v in rest if not core_mask >> v & 1]
    sub = g.induced_subgraph(others) if others else None
    parts = []
    if sub is not None:
        for comp in sub.components():
            if not sub.is_clique(comp):
                return None
            parts.append([others[i] for i in bits(comp)])
    return {"core": core, "parts": parts, "isolated": isolated}


def recognize_family(g: Graph) -> FamilyDescriptor:
    """Most specific family of ``g`` in the order listed in ``KINDS``."""
    isolated = g.isolated_vertices()
    nonisolated = [v for v in range(g.n) if g.adj[v]]
    sub_mask = 0
    for v in nonisolated:
        sub_mask |= 1 << v
    if g.is_clique(sub_mask):
        return FamilyDescriptor(
            "complete-plus-isolated",
            {"clique": len(nonisolated), "isolated": len(isolated), "clique_vertices": nonisolated},
        )
    connected = g.is_connected()
    degs = g.degrees()
    if connected and g.n >= 3 and g.edge_count() == g.n - 1 and max(degs) == g.n - 1:
        centre = degs.index(g.n - 1)
        return FamilyDescriptor("star", {"leaves": g.n - 1, "center": centre})
    order = _path_order(g)
    if order is not None:
        return FamilyDescriptor("path", {"n": g.n, "order": order})
    order = _cycle_order(g)
    if order is not None:
        return FamilyDescriptor("cycle", {"n": g.n, "order": order})
    spine = caterpillar_spine(g)
    if spine is not None:
        position = {v: i for i, v in enumerate(spine)}
        pendants = {}
        attachments: dict[int, int] = {}
        for v in range(g.n):
            if v in position:
                continue
            anchor = next(bits(g.adj[v]))
            pendants[v] = anchor
            pos = position[anchor] + 1
            attachments[pos] = attachments.get(pos, 0) + 1
        return FamilyDescriptor(
            "caterpillar",
            {
                "spine": spine,
                "spine_length": len(spine) - 1,
                "attachments": dict(sorted(attachments.items())),
                "pendants": pendants,
                "diameter": len(spine) - 1,
            },
        )
    jf = join_form(g)
    if jf is not None:
        return FamilyDescriptor(
            "join-form",
            {
                "n0": len(jf["core"]),
                "parts": [len(p) for p in jf["parts"]],
                "m": len(jf["isolated"]),
                "sets": jf,
            },
        )
    if is_forest(g):
        return FamilyDescriptor("forest", {"components": len(g.components())})
    if is_chordal(g):
        return FamilyDescriptor("chordal", {"components": len(g.components())})
    return FamilyDescriptor("other", {})


def is_union_of_cliques(g: Graph) -> bool:
    return all(g.is_clique(c) for c in g.components())


def quotient_is_star_like(g: Graph) -> dict[str, Any] | None:
    """Check the hypothesis of the [n-1] characterization for ``g``.

    Drop isolated vertices to get H; succeed when H/~ has at least two
    vertices and is either a star (center class plus leaf classes) or
    edgeless.  Returns H's vertex list, its partition and the centre class.
    """
    rest = [v for v in range(g.n) if g.adj[v]]
    if len(rest) < 2:
        return None
    h = g.induced_subgraph(rest)
    q, part = condensation(h)
    if q.n < 2:
        return None
    if q.edge_count() == 0:
        return {"vertices": rest, "quotient": q, "partition": part, "center": None}
    degs = q.degrees()
    if q.edge_count() == q.n - 1 and max(degs) == q.n - 1:
        return {"vertices": rest, "quotient": q, "partition": part, "center": degs.index(q.n - 1)}
    return None


def tree_diameter_path(g: Graph) -> list[int] | None:
    """A longest path of a tree, by double BFS."""
    if not g.is_connected() or not is_forest(g):
        return None
    d0 = g.distances_from(0)
    a = max(range(g.n), key=lambda v: (d0[v], -v))
    da = g.distances_from(a)
    b = max(range(g.n), key=lambda v: (da[v], -v))
    return g.shortest_path(a, b)


__all__ = [
    "INF",
    "KINDS",
    "FamilyDescriptor",
    "StructuralPredicates",
    "caterpillar_spine",
    "chordal_maximal_cliques",
    "diameter",
    "find_induced_path",
    "induced_p3_center_pairs",
    "is_chordal",
    "is_forest",
    "is_union_of_cliques",
    "join_form",
    "perfect_elimination_order",
    "quotient_is_star_like",
    "recognize_family",
    "simplicial_flags",
    "structural_predicates",
    "tree_diameter_path",
]
