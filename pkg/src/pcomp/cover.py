"""p-edge clique covers: verification, the family <-> matrix bridge, and exact theta_e."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from pcomp.graph import Graph, bits, mask_of, popcount
from pcomp.matrix import BinaryMatrix

THETA_MAX_N = 10


@dataclass(frozen=True)
class CliqueFamily:
    """Ordered multifamily F_1..F_r of vertex subsets (masks) of ``ground``."""

    ground: Graph
    members: tuple[int, ...]

    def __post_init__(self):
        full = self.ground.full_mask
        for i, f in enumerate(self.members):
            if f & ~full:
                raise ValueError(f"member {i} is not a subset of the vertex set")

    @classmethod
    def from_sets(cls, ground: Graph, sets: Sequence[Sequence[int]]) -> "CliqueFamily":
        return cls(ground, tuple(mask_of(s) for s in sets))

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class PeccResult:
    ok: bool
    bad_subset: tuple[int, ...] | None = None
    uncovered_edge: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_pecc(f: CliqueFamily, p: int) -> PeccResult:
    """Is ``f`` a p-edge clique cover of its ground graph?

    On failure the result names a p-subset of member indices whose
    intersection is not a clique, or an edge covered by no such intersection.
    """
    if p < 1:
        raise ValueError("p must be positive")
    g = f.ground
    covered = [0] * g.n
    for idx in combinations(range(len(f.members)), p):
        inter = g.full_mask
        for i in idx:
            inter &= f.members[i]
        if not g.is_clique(inter):
            return PeccResult(False, bad_subset=idx)
        for v in bits(inter):
            covered[v] |= inter
    for u, v in g.edges():
        if not covered[u] >> v & 1:
            return PeccResult(False, uncovered_edge=(u, v))
    return PeccResult(True)


def family_to_matrix(f: CliqueFamily, n_columns: int) -> BinaryMatrix:
    """a_ij = 1 iff vertex i lies in F_j; missing members are empty (zero columns)."""
    if len(f.members) > n_columns:
        raise ValueError(f"family has {len(f.members)} members but only {n_columns} columns")
    return BinaryMatrix.from_column_sets(f.ground.n, [list(bits(m)) for m in f.members] + [[]] * (n_columns - len(f.members)))


def matrix_to_family(m: BinaryMatrix, g: Graph) -> CliqueFamily:
    """F_j = {i : a_ij = 1}, one member per column."""
    if m.n_rows != g.n:
        raise ValueError(f"matrix has {m.n_rows} rows but graph has {g.n} vertices")
    return CliqueFamily(g, tuple(m.column(j) for j in range(m.cols)))


def maximal_cliques(g: Graph) -> list[int]:
    """All maximal cliques with at least one edge (Bron-Kerbosch with pivoting)."""
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            if popcount(r) >= 2:
                out.append(r)
            return
        pivot = max(bits(p | x), key=lambda u: popcount(g.adj[u] & p))
        for v in bits(p & ~g.adj[pivot]):
            expand(r | 1 << v, p & g.adj[v], x & g.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, g.full_mask, 0)
    return sorted(out)


def minimum_edge_clique_cover(g: Graph, max_n: int = THETA_MAX_N) -> list[int]:
    """A minimum family of cliques covering every edge, found by branch and bound.

    Only maximal cliques need be considered.  Branches on the uncovered
    edge with the fewest covering cliques; the bound counts uncovered edges
    no two of which share a maximal clique.
    """
    if g.n > max_n:
        raise ValueError(f"exact theta_e is limited to n <= {max_n}")
    edges = g.edges()
    if not edges:
        return []
    cliques = maximal_cliques(g)
    edge_index = {e: i for i, e in enumerate(edges)}
    clique_edges = []
    for c in cliques:
        m = 0
        vs = list(bits(c))
        for a, b in combinations(vs, 2):
            m |= 1 << edge_index[(a, b)]
        clique_edges.append(m)
    covering = [[k for k, ce in enumerate(clique_edges) if ce >> e & 1] for e in range(len(edges))]
    all_edges = (1 << len(edges)) - 1

    # greedy upper bound
    best: list[int] = []
    left = all_edges
    while left:
        k = max(range(len(cliques)), key=lambda k: (popcount(clique_edges[k] & left), -k))
        best.append(k)
        left &= ~clique_edges[k]

    def lower_bound(uncovered: int) -> int:
        count = 0
        blocked = 0
        for e in bits(uncovered):
            if blocked >> e & 1:
                continue
            count += 1
            for k in covering[e]:
                blocked |= clique_edges[k]
        return count

    def search(uncovered: int, chosen: list[int]) -> None:
        nonlocal best
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + lower_bound(uncovered) >= len(best):
            return
        e = min(bits(uncovered), key=lambda e: (len(covering[e]), e))
        options = sorted(covering[e], key=lambda k: -popcount(clique_edges[k] & uncovered))
        for k in options:
            chosen.append(k)
            search(uncovered & ~clique_edges[k], chosen)
            chosen.pop()

    search(all_edges, [])
    return [cliques[k] for k in best]


def theta_e(g: Graph, max_n: int = THETA_MAX_N) -> int:
    """Edge clique cover number; 0 for edgeless graphs."""
    return len(minimum_edge_clique_cover(g, max_n))


def parse_family(text: str, ground: Graph) -> CliqueFamily:
    """Parse "r" then r lines "k v1 ... vk" with 1-indexed vertices."""
    lines = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 1:
        raise ValueError("family header must be a single count 'r'")
    r = int(lines[0][0])
    if len(lines) - 1 != r:
        raise ValueError(f"expected {r} member lines, found {len(lines) - 1}")
    members = []
    for fields in lines[1:]:
        k = int(fields[0])
        vs = [int(x) for x in fields[1:]]
        if len(vs) != k:
            raise ValueError(f"member declares {k} vertices but lists {len(vs)}")
        if any(not 1 <= v <= ground.n for v in vs):
            raise ValueError("vertex id out of range")
        members.append(mask_of(v - 1 for v in vs))
    return CliqueFamily(ground, tuple(members))


def format_family(f: CliqueFamily) -> str:
    out = [str(len(f.members))]
    for m in f.members:
        vs = [v + 1 for v in bits(m)]
        out.append(" ".join(str(x) for x in [len(vs)] + vs))
    return "\n".join(out) + "\n"
