"""Simple undirected graphs on vertices 0..n-1, stored as adjacency bitmasks.

A vertex set is an ``int`` whose bit ``v`` is set when ``v`` belongs to it.
Everything here is an immutable value; operations return new graphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

INF = float("inf")


class GraphFormatError(ValueError):
    """Raised for malformed edge-list text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour out of range")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency is not symmetric at {u},{v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    # -- queries ---------------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def closed_neighborhood(self, v: int) -> int:
        return self.adj[v] | 1 << v

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(a) for a in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]

    def is_clique(self, mask: int) -> bool:
        for v in bits(mask):
            if (mask & ~(1 << v)) & ~self.adj[v]:
                return False
        return True

    def is_independent(self, mask: int) -> bool:
        return all(not (self.adj[v] & mask) for v in bits(mask))

    def is_complete(self) -> bool:
        return self.edge_count() == self.n * (self.n - 1) // 2

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def components(self) -> list[int]:
        """Connected components as vertex masks, ordered by smallest vertex."""
        seen = 0
        out = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            out.append(comp)
        return out

    def distances_from(self, s: int) -> list[float]:
        dist: list[float] = [INF] * self.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in bits(self.adj[v]):
                if dist[u] == INF:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist

    def shortest_path(self, s: int, t: int) -> list[int] | None:
        parent = {s: s}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            if v == t:
                path = [t]
                while path[-1] != s:
                    path.append(parent[path[-1]])
                return path[::-1]
            for u in bits(self.adj[v]):
                if u not in parent:
                    parent[u] = v
                    queue.append(u)
        return None

    # -- constructions ---------------------------------------------------

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on ``vertices``; new vertex i is ``vertices[i]``."""
        index = {v: i for i, v in enumerate(vertices)}
        adj = []
        for v in vertices:
            row = 0
            for u in bits(self.adj[v]):
                if u in index:
                    row |= 1 << index[u]
            adj.append(row)
        return Graph(len(vertices), tuple(adj))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            adj[perm[v]] = mask_of(perm[u] for u in bits(self.adj[v]))
        return Graph(self.n, tuple(adj))

    def add_vertex(self, neighbors: Iterable[int] = ()) -> "Graph":
        new = self.n
        adj = list(self.adj) + [0]
        for u in neighbors:
            adj[u] |= 1 << new
            adj[new] |= 1 << u
        return Graph(self.n + 1, tuple(adj))

    def remove_vertex(self, v: int) -> "Graph":
        return self.induced_subgraph([u for u in range(self.n) if u != v])

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        adj = list(self.adj) + [a << shift for a in other.adj]
        return Graph(self.n + other.n, tuple(adj))

    def join(self, other: "Graph") -> "Graph":
        shift = self.n
        left = self.full_mask
        right = other.full_mask << shift
        adj = [a | right for a in self.adj] + [(a << shift) | left for a in other.adj]
        return Graph(self.n + other.n, tuple(adj))

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph(self.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(self.adj)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class VertexPartition:
    """Blocks of a vertex partition, each a sorted tuple; block i is quotient vertex i."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for block in self.blocks:
            if not block:
                raise ValueError("empty block")
            if seen.intersection(block):
                raise ValueError("blocks overlap")
            seen.update(block)
        if seen != set(range(len(seen))):
            raise ValueError("blocks do not cover 0..n-1")

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(b[0] for b in self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def block_of(self) -> list[int]:
        """Map vertex -> index of its block."""
        out = [0] * sum(self.sizes)
        for i, block in enumerate(self.blocks):
            for v in block:
                out[v] = i
        return out


def condensation(g: Graph) -> tuple[Graph, VertexPartition]:
    """Quotient of ``g`` by the relation "same closed neighbourhood".

    Blocks are ordered by their smallest vertex, so the quotient of a graph
    without homogeneous pairs is the graph itself.
    """
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(g.closed_neighborhood(v), []).append(v)
    blocks = sorted((tuple(b) for b in classes.values()), key=lambda b: b[0])
    index = {}
    for i, block in enumerate(blocks):
        for v in block:
            index[v] = i
    adj = []
    for block in blocks:
        row = 0
        for u in bits(g.adj[block[0]]):
            if index[u] != index[block[0]]:
                row |= 1 << index[u]
        adj.append(row)
    return Graph(len(blocks), tuple(adj)), VertexPartition(tuple(blocks))


def diameter(g: Graph) -> float:
    """Largest distance between two vertices; ``INF`` when ``g`` is disconnected."""
    best = 0
    for s in range(g.n):
        d = max(g.distances_from(s))
        if d == INF:
            return INF
        best = max(best, int(d))
    return best


# -- edge-list text format ---------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse "n m" then m lines "u v" (1-indexed, u < v). '#' lines are comments."""
    lines = [
        (i, line.split())
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise GraphFormatError("empty input")
    header_line, header = lines[0]
    if len(header) != 2:
        raise GraphFormatError("header must be 'n m'", header_line)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphFormatError("header must hold two integers", header_line) from None
    if n < 1 or m < 0:
        raise GraphFormatError("need n >= 1 and m >= 0", header_line)
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(body)}", header_line)
    edges = []
    seen = set()
    for lineno, fields in body:
        if len(fields) != 2:
            raise GraphFormatError("edge line must be 'u v'", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError("vertex ids must be integers", lineno) from None
        if not (1 <= u < v <= n):
            raise GraphFormatError(f"need 1 <= u < v <= {n}, got {u} {v}", lineno)
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
        seen.add((u, v))
        edges.append((u - 1, v - 1))
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    out = [f"{g.n} {len(edges)}"]
    out.extend(f"{u + 1} {v + 1}" for u, v in edges)
    return "\n".join(out) + "\n"
