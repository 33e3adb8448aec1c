"""Square 0/1 matrices witnessing that a graph is a p-competition graph.

A certificate for (G, p) is a square matrix of order |V(G)| whose p-row
graph is isomorphic to G.  Every builder below returns matrices whose row
``i`` corresponds to vertex ``i`` of the graph it describes, and every
``Certificate`` they return has already been through ``verify``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations
from typing import Iterator, Sequence

from pcomp.graph import Graph, VertexPartition, bits, format_edge_list, mask_of, parse_edge_list, popcount
from pcomp.iso import are_isomorphic
from pcomp.matrix import (
    BinaryMatrix,
    append_columns,
    format_matrix,
    p_row_graph,
    parse_matrix,
    replace_entry,
)


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    matrix: BinaryMatrix
    p: int
    graph: Graph
    provenance: str
    verified: bool = False

    @property
    def order(self) -> int:
        return self.matrix.n_rows


def verify(cert: Certificate) -> Certificate:
    """Recompute the p-row graph and compare it with the claimed graph.

    Provenance and the incoming ``verified`` flag are ignored.
    """
    m = cert.matrix
    ok = m.is_square and m.n_rows == cert.graph.n and cert.p >= 1
    if ok:
        row_graph = p_row_graph(m, cert.p)
        ok = row_graph == cert.graph or are_isomorphic(row_graph, cert.graph) is not None
    return replace(cert, verified=ok)


def _certified(matrix: BinaryMatrix, p: int, graph: Graph, provenance: str) -> Certificate:
    cert = verify(Certificate(matrix, p, graph, provenance))
    if not cert.verified:
        raise CertificateError(f"{provenance}: constructed matrix does not realize the graph")
    return cert


def relabel_certificate(cert: Certificate, target: Graph) -> Certificate:
    """Reorder the rows of ``cert`` so that row v corresponds to vertex v of ``target``."""
    if cert.graph == target:
        return cert
    iso = are_isomorphic(cert.graph, target)
    if iso is None:
        raise CertificateError("certificate graph is not isomorphic to the target")
    order = [0] * target.n
    for old, new in iso.items():
        order[new] = old
    return _certified(cert.matrix.permute_rows(order), cert.p, target, cert.provenance)


def colex_subsets(n: int, size: int) -> Iterator[int]:
    """Subsets of {0..n-1} of the given size as masks, in colexicographic order."""
    # colex order on masks coincides with numeric order
    for combo in sorted(combinations(range(n), size), key=lambda c: c[::-1]):
        yield mask_of(combo)


# -- small graph builders used for the claimed graphs ------------------------


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int, center: int = 0) -> Graph:
    others = [v for v in range(leaves + 1) if v != center]
    return Graph.from_edges(leaves + 1, [(center, v) for v in others])


def blow_up(quotient: Graph, class_sizes: Sequence[int]) -> Graph:
    """Replace quotient vertex j by a clique of ``class_sizes[j]`` vertices (in block order)."""
    starts = []
    total = 0
    for s in class_sizes:
        starts.append(total)
        total += s
    edges = []
    for j, s in enumerate(class_sizes):
        block = range(starts[j], starts[j] + s)
        edges.extend(combinations(block, 2))
        for k in bits(quotient.adj[j]):
            if k > j:
                edges.extend((a, b) for a in block for b in range(starts[k], starts[k] + class_sizes[k]))
    return Graph.from_edges(total, edges)


# -- matrices from the cycle family ------------------------------------------


def cyclic_matrix(p: int, n: int) -> BinaryMatrix:
    """M_{p,n}: row r (vertex v_r) has a 1 in column c (set S_c = {v_c..v_{c+p}}) iff v_r in S_c."""
    if n < 4 or not 1 <= p <= n - 3:
        raise ValueError(f"cyclic_matrix needs n >= 4 and 1 <= p <= n-3, got p={p}, n={n}")
    return BinaryMatrix(
        tuple(sum(1 << c for c in range(n) if (r - c) % n <= p) for r in range(n)), n
    )


def path_matrix(p: int, n: int) -> BinaryMatrix:
    """M*_{p,n}: M_{p,n} with its (1, n-p+1) entry cleared; the explicit 4x4 matrix for (2, 4)."""
    if (p, n) == (2, 4):
        return BinaryMatrix.from_strings(["1100", "1110", "0111", "0011"])
    if n < 4 or not 1 <= p <= n - 3:
        raise ValueError(f"path_matrix needs (p,n)=(2,4) or n >= 4 and 1 <= p <= n-3, got p={p}, n={n}")
    return replace_entry(cyclic_matrix(p, n), 0, n - p, 0)


def cycle_certificate(p: int, n: int) -> Certificate:
    return _certified(cyclic_matrix(p, n), p, cycle_graph(n), f"cyclic_matrix(p={p}, n={n})")


def path_certificate(p: int, n: int) -> Certificate:
    return _certified(path_matrix(p, n), p, path_graph(n), f"path_matrix(p={p}, n={n})")


# -- stars ------------------------------------------------------------------


def star_matrix_full(n: int) -> BinaryMatrix:
    """Order n+1: row 0 all ones (the centre), row i all ones except column i-1."""
    if n < 1:
        raise ValueError("star needs at least one leaf")
    full = (1 << (n + 1)) - 1
    return BinaryMatrix((full,) + tuple(full & ~(1 << (i - 1)) for i in range(1, n + 1)), n + 1)


def star_matrix(p: int, n: int) -> BinaryMatrix:
    """Order n+1: M_{p-2,n} bordered by an all-one last column and an all-one last row (the centre)."""
    if n < 4 or not 3 <= p <= n - 1:
        raise ValueError(f"star_matrix needs n >= 4 and 3 <= p <= n-1, got p={p}, n={n}")
    inner = cyclic_matrix(p - 2, n)
    rows = tuple(r | 1 << n for r in inner.rows) + ((1 << (n + 1)) - 1,)
    return BinaryMatrix(rows, n + 1)


def cover_certificate(g: Graph, cliques: Sequence[int], p: int, provenance: str = "") -> Certificate:
    """Incidence matrix of an edge clique cover (a 1-row graph realization), padded
    with p-1 all-one columns and enough all-zero columns to make it square."""
    extra = g.n - len(cliques)
    if not 1 <= p <= extra + 1:
        raise ValueError(f"a cover of size {len(cliques)} on {g.n} vertices supports p in 1..{extra + 1}")
    m = BinaryMatrix.from_column_sets(g.n, [list(bits(c)) for c in cliques])
    m = append_columns(m, p - 1, extra - (p - 1))
    return _certified(m, p, g, provenance or f"clique-cover(size={len(cliques)}) padded to p={p}")


def star_certificate(n: int, p: int) -> Certificate:
    """Certificate for K_{1,n} (centre = vertex 0) at any p in [n]."""
    if n < 1 or not 1 <= p <= n:
        raise ValueError(f"K_1,{n} is a p-competition graph only for 1 <= p <= {n}")
    g = star_graph(n, center=0)
    if p == n:
        return _certified(star_matrix_full(n), p, g, f"star_matrix_full(n={n})")
    if p <= 2:
        edges = [(1 << 0) | (1 << v) for v in range(1, n + 1)]
        return cover_certificate(g, edges, p, f"star edge cover padded to p={p}")
    m = star_matrix(p, n)
    # star_matrix puts the centre last; move it to row 0
    m = m.permute_rows([n] + list(range(n)))
    return _certified(m, p, g, f"star_matrix(p={p}, n={n})")


# -- extensions -------------------------------------------------------------


def normalize_light_rows(cert: Certificate) -> Certificate:
    """Rewrite every row of weight < p-1 to ones in the first p-1 columns.

    Such rows belong to isolated vertices and stay isolated afterwards.
    """
    p = cert.p
    canon = (1 << (p - 1)) - 1
    rows = tuple(canon if popcount(r) < p - 1 else r for r in cert.matrix.rows)
    if rows == cert.matrix.rows:
        return cert
    return _certified(BinaryMatrix(rows, cert.matrix.cols), p, cert.graph, cert.provenance + " + light rows normalized")


def pendant_extension(cert: Certificate, attach_vertex: int) -> Certificate:
    """Certificate for ``cert.graph`` plus a new vertex adjacent only to ``attach_vertex``.

    The new vertex gets index n.  Columns are stably reordered so the
    attachment row's 1s come first; a new last column marks the attachment
    row and the new row, which also takes the first p-1 columns.
    """
    if not cert.verified:
        raise CertificateError("pendant_extension needs a verified certificate")
    cert = normalize_light_rows(cert)
    m, p = cert.matrix, cert.p
    lam_v = m.rows[attach_vertex]
    order = [j for j in range(m.cols) if lam_v >> j & 1] + [j for j in range(m.cols) if not lam_v >> j & 1]
    m = m.permute_columns(order)
    new_col = 1 << m.cols
    rows = list(m.rows)
    rows[attach_vertex] |= new_col
    rows.append(((1 << (p - 1)) - 1) | new_col)
    graph = cert.graph.add_vertex([attach_vertex])
    return _certified(
        BinaryMatrix(tuple(rows), m.cols + 1),
        p,
        graph,
        f"{cert.provenance} + pendant at {attach_vertex}",
    )


def caterpillar_graph(n: int, attachments: Sequence[int]) -> Graph:
    """Spine 0..n-1, pendant n+i attached to spine position attachments[i] (1-indexed)."""
    edges = [(i, i + 1) for i in range(n - 1)]
    edges += [(pos - 1, n + i) for i, pos in enumerate(attachments)]
    return Graph.from_edges(n + len(attachments), edges)


def caterpillar_matrix(n: int, t: int, attachments: Sequence[int]) -> Certificate:
    """Block matrix [M*_{t,n}, J_{n,k}; A, J_{k,k} - I_k] realizing a caterpillar at p = t + k.

    ``attachments[i]`` is the 1-indexed spine position (2..n-1) of pendant i;
    row i of A copies the M*_{t,n} row of that spine vertex.
    """
    if not ((n, t) == (4, 2) or (n >= 4 and 1 <= t <= n - 3)):
        raise ValueError(f"caterpillar_matrix needs (n,t)=(4,2) or n >= 4 and 1 <= t <= n-3, got n={n}, t={t}")
    for pos in attachments:
        if not 2 <= pos <= n - 1:
            raise ValueError(f"pendants must attach to interior spine positions 2..{n - 1}, got {pos}")
    k = len(attachments)
    base = path_matrix(t, n)
    right_all = ((1 << k) - 1) << n
    rows = [r | right_all for r in base.rows]
    for i, pos in enumerate(attachments):
        rows.append(base.rows[pos - 1] | (right_all & ~(1 << (n + i))))
    m = BinaryMatrix(tuple(rows), n + k)
    return _certified(m, t + k, caterpillar_graph(n, attachments), f"caterpillar_matrix(n={n}, t={t}, attachments={list(attachments)})")


def isolated_augment(cert: Certificate, k: int, i: int) -> Certificate:
    """[M, J_{n,i}, O_{n,k-i}; O_{k,n+k}]: the graph plus k isolated vertices, at p + i."""
    if not cert.verified:
        raise CertificateError("isolated_augment needs a verified certificate")
    if not 0 <= i <= k:
        raise ValueError("need 0 <= i <= k")
    n = cert.matrix.n_rows
    m = append_columns(cert.matrix, i, k - i)
    m = BinaryMatrix(m.rows + (0,) * k, m.cols)
    graph = Graph(n + k, cert.graph.adj + (0,) * k)
    return _certified(m, cert.p + i, graph, f"{cert.provenance} + {k} isolated (shift {i})")


def condensation_expand(
    cert: Certificate,
    class_sizes: Sequence[int],
    shift: int = 0,
    partition: VertexPartition | None = None,
) -> Certificate:
    """Lift a certificate for a quotient G/~ to G, at p + shift.

    Quotient row j is repeated ``class_sizes[j]`` times (or, with
    ``partition``, copied to every vertex of block j in G's own labelling),
    then ``shift`` all-one and enough all-zero columns make it square.
    Repeated rows need weight >= p so that the copies stay adjacent.
    """
    if not cert.verified:
        raise CertificateError("condensation_expand needs a verified certificate")
    m, p = cert.matrix, cert.p
    if partition is not None:
        class_sizes = partition.sizes
    if len(class_sizes) != m.n_rows or any(s < 1 for s in class_sizes):
        raise ValueError("need one positive class size per matrix row")
    for j, s in enumerate(class_sizes):
        if s > 1 and popcount(m.rows[j]) < p:
            raise CertificateError(f"row {j} has fewer than p={p} ones but is repeated")
    n = sum(class_sizes)
    if not 0 <= shift <= n - m.cols:
        raise ValueError(f"shift must lie in 0..{n - m.cols}")
    if partition is None:
        rows = tuple(r for r, s in zip(m.rows, class_sizes) for _ in range(s))
        graph = blow_up(cert.graph, class_sizes)
    else:
        where = partition.block_of()
        rows = tuple(m.rows[where[v]] for v in range(n))
        graph = _expand_graph(cert.graph, partition)
    expanded = append_columns(BinaryMatrix(rows, m.cols), shift, n - m.cols - shift)
    return _certified(expanded, p + shift, graph, f"{cert.provenance} expanded by classes {list(class_sizes)} (shift {shift})")


def _expand_graph(quotient: Graph, partition: VertexPartition) -> Graph:
    where = partition.block_of()
    n = len(where)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if where[u] == where[v] or quotient.has_edge(where[u], where[v])
    ]
    return Graph.from_edges(n, edges)


def complete_union_matrix(sizes: Sequence[int], p: int) -> Certificate:
    """Disjoint union of cliques K_{sizes[0]} u ...: rows of component j are [n] minus S_j,
    with S_j the j-th colex-smallest (n-p)-subset."""
    n = sum(sizes)
    k = len(sizes)
    if any(s < 1 for s in sizes):
        raise ValueError("component sizes must be positive")
    if not 1 <= p <= n - 1:
        raise ValueError(f"need 1 <= p <= n-1 = {n - 1}")
    i = n - p
    subsets = []
    for s in colex_subsets(n, i):
        subsets.append(s)
        if len(subsets) == k:
            break
    if len(subsets) < k:
        raise ValueError(f"{k} components exceed C({n},{i})")
    full = (1 << n) - 1
    rows = tuple(full & ~subsets[j] for j, s in enumerate(sizes) for _ in range(s))
    graph = blow_up(Graph.empty(k), sizes)
    return _certified(BinaryMatrix(rows, n), p, graph, f"complete_union_matrix(sizes={list(sizes)}, p={p})")


def join_form_graph(n0: int, parts: Sequence[int], m_isolated: int) -> Graph:
    """(K_n0 v (K_n1 u ... u K_nk)) u isolated(m), vertices in that order."""
    core = Graph.complete(n0) if n0 else None
    parts = [s for s in parts if s > 0]
    rest = None
    for s in parts:
        block = Graph.complete(s)
        rest = block if rest is None else rest.disjoint_union(block)
    if core is None:
        body = rest
    elif rest is None:
        body = core
    else:
        body = core.join(rest)
    if m_isolated:
        iso = Graph.empty(m_isolated)
        body = iso if body is None else body.disjoint_union(iso)
    if body is None:
        raise ValueError("join form with no vertices")
    return body


def join_form_matrix(n0: int, parts: Sequence[int], m_isolated: int) -> Certificate:
    """Certificate at p = n-1: all-one rows for the core, for part j rows with a
    single 0 in column j, all-zero rows for isolated vertices."""
    parts = [s for s in parts if s > 0]
    n = n0 + sum(parts) + m_isolated
    if n < 2:
        raise ValueError("need at least two vertices for p = n-1 >= 1")
    if len(parts) > n:
        raise ValueError(f"{len(parts)} parts need distinct zero columns but n = {n}")
    full = (1 << n) - 1
    rows = [full] * n0
    for j, s in enumerate(parts):
        rows += [full & ~(1 << j)] * s
    rows += [0] * m_isolated
    return _certified(
        BinaryMatrix(tuple(rows), n),
        n - 1,
        join_form_graph(n0, parts, m_isolated),
        f"join_form_matrix(n0={n0}, parts={parts}, m={m_isolated})",
    )


def upsilon_full_matrix(m: int, n: int, p: int) -> Certificate:
    """K_m u isolated(n-m) at any p: m all-one rows then n-m all-zero rows."""
    if not 0 <= m <= n or not 1 <= p <= n:
        raise ValueError("need 0 <= m <= n and 1 <= p <= n")
    full = (1 << n) - 1
    rows = (full,) * m + (0,) * (n - m)
    graph = Graph(n, tuple(full & ~(1 << v) & ((1 << m) - 1) if v < m else 0 for v in range(n)))
    return _certified(BinaryMatrix(rows, n), p, graph, f"upsilon_full_matrix(m={m}, n={n}, p={p})")


def star_condensation_matrix(
    class_sizes: Sequence[int], p: int, center: int | None = 0, shift: int = 0
) -> Certificate:
    """Graph whose quotient is a star (centre class ``center``) or edgeless (``center=None``).

    The quotient matrix has order t: an all-one centre row and distinct
    weight-p rows (colex-smallest p-subsets) for the other classes; it is
    then expanded class by class, optionally shifted to p + ``shift``.
    """
    t = len(class_sizes)
    if t < 2:
        raise ValueError("need at least two classes")
    if not 1 <= p <= t - 1:
        raise ValueError(f"need 1 <= p <= t-1 = {t - 1}")
    full = (1 << t) - 1
    leaf_rows = colex_subsets(t, p)
    rows = []
    for j in range(t):
        rows.append(full if j == center else next(leaf_rows))
    if center is None:
        quotient = Graph.empty(t)
    else:
        quotient = star_graph(t - 1, center=center)
    q_cert = _certified(BinaryMatrix(tuple(rows), t), p, quotient, f"star_condensation_matrix(t={t}, p={p})")
    return condensation_expand(q_cert, class_sizes, shift=shift)


# -- text format ------------------------------------------------------------


def format_certificate(cert: Certificate) -> str:
    return (
        "[graph]\n"
        + format_edge_list(cert.graph)
        + "[p]\n"
        + f"p {cert.p}\n"
        + "[matrix]\n"
        + format_matrix(cert.matrix)
        + "[provenance]\n"
        + cert.provenance.replace("\n", " ")
        + "\n"
    )


def parse_certificate(text: str) -> Certificate:
    """Parse the sectioned format; the result is unverified until passed to ``verify``."""
    sections: dict[str, list[str]] = {}
    current = None
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            current = stripped[1:-1]
            if current in sections:
                raise CertificateError(f"duplicate section [{current}]")
            sections[current] = []
        elif current is None:
            if stripped:
                raise CertificateError("content before the first section header")
        else:
            sections[current].append(line)
    for name in ("graph", "p", "matrix", "provenance"):
        if name not in sections:
            raise CertificateError(f"missing section [{name}]")
    p_fields = " ".join(sections["p"]).split()
    if len(p_fields) != 2 or p_fields[0] != "p":
        raise CertificateError("[p] section must read 'p <value>'")
    return Certificate(
        matrix=parse_matrix("\n".join(sections["matrix"])),
        p=int(p_fields[1]),
        graph=parse_edge_list("\n".join(sections["graph"])),
        provenance="\n".join(sections["provenance"]).strip(),
    )
