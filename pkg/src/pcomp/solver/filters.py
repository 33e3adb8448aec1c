"""Necessary conditions and constructive shortcuts, applied before any search.

Each filter inspects the graph and claims YES (always with a verified
certificate in the input's own labelling) or NO for particular values of p.
``apply_filters`` merges the claims; a YES and a NO for the same p can only
come from a bug, so that raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable

from pcomp.certificates import (
    Certificate,
    CertificateError,
    caterpillar_matrix,
    complete_union_matrix,
    condensation_expand,
    cover_certificate,
    cycle_certificate,
    isolated_augment,
    join_form_matrix,
    path_certificate,
    pendant_extension,
    relabel_certificate,
    star_certificate,
    star_condensation_matrix,
    upsilon_full_matrix,
    verify,
)
from pcomp.cover import THETA_MAX_N, minimum_edge_clique_cover
from pcomp.graph import INF, Graph, bits, condensation, diameter, popcount
from pcomp.iso import embed_in_psi
from pcomp.matrix import BinaryMatrix
from pcomp.structure import (
    chordal_maximal_cliques,
    find_induced_path,
    induced_p3_center_pairs,
    is_chordal,
    is_union_of_cliques,
    join_form,
    quotient_is_star_like,
    recognize_family,
    tree_diameter_path,
)

YES, NO, OPEN = "YES", "NO", "OPEN"

# Psi_{n,k} hosts with more vertices than this are left to the search
PSI_HOST_LIMIT = 32
PSI_NODE_LIMIT = 20000


class FilterConflict(RuntimeError):
    pass


@dataclass(frozen=True)
class FilterVerdict:
    p: int
    status: str
    reason: str = ""
    certificate: Certificate | None = None
    detail: str = ""


@dataclass(frozen=True)
class _Claim:
    p: int
    status: str
    reason: str
    certificate: Certificate | None = None
    detail: str = ""


def _no_above(g: Graph, first: int, reason: str, detail: str) -> list[_Claim]:
    return [_Claim(p, NO, reason, detail=detail) for p in range(max(first, 1), g.n + 1)]


def _in_labels(cert: Certificate, placed: list[int], g: Graph) -> Certificate:
    """Row i of ``cert`` belongs to vertex placed[i] of ``g``; reorder rows to g's labels."""
    order = [0] * g.n
    for i, v in enumerate(placed):
        order[v] = i
    matrix = cert.matrix.permute_rows(order)
    out = verify(Certificate(matrix, cert.p, g, cert.provenance))
    if not out.verified:
        raise CertificateError(f"{cert.provenance}: rows do not match the target labelling")
    return out


def grow_by_pendants(cert: Certificate, placed: list[int], g: Graph) -> Certificate:
    """Extend ``cert`` (rows = ``placed`` vertices of g) to all of g by pendant additions.

    Each remaining vertex must have exactly one neighbour among the vertices
    placed before it, which holds when g is obtained from the placed part by
    repeatedly attaching pendant vertices.
    """
    placed = list(placed)
    where = {v: i for i, v in enumerate(placed)}
    placed_mask = sum(1 << v for v in placed)
    remaining = [v for v in range(g.n) if v not in where]
    while remaining:
        for v in remaining:
            links = g.adj[v] & placed_mask
            if popcount(links) == 1:
                anchor = next(bits(links))
                cert = pendant_extension(cert, where[anchor])
                where[v] = len(placed)
                placed.append(v)
                placed_mask |= 1 << v
                remaining.remove(v)
                break
        else:
            raise ValueError("the remaining vertices are not pendant additions")
    return _in_labels(cert, placed, g)


# -- individual filters -------------------------------------------------


def filter_n_characterization(g: Graph) -> list[_Claim]:
    """p = n: YES iff the non-isolated vertices form a clique."""
    n = g.n
    live = [v for v in range(n) if g.adj[v]]
    if g.is_clique(sum(1 << v for v in live)):
        cert = upsilon_full_matrix(len(live), n, n)
        cert = _in_labels(cert, live + [v for v in range(n) if not g.adj[v]], g)
        return [_Claim(n, YES, "n-characterization", cert)]
    return [_Claim(n, NO, "n-characterization", detail="non-isolated vertices do not form a clique")]


def filter_n_minus_1(g: Graph) -> list[_Claim]:
    """p = n-1: YES iff g is (K_n0 v (K_n1 u ... u K_nk)) u isolated(m)."""
    n = g.n
    if n < 2:
        return []
    form = join_form(g)
    if form is None:
        return [_Claim(n - 1, NO, "join-form-characterization", detail="not a join of a clique with disjoint cliques plus isolated vertices")]
    parts = form["parts"]
    cert = join_form_matrix(len(form["core"]), [len(s) for s in parts], len(form["isolated"]))
    placed = form["core"] + [v for s in parts for v in s] + form["isolated"]
    return [_Claim(n - 1, YES, "join-form-characterization", _in_labels(cert, placed, g))]


def filter_star_quotient(g: Graph) -> list[_Claim]:
    """[n-1] when, after dropping isolated vertices, the condensation is a star or edgeless."""
    info = quotient_is_star_like(g)
    if info is None:
        return []
    part = info["partition"]
    sizes = part.sizes
    t = len(sizes)
    h_n = sum(sizes)
    m = g.n - h_n
    placed_h = [info["vertices"][v] for block in part.blocks for v in sorted(block)]
    isolated = [v for v in range(g.n) if not g.adj[v]]
    claims = []
    for p in range(1, g.n):
        p0 = min(p, t - 1)
        shift = min(p - p0, h_n - t)
        extra = p - p0 - shift
        cert = star_condensation_matrix(sizes, p0, center=info["center"], shift=shift)
        if m:
            cert = isolated_augment(cert, m, extra)
        claims.append(_Claim(p, YES, "star-quotient", _in_labels(cert, placed_h + isolated, g)))
    return claims


def filter_two_p3(g: Graph) -> list[_Claim]:
    """Two nonadjacent vertices, each the middle of an induced P3, rule out p >= n-2."""
    found = induced_p3_center_pairs(g)
    if found is None:
        return []
    (a, b, c), (x, y, z) = found
    return _no_above(g, g.n - 2, "two-induced-P3", f"paths {a}-{b}-{c} and {x}-{y}-{z}")


def filter_diameter(g: Graph) -> list[_Claim]:
    if not g.is_connected():
        return []
    d = diameter(g)
    if d == INF or d < 4:
        return []
    return _no_above(g, g.n - 2, "diameter-at-least-4", f"diameter {int(d)}")


def filter_hole_or_p5(g: Graph) -> list[_Claim]:
    if g.n < 4:
        return []
    if not is_chordal(g):
        return _no_above(g, g.n - 2, "hole-or-induced-P5", "graph has a hole")
    path = find_induced_path(g, 5)
    if path is not None:
        return _no_above(g, g.n - 2, "hole-or-induced-P5", f"induced path {'-'.join(map(str, path))}")
    return []


def filter_theta(g: Graph) -> list[_Claim]:
    """theta_e > n rules out p = 1; otherwise the cover matrix gives [n - theta_e + 1]."""
    if g.n > THETA_MAX_N:
        return []
    cover = minimum_edge_clique_cover(g)
    theta = len(cover)
    if theta > g.n:
        return [_Claim(1, NO, "theta-exceeds-n", detail=f"theta_e = {theta} > n = {g.n}")]
    return [
        _Claim(p, YES, "clique-cover", cover_certificate(g, cover, p, f"minimum clique cover (theta_e={theta}) padded to p={p}"))
        for p in range(1, min(g.n, g.n - theta + 1) + 1)
    ]


def filter_chordal_components(g: Graph) -> list[_Claim]:
    """Chordal graphs without isolated vertices: the maximal cliques (at most n - omega of
    them) form a cover, which gives at least [omega + 1]."""
    if g.isolated_vertices() or not is_chordal(g):
        return []
    cliques = chordal_maximal_cliques(g)
    top = min(g.n, g.n - len(cliques) + 1)
    return [
        _Claim(p, YES, "chordal-components", cover_certificate(g, cliques, p, f"maximal cliques of a chordal graph padded to p={p}"))
        for p in range(1, top + 1)
    ]


def _caterpillar_claims(g: Graph, spine: list[int]) -> list[_Claim]:
    d = len(spine) - 1
    n = g.n
    position = {v: i for i, v in enumerate(spine)}
    pendants = [v for v in range(n) if v not in position]
    t = 2 if d == 3 else 3
    claims = []
    for p in range(1, n - t + 1):
        if (d == 3 and p <= 2) or (d >= 4 and p <= d - 2):
            base = path_certificate(p, d + 1)
            placed = list(spine)
        else:
            alpha = p - 2 if d == 3 else p - d + 2
            chosen = pendants[:alpha]
            spine_t = 2 if d == 3 else d - 2
            anchors = [position[next(bits(g.adj[v]))] + 1 for v in chosen]
            base = caterpillar_matrix(d + 1, spine_t, anchors)
            placed = list(spine) + chosen
        claims.append(_Claim(p, YES, "caterpillar", grow_by_pendants(base, placed, g)))
    return claims


def filter_families(g: Graph) -> list[_Claim]:
    """Closed-form realizers for recognized families."""
    desc = recognize_family(g)
    n = g.n
    kind = desc.kind
    claims: list[_Claim] = []
    if kind == "complete-plus-isolated":
        live = desc.params["clique_vertices"]
        placed = live + [v for v in range(n) if not g.adj[v]]
        for p in range(1, n + 1):
            claims.append(_Claim(p, YES, "complete-plus-isolated", _in_labels(upsilon_full_matrix(len(live), n, p), placed, g)))
        return claims
    if kind == "star":
        leaves = desc.params["leaves"]
        for p in range(1, leaves + 1):
            claims.append(_Claim(p, YES, "star", relabel_certificate(star_certificate(leaves, p), g)))
    elif kind == "path":
        order = desc.params["order"]
        top = 2 if n == 4 else n - 3
        for p in range(1, top + 1):
            claims.append(_Claim(p, YES, "path", _in_labels(path_certificate(p, n), order, g)))
    elif kind == "cycle" and n >= 4:
        order = desc.params["order"]
        for p in range(1, n - 2):
            claims.append(_Claim(p, YES, "cycle", _in_labels(cycle_certificate(p, n), order, g)))
    elif kind == "caterpillar":
        claims.extend(_caterpillar_claims(g, desc.params["spine"]))
    if kind != "complete-plus-isolated" and is_union_of_cliques(g):
        comps = g.components()
        sizes = [popcount(c) for c in comps]
        placed = [v for c in comps for v in bits(c)]
        for p in range(1, n):
            claims.append(_Claim(p, YES, "union-of-cliques", _in_labels(complete_union_matrix(sizes, p), placed, g)))
    return claims


def filter_tree_diameter(g: Graph) -> list[_Claim]:
    """A tree of diameter m >= 3 is a p-competition graph for p in [m-2]."""
    path = tree_diameter_path(g)
    if path is None or len(path) < 4:
        return []
    m = len(path) - 1
    return [
        _Claim(p, YES, "tree-diameter", grow_by_pendants(path_certificate(p, m + 1), path, g))
        for p in range(1, m - 1)
    ]


def filter_condensation_lift(g: Graph, sub_filters: Callable[[Graph], dict[int, FilterVerdict]]) -> list[_Claim]:
    """YES for the condensation at p0 lifts to p0 + i for 0 <= i <= n - |V(G/~)|."""
    q, part = condensation(g)
    if q.n == g.n:
        return []
    claims = []
    for p0, verdict in sub_filters(q).items():
        if verdict.status != YES:
            continue
        for shift in range(g.n - q.n + 1):
            try:
                cert = condensation_expand(verdict.certificate, part.sizes, shift=shift, partition=part)
            except CertificateError:
                break
            claims.append(_Claim(p0 + shift, YES, "condensation-lift", _in_labels(cert, list(range(g.n)), g)))
    return claims


def filter_psi(g: Graph) -> list[_Claim]:
    """For connected g: p = n-k holds iff G/~ embeds in Psi_{n,k} (small hosts only)."""
    n = g.n
    if n < 2 or not g.is_connected():
        return []
    q, part = condensation(g)
    claims = []
    for k in range(n):
        if sum(comb(n, j) for j in range(k + 1)) > PSI_HOST_LIMIT:
            break
        try:
            sets = embed_in_psi(q, n, k, max_nodes=PSI_NODE_LIMIT)
        except TimeoutError:
            continue
        p = n - k
        if sets is None:
            claims.append(_Claim(p, NO, "psi-embedding", detail=f"condensation does not embed in Psi_{n},{k}"))
            continue
        full = (1 << n) - 1
        block_of = part.block_of()
        rows = tuple(full & ~sets[block_of[v]] for v in range(n))
        cert = verify(Certificate(BinaryMatrix(rows, n), p, g, f"complements of a Psi_{n},{k} embedding"))
        if not cert.verified:
            raise CertificateError("Psi embedding did not yield a realization")
        claims.append(_Claim(p, YES, "psi-embedding", cert))
    return claims


def filter_pendant_lift(g: Graph, sub_filters: Callable[[Graph], dict[int, FilterVerdict]]) -> list[_Claim]:
    """Adding a pendant vertex keeps every p: lift YES verdicts of g minus one pendant vertex."""
    if g.n < 3:
        return []
    leaf = next((v for v in range(g.n) if popcount(g.adj[v]) == 1), None)
    if leaf is None:
        return []
    anchor = next(bits(g.adj[leaf]))
    sub = g.remove_vertex(leaf)
    old_to_sub = [u if u < leaf else u - 1 for u in range(g.n)]
    placed = [u for u in range(g.n) if u != leaf] + [leaf]
    claims = []
    for p, verdict in sub_filters(sub).items():
        if verdict.status != YES:
            continue
        cert = pendant_extension(verdict.certificate, old_to_sub[anchor])
        claims.append(_Claim(p, YES, "pendant-lift", _in_labels(cert, placed, g)))
    return claims


# -- merging ------------------------------------------------------------

def apply_filters(
    g: Graph,
    *,
    psi: bool = True,
    lift: bool = True,
    _cache: dict | None = None,
) -> dict[int, FilterVerdict]:
    """Per-p verdicts (YES / NO / OPEN) from all filters, for p = 1..n.

    ``psi`` toggles the Psi_{n,k} embedding filter and ``lift`` the two
    filters that recurse into smaller graphs (condensation and pendant
    removal).  YES verdicts carry certificates in g's labelling.
    """
    cache = {} if _cache is None else _cache
    key = (g.n, g.adj, psi, lift)
    if key in cache:
        return cache[key]

    def sub_filters(h: Graph) -> dict[int, FilterVerdict]:
        return apply_filters(h, psi=psi, lift=lift, _cache=cache)

    runs: list[Iterable[_Claim]] = [
        filter_n_characterization(g),
        filter_n_minus_1(g),
        filter_families(g),
        filter_tree_diameter(g),
        filter_star_quotient(g),
        filter_two_p3(g),
        filter_diameter(g),
        filter_hole_or_p5(g),
        filter_theta(g),
        filter_chordal_components(g),
    ]
    if lift:
        runs.append(filter_condensation_lift(g, sub_filters))
    if psi:
        runs.append(filter_psi(g))
    if lift:
        runs.append(filter_pendant_lift(g, sub_filters))

    yes: dict[int, _Claim] = {}
    no: dict[int, _Claim] = {}
    for claims in runs:
        for c in claims:
            if not 1 <= c.p <= g.n:
                continue
            if c.status == YES:
                if c.certificate is None or not c.certificate.verified:
                    raise FilterConflict(f"{c.reason} claimed YES at p={c.p} without a verified certificate")
                yes.setdefault(c.p, c)
            else:
                no.setdefault(c.p, c)
    out = {}
    for p in range(1, g.n + 1):
        if p in yes and p in no:
            raise FilterConflict(f"p={p}: {yes[p].reason} says YES but {no[p].reason} says NO")
        c = yes.get(p) or no.get(p)
        if c is None:
            out[p] = FilterVerdict(p, OPEN)
        else:
            out[p] = FilterVerdict(p, c.status, c.reason, c.certificate, c.detail)
    cache[key] = out
    return out


__all__ = [
    "FilterConflict",
    "FilterVerdict",
    "NO",
    "OPEN",
    "PSI_HOST_LIMIT",
    "YES",
    "apply_filters",
    "grow_by_pendants",
]
