"""Self-check suites that recompute known closed forms at small sizes.

Each suite returns a ``SuiteResult`` with the number of checked instances
and a list of failure messages; ``run_suites`` drives them for the CLI.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from pcomp.certificates import (
    Certificate,
    caterpillar_graph,
    caterpillar_matrix,
    complete_union_matrix,
    cycle_graph,
    cyclic_matrix,
    isolated_augment,
    join_form_matrix,
    path_graph,
    path_matrix,
    star_certificate,
    star_condensation_matrix,
    star_graph,
    upsilon_full_matrix,
    verify,
)
from pcomp.cover import CliqueFamily, family_to_matrix, matrix_to_family
from pcomp.generators import complete_bipartite, enumerate_caterpillars, enumerate_graphs
from pcomp.graph import Graph, condensation, diameter, popcount
from pcomp.iso import are_isomorphic, embeds_as_induced_subgraph, psi_graph
from pcomp.matrix import BinaryMatrix, digraph_p_competition, matrix_to_digraph, p_row_graph
from pcomp.solver import NO, YES, SearchBudget, apply_filters, decide, kary_gap_check, realizer

CATERPILLAR_ROWS = (
    "10001111111",
    "11001111111",
    "11100111111",
    "01110111111",
    "00111111111",
    "11001011111",
    "11001101111",
    "11100110111",
    "11100111011",
    "11100111101",
    "01110111110",
)
CATERPILLAR_ATTACHMENTS = (2, 2, 3, 3, 3, 4)

# hexagon 0-1-2-5-4-3 with chord 1-4; the larger graph adds a twin of vertex 2
TWIN_SMALL_EDGES = [(0, 1), (1, 2), (2, 5), (5, 4), (4, 3), (3, 0), (1, 4)]
TWIN_LARGE_EDGES = TWIN_SMALL_EDGES + [(6, 1), (6, 2), (6, 5)]
TWIN_SMALL_ROWS = ("110010", "010011", "010101", "101010", "001011", "001101")


def twin_pair_graphs() -> tuple[Graph, Graph]:
    return Graph.from_edges(6, TWIN_SMALL_EDGES), Graph.from_edges(7, TWIN_LARGE_EDGES)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, ok: bool, message: str) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(message)


def _fmt(values) -> str:
    return "{" + ",".join(map(str, sorted(values))) + "}"


def suite_caterpillar_matrix(max_n: int = 0) -> SuiteResult:
    res = SuiteResult("caterpillar-matrix")
    cert = caterpillar_matrix(5, 2, CATERPILLAR_ATTACHMENTS)
    res.expect(cert.matrix.to_strings() == list(CATERPILLAR_ROWS), "caterpillar_matrix differs from the reference matrix")
    res.expect(cert.p == 8 and cert.verified, "8-row graph is not the caterpillar")
    res.expect(are_isomorphic(p_row_graph(BinaryMatrix.from_strings(CATERPILLAR_ROWS), 8), caterpillar_graph(5, CATERPILLAR_ATTACHMENTS)) is not None,
               "reference matrix does not realize the caterpillar")
    return res


def suite_cycles(max_n: int = 8) -> SuiteResult:
    res = SuiteResult("cycles")
    for n in range(4, max_n + 1):
        rep = realizer(cycle_graph(n))
        res.expect(rep.upsilon == frozenset(range(1, n - 2)), f"C_{n}: got {_fmt(rep.upsilon)}")
    return res


def suite_paths(max_n: int = 8) -> SuiteResult:
    res = SuiteResult("paths")
    for n in range(3, max_n + 1):
        expected = {1, 2} if n <= 4 else set(range(1, n - 2))
        rep = realizer(path_graph(n))
        res.expect(rep.upsilon == frozenset(expected), f"P_{n}: got {_fmt(rep.upsilon)}")
    return res


def suite_stars(max_n: int = 6) -> SuiteResult:
    res = SuiteResult("stars")
    for n in range(2, max_n + 1):
        for p in range(1, n + 1):
            res.expect(star_certificate(n, p).verified, f"K_1,{n} at p={p}: certificate failed")
        rep = realizer(star_graph(n))
        res.expect(rep.upsilon == frozenset(range(1, n + 1)), f"K_1,{n}: got {_fmt(rep.upsilon)}")
    return res


def suite_k33(max_n: int = 0) -> SuiteResult:
    res = SuiteResult("k33")
    g = complete_bipartite(3, 3)
    rep = realizer(g)
    res.expect(rep.upsilon == frozenset() and rep.complete, f"K_3,3: got {_fmt(rep.upsilon)}")
    for p in (2, 3, 4):
        v = decide(g, p, SearchBudget(), use_filters=False)
        res.expect(v.status == NO and v.reason == "exhausted-search", f"K_3,3 at p={p}: search gave {v.status}")
    return res


def suite_caterpillars(max_n: int = 9) -> SuiteResult:
    res = SuiteResult("caterpillars")
    for n in range(3, max_n + 1):
        for t in enumerate_caterpillars(n):
            d = int(diameter(t))
            top = n - 1 if d == 2 else n - 2 if d == 3 else n - 3
            verdicts = apply_filters(t)
            yes = {p for p, v in verdicts.items() if v.status == YES}
            no = {p for p, v in verdicts.items() if v.status == NO}
            res.expect(yes == set(range(1, top + 1)) and no == set(range(top + 1, n + 1)),
                       f"caterpillar {t.edges()}: YES {_fmt(yes)} NO {_fmt(no)}")
    return res


def suite_constructors(max_n: int = 10) -> SuiteResult:
    res = SuiteResult("constructors")
    cyc_n = max(max_n, 12) if max_n >= 10 else max_n
    for n in range(4, cyc_n + 1):
        for p in range(1, n - 2):
            m = cyclic_matrix(p, n)
            rows = m.rows
            res.expect(all(popcount(r) == p + 1 for r in rows), f"M_{p},{n}: row weight")
            for i, j in combinations(range(n), 2):
                gap = min(j - i, n - (j - i))
                inter = popcount(rows[i] & rows[j])
                ok = inter == p if gap == 1 else inter <= p - 1
                res.expect(ok, f"M_{p},{n}: rows {i},{j} share {inter}")
            res.expect(verify(Certificate(m, p, cycle_graph(n), "")).verified, f"M_{p},{n} does not realize C_{n}")
            res.expect(verify(Certificate(path_matrix(p, n), p, path_graph(n), "")).verified, f"M*_{p},{n} does not realize P_{n}")
    res.expect(verify(Certificate(path_matrix(2, 4), 2, path_graph(4), "")).verified, "M*_2,4")
    for n in range(1, max_n):
        for p in range(1, n + 1):
            res.expect(star_certificate(n, p).verified, f"star n={n} p={p}")
    for n in range(4, max_n + 1):
        for t in range(1, n - 2):
            for k in range(0, max_n - n + 1):
                anchors = [2 + (i % (n - 2)) for i in range(k)]
                res.expect(caterpillar_matrix(n, t, anchors).verified, f"caterpillar n={n} t={t} k={k}")
    for k in range(0, max_n - 3):
        res.expect(caterpillar_matrix(4, 2, [2 + i % 2 for i in range(k)]).verified, f"caterpillar (4,2) k={k}")
    for n in range(2, max_n + 1):
        for sizes in _compositions(n):
            for p in range(1, n):
                res.expect(complete_union_matrix(sizes, p).verified, f"complete union {sizes} p={p}")
        for m in range(n + 1):
            for p in range(1, n + 1):
                res.expect(upsilon_full_matrix(m, n, p).verified, f"upsilon_full m={m} n={n} p={p}")
    for n in range(2, max_n + 1):
        for n0 in range(n + 1):
            for m_iso in range(n - n0 + 1):
                rest = n - n0 - m_iso
                for parts in _compositions(rest) if rest else [[]]:
                    res.expect(join_form_matrix(n0, parts, m_iso).verified, f"join form {n0} {parts} {m_iso}")
    for t in range(2, min(max_n, 7) + 1):
        for center in (0, None):
            for p in range(1, t):
                res.expect(star_condensation_matrix([1] * t, p, center=center).verified, f"star condensation t={t} p={p}")
    base = star_certificate(2, 1)
    for k in range(0, 4):
        for i in range(k + 1):
            res.expect(isolated_augment(base, k, i).verified, f"isolated augment k={k} i={i}")
    return res


def _compositions(n: int) -> list[list[int]]:
    """Partitions of n into positive parts, non-increasing."""
    out = []

    def walk(left: int, cap: int, acc: list[int]) -> None:
        if left == 0:
            out.append(list(acc))
            return
        for s in range(min(left, cap), 0, -1):
            acc.append(s)
            walk(left - s, s, acc)
            acc.pop()

    walk(n, n, [])
    return out


def suite_condensation(max_n: int = 7) -> SuiteResult:
    res = SuiteResult("condensation")
    for n in range(2, max_n + 1):
        for g in enumerate_graphs(n, connected=True):
            if g.is_complete():
                continue
            q, _ = condensation(g)
            res.expect(diameter(q) == diameter(g), f"diameter changed for {g.edges()}")
    g1, g2 = twin_pair_graphs()
    res.expect(are_isomorphic(condensation(g2)[0], g1) is not None, "the twin graph does not condense to the small graph")
    return res


def suite_psi(max_n: int = 5) -> SuiteResult:
    res = SuiteResult("psi")
    for n in range(1, max_n + 1):
        for g in enumerate_graphs(n, connected=True):
            q, _ = condensation(g)
            for k in range(n):
                embeds = embeds_as_induced_subgraph(q, psi_graph(n, k)) is not None
                v = decide(g, n - k, use_filters=False)
                res.expect((v.status == YES) == embeds, f"{g.edges()} at p={n - k}: search {v.status}, embedding {embeds}")
    return res


def suite_characterizations(max_n: int = 5) -> SuiteResult:
    res = SuiteResult("characterizations")
    for n in range(1, max_n + 1):
        for g in enumerate_graphs(n):
            live = [v for v in range(n) if g.adj[v]]
            form = g.is_clique(sum(1 << v for v in live))
            rep = realizer(g)
            res.expect((n in rep.upsilon) == form, f"{g.edges()}: n in Upsilon is {n in rep.upsilon}")
            res.expect((rep.upsilon == frozenset(range(1, n + 1))) == form, f"{g.edges()}: Upsilon {_fmt(rep.upsilon)}")
    return res


def suite_tree_gap(max_n: int = 0) -> SuiteResult:
    res = SuiteResult("tree-gap")
    rep = kary_gap_check(1)
    res.expect(rep.vertices == 13 and rep.upper_bound <= 10 and rep.gap >= 3 and rep.holds, f"gap report {rep}")
    return res


def suite_bridge(max_n: int = 8, seed: int = 0, samples: int = 1000) -> SuiteResult:
    res = SuiteResult("bridge")
    rng = random.Random(seed)
    for _ in range(samples):
        n = rng.randint(1, max(1, max_n))
        m = BinaryMatrix(tuple(rng.getrandbits(n) for _ in range(n)), n)
        d = matrix_to_digraph(m)
        for p in range(1, n + 1):
            res.expect(digraph_p_competition(d, p) == p_row_graph(m, p), f"bridge mismatch {m.to_strings()} p={p}")
        g = Graph.empty(n)
        fam = matrix_to_family(m, g)
        res.expect(family_to_matrix(fam, n) == m, "family round trip")
    for n in range(4, 13):
        g = cycle_graph(n)
        for p in range(1, n - 2):
            fam = CliqueFamily.from_sets(g, [[(j + s) % n for s in range(p + 1)] for j in range(n)])
            res.expect(family_to_matrix(fam, n) == cyclic_matrix(p, n), f"family of C_{n} at p={p} is not M_{p},{n}")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "caterpillar-matrix": suite_caterpillar_matrix,
    "cycles": suite_cycles,
    "paths": suite_paths,
    "stars": suite_stars,
    "k33": suite_k33,
    "caterpillars": suite_caterpillars,
    "constructors": suite_constructors,
    "condensation": suite_condensation,
    "psi": suite_psi,
    "characterizations": suite_characterizations,
    "tree-gap": suite_tree_gap,
    "bridge": suite_bridge,
}

DEFAULT_MAX_N = {
    "cycles": 8,
    "paths": 8,
    "stars": 6,
    "caterpillars": 9,
    "constructors": 10,
    "condensation": 7,
    "psi": 5,
    "characterizations": 5,
    "bridge": 8,
}


def run_suites(names: list[str] | None = None, max_n: int | None = None, seed: int = 0) -> list[SuiteResult]:
    results = []
    for name in names or list(SUITES):
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}")
        start = time.monotonic()
        limit = max_n if max_n is not None else DEFAULT_MAX_N.get(name, 0)
        if name == "bridge":
            res = suite_bridge(limit, seed=seed)
        else:
            res = SUITES[name](limit)
        res.elapsed = time.monotonic() - start
        results.append(res)
    return results


__all__ = [
    "CATERPILLAR_ATTACHMENTS",
    "CATERPILLAR_ROWS",
    "SUITES",
    "TWIN_LARGE_EDGES",
    "TWIN_SMALL_EDGES",
    "TWIN_SMALL_ROWS",
    "SuiteResult",
    "run_suites",
    "twin_pair_graphs",
]
