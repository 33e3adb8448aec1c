import sys

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from networkx.algorithms import isomorphism as nxiso

from conftest import brute_canon, graphs, to_nx
from pcomp.certificates import cycle_graph, path_graph, star_graph
from pcomp.cover import theta_e
from pcomp.generators import complete_bipartite, enumerate_graphs, kary_tree
from pcomp.graph import Graph, condensation
from pcomp.iso import psi_graph
from pcomp.matrix import p_row_graph
from pcomp.solver import (
    NO,
    OPEN,
    REPORT_FORMAT_VERSION,
    UNKNOWN,
    YES,
    RealizerReport,
    SearchBudget,
    Verdict,
    apply_filters,
    decide,
    format_report,
    format_verdict,
    realizer,
    search_realization,
)
from pcomp.structure import find_induced_path, induced_p3_center_pairs, join_form, quotient_is_star_like


def _all_graphs(max_n):
    for n in range(1, max_n + 1):
        yield from enumerate_graphs(n)


# -- exhaustive search against the brute-force table ------------------------


def test_search_matches_brute_force_table(upsilon_table):
    checked = 0
    for g in _all_graphs(5):
        expected = upsilon_table[(g.n, brute_canon(g.n, g.edges()))]
        got = [p for p in range(1, g.n + 1) if decide(g, p, use_filters=False).status == YES]
        assert got == expected, g.edges()
        checked += 1
    assert checked == 1 + 2 + 4 + 11 + 34


def test_realizer_matches_brute_force_table(upsilon_table):
    for g in _all_graphs(5):
        rep = realizer(g)
        assert sorted(rep.upsilon) == upsilon_table[(g.n, brute_canon(g.n, g.edges()))]
        assert rep.complete


def test_search_returns_realizing_matrix():
    g = cycle_graph(6)
    res = search_realization(g, 2)
    assert res.status == YES and res.nodes > 0
    assert res.matrix.is_square and res.matrix.n_rows == 6
    assert nx.is_isomorphic(to_nx(p_row_graph(res.matrix, 2)), to_nx(g))


def test_search_pins_isolated_rows_to_zero():
    g = path_graph(3).disjoint_union(Graph.empty(2))
    res = search_realization(g, 1)
    assert res.status == YES
    assert res.matrix.rows[3] == res.matrix.rows[4] == 0


@pytest.mark.parametrize("p", [2, 3, 4])
def test_k33_exhausts_quickly(p):
    v = decide(complete_bipartite(3, 3), p, use_filters=False)
    assert v.status == NO and v.reason == "exhausted-search"
    assert v.nodes < 1000


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=5), st.integers(1, 5))
def test_sorted_columns_do_not_change_status(g, p):
    p = min(p, g.n)
    a = search_realization(g, p, sorted_columns=True)
    b = search_realization(g, p, sorted_columns=False)
    assert a.status == b.status
    assert a.nodes <= b.nodes


def test_budget_exhaustion_is_unknown():
    v = decide(complete_bipartite(3, 3), 2, SearchBudget(max_nodes=3), use_filters=False)
    assert v.status == UNKNOWN and v.reason == "budget"
    # about 1.6e5 nodes are needed here; the clock is consulted periodically
    v = decide(kary_tree(3, 2), 8, SearchBudget(timeout=0.05), use_filters=False)
    assert v.status == UNKNOWN and v.elapsed < 5


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_nodes=0)
    with pytest.raises(ValueError):
        SearchBudget(timeout=0)
    with pytest.raises(ValueError):
        SearchBudget(jobs=0)


def test_deterministic_search_is_reproducible():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)])
    a = decide(g, 2, use_filters=False)
    b = decide(g, 2, use_filters=False)
    assert a.status == YES and a.certificate.matrix == b.certificate.matrix


def test_parallel_search_agrees_on_status():
    budget = SearchBudget(jobs=2, deterministic=False)
    for g, p in [(cycle_graph(6), 2), (cycle_graph(6), 4), (complete_bipartite(3, 3), 3)]:
        seq = search_realization(g, p)
        par = search_realization(g, p, budget)
        assert par.status == seq.status
        if par.status == YES:
            assert nx.is_isomorphic(to_nx(p_row_graph(par.matrix, p)), to_nx(g))


def test_never_unknown_up_to_six_vertices():
    for g in _all_graphs(6):
        rep = realizer(g)
        assert rep.complete, g.edges()
        for v in rep.verdicts:
            if v.status == YES:
                assert v.certificate.verified


# -- filters ---------------------------------------------------------------


def _no_hypothesis_holds(g: Graph, p: int, reason: str) -> bool:
    """Re-test the hypothesis a NO filter relied on, independently where possible."""
    h = to_nx(g)
    n = g.n
    if reason == "n-characterization":
        live = [v for v in h if h.degree(v) > 0]
        return p == n and h.subgraph(live).number_of_edges() != len(live) * (len(live) - 1) // 2
    if reason == "join-form-characterization":
        return p == n - 1 and join_form(g) is None and quotient_is_star_like(g) is None
    if reason == "two-induced-P3":
        return p >= n - 2 and induced_p3_center_pairs(g) is not None
    if reason == "diameter-at-least-4":
        return p >= n - 2 and nx.is_connected(h) and nx.diameter(h) >= 4
    if reason == "hole-or-induced-P5":
        return p >= n - 2 and (not nx.is_chordal(h) or find_induced_path(g, 5) is not None)
    if reason == "theta-exceeds-n":
        return p == 1 and theta_e(g) > n
    if reason == "psi-embedding":
        q, _ = condensation(g)
        matcher = nxiso.GraphMatcher(to_nx(psi_graph(n, n - p)), to_nx(q))
        return nx.is_connected(h) and not matcher.subgraph_is_isomorphic()
    if reason in ("condensation-lift", "pendant-lift"):
        return True
    return False


def test_filters_agree_with_search_up_to_six_vertices():
    fired = {}
    for g in _all_graphs(6):
        verdicts = apply_filters(g)
        assert sorted(verdicts) == list(range(1, g.n + 1))
        for p, fv in verdicts.items():
            if fv.status == OPEN:
                continue
            fired[fv.reason] = fired.get(fv.reason, 0) + 1
            assert decide(g, p, use_filters=False).status == fv.status, (g.edges(), p, fv.reason)
            if fv.status == YES:
                assert fv.certificate.verified and fv.certificate.p == p
                assert fv.certificate.graph == g
            else:
                assert _no_hypothesis_holds(g, p, fv.reason), (g.edges(), p, fv.reason)
    # the structural filters all fire somewhere in this range
    for name in ("n-characterization", "join-form-characterization", "two-induced-P3", "clique-cover", "star", "path", "cycle"):
        assert fired.get(name, 0) > 0, name


def test_filter_outcomes_on_named_graphs():
    f = apply_filters(complete_bipartite(3, 3))
    assert {p for p, v in f.items() if v.status == NO} >= {1, 5, 6}
    assert f[1].reason == "theta-exceeds-n"
    f = apply_filters(cycle_graph(7))
    assert {p for p, v in f.items() if v.status == YES} == {1, 2, 3, 4}
    assert all(v.status == NO for p, v in f.items() if p > 4)
    f = apply_filters(star_graph(5))
    assert all(f[p].status == YES for p in range(1, 6))
    assert f[6].status == NO and f[6].reason == "n-characterization"


def test_filters_are_deterministic():
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 6), (6, 2)])
    a = apply_filters(g)
    b = apply_filters(g, _cache={})
    assert {p: (v.status, v.reason) for p, v in a.items()} == {p: (v.status, v.reason) for p, v in b.items()}


# -- verdicts and reports -------------------------------------------------------


def test_verdict_requires_certificate_for_yes():
    with pytest.raises(ValueError):
        Verdict(1, YES, "made-up")
    with pytest.raises(ValueError):
        Verdict(1, "MAYBE", "made-up")


def test_decide_rejects_out_of_range_p():
    with pytest.raises(ValueError):
        decide(path_graph(3), 0)
    with pytest.raises(ValueError):
        decide(path_graph(3), 4)


def test_report_text_format():
    rep = realizer(cycle_graph(5))
    text = format_report(rep)
    lines = text.splitlines()
    assert lines[0] == f"# pcomp report format {REPORT_FORMAT_VERSION}"
    assert lines[-1] == "Upsilon = {1,2}"
    assert sum(line.startswith("p=") for line in lines) == 5
    assert rep.is_interval and not rep.notes


def test_report_kv_format():
    rep = realizer(path_graph(4))
    kv = dict(line.split("=", 1) for line in format_report(rep, "kv").splitlines())
    assert kv["format_version"] == str(REPORT_FORMAT_VERSION)
    assert kv["upsilon"] == "1,2"
    assert kv["p.3.status"] == NO
    assert kv["interval"] == "true"
    with pytest.raises(ValueError):
        format_report(rep, "xml")


def test_format_verdict():
    g = cycle_graph(6)
    v = decide(g, 2)
    assert "YES" in format_verdict(g, v)
    kv = dict(line.split("=", 1) for line in format_verdict(g, v, "kv").splitlines())
    assert kv["status"] == YES and kv["p"] == "2"


def test_non_interval_reports_are_flagged():
    g = Graph.complete(3)
    good = realizer(g)
    assert good.upsilon == frozenset({1, 2, 3})
    verdicts = list(good.verdicts)
    verdicts[1] = Verdict(2, NO, "made-up")
    rep = RealizerReport(g, tuple(verdicts))
    assert not rep.is_interval
    assert rep.upsilon == frozenset({1, 3})
    with pytest.raises(ValueError):
        RealizerReport(g, tuple(verdicts[:2]))


def test_report_sets_are_disjoint():
    rep = realizer(Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]))
    assert not (rep.upsilon & rep.refuted)
    assert rep.upsilon | rep.refuted | rep.unknown == frozenset(range(1, 6))


def test_realizer_notes_non_interval_sets(monkeypatch):
    decide_module = sys.modules["pcomp.solver.decide"]
    real = decide_module.decide

    def fake(g, p, budget=None, **kw):
        v = real(g, p, budget, **kw)
        return Verdict(p, NO, "made-up") if p == 2 else v

    monkeypatch.setattr(decide_module, "decide", fake)
    rep = decide_module.realizer(Graph.complete(3))
    assert rep.upsilon == frozenset({1, 3})
    assert rep.notes == ("NON-INTERVAL realizer found",)
    assert "WARNING: NON-INTERVAL realizer found" in format_report(rep)
