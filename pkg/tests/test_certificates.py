from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import to_nx
from pcomp.certificates import (
    Certificate,
    CertificateError,
    blow_up,
    caterpillar_graph,
    caterpillar_matrix,
    colex_subsets,
    complete_union_matrix,
    condensation_expand,
    cover_certificate,
    cycle_certificate,
    cycle_graph,
    cyclic_matrix,
    format_certificate,
    isolated_augment,
    join_form_graph,
    join_form_matrix,
    normalize_light_rows,
    parse_certificate,
    path_certificate,
    path_graph,
    path_matrix,
    pendant_extension,
    relabel_certificate,
    star_certificate,
    star_condensation_matrix,
    star_graph,
    star_matrix,
    star_matrix_full,
    upsilon_full_matrix,
    verify,
)
from pcomp.checks import CATERPILLAR_ATTACHMENTS, CATERPILLAR_ROWS
from pcomp.graph import Graph, condensation, popcount
from pcomp.matrix import BinaryMatrix, p_row_graph


def independently_verified(cert: Certificate) -> bool:
    """Row graph by plain counting, compared with networkx isomorphism."""
    m = cert.matrix
    if m.n_rows != m.cols or m.n_rows != cert.graph.n:
        return False
    strings = m.to_strings()
    h = nx.Graph()
    h.add_nodes_from(range(m.n_rows))
    for i, j in combinations(range(m.n_rows), 2):
        if sum(a == b == "1" for a, b in zip(strings[i], strings[j])) >= cert.p:
            h.add_edge(i, j)
    return nx.is_isomorphic(h, to_nx(cert.graph))


def partitions(n: int):
    if n == 0:
        yield []
        return

    def walk(left, cap, acc):
        if left == 0:
            yield list(acc)
            return
        for s in range(min(left, cap), 0, -1):
            yield from walk(left - s, s, acc + [s])

    yield from walk(n, n, [])


# -- the reference caterpillar matrix ----------------------------------------


def test_caterpillar_matrix_reproduces_reference_matrix():
    cert = caterpillar_matrix(5, 2, list(CATERPILLAR_ATTACHMENTS))
    assert cert.matrix.to_strings() == list(CATERPILLAR_ROWS)
    assert cert.p == 8 and cert.verified
    assert independently_verified(cert)


def test_reference_caterpillar_shape():
    g = caterpillar_graph(5, list(CATERPILLAR_ATTACHMENTS))
    h = to_nx(g)
    assert g.n == 11 and nx.is_tree(h) and nx.diameter(h) == 4
    assert sorted(d for _, d in h.degree()) == [1] * 8 + [3, 4, 5]


# -- cycles and paths ---------------------------------------------------------


@pytest.mark.parametrize("n", range(4, 13))
def test_cyclic_matrix_row_intersection_facts(n):
    for p in range(1, n - 2):
        rows = cyclic_matrix(p, n).rows
        for r in rows:
            assert popcount(r) == p + 1
        for i, j in combinations(range(n), 2):
            inter = popcount(rows[i] & rows[j])
            if (j - i) % n in (1, n - 1):
                assert inter == p
            else:
                assert inter <= p - 1


@pytest.mark.parametrize("n", range(4, 13))
def test_cycle_and_path_certificates_over_grid(n):
    for p in range(1, n - 2):
        c = cycle_certificate(p, n)
        q = path_certificate(p, n)
        assert c.verified and q.verified
        assert independently_verified(c) and independently_verified(q)
        assert p_row_graph(c.matrix, p) == cycle_graph(n)
        assert p_row_graph(q.matrix, p) == path_graph(n)


def test_cyclic_matrix_small_case():
    assert cyclic_matrix(1, 4).to_strings() == ["1001", "1100", "0110", "0011"]
    assert path_matrix(1, 4).to_strings() == ["1000", "1100", "0110", "0011"]
    assert path_matrix(2, 4).to_strings() == ["1100", "1110", "0111", "0011"]


def test_cycle_and_path_ranges():
    with pytest.raises(ValueError):
        cyclic_matrix(2, 4)
    with pytest.raises(ValueError):
        cyclic_matrix(1, 3)
    with pytest.raises(ValueError):
        path_matrix(3, 5)


@pytest.mark.parametrize("n", range(4, 11))
def test_caterpillar_without_pendants_is_path_matrix(n):
    for t in range(1, n - 2):
        assert caterpillar_matrix(n, t, []).matrix == path_matrix(t, n)
    if n == 4:
        assert caterpillar_matrix(4, 2, []).matrix == path_matrix(2, 4)


def test_caterpillar_grid_up_to_ten():
    for n in range(4, 11):
        ts = list(range(1, n - 2)) + ([2] if n == 4 else [])
        for t in ts:
            for k in range(0, 11 - n):
                for attach in {tuple(sorted((2 + (i * 7 + s) % (n - 2)) for i in range(k))) for s in range(3)}:
                    cert = caterpillar_matrix(n, t, list(attach))
                    assert cert.verified and cert.p == t + k
    assert independently_verified(caterpillar_matrix(6, 2, [2, 3, 5]))


def test_caterpillar_rejects_bad_attachments():
    with pytest.raises(ValueError):
        caterpillar_matrix(5, 2, [1])
    with pytest.raises(ValueError):
        caterpillar_matrix(5, 2, [5])
    with pytest.raises(ValueError):
        caterpillar_matrix(5, 3, [])


# -- stars ----------------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 10))
def test_star_certificates_every_p(n):
    for p in range(1, n + 1):
        cert = star_certificate(n, p)
        assert cert.verified and cert.p == p and cert.order == n + 1
        assert cert.graph == star_graph(n)
        assert independently_verified(cert)


def test_star_matrix_building_blocks():
    full = star_matrix_full(3)
    assert full.to_strings() == ["1111", "0111", "1011", "1101"]
    m = star_matrix(3, 4)
    assert m.to_strings()[-1] == "11111"
    assert p_row_graph(m, 3) == star_graph(4, center=4)
    with pytest.raises(ValueError):
        star_certificate(3, 4)


# -- complete unions, join forms, star quotients -------------------------------


def test_colex_subsets_order():
    assert list(colex_subsets(4, 2)) == [0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]


@pytest.mark.parametrize("n", range(2, 11))
def test_complete_union_grid(n):
    for sizes in partitions(n):
        for p in range(1, n):
            cert = complete_union_matrix(sizes, p)
            assert cert.verified and cert.p == p


@pytest.mark.parametrize("n", range(1, 11))
def test_upsilon_full_grid(n):
    for m in range(n + 1):
        for p in range(1, n + 1):
            assert upsilon_full_matrix(m, n, p).verified


@pytest.mark.parametrize("n", range(2, 11))
def test_join_form_grid(n):
    for n0 in range(n + 1):
        for iso in range(n - n0 + 1):
            for parts in partitions(n - n0 - iso):
                cert = join_form_matrix(n0, parts, iso)
                assert cert.verified and cert.p == n - 1


def test_join_form_graph_layout():
    g = join_form_graph(1, [2, 1], 1)
    assert g.n == 5
    assert g.edges() == [(0, 1), (0, 2), (0, 3), (1, 2)]


@pytest.mark.parametrize("t", range(2, 8))
def test_star_condensation_grid(t):
    for p in range(1, t):
        for center in (0, None):
            assert star_condensation_matrix([1] * t, p, center=center).verified
            sizes = [2] + [1] * (t - 1)
            cert = star_condensation_matrix(sizes, p, center=center)
            assert cert.verified and cert.order == t + 1


# -- extensions -----------------------------------------------------------------


def test_cover_certificate_padding():
    g = path_graph(4)
    cover = [0b0011, 0b0110, 0b1100]
    for p in (1, 2):
        cert = cover_certificate(g, cover, p)
        assert cert.verified and cert.order == 4
    with pytest.raises(ValueError):
        cover_certificate(g, cover, 3)


def test_normalize_light_rows():
    cert = verify(Certificate(BinaryMatrix.from_strings(["111", "111", "000"]), 3, Graph.from_edges(3, [(0, 1)]), ""))
    out = normalize_light_rows(cert)
    assert out.matrix.to_strings() == ["111", "111", "110"]
    assert out.verified


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 8), st.data())
def test_pendant_extension_preserves_old_graph(n, data):
    p = data.draw(st.integers(1, n - 3))
    cert = path_certificate(p, n)
    v = data.draw(st.integers(0, n - 1))
    ext = pendant_extension(cert, v)
    assert ext.verified and ext.p == p
    g = p_row_graph(ext.matrix, p)
    assert g.induced_subgraph(list(range(n))) == p_row_graph(cert.matrix, p)
    assert g.neighbors(n) == [v]


def test_pendant_extension_chain_builds_tree():
    cert = path_certificate(2, 6)
    for v in (1, 2, 6, 3):
        cert = pendant_extension(cert, v)
    assert cert.verified and cert.order == 10
    assert nx.is_tree(to_nx(cert.graph))


def test_isolated_augment_shifts_p():
    base = cycle_certificate(1, 5)
    for k in range(4):
        for i in range(k + 1):
            cert = isolated_augment(base, k, i)
            assert cert.verified and cert.p == 1 + i and cert.order == 5 + k


def test_condensation_expand_blows_up_classes():
    base = cycle_certificate(2, 6)
    sizes = [1, 2, 1, 3, 1, 1]
    cert = condensation_expand(base, sizes)
    assert cert.verified and cert.order == 9
    q, part = condensation(cert.graph)
    assert q.n == 6 and sorted(part.sizes) == sorted(sizes)
    shifted = condensation_expand(base, sizes, shift=3)
    assert shifted.verified and shifted.p == 5


def test_condensation_expand_rejects_light_repeated_rows():
    cert = verify(Certificate(BinaryMatrix.from_strings(["10", "00"]), 2, Graph.empty(2), ""))
    with pytest.raises(CertificateError):
        condensation_expand(cert, [2, 1])


def test_blow_up():
    g = blow_up(path_graph(2), [2, 3])
    assert g == Graph.complete(5)
    g = blow_up(Graph.empty(2), [2, 1])
    assert g.edges() == [(0, 1)]


def test_extensions_require_verified_input():
    raw = Certificate(cyclic_matrix(1, 4), 1, cycle_graph(4), "")
    for fn in (lambda c: pendant_extension(c, 0), lambda c: isolated_augment(c, 1, 0), lambda c: condensation_expand(c, [1] * 4)):
        with pytest.raises(CertificateError):
            fn(raw)


# -- verification and text format --------------------------------------------


def test_verify_detects_tampering():
    cert = cycle_certificate(1, 6)
    rows = list(cert.matrix.rows)
    rows[0] ^= 0b1
    bad = verify(Certificate(BinaryMatrix(tuple(rows), 6), 1, cert.graph, "tampered", verified=True))
    assert not bad.verified


def test_verify_requires_square_matrix_of_order_n():
    g = path_graph(2)
    m = BinaryMatrix.from_strings(["1", "1"])
    assert p_row_graph(m, 1) == g
    assert not verify(Certificate(m, 1, g, "")).verified


def test_verify_accepts_isomorphic_labelling():
    cert = cycle_certificate(1, 5)
    g = Graph.from_edges(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)])
    assert verify(Certificate(cert.matrix, 1, g, "")).verified
    relabelled = relabel_certificate(cert, g)
    assert p_row_graph(relabelled.matrix, 1) == g


def test_certificate_text_round_trip():
    cert = caterpillar_matrix(5, 2, list(CATERPILLAR_ATTACHMENTS))
    text = format_certificate(cert)
    assert "[graph]" in text and "[p]\np 8\n" in text and "[matrix]\n11 11\n" in text
    back = parse_certificate(text)
    assert not back.verified
    again = verify(back)
    assert again.verified
    assert again.matrix == cert.matrix and again.graph == cert.graph
    assert again.provenance == cert.provenance


@pytest.mark.parametrize(
    "text",
    [
        "[graph]\n2 0\n[p]\np 1\n[matrix]\n2 2\n10\n01\n",
        "junk\n[graph]\n2 0\n",
        "[graph]\n2 0\n[p]\nq 1\n[matrix]\n2 2\n10\n01\n[provenance]\n\n",
        "[graph]\n2 0\n[graph]\n2 0\n",
    ],
)
def test_certificate_parse_errors(text):
    with pytest.raises(CertificateError):
        parse_certificate(text)
