from itertools import combinations

import pytest

from pcomp.certificates import star_certificate
from pcomp.generators import enumerate_graphs
from pcomp.graph import popcount
from pcomp.matrix import BinaryMatrix
from pcomp.solver import YES, LemmaPreconditionError, kary_gap_check, realizer, verify_increasing_lemma


@pytest.mark.parametrize("leaves, p", [(3, 3), (4, 4), (5, 4), (5, 5), (6, 5)])
def test_lemma_on_star_certificates(leaves, p):
    cert = star_certificate(leaves, p)
    r = 2 if leaves >= 5 else 1
    fan = list(range(1, 2**r + 2))
    x, y = verify_increasing_lemma(cert.matrix, p, 0, fan)
    rows = cert.matrix.rows
    assert x in fan and y in fan and x != y
    assert popcount(rows[x]) < popcount(rows[0]) and popcount(rows[y]) < popcount(rows[0])


def test_lemma_never_contradicted_by_solver_certificates():
    checked = 0
    for n in range(4, 7):
        for g in enumerate_graphs(n):
            rep = realizer(g)
            for v in rep.verdicts:
                if v.status != YES:
                    continue
                m, p = v.certificate.matrix, v.p
                for r in (1, 2):
                    if p < n - r:
                        continue
                    for center in range(n):
                        nbrs = g.neighbors(center)
                        for fan in combinations(nbrs, 2**r + 1):
                            if any(g.has_edge(a, b) for a, b in combinations(fan, 2)):
                                continue
                            verify_increasing_lemma(m, p, center, fan)
                            checked += 1
    assert checked > 0


def test_lemma_preconditions():
    cert = star_certificate(3, 3)
    m = cert.matrix
    with pytest.raises(LemmaPreconditionError):
        verify_increasing_lemma(m, 2, 0, [1, 2, 3])
    with pytest.raises(LemmaPreconditionError):
        verify_increasing_lemma(m, 3, 0, [1, 2])
    with pytest.raises(LemmaPreconditionError):
        verify_increasing_lemma(m, 3, 1, [0, 2, 3])
    with pytest.raises(LemmaPreconditionError):
        verify_increasing_lemma(BinaryMatrix.from_strings(["11", "11", "11"]), 1, 0, [1])
    full = BinaryMatrix.from_strings(["1111"] * 4)
    with pytest.raises(LemmaPreconditionError):
        verify_increasing_lemma(full, 3, 0, [1, 2, 3])


def test_kary_gap_check():
    rep = kary_gap_check(1)
    assert rep.vertices == 13 and rep.diameter == 4 and rep.family == "forest"
    assert rep.upper_bound == 10 and rep.gap == 3 and rep.holds
    with pytest.raises(ValueError):
        kary_gap_check(2)
