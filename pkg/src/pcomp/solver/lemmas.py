"""Instance checks for the lighter-pair-in-a-fan property and the tree gap bound it yields."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from pcomp.generators import kary_tree
from pcomp.graph import Graph, diameter, popcount
from pcomp.matrix import BinaryMatrix, p_row_graph
from pcomp.solver.filters import NO, apply_filters
from pcomp.structure import recognize_family


class LemmaPreconditionError(ValueError):
    pass


def verify_increasing_lemma(m: BinaryMatrix, p: int, v: int, fan) -> tuple[int, int]:
    """Return nonadjacent x, y in ``fan`` whose rows are lighter than row ``v``.

    Preconditions, checked on the p-row graph of the square matrix ``m`` of
    order n: the fan is an independent set of 2^r + 1 neighbours of v for
    some r >= 1 with p >= n - r.  Under them such a pair always exists, so
    failing to find one raises ``AssertionError``.
    """
    if not m.is_square:
        raise LemmaPreconditionError("matrix must be square")
    n = m.n_rows
    fan = sorted(set(fan))
    g = p_row_graph(m, p)
    if v in fan or any(not g.has_edge(v, u) for u in fan):
        raise LemmaPreconditionError("every fan vertex must be a neighbour of v")
    if any(g.has_edge(x, y) for x, y in combinations(fan, 2)):
        raise LemmaPreconditionError("fan vertices must be pairwise nonadjacent")
    size = len(fan) - 1
    if size < 2 or size & (size - 1):
        raise LemmaPreconditionError("fan size must be 2^r + 1 with r >= 1")
    r = size.bit_length() - 1
    if p < n - r:
        raise LemmaPreconditionError(f"need p >= n - r = {n - r}")
    weight_v = popcount(m.rows[v])
    for x, y in combinations(fan, 2):
        if popcount(m.rows[x]) < weight_v and popcount(m.rows[y]) < weight_v:
            return x, y
    raise AssertionError("no lighter nonadjacent pair in the fan")


@dataclass(frozen=True)
class GapReport:
    r: int
    vertices: int
    diameter: int
    family: str
    upper_bound: int
    gap: int

    @property
    def holds(self) -> bool:
        return self.gap > self.r


def kary_gap_check(r: int = 1) -> GapReport:
    """Filter-certified bound on max Upsilon for the perfect (2^r+1)-ary tree of height r+1."""
    if r != 1:
        raise ValueError(
            f"r = {r} is out of reach: the tree has {sum((2**r + 1) ** i for i in range(r + 2))} "
            "vertices and only r = 1 is checked"
        )
    t: Graph = kary_tree(2**r + 1, r + 1)
    verdicts = apply_filters(t)
    bound = max((p for p, fv in verdicts.items() if fv.status != NO), default=0)
    return GapReport(r, t.n, int(diameter(t)), recognize_family(t).kind, bound, t.n - bound)
