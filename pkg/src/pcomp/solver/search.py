"""Exhaustive search for a square matrix whose p-row graph is a given graph.

Rows are assigned one homogeneous class at a time.  Homogeneous vertices
share a row and isolated vertices get the zero row, so only one row per
non-isolated class is searched.  Columns are kept in non-increasing order
(as bit strings read down the assigned rows): the columns that agree on all
rows so far form contiguous blocks, and a new row may only fill a prefix of
each block.  Every matrix is column-equivalent to exactly one such matrix,
so exhausting this space proves that no realization exists.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from pcomp.graph import Graph, condensation, popcount
from pcomp.matrix import BinaryMatrix

YES, NO, UNKNOWN = "YES", "NO", "UNKNOWN"


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 10**8
    timeout: float = 60.0
    jobs: int = 1
    deterministic: bool = True

    def __post_init__(self):
        if self.max_nodes < 1 or self.timeout <= 0 or self.jobs < 1:
            raise ValueError("search limits must be positive")


@dataclass(frozen=True)
class SearchResult:
    status: str
    matrix: BinaryMatrix | None
    nodes: int
    elapsed: float


class _BudgetExceeded(Exception):
    pass


class _Problem:
    """Class-level constraints for realizing ``g`` at ``p`` with n columns."""

    def __init__(self, g: Graph, p: int):
        self.g = g
        self.p = p
        self.n = g.n
        q, part = condensation(g)
        self.partition = part
        reps = part.representatives
        live = [c for c in range(q.n) if part.sizes[c] > 1 or g.adj[reps[c]]]
        degs = q.degrees()
        live.sort(key=lambda c: (-degs[c], c))
        self.classes = live
        self.lower = []
        for c in live:
            v = reps[c]
            simplicial = g.is_clique(g.adj[v])
            self.lower.append(p if simplicial else p + 1)
        # adjacency[i][j] for j < i in search order
        self.adjacent = [[q.has_edge(live[i], live[j]) for j in range(i)] for i in range(len(live))]

    def to_matrix(self, rows: list[int]) -> BinaryMatrix:
        block_of = self.partition.block_of()
        row_of_class = {c: r for c, r in zip(self.classes, rows)}
        return BinaryMatrix(tuple(row_of_class.get(block_of[v], 0) for v in range(self.n)), self.n)


class _Search:
    def __init__(self, problem: _Problem, budget: SearchBudget, sorted_columns: bool = True):
        self.pr = problem
        self.budget = budget
        self.sorted_columns = sorted_columns
        self.nodes = 0
        self.deadline = time.monotonic() + budget.timeout

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _BudgetExceeded
        if self.nodes & 0x3FF == 0 and time.monotonic() > self.deadline:
            raise _BudgetExceeded

    def candidates(self, rows: list[int], blocks: list[tuple[int, int]]) -> list[tuple[int, int, list[tuple[int, int]]]]:
        """Feasible next rows as (weight, mask, refined blocks), by weight then mask."""
        i = len(rows)
        pr = self.pr
        p = pr.p
        lower = pr.lower[i]
        adjacent = pr.adjacent[i]
        if not self.sorted_columns:
            out = []
            for mask in range(1 << pr.n):
                w = popcount(mask)
                if w < lower:
                    continue
                if all((popcount(mask & r) >= p) == adjacent[j] for j, r in enumerate(rows)):
                    out.append((w, mask, blocks))
            out.sort(key=lambda t: (t[0], t[1]))
            return out

        nb = len(blocks)
        inside = [[rows[j] >> start & 1 for start, _ in blocks] for j in range(i)]
        # remaining capacity of each earlier row from block b onwards
        rem = [[0] * (nb + 1) for _ in range(i)]
        for j in range(i):
            acc = 0
            for b in range(nb - 1, -1, -1):
                if inside[j][b]:
                    acc += blocks[b][1]
                rem[j][b] = acc
        total_rem = [0] * (nb + 1)
        for b in range(nb - 1, -1, -1):
            total_rem[b] = total_rem[b + 1] + blocks[b][1]

        out = []
        counts = [0] * nb
        sums = [0] * i

        def walk(b: int, weight: int) -> None:
            if weight + total_rem[b] < lower:
                return
            for j in range(i):
                s = sums[j]
                if adjacent[j]:
                    if s + rem[j][b] < p:
                        return
                elif s >= p:
                    return
            if b == nb:
                mask = 0
                refined = []
                for (start, size), c in zip(blocks, counts):
                    mask |= ((1 << c) - 1) << start
                    if c:
                        refined.append((start, c))
                    if c < size:
                        refined.append((start + c, size - c))
                out.append((weight, mask, refined))
                return
            size = blocks[b][1]
            touched = [j for j in range(i) if inside[j][b]]
            for c in range(size + 1):
                counts[b] = c
                for j in touched:
                    sums[j] += c
                walk(b + 1, weight + c)
                for j in touched:
                    sums[j] -= c
            counts[b] = 0

        walk(0, 0)
        out.sort(key=lambda t: (t[0], t[1]))
        return out

    def run(self, rows: list[int], blocks: list[tuple[int, int]]) -> list[int] | None:
        self._tick()
        if len(rows) == len(self.pr.classes):
            return list(rows)
        for _, mask, refined in self.candidates(rows, blocks):
            rows.append(mask)
            found = self.run(rows, refined)
            if found is not None:
                return found
            rows.pop()
        return None


def _initial_blocks(n: int) -> list[tuple[int, int]]:
    return [(0, n)] if n else []


def _run_branch(args):
    g, p, budget, sorted_columns, prefix, blocks = args
    search = _Search(_Problem(g, p), budget, sorted_columns)
    try:
        found = search.run(list(prefix), blocks)
    except _BudgetExceeded:
        return UNKNOWN, None, search.nodes
    return (YES if found is not None else NO), found, search.nodes


def search_realization(
    g: Graph, p: int, budget: SearchBudget | None = None, sorted_columns: bool = True
) -> SearchResult:
    """Decide by exhaustion whether ``g`` is the p-row graph of a square matrix of order n.

    ``sorted_columns=False`` drops the column-order restriction and tries
    every row mask; it exists to cross-check the reduction on small inputs.
    """
    if not 1 <= p <= g.n:
        raise ValueError(f"p must lie in 1..{g.n}")
    budget = budget or SearchBudget()
    start = time.monotonic()
    problem = _Problem(g, p)
    blocks = _initial_blocks(g.n)

    if budget.jobs > 1 and not budget.deterministic and problem.classes:
        top = _Search(problem, budget, sorted_columns).candidates([], blocks)
        tasks = [(g, p, budget, sorted_columns, [mask], refined) for _, mask, refined in top]
        nodes = 1
        statuses = []
        with ProcessPoolExecutor(max_workers=budget.jobs) as pool:
            for status, found, used in pool.map(_run_branch, tasks):
                nodes += used
                statuses.append(status)
                if status == YES:
                    pool.shutdown(wait=False, cancel_futures=True)
                    return SearchResult(YES, problem.to_matrix(found), nodes, time.monotonic() - start)
        status = UNKNOWN if UNKNOWN in statuses else NO
        return SearchResult(status, None, nodes, time.monotonic() - start)

    search = _Search(problem, budget, sorted_columns)
    try:
        found = search.run([], blocks)
    except _BudgetExceeded:
        return SearchResult(UNKNOWN, None, search.nodes, time.monotonic() - start)
    if found is None:
        return SearchResult(NO, None, search.nodes, time.monotonic() - start)
    return SearchResult(YES, problem.to_matrix(found), search.nodes, time.monotonic() - start)
