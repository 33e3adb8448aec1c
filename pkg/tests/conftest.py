import ast
from itertools import permutations
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import strategies as st

from pcomp.graph import Graph
from pcomp.matrix import BinaryMatrix

DATA = Path(__file__).parent / "data"


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def brute_canon(n: int, edges) -> tuple:
    """Smallest sorted edge list over all relabellings (tiny n only)."""
    return min(
        tuple(sorted(tuple(sorted((pm[u], pm[v]))) for u, v in edges))
        for pm in permutations(range(n))
    )


def load_upsilon_table() -> dict[tuple[int, tuple], list[int]]:
    table = {}
    for line in (DATA / "upsilon_small.txt").read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        n, rest = line.split(" ", 1)
        cut = rest.index("]") + 1
        edges = tuple(tuple(e) for e in ast.literal_eval(rest[:cut]))
        table[(int(n), edges)] = ast.literal_eval(rest[cut:].strip())
    return table


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


@st.composite
def square_matrices(draw, min_n: int = 1, max_n: int = 7):
    n = draw(st.integers(min_n, max_n))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n))
    return BinaryMatrix(tuple(rows), n)


@st.composite
def matrices(draw, max_rows: int = 7, max_cols: int = 7):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = draw(st.lists(st.integers(0, (1 << c) - 1), min_size=r, max_size=r))
    return BinaryMatrix(tuple(rows), c)


@pytest.fixture(scope="session")
def upsilon_table():
    return load_upsilon_table()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
