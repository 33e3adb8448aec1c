"""Binary matrices with rows stored as column bitmasks, p-row graphs and the digraph bridge.

Bit ``j`` of a row mask is the entry in column ``j`` (0-indexed).  In the
text format column 0 is the leftmost character.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from pcomp.graph import Graph, bits, popcount


class MatrixFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class BinaryMatrix:
    rows: tuple[int, ...]
    cols: int

    def __post_init__(self):
        if len(self.rows) < 1:
            raise ValueError("a matrix needs at least one row")
        if self.cols < 0:
            raise ValueError("negative column count")
        limit = 1 << self.cols
        for i, r in enumerate(self.rows):
            if r < 0 or r >= limit:
                raise ValueError(f"row {i} has entries outside {self.cols} columns")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "BinaryMatrix":
        if not entries:
            raise ValueError("a matrix needs at least one row")
        cols = len(entries[0])
        rows = []
        for i, row in enumerate(entries):
            if len(row) != cols:
                raise ValueError(f"row {i} has {len(row)} entries, expected {cols}")
            mask = 0
            for j, x in enumerate(row):
                if x not in (0, 1):
                    raise ValueError(f"entry ({i},{j}) is not 0/1")
                if x:
                    mask |= 1 << j
            rows.append(mask)
        return cls(tuple(rows), cols)

    @classmethod
    def from_strings(cls, lines: Iterable[str]) -> "BinaryMatrix":
        return cls.from_lists([[int(ch) for ch in line.strip()] for line in lines])

    @classmethod
    def from_column_sets(cls, n_rows: int, columns: Sequence[Iterable[int]]) -> "BinaryMatrix":
        """Column ``j`` has 1s exactly in the rows listed in ``columns[j]``."""
        rows = [0] * n_rows
        for j, col in enumerate(columns):
            for i in col:
                rows[i] |= 1 << j
        return cls(tuple(rows), len(columns))

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.cols

    @property
    def is_square(self) -> bool:
        return len(self.rows) == self.cols

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.cols)] for r in self.rows]

    def to_strings(self) -> list[str]:
        return ["".join(str(r >> j & 1) for j in range(self.cols)) for r in self.rows]

    def row_weights(self) -> list[int]:
        return [popcount(r) for r in self.rows]

    def column(self, j: int) -> int:
        """Column ``j`` as a bitmask over rows."""
        return sum(1 << i for i, r in enumerate(self.rows) if r >> j & 1)

    def permute_columns(self, order: Sequence[int]) -> "BinaryMatrix":
        """New column ``k`` is old column ``order[k]``."""
        rows = []
        for r in self.rows:
            rows.append(sum(1 << k for k, j in enumerate(order) if r >> j & 1))
        return BinaryMatrix(tuple(rows), self.cols)

    def permute_rows(self, order: Sequence[int]) -> "BinaryMatrix":
        """New row ``k`` is old row ``order[k]``."""
        return BinaryMatrix(tuple(self.rows[i] for i in order), self.cols)

    def select_rows(self, indices: Sequence[int]) -> "BinaryMatrix":
        return BinaryMatrix(tuple(self.rows[i] for i in indices), self.cols)

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(tuple(self.column(j) for j in range(self.cols)), len(self.rows))

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


def lam(m: BinaryMatrix, row: int) -> frozenset[int]:
    """Columns (0-indexed) holding a 1 in ``row``."""
    if not 0 <= row < m.n_rows:
        raise IndexError(f"row {row} out of range")
    return frozenset(bits(m.rows[row]))


def p_row_graph(m: BinaryMatrix, p: int) -> Graph:
    """Rows i != j adjacent iff they share 1s in at least ``p`` columns."""
    if p < 1:
        raise ValueError("p must be positive")
    rows = m.rows
    adj = [0] * len(rows)
    for i in range(len(rows)):
        ri = rows[i]
        if popcount(ri) < p:
            continue
        for j in range(i + 1, len(rows)):
            if popcount(ri & rows[j]) >= p:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(len(rows), tuple(adj))


# -- constructors --------------------------------------------------------


def ones(m: int, n: int) -> BinaryMatrix:
    return BinaryMatrix(((1 << n) - 1,) * m, n)


def zeros(m: int, n: int) -> BinaryMatrix:
    return BinaryMatrix((0,) * m, n)


def identity(n: int) -> BinaryMatrix:
    return BinaryMatrix(tuple(1 << i for i in range(n)), n)


def hstack(*blocks: BinaryMatrix) -> BinaryMatrix:
    if not blocks:
        raise ValueError("nothing to stack")
    height = blocks[0].n_rows
    for b in blocks:
        if b.n_rows != height:
            raise ValueError(f"row counts differ: {b.n_rows} vs {height}")
    rows = [0] * height
    shift = 0
    for b in blocks:
        for i, r in enumerate(b.rows):
            rows[i] |= r << shift
        shift += b.cols
    return BinaryMatrix(tuple(rows), shift)


def vstack(*blocks: BinaryMatrix) -> BinaryMatrix:
    if not blocks:
        raise ValueError("nothing to stack")
    width = blocks[0].cols
    for b in blocks:
        if b.cols != width:
            raise ValueError(f"column counts differ: {b.cols} vs {width}")
    return BinaryMatrix(tuple(r for b in blocks for r in b.rows), width)


def assemble(grid: Sequence[Sequence[BinaryMatrix]]) -> BinaryMatrix:
    """Block matrix from a grid of blocks; raises ValueError when sizes do not conform."""
    return vstack(*(hstack(*row) for row in grid))


def append_columns(m: BinaryMatrix, n_ones: int, n_zeros: int) -> BinaryMatrix:
    """Append ``n_ones`` all-one columns, then ``n_zeros`` all-zero columns."""
    if n_ones < 0 or n_zeros < 0:
        raise ValueError("column counts must be nonnegative")
    block = ((1 << n_ones) - 1) << m.cols
    return BinaryMatrix(tuple(r | block for r in m.rows), m.cols + n_ones + n_zeros)


def replace_entry(m: BinaryMatrix, i: int, j: int, value: int) -> BinaryMatrix:
    if not (0 <= i < m.n_rows and 0 <= j < m.cols):
        raise IndexError(f"entry ({i},{j}) out of range")
    rows = list(m.rows)
    if value:
        rows[i] |= 1 << j
    else:
        rows[i] &= ~(1 << j)
    return BinaryMatrix(tuple(rows), m.cols)


# -- digraph bridge ------------------------------------------------------


@dataclass(frozen=True)
class Digraph:
    """Digraph on 0..n-1; ``out[v]`` is the out-neighbour mask of v (loops allowed)."""

    n: int
    out: tuple[int, ...]

    def __post_init__(self):
        if len(self.out) != self.n:
            raise ValueError("out-neighbour list length does not match n")
        limit = 1 << self.n
        for v, o in enumerate(self.out):
            if o < 0 or o >= limit:
                raise ValueError(f"arc from {v} leaves the vertex range")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        out = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) out of range")
            out[u] |= 1 << v
        return cls(n, tuple(out))

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.out[u])]


def matrix_to_digraph(m: BinaryMatrix) -> Digraph:
    """Arc (i, j) iff entry (i, j) is 1."""
    if not m.is_square:
        raise ValueError(f"matrix is {m.n_rows}x{m.cols}, not square")
    return Digraph(m.n_rows, m.rows)


def digraph_p_competition(d: Digraph, p: int) -> Graph:
    """C_p(D): x != y adjacent iff some p distinct vertices a have arcs x->a and y->a."""
    if p < 1:
        raise ValueError("p must be positive")
    adj = [0] * d.n
    for x in range(d.n):
        for y in range(x + 1, d.n):
            common = [a for a in range(d.n) if d.out[x] >> a & 1 and d.out[y] >> a & 1]
            if len(common) >= p:
                adj[x] |= 1 << y
                adj[y] |= 1 << x
    return Graph(d.n, tuple(adj))


# -- text format -----------------------------------------------------------


def parse_matrix(text: str) -> BinaryMatrix:
    """Parse "r c" followed by r lines of c characters from {0,1}."""
    lines = [(i, line.strip()) for i, line in enumerate(text.splitlines(), start=1)]
    lines = [(i, line) for i, line in lines if line and not line.startswith("#")]
    if not lines:
        raise MatrixFormatError("empty input")
    lineno, header = lines[0]
    fields = header.split()
    if len(fields) != 2:
        raise MatrixFormatError("header must be 'r c'", lineno)
    try:
        r, c = int(fields[0]), int(fields[1])
    except ValueError:
        raise MatrixFormatError("header must hold two integers", lineno) from None
    if r < 1 or c < 0:
        raise MatrixFormatError("need r >= 1 and c >= 0", lineno)
    body = lines[1:]
    if c == 0:
        # zero-width rows are empty lines, which the comment filter drops
        return BinaryMatrix((0,) * r, 0)
    if len(body) != r:
        raise MatrixFormatError(f"expected {r} rows, found {len(body)}", lineno)
    rows = []
    for lineno, line in body:
        if len(line) != c or set(line) - {"0", "1"}:
            raise MatrixFormatError(f"row must be {c} characters from {{0,1}}", lineno)
        rows.append(sum(1 << j for j, ch in enumerate(line) if ch == "1"))
    return BinaryMatrix(tuple(rows), c)


def format_matrix(m: BinaryMatrix) -> str:
    return "\n".join([f"{m.n_rows} {m.cols}"] + m.to_strings()) + "\n"
