"""Toroidal meshes, the ordered color palette and cell-set helpers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

# Sentinel for the incomparable top color. Larger than any finite color so
# ordinary ``>`` comparisons already treat it as the greatest element.
INF = 1 << 60
INF_TOKEN = "INF"

Position = tuple[int, int]
CellSet = frozenset  # frozenset[Position]


class GridError(ValueError):
    """Raised for malformed grids or grid text."""


@dataclass(frozen=True)
class ColorPalette:
    """Colors ``1..k`` plus the sentinel ``INF``.

    ``INF`` is greater than every finite color but not equal to anything,
    itself included.
    """

    k: int

    def __post_init__(self):
        if self.k < 2:
            raise GridError(f"need at least two colors, got k={self.k}")

    def contains(self, c: int) -> bool:
        return c == INF or 1 <= c <= self.k

    @staticmethod
    def equal(a: int, b: int) -> bool:
        return a == b and a != INF

    @staticmethod
    def greater(a: int, b: int) -> bool:
        if a == INF:
            return b != INF
        return a > b


class Rect(NamedTuple):
    rows: int
    cols: int


class TorusGrid:
    """An immutable m x n coloring of the torus.

    ``cells`` is a read-only int64 array; ``INF`` cells are allowed and act as
    static scenery for the dynamics.
    """

    __slots__ = ("cells", "palette")

    def __init__(self, cells, k: int):
        arr = np.array(cells, dtype=np.int64)
        if arr.ndim != 2:
            raise GridError("grid must be two-dimensional")
        m, n = arr.shape
        if m < 3 or n < 3:
            raise GridError(f"torus needs m, n >= 3, got {m}x{n}")
        palette = ColorPalette(int(k))
        finite = arr != INF
        if ((arr[finite] < 1) | (arr[finite] > palette.k)).any():
            raise GridError(f"colors must lie in 1..{palette.k} or be INF")
        arr.setflags(write=False)
        object.__setattr__(self, "cells", arr)
        object.__setattr__(self, "palette", palette)

    def __setattr__(self, name, value):
        raise AttributeError("TorusGrid is immutable")

    @property
    def k(self) -> int:
        return self.palette.k

    @property
    def m(self) -> int:
        return self.cells.shape[0]

    @property
    def n(self) -> int:
        return self.cells.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape

    def __getitem__(self, pos: Position) -> int:
        return int(self.cells[pos])

    def __eq__(self, other):
        if not isinstance(other, TorusGrid):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.cells, other.cells)

    def __hash__(self):
        return hash((self.k, self.cells.shape, self.cells.tobytes()))

    def __repr__(self):
        return f"TorusGrid(m={self.m}, n={self.n}, k={self.k})"

    def with_cells(self, cells) -> TorusGrid:
        return TorusGrid(cells, self.k)

    def is_uniform(self, color: int | None = None) -> bool:
        c = self.k if color is None else color
        return bool((self.cells == c).all())

    def positions(self) -> Iterable[Position]:
        for i in range(self.m):
            for j in range(self.n):
                yield (i, j)


def neighbors(g: TorusGrid, i: int, j: int) -> list[Position]:
    """Up, down, left, right neighbors of ``(i, j)`` with wraparound."""
    m, n = g.shape
    if not (0 <= i < m and 0 <= j < n):
        raise IndexError(f"position ({i}, {j}) outside {m}x{n} grid")
    return [((i - 1) % m, j), ((i + 1) % m, j), (i, (j - 1) % n), (i, (j + 1) % n)]


def k_set(g: TorusGrid) -> CellSet:
    return cell_set(g, g.k)


def cell_set(g: TorusGrid, color: int) -> CellSet:
    rows, cols = np.nonzero(g.cells == color)
    return frozenset(zip(rows.tolist(), cols.tolist()))


def cyclic_span(indices: Iterable[int], size: int) -> int:
    """Length of the shortest cyclic interval of ``range(size)`` covering ``indices``."""
    occupied = sorted(set(indices))
    if not occupied:
        return 0
    # the complement of the widest empty gap is the tightest cover
    widest_gap = max(
        (occupied[(t + 1) % len(occupied)] - occupied[t] - 1) % size
        for t in range(len(occupied))
    )
    if len(occupied) == size:
        widest_gap = 0
    return size - widest_gap


def bounding_rect(g: TorusGrid, s: Iterable[Position]) -> Rect:
    s = list(s)
    for i, j in s:
        if not (0 <= i < g.m and 0 <= j < g.n):
            raise IndexError(f"position ({i}, {j}) outside {g.m}x{g.n} grid")
    return Rect(cyclic_span((i for i, _ in s), g.m), cyclic_span((j for _, j in s), g.n))


def _token(c: int) -> str:
    return INF_TOKEN if c == INF else str(c)


def format_matrix(rows) -> str:
    return "\n".join(" ".join(_token(int(c)) for c in row) for row in rows)


def serialize_grid(g: TorusGrid, comment: str | None = None) -> str:
    body = format_matrix(g.cells)
    if comment:
        return f"# {comment}\n{body}\n"
    return body + "\n"


def parse_matrix(text: str) -> list[list[int]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        row = []
        for tok in line.split():
            if tok == INF_TOKEN:
                row.append(INF)
                continue
            try:
                row.append(int(tok))
            except ValueError:
                raise GridError(f"line {lineno}: bad token {tok!r}") from None
        rows.append(row)
    if not rows:
        raise GridError("empty grid")
    if any(len(r) != len(rows[0]) for r in rows):
        raise GridError("ragged rows")
    return rows


def parse_grid(text: str, k: int) -> TorusGrid:
    """Parse whitespace-separated rows; ``INF`` is spelled literally and a
    leading ``#`` line is treated as a comment."""
    return TorusGrid(parse_matrix(text), k)


def read_grid(path, k: int) -> TorusGrid:
    with open(path, encoding="ascii") as fh:
        return parse_grid(fh.read(), k)
