"""Blocking structures: h-blocks, non-k-blocks, diagonal window clashes and the
reduction of a multi-colored torus to black and white."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .engine import neighbor_stack
from .grid import INF, GridError, Rect, TorusGrid, bounding_rect

H_BLOCK_DEGREE = 2
NON_K_BLOCK_DEGREE = 3


def peel(mask: np.ndarray, degree: int) -> np.ndarray:
    """Largest sub-mask in which every cell has ``degree`` or more neighbors
    inside it. Works on stacks of masks (last two axes are the torus)."""
    alive = mask.copy()
    while True:
        inside = sum(nb.astype(np.int8) for nb in neighbor_stack(alive))
        keep = alive & (inside >= degree)
        if np.array_equal(keep, alive):
            return alive
        alive = keep


def components(mask: np.ndarray) -> list[frozenset]:
    """4-connected components of a 2-D mask on the torus, in row-major order
    of their first cell."""
    m, n = mask.shape
    seen = np.zeros_like(mask, dtype=bool)
    out = []
    for i0, j0 in zip(*np.nonzero(mask)):
        if seen[i0, j0]:
            continue
        comp, stack = [], [(int(i0), int(j0))]
        seen[i0, j0] = True
        while stack:
            i, j = stack.pop()
            comp.append((i, j))
            for p in (((i - 1) % m, j), ((i + 1) % m, j), (i, (j - 1) % n), (i, (j + 1) % n)):
                if mask[p] and not seen[p]:
                    seen[p] = True
                    stack.append(p)
        out.append(frozenset(comp))
    return out


def find_h_blocks(g: TorusGrid, h: int) -> list[frozenset]:
    return components(peel(g.cells == h, H_BLOCK_DEGREE))


def non_k_mask(cells: np.ndarray, k: int) -> np.ndarray:
    return (cells != k) & (cells != INF)


def find_non_k_blocks(g: TorusGrid) -> list[frozenset]:
    return components(peel(non_k_mask(g.cells, g.k), NON_K_BLOCK_DEGREE))


@dataclass
class BlockReport:
    h_blocks: list[tuple[int, frozenset, Rect]] = field(default_factory=list)
    non_k_blocks: list[tuple[frozenset, Rect]] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [_block_line(str(h), cells, rect) for h, cells, rect in self.h_blocks]
        out += [_block_line("non-k", cells, rect) for cells, rect in self.non_k_blocks]
        return out

    def format(self) -> str:
        return "".join(line + "\n" for line in self.lines())


def _block_line(label, cells, rect):
    listed = ";".join(f"({i},{j})" for i, j in sorted(cells))
    return f"h={label} size={len(cells)} rect={rect.rows}x{rect.cols} cells={listed}"


def block_report(g: TorusGrid, colors=None, non_k: bool = True) -> BlockReport:
    """Maximal h-blocks for each color in ``colors`` (default ``1..k``) and,
    unless ``non_k`` is false, the maximal non-k-blocks."""
    report = BlockReport()
    for h in colors if colors is not None else range(1, g.k + 1):
        for cells in find_h_blocks(g, h):
            report.h_blocks.append((h, cells, bounding_rect(g, cells)))
    if non_k:
        for cells in find_non_k_blocks(g):
            report.non_k_blocks.append((cells, bounding_rect(g, cells)))
    return report


@dataclass(frozen=True)
class Condition:
    blocked: bool
    reason: str = ""

    @property
    def ok(self) -> bool:
        return not self.blocked

    def __str__(self):
        return f"BLOCKED({self.reason})" if self.blocked else "OK"


def necessary_condition(g: TorusGrid) -> Condition:
    """BLOCKED when the initial grid already holds an h-block (h != k) or a
    non-k-block, which rules out a dynamo. OK says nothing either way."""
    for h in range(1, g.k):
        blocks = find_h_blocks(g, h)
        if blocks:
            return Condition(True, f"{h}-block of size {len(blocks[0])}")
    blocks = find_non_k_blocks(g)
    if blocks:
        return Condition(True, f"non-k-block of size {len(blocks[0])}")
    return Condition(False)


def blocked_mask(stack: np.ndarray, k: int) -> np.ndarray:
    """Vectorized ``necessary_condition(...).blocked`` over a stack of grids."""
    blocked = np.zeros(stack.shape[:-2], dtype=bool)
    for h in range(1, k):
        blocked |= peel(stack == h, H_BLOCK_DEGREE).any(axis=(-2, -1))
    blocked |= peel(non_k_mask(stack, k), NON_K_BLOCK_DEGREE).any(axis=(-2, -1))
    return blocked


def window_constraint_violations(g: TorusGrid) -> list[tuple[int, int]]:
    """Top-left corners of the 2x2 windows (with wraparound) whose diagonal or
    anti-diagonal carries two equal colors other than k."""
    c, k = g.cells, g.k
    below = np.roll(c, -1, axis=0)
    diag = np.roll(below, -1, axis=1)  # (i+1, j+1)
    right = np.roll(c, -1, axis=1)  # (i, j+1)

    def clash(x, y):
        return (x == y) & (x != k) & (x != INF)

    bad = clash(c, diag) | clash(right, below)
    return [(int(i), int(j)) for i, j in zip(*np.nonzero(bad))]


def phi(g: TorusGrid) -> TorusGrid:
    """Collapse colors 1..k-1 to white (1) and k to black (2)."""
    if (g.cells == INF).any():
        raise GridError("phi is undefined on INF cells")
    return TorusGrid(np.where(g.cells == g.k, 2, 1), 2)
