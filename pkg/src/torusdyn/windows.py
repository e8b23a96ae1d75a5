"""Corner windows bordered by INF and the arrival-time recurrence.

A window is cut out of the torus next to the k-colored first row and first
column. NE, SW and SE windows touch the k row/column through the wraparound,
so each window is first reflected into north-west orientation: local row 0
and local column 0 are the k border, local indices grow away from it, and an
INF row and column close the window on the far side.

In that orientation the predicted number of rounds until cell (i, j) shows k is

    M(i, j) = max(M(i, j-1), M(i-1, j)) + k - color(i, j),   M(0, .) = M(., 0) = 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .engine import first_arrival
from .grid import INF, TorusGrid, format_matrix


class Corner(enum.Enum):
    NW = "nw"
    NE = "ne"
    SW = "sw"
    SE = "se"


class WindowError(ValueError):
    pass


@dataclass(frozen=True)
class CornerWindow:
    corner: Corner
    i_star: int
    j_star: int
    grid: TorusGrid

    def __post_init__(self):
        m, n = self.grid.shape
        if not (0 < self.i_star < m and 0 < self.j_star < n):
            raise WindowError(f"need 0 < i* < {m} and 0 < j* < {n}")

    def local_rows(self) -> list[int]:
        """Torus rows of the window, ordered away from the k border row."""
        m, i = self.grid.m, self.i_star
        if self.corner in (Corner.NW, Corner.NE):
            return list(range(i))
        return [0] + list(range(m - 1, i, -1))

    def local_cols(self) -> list[int]:
        n, j = self.grid.n, self.j_star
        if self.corner in (Corner.NW, Corner.SW):
            return list(range(j))
        return [0] + list(range(n - 1, j, -1))

    def local(self) -> np.ndarray:
        """Window colors in north-west orientation, without the INF border."""
        return self.grid.cells[np.ix_(self.local_rows(), self.local_cols())].copy()

    def augmented(self) -> np.ndarray:
        w = self.local()
        out = np.full((w.shape[0] + 1, w.shape[1] + 1), INF, dtype=np.int64)
        out[:-1, :-1] = w
        return out


@dataclass
class MTable:
    """Rounds-to-k per window cell, in torus orientation.

    ``values[a, b]`` belongs to torus cell ``(rows[a], cols[b])``; rows and
    columns run in increasing torus order, wrapping onto the k border for the
    NE/SW/SE corners.
    """

    values: np.ndarray
    rows: list[int]
    cols: list[int]

    def format(self) -> str:
        return format_matrix(self.values) + "\n"


def _to_torus_orientation(corner: Corner, local: np.ndarray, rows, cols) -> MTable:
    if corner in (Corner.SW, Corner.SE):
        local, rows = local[::-1], rows[::-1]
    if corner in (Corner.NE, Corner.SE):
        local, cols = local[:, ::-1], cols[::-1]
    return MTable(np.ascontiguousarray(local), list(rows), list(cols))


@dataclass
class HypothesisReport:
    ok: bool
    failures: list[str] = field(default_factory=list)


def _hypotheses(w: np.ndarray, k: int) -> list[str]:
    fails = []
    I, J = w.shape
    if (w == INF).any():
        fails.append("interior: INF cell inside the window")
    if not (w[0, :] == k).all():
        fails.append("border: first row not all k")
    if not (w[:, 0] == k).all():
        fails.append("border: first column not all k")
    for i in range(1, I):
        for j in range(1, J - 1):
            if w[i, j] < w[i, j + 1]:
                fails.append(f"row-chain: ({i},{j})={w[i, j]} < ({i},{j + 1})={w[i, j + 1]}")
    for j in range(1, J):
        for i in range(1, I - 1):
            if w[i, j] < w[i + 1, j]:
                fails.append(f"col-chain: ({i},{j})={w[i, j]} < ({i + 1},{j})={w[i + 1, j]}")
    # each interior anti-diagonal must strictly decrease toward the lower left;
    # two k cells may sit on one, as in the 2x2 window requirement
    for i in range(1, I - 1):
        for j in range(2, J):
            if not (w[i, j] > w[i + 1, j - 1] or w[i, j] == w[i + 1, j - 1] == k):
                fails.append(
                    f"anti-diagonal: ({i},{j})={w[i, j]} <= ({i + 1},{j - 1})={w[i + 1, j - 1]}"
                )
    return fails


def check_window_hypotheses(win: CornerWindow) -> HypothesisReport:
    """Border, monotone chains and strict anti-diagonals, evaluated in the
    window's north-west orientation. Cell names in failures are local."""
    fails = _hypotheses(win.local(), win.grid.k)
    return HypothesisReport(not fails, fails)


def _recurrence(w: np.ndarray, k: int) -> np.ndarray:
    I, J = w.shape
    M = np.zeros((I, J), dtype=np.int64)
    for i in range(1, I):
        for j in range(1, J):
            M[i, j] = max(M[i, j - 1], M[i - 1, j]) + k - w[i, j]
    return M


def m_table(win: CornerWindow) -> MTable:
    report = check_window_hypotheses(win)
    if not report.ok:
        raise WindowError("window hypotheses violated: " + "; ".join(report.failures))
    local = _recurrence(win.local(), win.grid.k)
    return _to_torus_orientation(win.corner, local, win.local_rows(), win.local_cols())


@dataclass
class WindowCheck:
    match: bool
    predicted: MTable
    simulated: MTable


def verify_window_prediction(win: CornerWindow) -> WindowCheck:
    """Run StubSM on the INF-bordered window alone and compare each cell's
    first round at color k with ``m_table``."""
    predicted = m_table(win)
    aug = win.augmented()
    I, J = aug.shape[0] - 1, aug.shape[1] - 1
    budget = I * J * (win.grid.k - 1) + 1
    first, settled = first_arrival(aug, win.grid.k, budget)
    if not settled:
        raise WindowError("window simulation did not settle within its budget")
    simulated = _to_torus_orientation(win.corner, first[:I, :J], win.local_rows(), win.local_cols())
    return WindowCheck(bool(np.array_equal(predicted.values, simulated.values)), predicted, simulated)


def theorem_windows(g: TorusGrid) -> list[CornerWindow]:
    """The four corner windows used to cover a first-row-and-column dynamo.

    Windows whose split indices fall outside the torus (m = 3) are left out.
    """
    hm, hn = math.ceil(g.m / 2), math.ceil(g.n / 2)
    splits = [
        (Corner.NW, hm - 1, hn),
        (Corner.NE, hm - 1, hn - 1),
        (Corner.SW, hm + 1, hn),
        (Corner.SE, hm + 1, hn - 1),
    ]
    return [
        CornerWindow(c, i, j, g) for c, i, j in splits if 0 < i < g.m and 0 < j < g.n
    ]
