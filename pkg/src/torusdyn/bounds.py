"""Size bounds for dynamos and the grids that attain or illustrate them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .engine import PAIRINGS, neighbor_stack
from .grid import INF, GridError, TorusGrid, parse_grid


def _check_dims(m, n):
    if m < 3 or n < 3:
        raise ValueError(f"torus needs m, n >= 3, got {m}x{n}")


def lower_bound_size(m: int, n: int) -> int:
    _check_dims(m, n)
    return m + n - 2


def upper_bound_size(m: int, n: int) -> int:
    """Size of the strong-irreversible construction, ceil(m/3) * (n + 1)."""
    _check_dims(m, n)
    return math.ceil(m / 3) * (n + 1)


def propnew_bound(m: int, n: int) -> int:
    _check_dims(m, n)
    return math.ceil(m * n / 3)


def rowcol_size(m: int, n: int) -> int:
    _check_dims(m, n)
    return m + n - 1


@dataclass(frozen=True)
class PropnewCheck:
    applies: bool
    bound: int
    offenders: tuple = ()


def _propnew_ok(cells: np.ndarray, k: int) -> np.ndarray:
    """Per-cell test: k-colored (or INF), or two k neighbors with the other two
    different or equal and above the cell."""
    nb = neighbor_stack(cells)
    ok = (cells == k) | (cells == INF)
    for (a, b), (c, d) in PAIRINGS:
        C, D = nb[c], nb[d]
        rest = (C != D) | (C == INF) | (C > cells)
        ok |= (nb[a] == k) & (nb[b] == k) & rest
    return ok


def propnew_check(g: TorusGrid) -> PropnewCheck:
    ok = _propnew_ok(g.cells, g.k)
    offenders = tuple((int(i), int(j)) for i, j in zip(*np.nonzero(~ok)))
    return PropnewCheck(not offenders, propnew_bound(g.m, g.n), offenders)


def random_propnew_grid(m: int, n: int, k: int, rng: np.random.Generator) -> TorusGrid:
    """A random coloring for which ``propnew_check`` applies.

    A random seed set is grown until every other cell touches two of its
    cells; the remaining cells get random colors below k and any cell that
    still breaks the condition is either recolored below its equal pair or
    promoted to k.
    """
    _check_dims(m, n)
    seeds = rng.random((m, n)) < rng.uniform(0.3, 0.6)
    while True:
        kn = sum(np.roll(seeds, s, ax).astype(int) for s in (1, -1) for ax in (0, 1))
        lacking = ~seeds & (kn < 2)
        if not lacking.any():
            break
        i, j = np.argwhere(lacking)[rng.integers(lacking.sum())]
        seeds[i, j] = True
    cells = np.where(seeds, k, rng.integers(1, k, (m, n)))
    while True:
        bad = np.argwhere(~_propnew_ok(cells, k))
        if len(bad) == 0:
            return TorusGrid(cells, k)
        i, j = bad[rng.integers(len(bad))]
        low = _blocking_pair_color(cells, k, i, j)
        if low is not None and low > 1 and rng.random() < 0.7:
            cells[i, j] = rng.integers(1, low)
        else:
            cells[i, j] = k


def _blocking_pair_color(cells, k, i, j):
    m, n = cells.shape
    up, down = cells[(i - 1) % m, j], cells[(i + 1) % m, j]
    left, right = cells[i, (j - 1) % n], cells[i, (j + 1) % n]
    nb = [up, down, left, right]
    for (a, b), (c, d) in PAIRINGS:
        if nb[a] == k and nb[b] == k and nb[c] == nb[d] and nb[c] != k:
            return int(nb[c])
    return None


# -- constructions -----------------------------------------------------------

FIG6 = """\
2 2 1 1 1 1 1 1
2 2 1 1 1 1 1 1
1 1 2 2 1 1 1 1
1 1 2 2 1 2 2 1
1 1 1 1 1 2 2 1
1 1 1 1 1 1 1 1
"""


def gen_fig6() -> TorusGrid:
    """The 6x8 monotone simple-majority dynamo with m + n - 2 black cells."""
    return parse_grid(FIG6, 2)


def gen_fig7(m: int, n: int) -> TorusGrid:
    """Tile the three-row strong-irreversible motif; needs m % 3 == 0, n even."""
    if m < 3 or m % 3 or n < 4 or n % 2:
        raise ValueError(f"motif tiles only m divisible by 3 and even n >= 4, got {m}x{n}")
    cols = np.arange(n)
    motif = np.ones((3, n), dtype=np.int64)
    motif[0, 0] = 2
    motif[1, cols % 2 == 1] = 2
    motif[2, cols % 2 == 0] = 2
    return TorusGrid(np.tile(motif, (m // 3, 1)), 2)


@dataclass(frozen=True)
class RowProfile:
    """Top color ``k`` and row colors r_1..r_{m-1}; row 0 and column 0 are k."""

    k: int
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if len(self.rows) < 2:
            raise ValueError("need at least two non-k rows (m >= 3)")
        if any(not 1 <= r < self.k for r in self.rows):
            raise ValueError(f"row colors must lie in 1..{self.k - 1}")

    @property
    def m(self) -> int:
        return len(self.rows) + 1

    def r(self, i: int) -> int:
        return self.k if i == 0 else self.rows[i - 1]


def gen_rowcol(profile: RowProfile, n: int) -> TorusGrid:
    if n < 3:
        raise ValueError("n must be >= 3")
    cells = np.array([[profile.r(i)] * n for i in range(profile.m)], dtype=np.int64)
    cells[:, 0] = profile.k
    return TorusGrid(cells, profile.k)


@dataclass
class ConditionReport:
    ok: bool
    failures: list[str] = field(default_factory=list)


def check_theorem_conditions(profile: RowProfile) -> ConditionReport:
    """Evaluate the row-profile inequalities that make the first row and
    column a dynamo, as stated (no strengthening or repair).

    Failure names: ``symmetry[i]``, ``descent[i]``, ``ascent[i]`` for the
    shared part, ``even-1..3`` / ``odd-1..2`` for the middle rows and
    ``depth`` for k - r_{h-1} >= h - 1 with h = ceil(m/2).
    """
    m, k, r = profile.m, profile.k, profile.r
    h = math.ceil(m / 2)
    fails = []
    for i in range(1, h - 1):
        if r(i) != r(m - i):
            fails.append(f"symmetry[{i}]: r{i}={r(i)} != r{m - i}={r(m - i)}")
        if not r(i) > r(i + 1):
            fails.append(f"descent[{i}]: r{i}={r(i)} <= r{i + 1}={r(i + 1)}")
        if not r(m - i) > r(m - i - 1):
            fails.append(f"ascent[{i}]: r{m - i}={r(m - i)} <= r{m - i - 1}={r(m - i - 1)}")
    if m % 2 == 0:
        a = m // 2
        if not (r(a - 1) > r(a) and r(a - 1) > r(a + 1)):
            fails.append(f"even-1: r{a - 1}={r(a - 1)} must exceed r{a}={r(a)} and r{a + 1}={r(a + 1)}")
        if not r(a + 1) > r(a):
            fails.append(f"even-2: r{a + 1}={r(a + 1)} <= r{a}={r(a)}")
        if not r(a - 1) + r(a) < 2 * r(a + 1):
            fails.append(f"even-3: r{a - 1}+r{a}={r(a - 1) + r(a)} >= 2*r{a + 1}={2 * r(a + 1)}")
    else:
        if not r(h - 1) > r(h):
            fails.append(f"odd-1: r{h - 1}={r(h - 1)} <= r{h}={r(h)}")
        if not k + r(h) < 2 * r(h - 1):
            fails.append(f"odd-2: k+r{h}={k + r(h)} >= 2*r{h - 1}={2 * r(h - 1)}")
    if not k - r(h - 1) >= h - 1:
        fails.append(f"depth: k-r{h - 1}={k - r(h - 1)} < {h - 1}")
    return ConditionReport(not fails, fails)


def profile_of(g: TorusGrid) -> RowProfile:
    """Recover the row profile of a first-row-and-column grid."""
    c = g.cells
    if not ((c[0] == g.k).all() and (c[:, 0] == g.k).all()):
        raise GridError("row 0 and column 0 must be colored k")
    if not (c[1:, 1:] == c[1:, 1:2]).all():
        raise GridError("rows must be constant outside column 0")
    return RowProfile(g.k, tuple(int(x) for x in c[1:, 1]))
