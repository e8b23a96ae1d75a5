"""Synchronous recoloring rules, runs to a fixed point and dynamo verdicts.

The array-level helpers (``stub_next`` and friends) work on the last two axes,
so a stack of grids can be advanced in one call.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .grid import INF, ColorPalette, GridError, TorusGrid, format_matrix, parse_matrix

WHITE, BLACK = 1, 2


class Rule(enum.Enum):
    STUB_SM = "stub"
    SIMPLE_REVERSIBLE = "simple-rev"
    STRONG_IRREVERSIBLE = "strong-irr"

    @classmethod
    def from_name(cls, name: str) -> Rule:
        for rule in cls:
            if name in (rule.value, rule.name):
                return rule
        raise ValueError(f"unknown rule {name!r}")


class Outcome(enum.Enum):
    DYNAMO = "DYNAMO"
    NON_MONOCHROMATIC_FIXPOINT = "NON_MONOCHROMATIC_FIXPOINT"
    BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"


def neighbor_stack(cells: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Up, down, left and right neighbor colors of every cell."""
    # same as np.roll by +-1 on the last two axes, without its overhead
    return (
        np.concatenate([cells[..., -1:, :], cells[..., :-1, :]], axis=-2),
        np.concatenate([cells[..., 1:, :], cells[..., :1, :]], axis=-2),
        np.concatenate([cells[..., :, -1:], cells[..., :, :-1]], axis=-1),
        np.concatenate([cells[..., :, 1:], cells[..., :, :1]], axis=-1),
    )


def _eq(a, b):
    return (a == b) & (a != INF)


# (a, b) split from (c, d): the three ways to pair four neighbors, each with
# either pair playing the role of the equal couple.
PAIRINGS = (
    ((0, 1), (2, 3)),
    ((2, 3), (0, 1)),
    ((0, 2), (1, 3)),
    ((1, 3), (0, 2)),
    ((0, 3), (1, 2)),
    ((1, 2), (0, 3)),
)


def stub_fires(cells: np.ndarray) -> np.ndarray:
    """Mask of cells whose StubSM guard holds."""
    nb = neighbor_stack(cells)
    fires = np.zeros(cells.shape, dtype=bool)
    for (a, b), (c, d) in PAIRINGS:
        A, B, C, D = nb[a], nb[b], nb[c], nb[d]
        fires |= _eq(A, B) & (A > cells) & (~_eq(C, D) | (C > cells))
    return fires & (cells != INF)


def stub_next(cells: np.ndarray) -> np.ndarray:
    return cells + stub_fires(cells)


def _black_count(cells):
    return sum((x == BLACK).astype(np.int8) for x in neighbor_stack(cells))


def simple_reversible_next(cells: np.ndarray) -> np.ndarray:
    black = _black_count(cells)
    turn_black = (cells == WHITE) & (black >= 2)
    turn_white = (cells == BLACK) & (4 - black >= 3)
    return np.where(turn_black, BLACK, np.where(turn_white, WHITE, cells))


def strong_irreversible_next(cells: np.ndarray) -> np.ndarray:
    return np.where((cells == WHITE) & (_black_count(cells) >= 3), BLACK, cells)


_NEXT = {
    Rule.STUB_SM: stub_next,
    Rule.SIMPLE_REVERSIBLE: simple_reversible_next,
    Rule.STRONG_IRREVERSIBLE: strong_irreversible_next,
}


def next_cells(cells: np.ndarray, rule: Rule) -> np.ndarray:
    return _NEXT[rule](cells)


def stub_condition(own: int, nbr) -> bool:
    """Scalar StubSM guard for a cell of color ``own`` and its four neighbors."""
    if own == INF:
        return False
    eq, gt = ColorPalette.equal, ColorPalette.greater
    nbr = list(nbr)
    if len(nbr) != 4:
        raise ValueError("need exactly four neighbor colors")
    for (a, b), (c, d) in PAIRINGS:
        A, B, C, D = nbr[a], nbr[b], nbr[c], nbr[d]
        if eq(A, B) and gt(A, own) and (not eq(C, D) or gt(C, own)):
            return True
    return False


def check_rule(g: TorusGrid, rule: Rule) -> None:
    if rule is Rule.STUB_SM:
        return
    if g.k != 2:
        raise GridError(f"{rule.name} needs a bi-colored grid (k=2), got k={g.k}")
    if (g.cells == INF).any():
        raise GridError(f"{rule.name} does not accept INF cells")


def step(g: TorusGrid, rule: Rule = Rule.STUB_SM) -> tuple[TorusGrid, frozenset]:
    """One synchronous round. Returns the new grid and the changed positions."""
    check_rule(g, rule)
    new = next_cells(g.cells, rule)
    rows, cols = np.nonzero(new != g.cells)
    return TorusGrid(new, g.k), frozenset(zip(rows.tolist(), cols.tolist()))


def default_budget(g: TorusGrid) -> int:
    return g.m * g.n * (g.k - 1) + 1


@dataclass
class Trace:
    rule: Rule
    rounds: list[TorusGrid]
    changed: list[frozenset] = field(default_factory=list)
    exhausted: bool = False

    @property
    def final(self) -> TorusGrid:
        return self.rounds[-1]

    @property
    def num_rounds(self) -> int:
        return len(self.rounds) - 1

    @property
    def changed_total(self) -> int:
        return sum(len(c) for c in self.changed)

    def array(self) -> np.ndarray:
        return np.stack([g.cells for g in self.rounds])


def run(g: TorusGrid, rule: Rule = Rule.STUB_SM, max_rounds: int | None = None) -> Trace:
    """Iterate ``step`` until nothing changes or ``max_rounds`` steps were taken.

    ``changed[t]`` lists the cells that differ between ``rounds[t]`` and
    ``rounds[t + 1]``; the no-op round that detects the fixed point is not stored.
    """
    check_rule(g, rule)
    if max_rounds is None:
        max_rounds = default_budget(g)
    if max_rounds < 1:
        raise ValueError("max_rounds must be >= 1")
    trace = Trace(rule, [g])
    cells = g.cells
    for _ in range(max_rounds):
        new = next_cells(cells, rule)
        diff = new != cells
        if not diff.any():
            return trace
        rows, cols = np.nonzero(diff)
        trace.rounds.append(TorusGrid(new, g.k))
        trace.changed.append(frozenset(zip(rows.tolist(), cols.tolist())))
        cells = new
    trace.exhausted = bool((next_cells(cells, rule) != cells).any())
    return trace


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    rounds_to_fixpoint: int
    final: TorusGrid

    @property
    def is_dynamo(self) -> bool:
        return self.outcome is Outcome.DYNAMO


def classify(trace: Trace) -> Verdict:
    if trace.exhausted:
        outcome = Outcome.BUDGET_EXHAUSTED
    elif trace.final.is_uniform(trace.final.k):
        outcome = Outcome.DYNAMO
    else:
        outcome = Outcome.NON_MONOCHROMATIC_FIXPOINT
    return Verdict(outcome, trace.num_rounds, trace.final)


def verdict(g: TorusGrid, rule: Rule = Rule.STUB_SM, max_rounds: int | None = None) -> Verdict:
    return classify(run(g, rule, max_rounds))


def is_monotone_dynamo(g: TorusGrid, rule: Rule) -> bool:
    if g.k != 2:
        raise GridError("monotone dynamos are defined for bi-colored grids")
    trace = run(g, rule)
    if not classify(trace).is_dynamo:
        return False
    black = [r.cells == BLACK for r in trace.rounds]
    return all((before <= after).all() for before, after in zip(black, black[1:]))


def first_arrival(cells: np.ndarray, color: int, max_rounds: int, rule: Rule = Rule.STUB_SM):
    """Round at which each cell first shows ``color`` (-1 if never), plus a
    flag telling whether a fixed point was reached within ``max_rounds``.

    Works on raw arrays of any shape, which the corner-window analysis needs.
    """
    first = np.where(cells == color, 0, -1)
    for t in range(1, max_rounds + 1):
        new = next_cells(cells, rule)
        if np.array_equal(new, cells):
            return first, True
        cells = new
        first[(cells == color) & (first < 0)] = t
    return first, np.array_equal(next_cells(cells, rule), cells)


# -- trace files -------------------------------------------------------------


def format_trace(trace: Trace) -> str:
    g = trace.rounds[0]
    out = [f"rounds={trace.num_rounds} rule={trace.rule.name} m={g.m} n={g.n} k={g.k}"]
    for r in trace.rounds:
        out.append(format_matrix(r.cells))
        out.append("")
    out.append(f"outcome={classify(trace).outcome.value} changed_total={trace.changed_total}")
    return "\n".join(out) + "\n"


def _kv(line: str) -> dict[str, str]:
    return dict(tok.split("=", 1) for tok in line.split())


def parse_trace(text: str) -> Trace:
    lines = text.strip("\n").splitlines()
    header, footer = _kv(lines[0]), _kv(lines[-1])
    k = int(header["k"])
    rule = Rule.from_name(header["rule"])
    blocks, cur = [], []
    for line in lines[1:-1]:
        if line.strip():
            cur.append(line)
        elif cur:
            blocks.append(cur)
            cur = []
    if cur:
        blocks.append(cur)
    rounds = [TorusGrid(parse_matrix("\n".join(b)), k) for b in blocks]
    if len(rounds) != int(header["rounds"]) + 1:
        raise GridError("trace header disagrees with the number of grids")
    changed = []
    for before, after in zip(rounds, rounds[1:]):
        rows, cols = np.nonzero(before.cells != after.cells)
        changed.append(frozenset(zip(rows.tolist(), cols.tolist())))
    trace = Trace(rule, rounds, changed)
    trace.exhausted = footer.get("outcome") == Outcome.BUDGET_EXHAUSTED.value
    if int(footer["changed_total"]) != trace.changed_total:
        raise GridError("trace footer disagrees with the recorded changes")
    return trace

