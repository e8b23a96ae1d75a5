"""Exhaustive search over every coloring of a small torus.

Colorings are enumerated in lexicographic cell order (row-major, first cell
most significant). Work is split by fixing the leading cells; each prefix is
simulated as one stacked array and results are merged by enumeration index,
so the outcome does not depend on how many workers ran.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .blocks import blocked_mask
from .bounds import lower_bound_size
from .engine import stub_next
from .grid import Rect, TorusGrid, cyclic_span, format_matrix

DEFAULT_BUDGET = 10**6
FILTERS = ("necessary",)


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class SearchSpec:
    m: int
    n: int
    k: int
    max_states: int = DEFAULT_BUDGET
    filter: str | None = None

    def __post_init__(self):
        if self.m < 3 or self.n < 3 or self.k < 2:
            raise SearchError("need m, n >= 3 and k >= 2")
        if self.filter is not None and self.filter not in FILTERS:
            raise SearchError(f"unknown filter {self.filter!r}")
        if self.total > self.max_states:
            raise SearchError(f"{self.k}^{self.m * self.n} = {self.total} colorings exceed budget {self.max_states}")

    @property
    def cells(self) -> int:
        return self.m * self.n

    @property
    def total(self) -> int:
        return self.k ** self.cells


def enumerate_grids(spec: SearchSpec) -> Iterator[TorusGrid]:
    for colors in itertools.product(range(1, spec.k + 1), repeat=spec.cells):
        yield TorusGrid(np.array(colors).reshape(spec.m, spec.n), spec.k)


def _prefix_len(spec: SearchSpec, target_chunk: int = 1 << 14) -> int:
    p = 0
    while p < spec.cells and spec.k ** (spec.cells - p) > target_chunk:
        p += 1
    return p


def _chunk(spec: SearchSpec, prefix: tuple[int, ...]) -> np.ndarray:
    """All colorings starting with ``prefix``, as an (N, m, n) stack."""
    rest = spec.cells - len(prefix)
    tail = np.array(list(itertools.product(range(1, spec.k + 1), repeat=rest)), dtype=np.int64)
    tail = tail.reshape(len(tail), rest)
    head = np.broadcast_to(np.array(prefix, dtype=np.int64), (len(tail), len(prefix)))
    return np.concatenate([head, tail], axis=1).reshape(-1, spec.m, spec.n)


def simulate_stack(stack: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Run StubSM on every grid of the stack. Returns (is_dynamo, settled)."""
    m, n = stack.shape[-2:]
    cells = stack
    active = np.ones(len(stack), dtype=bool)
    for _ in range(m * n * (k - 1) + 1):
        idx = np.nonzero(active)[0]
        if len(idx) == 0:
            break
        new = stub_next(cells[idx])
        moved = (new != cells[idx]).any(axis=(1, 2))
        cells[idx] = new
        active[idx] = moved
    return (cells == k).all(axis=(1, 2)), ~active


def _rect_of(mask: np.ndarray) -> Rect:
    rows, cols = np.nonzero(mask)
    m, n = mask.shape
    return Rect(cyclic_span(rows.tolist(), m), cyclic_span(cols.tolist(), n))


@dataclass
class _ChunkResult:
    offset: int
    total: int
    considered: int
    dynamos: int
    best_size: int | None
    best_index: int | None
    dynamo_index: np.ndarray


def _run_chunk(args) -> _ChunkResult:
    spec, prefix, offset = args
    stack = _chunk(spec, prefix)
    keep = np.ones(len(stack), dtype=bool)
    if spec.filter == "necessary":
        keep = ~blocked_mask(stack, spec.k)
    sizes = (stack == spec.k).sum(axis=(1, 2))
    dyn = np.zeros(len(stack), dtype=bool)
    if keep.any():
        sel = np.nonzero(keep)[0]
        is_dyn, settled = simulate_stack(stack[sel], spec.k)
        if not settled.all():
            raise SearchError("a coloring did not settle within m*n*(k-1)+1 rounds")
        dyn[sel] = is_dyn
    idx = np.nonzero(dyn)[0]
    best_size = best_index = None
    if len(idx):
        pos = idx[np.argmin(sizes[idx])]  # argmin returns the first minimum
        best_size, best_index = int(sizes[pos]), offset + int(pos)
    return _ChunkResult(offset, len(stack), int(keep.sum()), len(idx), best_size, best_index, offset + idx)


def _chunks(spec: SearchSpec, workers: int) -> Iterator[_ChunkResult]:
    p = _prefix_len(spec)
    size = spec.k ** (spec.cells - p)
    jobs = [
        (spec, prefix, t * size)
        for t, prefix in enumerate(itertools.product(range(1, spec.k + 1), repeat=p))
    ]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            yield from pool.map(_run_chunk, jobs)
    else:
        yield from map(_run_chunk, jobs)


def grid_at(spec: SearchSpec, index: int) -> TorusGrid:
    """The ``index``-th coloring in enumeration order."""
    digits = []
    for _ in range(spec.cells):
        index, d = divmod(index, spec.k)
        digits.append(d + 1)
    return TorusGrid(np.array(digits[::-1]).reshape(spec.m, spec.n), spec.k)


@dataclass
class SearchResult:
    spec: SearchSpec
    total: int
    considered: int
    dynamos: int
    min_size: int
    witness: TorusGrid

    def format(self) -> str:
        s = self.spec
        head = (
            f"m={s.m} n={s.n} k={s.k} total={self.total} "
            f"dynamos={self.dynamos} min_size={self.min_size}"
        )
        return head + "\n" + format_matrix(self.witness.cells) + "\n"


def min_dynamo(spec: SearchSpec, workers: int = 1) -> SearchResult:
    """Smallest k-set among all dynamos; the witness is the first coloring in
    enumeration order attaining it."""
    total = considered = dynamos = 0
    best: tuple[int, int] | None = None
    for r in _chunks(spec, workers):
        total += r.total
        considered += r.considered
        dynamos += r.dynamos
        if r.best_size is not None and (best is None or (r.best_size, r.best_index) < best):
            best = (r.best_size, r.best_index)
    if best is None:
        raise SearchError("no dynamo found")
    return SearchResult(spec, total, considered, dynamos, best[0], grid_at(spec, best[1]))


@dataclass
class Counterexample:
    grid: TorusGrid
    size: int
    rect: Rect
    reasons: list[str]

    def format(self) -> str:
        return (
            f"counterexample size={self.size} rect={self.rect.rows}x{self.rect.cols} "
            f"reasons={','.join(self.reasons)}\n" + format_matrix(self.grid.cells) + "\n"
        )


@dataclass
class ConsistencyReport:
    spec: SearchSpec
    dynamos: int
    counterexamples: list[Counterexample] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def format(self, limit: int | None = None) -> str:
        s = self.spec
        out = [
            f"m={s.m} n={s.n} k={s.k} dynamos={self.dynamos} "
            f"counterexamples={len(self.counterexamples)}\n"
        ]
        out += [c.format() for c in self.counterexamples[:limit]]
        return "".join(out)


def bound_consistency(spec: SearchSpec, workers: int = 1) -> ConsistencyReport:
    """Check every dynamo against |k-set| >= m + n - 2 and a bounding
    rectangle of at least (m - 1) x (n - 1)."""
    lower = lower_bound_size(spec.m, spec.n)
    report = ConsistencyReport(spec, 0)
    for r in _chunks(spec, workers):
        report.dynamos += r.dynamos
        for index in r.dynamo_index.tolist():
            g = grid_at(spec, index)
            mask = g.cells == spec.k
            size, rect = int(mask.sum()), _rect_of(mask)
            reasons = []
            if size < lower:
                reasons.append(f"size<{lower}")
            if rect.rows < spec.m - 1:
                reasons.append(f"rows<{spec.m - 1}")
            if rect.cols < spec.n - 1:
                reasons.append(f"cols<{spec.n - 1}")
            if reasons:
                report.counterexamples.append(Counterexample(g, size, rect, reasons))
    return report
