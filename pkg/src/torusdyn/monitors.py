"""Runtime checks of the single-cell recoloring rules against a StubSM trace.

Every rule is checked from every start round ``t0`` and for every way of
naming the four neighbors ``a, b, c, d``. A rule *fires* when its hypotheses
hold over the horizon it needs; a *violation* is a firing whose conclusion the
trace contradicts. Traces that end at a fixed point are extended by repeating
the final grid, so horizons may run past the last stored round.

Rules checked:

``climb``
    a = b > c, c != d. With i = a - x, if a and b hold still and c != d at
    every step before x could reach a, then x has color a after i steps.
``climb-past-pair``
    a = b > c = d > x. Same conclusion, provided that at each of those steps
    c, d are either different or equal and above x's current color.
``climb-to-k``
    a = b = k and c > d, i = k - x. Either c - d >= i, or c and d hold still;
    then x reaches k after i steps.
``hold``
    a > b > c > d, or a > b = x = c > d. If a climbs by one per step (until k),
    b climbs by one per step and c, d hold still, x keeps its color for
    k - b steps.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .engine import PAIRINGS, Rule, Trace, neighbor_stack
from .grid import INF

DIRECTIONS = ("up", "down", "left", "right")


@dataclass(frozen=True)
class Violation:
    lemma: str
    cell: tuple[int, int]
    start: int
    roles: tuple[str, ...]
    detail: str


def _runs(pred: np.ndarray) -> np.ndarray:
    """``out[t]`` = number of consecutive ``s >= t`` with ``pred[s]`` true.

    Time is axis 0; one extra trailing zero row makes ``out`` the same length
    as the state sequence when ``pred`` is a per-transition predicate.
    """
    T = pred.shape[0]
    idx = np.arange(T).reshape((T,) + (1,) * (pred.ndim - 1))
    stop = np.where(pred, T, idx)
    nxt = np.minimum.accumulate(stop[::-1], axis=0)[::-1]
    return nxt - idx


def _transition_runs(pred: np.ndarray) -> np.ndarray:
    pad = np.zeros((1,) + pred.shape[1:], dtype=bool)
    return _runs(np.concatenate([pred, pad]))


def _take(X: np.ndarray, offset: np.ndarray) -> np.ndarray:
    """``X[t + offset[t, i, j], i, j]``, with out-of-range reads clipped."""
    T = X.shape[0]
    t = np.arange(T).reshape(T, 1, 1) + offset
    return np.take_along_axis(X, np.clip(t, 0, T - 1), axis=0)


class _Scan:
    def __init__(self, trace: Trace):
        if trace.rule is not Rule.STUB_SM:
            raise ValueError("rule monitors apply to StubSM traces only")
        self.k = k = trace.final.k
        X = trace.array()
        if not trace.exhausted:
            X = np.concatenate([X, np.repeat(X[-1:], k, axis=0)])
        self.X = X
        self.T = X.shape[0]
        self.nb = neighbor_stack(X)
        same = X[1:] == X[:-1]
        self.same = self._spread(_transition_runs(same))
        self.inc = self._spread(_transition_runs(X[1:] == X[:-1] + 1))
        self.satinc = self._spread(_transition_runs(X[1:] == np.minimum(X[:-1] + 1, k)))
        self.x_same = _transition_runs(same)
        self.violations: list[Violation] = []
        self.fired: Counter = Counter()

    @staticmethod
    def _spread(per_cell):
        return neighbor_stack(per_cell)

    def _report(self, lemma, hyp, bad, roles, detail):
        self.fired[lemma] += int(hyp.sum())
        names = tuple(DIRECTIONS[r] for r in roles) if roles else ("by-rank",)
        for t, i, j in zip(*np.nonzero(hyp & bad)):
            self.violations.append(Violation(lemma, (int(i), int(j)), int(t), names, detail))

    def _within(self, offset):
        return np.arange(self.T).reshape(self.T, 1, 1) + offset <= self.T - 1

    def climb_rules(self):
        X, k, nb = self.X, self.k, self.nb
        live = (X != INF) & (X < k)
        for (a, b), (c, d) in PAIRINGS:
            A, B, C, D = nb[a], nb[b], nb[c], nb[d]
            pair = (A == B) & (A != INF) & (A > X) & live
            if not pair.any():
                continue
            i = np.where(pair, A - X, 0)
            held = (self.same[a] >= i - 1) & (self.same[b] >= i - 1) & self._within(i)
            reached = _take(X, i) == A
            neq = (C != D) | (C == INF)
            # climb: the remaining pair stays unequal over the horizon
            hyp = pair & (A > np.minimum(C, D)) & neq & held & (_runs(neq) >= i)
            self._report("climb", hyp, ~reached, (a, b, c, d), "x did not reach r(a)")
            # climb-past-pair: unequal, or equal and above x's current color
            guard = neq | (C > X)
            start = pair & (C == D) & (C != INF) & (A > C) & (C > X)
            hyp = start & held & (_runs(guard) >= i)
            self._report("climb-past-pair", hyp, ~reached, (a, b, c, d), "x did not reach r(a)")

    def climb_to_k(self):
        X, k, nb = self.X, self.k, self.nb
        live = (X != INF) & (X < k)
        for (a, b), (c, d) in PAIRINGS:
            A, B, C, D = nb[a], nb[b], nb[c], nb[d]
            base = live & (A == k) & (B == k) & (C != D)
            if not base.any():
                continue
            hi, lo = np.maximum(C, D), np.minimum(C, D)
            i = np.where(base, k - X, 0)
            within = self._within(i)
            reached = _take(X, i) == k
            wide = base & (hi != INF) & (hi - lo >= i) & within
            self._report("climb-to-k.wide", wide, ~reached, (a, b, c, d), "x did not reach k")
            still = base & (self.same[c] >= i - 1) & (self.same[d] >= i - 1) & within
            self._report("climb-to-k.still", still, ~reached, (a, b, c, d), "x did not reach k")

    def hold(self):
        X, k = self.X, self.k
        nb = np.stack(self.nb)
        # roles by rank: a is the largest neighbor, d the smallest
        order = np.argsort(-nb, axis=0, kind="stable")
        ranked = np.take_along_axis(nb, order, axis=0)
        A, M1, M2, D = ranked
        finite = (X != INF) & (A != INF)
        distinct = finite & (A > M1) & (M1 > M2) & (M2 > D)
        flat = finite & (A > M1) & (M1 == X) & (M2 == X) & (M2 > D)
        if not (distinct.any() or flat.any()):
            return
        runs = {name: np.stack(getattr(self, name)) for name in ("satinc", "inc", "same")}
        ranked_runs = {name: np.take_along_axis(r, order, axis=0) for name, r in runs.items()}
        for chain, b_rank, c_rank in ((distinct, 1, 2), (flat, 1, 2), (flat, 2, 1)):
            if not chain.any():
                continue
            B = ranked[b_rank]
            h = np.where(chain, k - B, 0)
            hyp = (
                chain
                & (ranked_runs["satinc"][0] >= h - 1)
                & (ranked_runs["inc"][b_rank] >= h - 1)
                & (ranked_runs["same"][c_rank] >= h - 1)
                & (ranked_runs["same"][3] >= h - 1)
                & self._within(h)
            )
            self._report("hold", hyp, self.x_same < h, None, "x recolored early")


def _scan(trace: Trace) -> _Scan:
    scan = _Scan(trace)
    scan.climb_rules()
    scan.climb_to_k()
    scan.hold()
    return scan


def monitor_lemmas(trace: Trace) -> list[Violation]:
    """All rule firings in ``trace`` whose conclusion the trace contradicts."""
    return _scan(trace).violations


def lemma_coverage(trace: Trace) -> Counter:
    """How many (cell, start round, neighbor naming) instances fired per rule."""
    return _scan(trace).fired
