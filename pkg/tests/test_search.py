import itertools

import numpy as np
import pytest

from torusdyn.blocks import blocked_mask
from torusdyn.engine import verdict
from torusdyn.grid import TorusGrid, k_set, parse_grid
from torusdyn.search import (
    SearchError,
    SearchSpec,
    bound_consistency,
    enumerate_grids,
    grid_at,
    min_dynamo,
    simulate_stack,
)


def all_colorings(m, n, k):
    return np.array(list(itertools.product(range(1, k + 1), repeat=m * n))).reshape(-1, m, n)


def test_enumeration_counts_and_order():
    grids = list(enumerate_grids(SearchSpec(3, 3, 2)))
    assert len(grids) == 512
    assert grids[0].is_uniform(1) and grids[-1].is_uniform(2)
    assert grids[1].cells.ravel().tolist() == [1] * 8 + [2]
    assert len(set(grids)) == 512
    assert SearchSpec(3, 3, 3).total == 19683
    assert sum(1 for _ in enumerate_grids(SearchSpec(3, 3, 3))) == 19683


def test_budget_is_enforced():
    with pytest.raises(SearchError):
        SearchSpec(4, 4, 3)
    with pytest.raises(SearchError):
        SearchSpec(3, 3, 2, max_states=100)
    with pytest.raises(SearchError):
        SearchSpec(3, 3, 2, filter="bogus")


def test_grid_at_matches_enumeration():
    spec = SearchSpec(3, 3, 3)
    for index, g in enumerate(enumerate_grids(spec)):
        if index % 997 == 0:
            assert grid_at(spec, index) == g


def test_min_dynamo_3x3_k2():
    r = min_dynamo(SearchSpec(3, 3, 2))
    assert (r.total, r.dynamos, r.min_size) == (512, 241, 4)
    assert r.witness == parse_grid("1 1 2\n1 2 1\n2 1 2", 2)
    assert verdict(r.witness).is_dynamo
    assert r.format().splitlines()[0] == "m=3 n=3 k=2 total=512 dynamos=241 min_size=4"


def test_min_dynamo_agrees_with_per_grid_verdicts():
    sizes = [len(k_set(g)) for g in enumerate_grids(SearchSpec(3, 3, 2)) if verdict(g).is_dynamo]
    r = min_dynamo(SearchSpec(3, 3, 2))
    assert len(sizes) == r.dynamos and min(sizes) == r.min_size


def test_filter_keeps_every_dynamo():
    for k in (2, 3):
        plain = min_dynamo(SearchSpec(3, 3, k))
        filtered = min_dynamo(SearchSpec(3, 3, k, filter="necessary"))
        assert (filtered.min_size, filtered.dynamos, filtered.witness) == (plain.min_size, plain.dynamos, plain.witness)
        assert filtered.considered < plain.considered


@pytest.mark.parametrize("k", [2, 3])
def test_blocked_grids_are_never_dynamos(k):
    stack = all_colorings(3, 3, k)
    blocked = blocked_mask(stack, k)
    is_dyn, settled = simulate_stack(stack.copy(), k)
    assert settled.all()
    assert not (blocked & is_dyn).any()


def test_parallel_run_is_identical():
    spec = SearchSpec(3, 4, 2)
    a, b = min_dynamo(spec), min_dynamo(spec, workers=3)
    assert (a.min_size, a.dynamos, a.witness) == (b.min_size, b.dynamos, b.witness)
    assert a.min_size == 5


def test_min_size_never_exceeds_mn():
    for m, n, k in ((3, 3, 2), (3, 4, 2), (3, 3, 3)):
        assert min_dynamo(SearchSpec(m, n, k)).min_size <= m * n


@pytest.mark.parametrize("m, n", [(3, 3), (3, 4)])
def test_two_colors_respect_the_size_bounds(m, n):
    report = bound_consistency(SearchSpec(m, n, 2))
    assert report.ok and report.dynamos > 0


def test_three_colors_break_the_size_bound():
    # regression values for the 3x3 torus with three colors
    report = bound_consistency(SearchSpec(3, 3, 3))
    assert report.dynamos == 5944
    assert len(report.counterexamples) == 1062
    assert all(c.reasons == ["size<4"] for c in report.counterexamples)
    assert min(c.size for c in report.counterexamples) == 2
    assert all(c.rect.rows >= 2 and c.rect.cols >= 2 for c in report.counterexamples)
    first = report.counterexamples[0]
    assert verdict(first.grid).is_dynamo
    r = min_dynamo(SearchSpec(3, 3, 3))
    assert r.min_size == 2 and r.witness == parse_grid("1 1 2\n1 2 3\n3 1 1", 3)
    assert report.format(limit=1).splitlines()[0] == "m=3 n=3 k=3 dynamos=5944 counterexamples=1062"


def test_all_k_grid_is_consistent():
    g = TorusGrid(np.full((3, 3), 2), 2)
    assert verdict(g).is_dynamo and len(k_set(g)) == 9
