import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from figures import FIG1, fig1, fig8_left
from strategies import grids
from torusdyn.bounds import gen_fig6
from torusdyn.grid import (
    INF,
    ColorPalette,
    GridError,
    Rect,
    TorusGrid,
    bounding_rect,
    cell_set,
    k_set,
    neighbors,
    parse_grid,
    serialize_grid,
)


def test_parse_fig1():
    g = fig1()
    assert g.shape == (4, 4)
    assert g[0, 0] == 6 and g[2, 1] == 5


def test_parse_uniform():
    g = parse_grid("1 1 1\n1 1 1\n1 1 1", 2)
    assert g.shape == (3, 3) and g.is_uniform(1)


@pytest.mark.parametrize(
    "text",
    ["1 2\n2 1", "1 1 1\n1 1\n1 1 1", "1 1 1\n1 x 1\n1 1 1", "1 1 1\n1 3 1\n1 1 1", "1 1 1\n1 0 1\n1 1 1", ""],
)
def test_parse_rejects(text):
    with pytest.raises(GridError):
        parse_grid(text, 2)


def test_parse_inf_and_comment():
    g = parse_grid("# window\n2 2 INF\n2 1 INF\nINF INF INF\n", 2)
    assert g[0, 2] == INF and g[1, 1] == 1


def test_palette_inf_is_incomparable():
    p = ColorPalette(3)
    assert not p.equal(INF, INF)
    assert p.equal(2, 2)
    assert p.greater(INF, 3) and not p.greater(3, INF)
    assert not p.greater(INF, INF)
    assert p.contains(INF) and not p.contains(4)
    with pytest.raises(GridError):
        ColorPalette(1)


def test_grid_is_immutable():
    g = fig1()
    with pytest.raises(ValueError):
        g.cells[0, 0] = 1
    with pytest.raises(AttributeError):
        g.cells = None


@pytest.mark.parametrize(
    "shape, pos, expected",
    [
        ((4, 4), (0, 0), [(3, 0), (1, 0), (0, 3), (0, 1)]),
        ((4, 4), (2, 2), [(1, 2), (3, 2), (2, 1), (2, 3)]),
        ((3, 5), (2, 4), [(1, 4), (0, 4), (2, 3), (2, 0)]),
    ],
)
def test_neighbors(shape, pos, expected):
    g = TorusGrid(np.ones(shape, dtype=int), 2)
    assert neighbors(g, *pos) == expected


def test_neighbors_out_of_range():
    with pytest.raises(IndexError):
        neighbors(fig1(), 4, 0)


def test_k_set_examples():
    s = k_set(fig8_left())
    assert len(s) == 10
    assert s == {(0, j) for j in range(5)} | {(i, 0) for i in range(6)}
    assert k_set(parse_grid("1 1 1\n1 1 1\n1 1 1", 2)) == frozenset()
    assert k_set(fig1()) == {(0, 0), (2, 0), (2, 3)}


def test_bounding_rect_examples():
    fig6 = gen_fig6()
    assert bounding_rect(fig6, k_set(fig6)) == Rect(5, 7)
    g = TorusGrid(np.ones((3, 4), dtype=int), 2)
    assert bounding_rect(g, {(1, 2)}) == Rect(1, 1)
    assert bounding_rect(g, {(0, 0), (2, 0)}) == Rect(2, 1)
    assert bounding_rect(g, set()) == Rect(0, 0)
    assert bounding_rect(g, set(g.positions())) == Rect(3, 4)


def test_serialize_round_trips():
    for g in (fig1(), parse_grid("1 1 1\n1 1 1\n1 1 1", 2), parse_grid("2 2 INF\n2 1 INF\nINF INF INF", 2)):
        assert parse_grid(serialize_grid(g), g.k) == g
    assert serialize_grid(fig1()) == FIG1
    assert serialize_grid(fig1(), comment="fig").startswith("# fig\n")


@given(grids())
def test_serialize_is_inverse_of_parse(g):
    assert parse_grid(serialize_grid(g), g.k) == g


@given(grids())
def test_neighbors_are_distinct(g):
    for i, j in g.positions():
        assert len(set(neighbors(g, i, j))) == 4


@given(grids(), st.data())
def test_bounding_rect_rotation_invariant(g, data):
    color = data.draw(st.integers(1, g.k))
    di, dj = data.draw(st.integers(0, g.m - 1)), data.draw(st.integers(0, g.n - 1))
    rotated = g.with_cells(np.roll(g.cells, (di, dj), axis=(0, 1)))
    assert bounding_rect(g, cell_set(g, color)) == bounding_rect(rotated, cell_set(rotated, color))


@given(grids(), st.data())
def test_bounding_rect_is_tight(g, data):
    # brute force over every cyclic interval pair
    s = cell_set(g, data.draw(st.integers(1, g.k)))
    if not s:
        return

    def best(size, coords):
        return min(
            length
            for start in range(size)
            for length in range(1, size + 1)
            if all((c - start) % size < length for c in coords)
        )

    rect = bounding_rect(g, s)
    assert rect == Rect(best(g.m, [i for i, _ in s]), best(g.n, [j for _, j in s]))
