import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from figures import fig8_left, fig8_right
from torusdyn.grid import INF, TorusGrid
from torusdyn.windows import (
    Corner,
    CornerWindow,
    WindowError,
    check_window_hypotheses,
    m_table,
    theorem_windows,
    verify_window_prediction,
)


def test_fig8_left_nw():
    w = CornerWindow(Corner.NW, 2, 3, fig8_left())
    assert check_window_hypotheses(w).ok
    t = m_table(w)
    assert t.values.tolist() == [[0, 0, 0], [0, 1, 2]]
    assert t.format() == "0 0 0\n0 1 2\n"
    check = verify_window_prediction(w)
    assert check.match and check.simulated.values.tolist() == [[0, 0, 0], [0, 1, 2]]


def test_fig8_left_decomposition():
    ws = theorem_windows(fig8_left())
    assert [(w.corner, w.i_star, w.j_star) for w in ws] == [
        (Corner.NW, 2, 3),
        (Corner.NE, 2, 2),
        (Corner.SW, 4, 3),
        (Corner.SE, 4, 2),
    ]
    tables = {w.corner: m_table(w) for w in ws}
    assert tables[Corner.NE].values.tolist() == [[0, 0, 0], [2, 1, 0]]
    assert tables[Corner.NE].cols == [3, 4, 0]
    assert tables[Corner.SW].values.tolist() == [[0, 1, 2], [0, 0, 0]]
    assert tables[Corner.SW].rows == [5, 0]
    assert tables[Corner.SE].values.tolist() == [[2, 1, 0], [0, 0, 0]]
    assert all(verify_window_prediction(w).match for w in ws)


def test_fig8_right_windows():
    ws = theorem_windows(fig8_right())
    assert all(verify_window_prediction(w).match for w in ws)
    assert m_table(CornerWindow(Corner.NW, 2, 3, fig8_right())).values.tolist() == [[0, 0, 0], [0, 1, 2]]
    se = [w for w in ws if w.corner is Corner.SE][0]
    assert m_table(se).values.tolist() == [[0, 0, 0]]


def test_all_k_window_is_zero():
    g = TorusGrid(np.full((5, 5), 4), 4)
    w = CornerWindow(Corner.SE, 2, 2, g)
    assert not m_table(w).values.any()
    assert verify_window_prediction(w).match


def test_hypothesis_failures():
    g = TorusGrid(np.array([[3, 3, 3, 3], [2, 1, 1, 1], [3, 1, 1, 1], [3, 1, 1, 1]]), 3)
    report = check_window_hypotheses(CornerWindow(Corner.NW, 3, 3, g))
    assert not report.ok and report.failures[0].startswith("border")
    g = TorusGrid(np.array([[6, 6, 6, 6], [6, 5, 6, 1], [6, 4, 4, 1], [6, 1, 1, 1]]), 6)
    report = check_window_hypotheses(CornerWindow(Corner.NW, 3, 3, g))
    assert any(f.startswith("row-chain") for f in report.failures)
    with pytest.raises(WindowError):
        m_table(CornerWindow(Corner.NW, 3, 3, g))


def test_anti_diagonal_failure():
    g = TorusGrid(np.array([[5, 5, 5, 5], [5, 4, 3, 1], [5, 3, 2, 1], [5, 1, 1, 1]]), 5)
    report = check_window_hypotheses(CornerWindow(Corner.NW, 3, 3, g))
    assert [f.split(":")[0] for f in report.failures] == ["anti-diagonal"]


def test_split_bounds():
    with pytest.raises(WindowError):
        CornerWindow(Corner.NW, 0, 2, fig8_left())
    with pytest.raises(WindowError):
        CornerWindow(Corner.NE, 2, 5, fig8_left())


def test_inf_inside_window_is_rejected():
    cells = fig8_left().cells.copy()
    cells[1, 1] = INF
    report = check_window_hypotheses(CornerWindow(Corner.NW, 2, 3, TorusGrid(cells, 6)))
    assert "interior: INF cell inside the window" in report.failures


def _embed(local, corner, m, n, k, rng):
    I, J = local.shape
    i_star = I if corner in (Corner.NW, Corner.NE) else m - I
    j_star = J if corner in (Corner.NW, Corner.SW) else n - J
    cells = rng.integers(1, k + 1, (m, n))
    probe = CornerWindow(corner, i_star, j_star, TorusGrid(cells, k))
    cells[np.ix_(probe.local_rows(), probe.local_cols())] = local
    return CornerWindow(corner, i_star, j_star, TorusGrid(cells, k))


@settings(max_examples=300, deadline=None)
@given(
    st.integers(2, 5),
    st.integers(2, 5),
    st.integers(2, 8),
    st.sampled_from(list(Corner)),
    st.integers(1, 3),
    st.integers(1, 3),
    st.integers(0, 2**32 - 1),
)
def test_recurrence_matches_simulation(I, J, k, corner, extra_m, extra_n, seed):
    rng = np.random.default_rng(seed)
    local = rng.integers(1, k + 1, (I, J))
    local[0, :] = k
    local[:, 0] = k
    local[1:, 1:] = -np.sort(-local[1:, 1:], axis=1)
    local[1:, 1:] = -np.sort(-local[1:, 1:], axis=0)
    w = _embed(local, corner, max(3, I + extra_m), max(3, J + extra_n), k, rng)
    assert np.array_equal(w.local(), local)
    assume(check_window_hypotheses(w).ok)
    check = verify_window_prediction(w)
    assert check.match, (local, check.predicted.values, check.simulated.values)
