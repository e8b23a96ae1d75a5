"""Multicolored majority dynamics on toroidal meshes."""

from .blocks import (
    BlockReport,
    Condition,
    block_report,
    find_h_blocks,
    find_non_k_blocks,
    necessary_condition,
    phi,
    window_constraint_violations,
)
from .bounds import (
    RowProfile,
    check_theorem_conditions,
    gen_fig6,
    gen_fig7,
    gen_rowcol,
    lower_bound_size,
    propnew_bound,
    propnew_check,
    upper_bound_size,
)
from .engine import Outcome, Rule, Trace, Verdict, is_monotone_dynamo, run, step, stub_condition, verdict
from .grid import INF, ColorPalette, GridError, Rect, TorusGrid, bounding_rect, k_set, neighbors, parse_grid, serialize_grid
from .monitors import Violation, monitor_lemmas
from .search import SearchSpec, bound_consistency, enumerate_grids, min_dynamo
from .windows import Corner, CornerWindow, check_window_hypotheses, m_table, verify_window_prediction

__version__ = "0.1.0"
