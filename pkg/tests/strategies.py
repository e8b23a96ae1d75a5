import numpy as np
from hypothesis import strategies as st

from torusdyn.grid import TorusGrid


@st.composite
def grids(draw, max_m=6, max_n=6, max_k=6, min_k=2):
    m = draw(st.integers(3, max_m))
    n = draw(st.integers(3, max_n))
    k = draw(st.integers(min_k, max_k))
    cells = draw(st.lists(st.integers(1, k), min_size=m * n, max_size=m * n))
    return TorusGrid(np.array(cells).reshape(m, n), k)


def random_grid(rng, max_m=6, max_n=6, max_k=6):
    m, n = rng.integers(3, max_m + 1), rng.integers(3, max_n + 1)
    k = rng.integers(2, max_k + 1)
    return TorusGrid(rng.integers(1, k + 1, (m, n)), int(k))
