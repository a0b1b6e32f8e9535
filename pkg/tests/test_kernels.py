import os
import random
import subprocess
import sys

import numpy as np
import pytest

from flagdom import _kernels_py, kernels
from flagdom.domination import color_masks, kierstead, random_coloring_matrix
from flagdom.graphs import TricoloredGraph

compiled = pytest.importorskip("flagdom._kernels", reason="compiled kernels not built")


def random_graph(n, rng):
    return TricoloredGraph(n, [rng.randint(1, 3) for _ in range(n * (n - 1) // 2)])


@pytest.mark.parametrize("n,t", [(5, 4), (9, 2), (12, 4), (20, 3)])
def test_best_subset_parity(n, t):
    rng = random.Random(n * 10 + t)
    for _ in range(5):
        masks = color_masks(random_graph(n, rng))
        pool = sorted(rng.sample(range(n), max(1, n - 2)))
        assert tuple(compiled.best_subset(masks, pool, t)) == tuple(_kernels_py.best_subset(masks, pool, t))


def test_best_subset_tiebreak():
    masks = color_masks(kierstead(9))
    size, c, sub = compiled.best_subset(masks, list(range(9)), 4)
    assert (size, c, tuple(sub)) == tuple(_kernels_py.best_subset(masks, list(range(9)), 4))
    assert c == 1 and size == 6


def test_subset_codes_parity():
    rng = np.random.default_rng(0)
    mat = random_coloring_matrix(50, rng)
    for k in (3, 4, 5):
        subs = np.array([rng.choice(50, k, replace=False) for _ in range(500)])
        assert np.array_equal(compiled.subset_codes(mat, subs), _kernels_py.subset_codes(mat, subs))


def test_subset_codes_match_graph_code():
    g = TricoloredGraph(5, [1, 2, 3, 1, 2, 3, 1, 2, 3, 1])
    mat = np.array(g.matrix(), dtype=np.uint8)
    assert int(kernels.subset_codes(mat, np.array([[0, 1, 2, 3, 4]]))[0]) == g.code()


def test_backend_selection():
    assert kernels.BACKEND == "cython"
    env = dict(os.environ, FLAGDOM_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from flagdom import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
