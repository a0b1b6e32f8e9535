"""Pure-Python versions of the hot loops (used when the compiled module is absent).

The compiled ``_kernels`` module implements the same functions with the same
results; ``flagdom.kernels`` picks one at import time.
"""
from __future__ import annotations

import itertools

import numpy as np


def best_subset(masks, pool, t):
    """Best (size, colour, subset) over subsets of ``pool`` with 1..t elements.

    ``masks[c-1][v]`` is the bitset of colour-c neighbours of v. Ties prefer the
    smaller colour, then the lexicographically smaller subset (as a sorted tuple).
    """
    best = None
    pool = sorted(int(v) for v in pool)
    for c in range(3):
        row = [int(m) for m in masks[c]]
        for s in range(1, min(t, len(pool)) + 1):
            for sub in itertools.combinations(pool, s):
                acc = 0
                for v in sub:
                    acc |= row[v]
                size = bin(acc).count("1")
                cand = (-size, c + 1, sub)
                if best is None or cand < best:
                    best = cand
    if best is None:
        return 0, 1, ()
    return -best[0], best[1], best[2]


def subset_codes(colmat, subsets):
    """Base-3 class code (first edge least significant) of each vertex subset."""
    colmat = np.asarray(colmat)
    subsets = np.asarray(subsets, dtype=np.int64)
    k = subsets.shape[1]
    code = np.zeros(subsets.shape[0], dtype=np.int64)
    mult = 1
    for a in range(k):
        for b in range(a + 1, k):
            code += (colmat[subsets[:, a], subsets[:, b]].astype(np.int64) - 1) * mult
            mult *= 3
    return code
