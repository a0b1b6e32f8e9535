"""Brute-force strong monochromatic domination and the extremal constructions.

A set A strongly c-dominates y when some x in A, x != y, has color(xy) = c;
this covers the y outside A and the y inside A in one formula. All 2n/3
comparisons are done in integers (3 * size >= 2 * n).
"""
from __future__ import annotations

import itertools
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .graphs import COLORS, TricoloredGraph, basis, num_edges

log = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 40


class CounterexampleFound(AssertionError):
    """A graph violating the four-vertex bound was found (an implementation bug)."""

    def __init__(self, graph: TricoloredGraph, best: "DominationResult"):
        super().__init__(f"counterexample on {graph.n} vertices: {graph.to_tcg().strip()!r}")
        self.graph = graph
        self.best = best


@dataclass
class DominationResult:
    n: int
    t: int
    color: int
    dominators: tuple[int, ...]
    dominated: frozenset[int]
    exact: bool = True
    seed: int | None = None

    @property
    def size(self) -> int:
        return len(self.dominated)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.size, self.n)

    def to_json(self) -> dict:
        doc = {
            "n": self.n,
            "t": self.t,
            "color": self.color,
            "dominators": list(self.dominators),
            "size": self.size,
            "ratio": {"num": str(self.ratio.numerator), "den": str(self.ratio.denominator)},
            "exact": self.exact,
        }
        if not self.exact:
            doc["note"] = "heuristic search: size is a lower bound"
            doc["seed"] = self.seed
        return doc


def color_masks(g: TricoloredGraph) -> list[list[int]]:
    """masks[c-1][v] = bitset of the colour-c neighbours of v."""
    masks = [[0] * g.n for _ in COLORS]
    for i in range(g.n):
        for j in range(i + 1, g.n):
            c = g.color(i, j) - 1
            masks[c][i] |= 1 << j
            masks[c][j] |= 1 << i
    return masks


def _bits(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def strongly_dominated(g: TricoloredGraph, a: Iterable[int], c: int) -> frozenset[int]:
    a = list(a)
    if not a:
        raise ValueError("the dominating set must be nonempty")
    if c not in COLORS:
        raise ValueError(f"colour must be 1, 2 or 3, got {c}")
    for x in a:
        if not 0 <= x < g.n:
            raise ValueError(f"vertex {x} not in graph of order {g.n}")
    return frozenset(
        y for y in range(g.n) if any(x != y and g.color(x, y) == c for x in a)
    )


def best_domination(
    g: TricoloredGraph,
    t: int,
    pool: Sequence[int] | None = None,
    seed: int = 0,
    samples: int = 20000,
) -> DominationResult:
    """Largest strongly c-dominated set over colours c and subsets of size <= t.

    Exhaustive (with deterministic tie-breaks: smaller colour, then the
    lexicographically smaller subset) when the dominator pool has at most 40
    vertices. Larger pools use random subsets plus greedy completion and report
    a lower bound (``exact`` is False).
    """
    if not 1 <= t <= g.n:
        raise ValueError(f"t must lie in [1, {g.n}], got {t}")
    pool = list(range(g.n)) if pool is None else sorted(set(pool))
    if not pool:
        raise ValueError("empty dominator pool")
    masks = color_masks(g)
    if len(pool) <= EXHAUSTIVE_LIMIT and g.n <= 64:
        size, c, sub = kernels.best_subset(masks, pool, t)
        dom = _union(masks[c - 1], sub)
        return DominationResult(g.n, t, c, tuple(sub), _bits(dom))
    return _heuristic(g, masks, pool, t, seed, samples)


def _union(row: Sequence[int], sub: Iterable[int]) -> int:
    acc = 0
    for v in sub:
        acc |= row[v]
    return acc


def _heuristic(g, masks, pool, t, seed, samples) -> DominationResult:
    rng = random.Random(seed)
    best = (-1, 0, ())
    k = min(t, len(pool))
    for c in COLORS:
        row = masks[c - 1]
        # greedy from every start vertex, then random subsets
        starts = [(v,) for v in pool] + [tuple(rng.sample(pool, k)) for _ in range(samples)]
        for start in starts:
            sub = list(start)
            acc = _union(row, sub)
            while len(sub) < k:
                v = max((u for u in pool if u not in sub), key=lambda u: (bin(acc | row[u]).count("1"), -u))
                sub.append(v)
                acc |= row[v]
            size = bin(acc).count("1")
            if size > best[0]:
                best = (size, c, tuple(sorted(sub)))
    size, c, sub = best
    return DominationResult(g.n, t, c, sub, _bits(_union(masks[c - 1], sub)), exact=False, seed=seed)


def is_counterexample(g: TricoloredGraph) -> bool:
    if g.n < 2:
        raise ValueError("counterexamples are defined for n >= 2")
    best = best_domination(g, min(4, g.n))
    return 3 * best.size < 2 * g.n


@dataclass
class TheoremCheckReport:
    n: int
    mode: str
    colorings: int
    counterexamples: int
    min_best: int
    min_best_witness: str
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "colorings": self.colorings,
            "counterexamples": self.counterexamples,
            "minBestSize": self.min_best,
            "minBestWitness": self.min_best_witness,
            **self.extra,
        }


def _check_chunk(args):
    n, codes = args
    worst = None
    for code in codes:
        g = TricoloredGraph.from_code(n, code)
        best = best_domination(g, min(4, n))
        if 3 * best.size < 2 * n:
            return ("counterexample", code, best.size)
        if worst is None or best.size < worst[1]:
            worst = (code, best.size)
    return ("ok", worst[0], worst[1])


def _six_vertex_codes() -> list[int]:
    """One graph per way of adding a sixth vertex to each class of F_5.

    Every 6-vertex graph is isomorphic to one of these (its first five vertices
    induce some class), so they cover every class of F_6.
    """
    codes = []
    for rep in basis(5).graphs:
        for ext in itertools.product(COLORS, repeat=5):
            g = TricoloredGraph.from_function(6, lambda i, j: rep.color(i, j) if j < 5 else ext[i])
            codes.append(g.code())
    return sorted(set(codes))


def exhaustive_theorem_check(n: int, threads: int = 1) -> TheoremCheckReport:
    """No colouring of K_n is a counterexample: every colouring for n <= 5,
    every class (via one-vertex extensions of F_5) for n = 6."""
    if n < 2 or n > 6:
        raise ValueError("exhaustive check supports 2 <= n <= 6")
    if n <= 5:
        codes = list(range(3 ** num_edges(n)))
        mode = "all colorings"
    else:
        codes = _six_vertex_codes()
        mode = "extensions of F_5 classes"
    chunk = max(1, len(codes) // (8 * max(1, threads)))
    jobs = [(n, codes[i:i + chunk]) for i in range(0, len(codes), chunk)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_check_chunk, jobs))
    else:
        results = [_check_chunk(j) for j in jobs]
    worst_code, worst = None, None
    for status, code, size in results:
        if status == "counterexample":
            g = TricoloredGraph.from_code(n, code)
            raise CounterexampleFound(g, best_domination(g, min(4, n)))
        if worst is None or size < worst or (size == worst and code < worst_code):
            worst_code, worst = code, size
    return TheoremCheckReport(
        n, mode, len(codes), 0, worst, TricoloredGraph.from_code(n, worst_code).to_tcg().strip()
    )


# Constructions ------------------------------------------------------------------


def kierstead(n: int) -> TricoloredGraph:
    """Three equal parts V1, V2, V3; inside V_i colour i; V1-V2 colour 1,
    V2-V3 colour 2, V1-V3 colour 3."""
    if n < 3 or n % 3:
        raise ValueError(f"n must be a positive multiple of 3, got {n}")
    size = n // 3

    def color(x, y):
        i, j = sorted((x // size + 1, y // size + 1))
        return i if j - i <= 1 else 3

    return TricoloredGraph.from_function(n, color)


def kierstead_parts(n: int) -> list[list[int]]:
    size = n // 3
    return [list(range(p * size, (p + 1) * size)) for p in range(3)]


def rainbow_block(m: int) -> TricoloredGraph:
    """A colour-1 clique on 2m vertices plus a rainbow triangle on the last three
    vertices; clique vertices 0..m-1 meet the triangle in colour 1, the others
    in colour 2."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    n = 2 * m + 3
    tri = (2 * m, 2 * m + 1, 2 * m + 2)
    tri_colors = {(tri[0], tri[1]): 1, (tri[0], tri[2]): 2, (tri[1], tri[2]): 3}

    def color(x, y):
        if y < 2 * m:
            return 1
        if x < 2 * m:
            return 1 if x < m else 2
        return tri_colors[(x, y)]

    return TricoloredGraph.from_function(n, color)


def rainbow_triangles(g: TricoloredGraph) -> list[tuple[int, int, int]]:
    return [
        t for t in itertools.combinations(range(g.n), 3)
        if {g.color(t[0], t[1]), g.color(t[0], t[2]), g.color(t[1], t[2])} == set(COLORS)
    ]


def random_coloring_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    upper = np.triu(rng.integers(1, 4, size=(n, n), dtype=np.uint8), 1)
    return upper + upper.T


def matrix_to_graph(mat: np.ndarray) -> TricoloredGraph:
    n = mat.shape[0]
    return TricoloredGraph(n, [int(mat[i, j]) for i in range(n) for j in range(i + 1, n)])


@dataclass
class PairBoundReport:
    n: int
    seed: int
    pairs: int
    mean: float
    max: float

    def to_json(self) -> dict:
        return {"n": self.n, "seed": self.seed, "pairs": self.pairs, "mean": self.mean, "max": self.max}


def random_pair_bound(n: int, seed: int, pairs_sampled: int) -> PairBoundReport:
    """Uniformly random colouring of K_n; dominated fractions of sampled pairs.

    ``mean`` averages over pairs and colours; ``max`` is the largest fraction
    over pairs and colours.
    """
    if n < 100:
        raise ValueError("random_pair_bound needs n >= 100")
    rng = np.random.default_rng(seed)
    mat = random_coloring_matrix(n, rng)
    fracs = []
    for _ in range(pairs_sampled):
        x, y = rng.choice(n, size=2, replace=False)
        for c in COLORS:
            fracs.append(np.count_nonzero((mat[x] == c) | (mat[y] == c)) / n)
    return PairBoundReport(n, seed, pairs_sampled, float(np.mean(fracs)), float(np.max(fracs)))
