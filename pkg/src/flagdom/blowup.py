"""Random blow-ups G_k and Monte-Carlo density estimates.

G_k replaces every vertex v of a base graph G by k vertices; edges inside the
block of v are coloured independently and uniformly from A_v (the colours
incident with v in G), edges between blocks copy the base edge. Large G_k are
kept as numpy colour matrices (zero diagonal), never as TricoloredGraph.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .certificate import epsilon_rule
from .graphs import COLORS, TricoloredGraph, basis, induced_class_counts

MAX_BLOWUP = 5000
EXACT_LIMIT = 12
SLACK = 0.05

# Additive term (in units of k) allowed by each epsilon case of the argument.
CASE_TERMS = {Fraction(-1, 3): 0.0, Fraction(0): 1 / 3, Fraction(1, 6): 1 / 2, Fraction(1, 2): 5 / 6}


@dataclass(frozen=True)
class BlowupSpec:
    base: TricoloredGraph
    k: int
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.base.n < 2:
            raise ValueError("the base graph needs at least two vertices (A_v must be nonempty)")

    @property
    def order(self) -> int:
        return self.k * self.base.n


def incident_color_sets(g: TricoloredGraph) -> list[tuple[int, ...]]:
    return [tuple(sorted(g.incident_colors(v))) for v in range(g.n)]


def blow_up_matrix(spec: BlowupSpec) -> np.ndarray:
    """Colour matrix of G_k (uint8, zero diagonal); block of v is [v*k, (v+1)*k)."""
    if spec.order > MAX_BLOWUP:
        raise ValueError(f"k*|G| = {spec.order} exceeds the limit {MAX_BLOWUP}")
    g, k = spec.base, spec.k
    rng = np.random.default_rng(spec.seed)
    base = np.array(g.matrix(), dtype=np.uint8)
    mat = np.kron(base, np.ones((k, k), dtype=np.uint8))
    for v, colors in enumerate(incident_color_sets(g)):
        block = np.array(colors, dtype=np.uint8)[rng.integers(0, len(colors), size=(k, k))]
        block = np.triu(block, 1)
        mat[v * k:(v + 1) * k, v * k:(v + 1) * k] = block + block.T
    return mat


def blow_up(spec: BlowupSpec) -> TricoloredGraph:
    mat = blow_up_matrix(spec)
    n = mat.shape[0]
    iu = np.triu_indices(n, 1)
    return TricoloredGraph(n, mat[iu].tolist())


def _as_matrix(g) -> np.ndarray:
    if isinstance(g, TricoloredGraph):
        return np.array(g.matrix(), dtype=np.uint8)
    return np.asarray(g, dtype=np.uint8)


def sample_subsets(n: int, size: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    """``samples`` uniformly random ``size``-subsets of range(n), one per row."""
    if size > n:
        raise ValueError(f"cannot sample {size}-subsets of {n} vertices")
    out = np.empty((0, size), dtype=np.int64)
    while out.shape[0] < samples:
        need = samples - out.shape[0]
        draw = rng.integers(0, n, size=(int(need * 1.2) + 16, size))
        srt = np.sort(draw, axis=1)
        ok = np.all(srt[:, 1:] != srt[:, :-1], axis=1) if size > 1 else np.ones(len(draw), bool)
        out = np.vstack([out, draw[ok]])
    return out[:samples]


def sampled_classes(mat: np.ndarray, size: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Class index in F_size of each sampled subset."""
    subs = sample_subsets(mat.shape[0], size, samples, rng)
    codes = kernels.subset_codes(mat, subs)
    table = np.array(basis(size).class_of_code, dtype=np.int64)
    return table[codes]


@dataclass
class Estimate:
    estimate: float
    radius: float
    samples: int
    exact: bool = False

    def to_json(self) -> dict:
        return {"estimate": self.estimate, "radius": self.radius, "samples": self.samples, "exact": self.exact}


def estimate_density(h: TricoloredGraph, g, samples: int, seed: int = 0) -> Estimate:
    """Sample-mean estimate of density(h, g); radius 3 sqrt(p(1-p)/samples)."""
    if h.n > 5:
        raise ValueError("estimate_density supports |h| <= 5")
    mat = _as_matrix(g)
    rng = np.random.default_rng(seed)
    cls = sampled_classes(mat, h.n, samples, rng)
    p = float(np.mean(cls == basis(h.n).class_index(h)))
    return Estimate(p, 3 * math.sqrt(p * (1 - p) / samples), samples)


def class_frequencies(base: TricoloredGraph, k: int, samples: int, seed: int = 0) -> tuple[np.ndarray, int, bool]:
    """Empirical distribution over F_5 of 5-subsets of G_k.

    Returns (frequencies, number of subsets used, exact). Exact counting is used
    when |G_k| <= 12, otherwise ``samples`` uniformly random 5-subsets shared by
    every functional evaluated on the result.
    """
    mat = blow_up_matrix(BlowupSpec(base, k, seed))
    n = mat.shape[0]
    if n < 5:
        raise ValueError("G_k needs at least 5 vertices")
    if n <= EXACT_LIMIT:
        g = TricoloredGraph(n, mat[np.triu_indices(n, 1)].tolist())
        counts = np.array(induced_class_counts(g, 5), dtype=float)
        total = math.comb(n, 5)
        return counts / total, total, True
    rng = np.random.default_rng([seed, 1])
    cls = sampled_classes(mat, 5, samples, rng)
    return np.bincount(cls, minlength=len(basis(5))) / samples, samples, False


def functional_estimate(v: Sequence, freqs: np.ndarray, used: int, exact: bool) -> Estimate:
    """sum_H v[H] p(H) with a radius of three standard errors (0 when exact)."""
    w = np.array([float(x) for x in v])
    mean = float(w @ freqs)
    if exact:
        return Estimate(mean, 0.0, used, True)
    var = max(float((w * w) @ freqs) - mean * mean, 0.0)
    return Estimate(mean, 3 * math.sqrt(var / used), used)


def empirical_functional(v: Sequence, base: TricoloredGraph, k: int, samples: int, seed: int = 0) -> Estimate:
    """sum_H v[H] p(H, G_k) over F_5, from one shared sample of 5-subsets."""
    return functional_estimate(v, *class_frequencies(base, k, samples, seed))


# Domination slack ------------------------------------------------------------


def base_dominated(base: TricoloredGraph, quad_base: Sequence[int], quad_edges: dict, c: int) -> set[int]:
    """V: strongly c-dominated by the base vertices, plus v_j when two of the
    chosen vertices share the block of v_j and are joined in colour c."""
    vs = list(quad_base)
    out = {y for y in range(base.n) if any(x != y and base.color(x, y) == c for x in vs)}
    for (a, b), col in quad_edges.items():
        if col == c and vs[a] == vs[b]:
            out.add(vs[a])
    return out


@dataclass
class SlackReport:
    i: int
    c: int
    case: Fraction
    term: float
    k: int
    trials: int
    hits: int
    violations: int
    worst_excess: float
    seed: int

    @property
    def vacuous(self) -> bool:
        return self.hits == 0

    @property
    def passed(self) -> bool:
        return self.vacuous or self.violations <= 0.01 * self.hits

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "c": self.c,
            "case": str(self.case),
            "additiveTerm": self.term,
            "k": self.k,
            "seed": self.seed,
            "trials": self.trials,
            "hits": self.hits,
            "violations": self.violations,
            "worstExcess": self.worst_excess,
            "slack": SLACK,
            "vacuous": self.vacuous,
            "pass": self.passed,
        }


def check_domination_slack(
    base: TricoloredGraph,
    sigma: TricoloredGraph,
    c: int,
    k: int,
    trials: int,
    seed: int = 0,
    i: int = 0,
    max_draws: int | None = None,
) -> SlackReport:
    """Compare |W| for random quadruples of G_k inducing sigma with |V| k + term.

    ``term`` is the additive allowance of sigma's epsilon case for colour c (0,
    k/3, k/2 or 5k/6); a violation is |W| > |V| k + term + 0.05 k.
    """
    if base.n < 4:
        raise ValueError("the base graph needs at least 4 vertices")
    if c not in COLORS:
        raise ValueError(f"colour must be 1, 2 or 3, got {c}")
    case = epsilon_rule(sigma, c)
    term = CASE_TERMS[case] * k
    spec = BlowupSpec(base, k, seed)
    mat = blow_up_matrix(spec)
    n = mat.shape[0]
    rng = np.random.default_rng([seed, 2])
    draws = max_draws if max_draws is not None else 400 * trials
    # code of every vertex relabelling of sigma -> the relabelling
    targets = {}
    for perm in itertools.permutations(range(4)):
        targets.setdefault(sigma.relabel(perm).code(), perm)
    target_codes = np.array(sorted(targets), dtype=np.int64)
    hits = violations = 0
    worst = -math.inf
    done = 0
    while hits < trials and done < draws:
        batch = np.sort(sample_subsets(n, 4, min(8192, draws - done), rng), axis=1)
        done += len(batch)
        codes = kernels.subset_codes(mat, batch)
        for row in np.flatnonzero(np.isin(codes, target_codes)):
            perm = targets[int(codes[row])]
            # vertex a of sigma is vertex perm[a] of the sorted quadruple
            order = [int(batch[row][perm[a]]) for a in range(4)]
            hits += 1
            w = np.array(order)
            hit = mat[w] == c
            hit[np.arange(4), w] = False
            size_w = int(np.count_nonzero(hit.any(axis=0)))
            vs = [x // k for x in order]
            edges = {(a, b): int(mat[order[a], order[b]]) for a in range(4) for b in range(a + 1, 4)}
            size_v = len(base_dominated(base, vs, edges, c))
            excess = (size_w - size_v * k - term) / k
            worst = max(worst, excess)
            if excess > SLACK:
                violations += 1
            if hits >= trials:
                break
    return SlackReport(i, c, case, term, k, trials, hits, violations, worst if hits else 0.0, seed)


def random_base_graph(n: int, rng: np.random.Generator, max_colors: int | None = None) -> TricoloredGraph:
    """Uniform random colouring of K_n; with ``max_colors`` = 2 every vertex
    ends up seeing at most two colours (resampled until it does)."""
    while True:
        cols = rng.integers(1, 4, size=n * (n - 1) // 2).tolist()
        g = TricoloredGraph(n, cols)
        if max_colors is None or all(len(g.incident_colors(v)) <= max_colors for v in range(n)):
            return g
