import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from flagdom.domination import (
    CounterexampleFound,
    _six_vertex_codes,
    best_domination,
    exhaustive_theorem_check,
    is_counterexample,
    kierstead,
    kierstead_parts,
    rainbow_block,
    rainbow_triangles,
    random_pair_bound,
    strongly_dominated,
)
from flagdom.graphs import TricoloredGraph


def random_graph(n, rng):
    return TricoloredGraph(n, [rng.randint(1, 3) for _ in range(n * (n - 1) // 2)])


graphs6 = st.lists(st.integers(1, 3), min_size=15, max_size=15).map(lambda c: TricoloredGraph(6, c))


def test_strongly_dominated_examples():
    assert strongly_dominated(TricoloredGraph(2, [1]), [0, 1], 1) == {0, 1}
    rainbow = TricoloredGraph(3, [1, 2, 3])  # 01:1 02:2 12:3
    for (u, v), c in {(0, 1): 1, (0, 2): 2, (1, 2): 3}.items():
        assert strongly_dominated(rainbow, [u, v], c) == {u, v}
    g = kierstead(9)
    v1, v2, _ = kierstead_parts(9)
    assert strongly_dominated(g, v1[:2], 1) == set(v1 + v2)


def test_strongly_dominated_rejects():
    g = TricoloredGraph(3, [1, 1, 1])
    with pytest.raises(ValueError):
        strongly_dominated(g, [], 1)
    with pytest.raises(ValueError):
        strongly_dominated(g, [0], 4)
    with pytest.raises(ValueError):
        strongly_dominated(g, [5], 1)


@settings(max_examples=50, deadline=None)
@given(graphs6, st.sets(st.integers(0, 5), min_size=1, max_size=3), st.integers(0, 5), st.integers(1, 3))
def test_monotone_and_matches_oracle(g, a, extra, c):
    og = oracle.graph(6, g.colors)
    small = strongly_dominated(g, a, c)
    assert small == oracle.dominated(6, og, a, c)
    assert small <= strongly_dominated(g, a | {extra}, c)


@settings(max_examples=40, deadline=None)
@given(graphs6)
def test_best_domination_matches_oracle_and_is_monotone(g):
    sizes = [best_domination(g, t).size for t in range(1, 5)]
    assert sizes == sorted(sizes)
    assert sizes[3] == oracle.best_size(6, oracle.graph(6, g.colors), 4)


def test_best_domination_result_is_rechecked():
    g = random_graph(12, random.Random(3))
    res = best_domination(g, 4)
    assert res.dominated == strongly_dominated(g, res.dominators, res.color)
    assert res.size == len(res.dominated)
    doc = res.to_json()
    assert doc["ratio"] == {"num": str(Fraction(res.size, 12).numerator), "den": str(Fraction(res.size, 12).denominator)}


def test_best_domination_examples():
    assert best_domination(TricoloredGraph(2, [1]), 2).size == 2
    for n, size in oracle.KIERSTEAD_BEST.items():
        assert best_domination(kierstead(n), 4).size == size
    g = rainbow_block(5)
    tri = range(10, 13)
    assert best_domination(g, 3, pool=tri).size == oracle.RAINBOW_BLOCK_M5_TRIANGLE


def test_best_domination_bad_t():
    with pytest.raises(ValueError):
        best_domination(TricoloredGraph(3, [1, 2, 3]), 0)
    with pytest.raises(ValueError):
        best_domination(TricoloredGraph(3, [1, 2, 3]), 4)


def test_heuristic_mode_is_labelled():
    g = kierstead(45)
    res = best_domination(g, 2, samples=200)
    assert not res.exact
    assert res.to_json()["note"].startswith("heuristic")
    assert res.size == 30  # two vertices of V1 already reach 2n/3


def test_is_counterexample_examples():
    assert not is_counterexample(kierstead(9))
    rng = random.Random(0)
    for _ in range(20):
        g = random_graph(7, rng)
        cols = list(g.colors)
        # make vertex 0 monochromatic
        for j in range(1, 7):
            cols[j - 1] = 2
        assert not is_counterexample(TricoloredGraph(7, cols))
    with pytest.raises(ValueError):
        is_counterexample(TricoloredGraph(1, []))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_exhaustive_small(n):
    rep = exhaustive_theorem_check(n)
    assert rep.colorings == oracle.COLORINGS[n]
    assert rep.counterexamples == 0


def test_exhaustive_six_via_extensions():
    rep = exhaustive_theorem_check(6, threads=4)
    assert rep.colorings == oracle.SIX_VERTEX_EXTENSIONS
    assert rep.counterexamples == 0
    with pytest.raises(ValueError):
        exhaustive_theorem_check(7)


def test_observation_single_colour_vertex():
    # no graph on n <= 5 with a vertex seeing one colour is a counterexample
    for n in (2, 3, 4, 5):
        for code in range(3 ** (n * (n - 1) // 2)):
            g = TricoloredGraph.from_code(n, code)
            if len(g.incident_colors(0)) == 1:
                assert not is_counterexample(g)


def test_partition_argument_two_colours_everywhere():
    graphs = []
    for n in (3, 4, 5):
        graphs += [TricoloredGraph.from_code(n, c) for c in range(3 ** (n * (n - 1) // 2))]
    graphs += [TricoloredGraph.from_code(6, c) for c in _six_vertex_codes()]
    checked = 0
    for g in graphs:
        if all(len(g.incident_colors(v)) == 2 for v in range(g.n)):
            checked += 1
            assert 3 * best_domination(g, 2).size >= 2 * g.n
    assert checked > 0


def test_kierstead_examples():
    g = kierstead(3)
    assert g.colors == (1, 3, 2)
    assert all(len(g.incident_colors(v)) == 2 for v in range(3))
    g = kierstead(9)
    assert all(len(g.incident_colors(v)) <= 2 for v in range(9))
    with pytest.raises(ValueError):
        kierstead(10)


def test_rainbow_block_examples():
    g = rainbow_block(1)
    assert g.n == 5
    assert len(rainbow_triangles(g)) == 1
    g = rainbow_block(4)
    assert rainbow_triangles(g) == [(8, 9, 10)]
    assert all(g.color(i, j) == 1 for i, j in itertools.combinations(range(8), 2))
    with pytest.raises(ValueError):
        rainbow_block(0)


def test_random_pair_bound_small():
    rep = random_pair_bound(300, seed=1, pairs_sampled=100)
    assert abs(rep.mean - 5 / 9) < 0.03
    assert rep.max <= 1
    with pytest.raises(ValueError):
        random_pair_bound(50, 0, 10)
    assert random_pair_bound(300, 1, 100).to_json() == rep.to_json()
