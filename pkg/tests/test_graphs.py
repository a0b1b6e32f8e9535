import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from flagdom.graphs import (
    TricoloredGraph,
    basis,
    canonical_form,
    density,
    density_vector,
    enumerate_unlabeled,
    is_isomorphic,
    read_tcg,
    write_tcg,
)


def graphs(n):
    return st.lists(st.integers(1, 3), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2).map(
        lambda cols: TricoloredGraph(n, cols)
    )


def test_rejects_bad_colours():
    with pytest.raises(ValueError):
        TricoloredGraph(3, [1, 2, 4])
    with pytest.raises(ValueError):
        TricoloredGraph(3, [1, 2])


def test_tcg_roundtrip(tmp_path):
    g = TricoloredGraph(4, [1, 2, 3, 3, 2, 1])
    assert TricoloredGraph.from_tcg(g.to_tcg()) == g
    write_tcg(g, tmp_path / "g.tcg")
    assert read_tcg(tmp_path / "g.tcg") == g
    assert g.to_tcg() == "4\n1 2 3 3 2 1\n"


def test_code_roundtrip():
    for code in (0, 1, 100, 3**10 - 1):
        assert TricoloredGraph.from_code(5, code).code() == code


@pytest.mark.parametrize("level", [1, 2, 3, 4, 5])
def test_enumeration_counts(level):
    assert len(enumerate_unlabeled(level)) == oracle.CLASS_COUNTS[level]


@pytest.mark.parametrize("level", [3, 4])
def test_enumeration_matches_bruteforce(level):
    assert len(basis(level)) == oracle.count_classes(level)


def test_enumeration_sorted_and_distinct():
    b = basis(5)
    assert b.keys == sorted(b.keys)
    assert len(set(b.keys)) == len(b.keys)
    assert [canonical_form(g) for g in b.graphs] == b.keys


def test_enumeration_rejects_bad_level():
    with pytest.raises(ValueError):
        enumerate_unlabeled(0)
    with pytest.raises(ValueError):
        enumerate_unlabeled(6)


def test_canonical_examples():
    assert canonical_form(TricoloredGraph(3, [1, 1, 1])) == canonical_form(TricoloredGraph(3, [2, 2, 2]))
    assert canonical_form(TricoloredGraph(3, [1, 1, 2])) == canonical_form(TricoloredGraph(3, [3, 3, 1]))
    assert canonical_form(TricoloredGraph(3, [1, 2, 3])) != canonical_form(TricoloredGraph(3, [1, 1, 1]))


def test_canonical_rejects_large():
    with pytest.raises(ValueError):
        canonical_form(TricoloredGraph.monochromatic(8))


def test_canonical_key_hex_roundtrip():
    k = canonical_form(TricoloredGraph(4, [1, 2, 3, 1, 2, 3]))
    assert type(k).fromhex(k.hex()) == k
    assert k.hex() == k.hex().lower()


@pytest.mark.parametrize("n", [3, 4, 5])
def test_canonical_invariance_random(n):
    rng = random.Random(n)
    m = n * (n - 1) // 2
    for _ in range(1000):
        g = TricoloredGraph(n, [rng.randint(1, 3) for _ in range(m)])
        perm = list(range(n))
        rng.shuffle(perm)
        cperm = list((1, 2, 3))
        rng.shuffle(cperm)
        h = g.relabel(perm).recolor({c: cperm[c - 1] for c in (1, 2, 3)})
        assert canonical_form(h) == canonical_form(g)


@settings(max_examples=60, deadline=None)
@given(graphs(4), graphs(4))
def test_isomorphism_agrees_with_bruteforce(g, h):
    go = oracle.graph(4, g.colors)
    ho = oracle.graph(4, h.colors)
    assert is_isomorphic(g, h) == (oracle.canon(4, go) == oracle.canon(4, ho))


def test_density_examples():
    tri = TricoloredGraph(3, [1, 1, 1])
    assert density(tri, TricoloredGraph.monochromatic(4)) == 1
    one_recoloured = TricoloredGraph(4, [2, 1, 1, 1, 1, 1])
    assert density(TricoloredGraph(3, [1, 1, 2]), one_recoloured) == Fraction(1, 2)
    with pytest.raises(ValueError):
        density(TricoloredGraph.monochromatic(5), tri)


@settings(max_examples=30, deadline=None)
@given(graphs(3), graphs(5))
def test_density_matches_bruteforce(h, g):
    expected = oracle.density(3, oracle.graph(3, h.colors), 5, oracle.graph(5, g.colors))
    assert density(h, g) == expected


@pytest.mark.parametrize("level", [2, 3, 4])
def test_partition_of_unity_over_f5(level):
    for g in basis(5).graphs:
        assert sum(density_vector(g, level)) == 1


def test_chain_rule():
    f4 = basis(4).graphs
    for g in basis(5).graphs:
        dg4 = density_vector(g, 4)
        for h in basis(3).graphs:
            via = sum(density(h, m) * dg4[i] for i, m in enumerate(f4))
            assert via == density(h, g)


def test_degenerate_small_graphs():
    assert density(TricoloredGraph(1, []), TricoloredGraph(2, [3])) == 1
    assert len(basis(1)) == len(basis(2)) == 1


def test_pickle_roundtrip():
    import pickle

    from flagdom.flags import type_from_colors

    g = TricoloredGraph(4, [1, 2, 3, 3, 2, 1])
    assert pickle.loads(pickle.dumps(g)) == g
    k = canonical_form(g)
    assert pickle.loads(pickle.dumps(k)) == k
    s = type_from_colors(1, 2, 3)
    assert pickle.loads(pickle.dumps(s)) == s
    assert pickle.loads(pickle.dumps(s.unit())) == s.unit()
