import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from flagdom.certificate import default_interpretation
from flagdom.flags import (
    Flag,
    FlagVector,
    RationalVector,
    TypeSigma,
    _density_table,
    average,
    enumerate_flags,
    extension_flag,
    flag_basis,
    flag_density,
    flag_product,
    lift,
    type_from_colors,
)
from flagdom.graphs import TricoloredGraph, basis, density

SIGMA_A = type_from_colors(1, 1, 1)
SIGMA_B = type_from_colors(1, 1, 2)
SIGMA_C = type_from_colors(1, 2, 3)
SIGMAS = {"A": SIGMA_A, "B": SIGMA_B, "C": SIGMA_C}
SIGMAS.update({f"{i}": default_interpretation().sigma(i) for i in range(1, 8)})


def random_vector(sigma, level, rng, terms=4):
    fb = flag_basis(sigma, level)
    keys = rng.sample(fb.keys, min(terms, len(fb)))
    return FlagVector(sigma, level, {k: Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for k in keys})


def test_stabilizer_is_subgroup():
    for sigma in SIGMAS.values():
        stab = set(sigma.color_stabilizer)
        assert (0, 1, 2, 3) in stab
        for p, q in itertools.product(stab, repeat=2):
            assert (0,) + tuple(p[q[c]] for c in (1, 2, 3)) in stab
    assert len(SIGMA_A.color_stabilizer) == 2
    assert len(SIGMA_C.color_stabilizer) == 1


def orbit_count_sigma_a():
    seen = set()
    for t in itertools.product((1, 2, 3), repeat=3):
        seen.add(min(t, tuple({1: 1, 2: 3, 3: 2}[c] for c in t)))
    return len(seen)


def test_enumerate_flags_examples():
    assert len(enumerate_flags(SIGMA_A, 4)) == orbit_count_sigma_a() == 14
    assert len(enumerate_flags(SIGMA_C, 4)) == 27
    for sigma in SIGMAS.values():
        assert len(enumerate_flags(sigma, sigma.size)) == 1
    with pytest.raises(ValueError):
        enumerate_flags(SIGMA_A, 6)
    with pytest.raises(ValueError):
        enumerate_flags(SIGMAS["1"], 3)


def test_flag_rejects_wrong_labelled_part():
    with pytest.raises(ValueError):
        Flag(SIGMA_C, TricoloredGraph(4, [1, 1, 1, 1, 1, 1]))


def test_flag_density_examples():
    g = Flag(SIGMA_A, TricoloredGraph.monochromatic(5))
    assert flag_density(SIGMA_A.unit(), g) == 1
    assert flag_density(extension_flag(SIGMA_A, (1, 1, 1)), g) == 1
    with pytest.raises(ValueError):
        flag_density(SIGMA_B.unit(), g)


@pytest.mark.parametrize("name", list(SIGMAS))
def test_partition_of_unity(name):
    sigma = SIGMAS[name]
    k = sigma.size
    for low, high in itertools.combinations(range(k, 6), 2):
        for row in _density_table(sigma, low, high):
            assert sum(row) == 1


def test_flag_density_matches_table():
    rng = random.Random(1)
    hi = flag_basis(SIGMA_B, 5)
    lo = flag_basis(SIGMA_B, 4)
    table = _density_table(SIGMA_B, 4, 5)
    for gi in rng.sample(range(len(hi)), 10):
        for hi_ in range(len(lo)):
            assert flag_density(lo.flags[hi_], hi.flags[gi]) == table[gi][hi_]


def test_product_examples():
    f = FlagVector.from_flags(SIGMA_A, [(1, extension_flag(SIGMA_A, (1, 1, 1)))])
    sq = flag_product(f, f)
    mono = Flag(SIGMA_A, TricoloredGraph.monochromatic(5))
    assert sq[mono] == 1
    x = random_vector(SIGMA_B, 4, random.Random(0))
    assert flag_product(FlagVector.unit(SIGMA_B), x) == x
    with pytest.raises(ValueError):
        flag_product(x, FlagVector.unit(SIGMA_B).lift_to(5))


@pytest.mark.parametrize("name", ["A", "B", "C"])
def test_product_commutative(name):
    sigma = SIGMAS[name]
    rng = random.Random(name)
    level = sigma.size + 1
    for _ in range(50):
        a = random_vector(sigma, level, rng)
        b = random_vector(sigma, level, rng)
        assert flag_product(a, b) == flag_product(b, a)


def test_scalar_unit_product():
    b = random_vector(SIGMA_C, 4, random.Random(3))
    assert flag_product(FlagVector.unit(SIGMA_C) * 2, b) == b * 2


def test_average_examples():
    tri = basis(3)
    mono, two, rainbow = (TricoloredGraph(3, c) for c in ((1, 1, 1), (1, 1, 2), (1, 2, 3)))
    assert average(FlagVector.unit(SIGMA_C)) == lift(rainbow)
    assert average(FlagVector.unit(SIGMA_B)) == lift(two) * Fraction(1, 3)
    assert average(FlagVector.unit(SIGMA_A)) == lift(mono)
    assert len(tri) == 3


def test_average_linear():
    rng = random.Random(7)
    for sigma in (SIGMA_B, SIGMA_C, SIGMAS["4"]):
        for _ in range(5):
            a = random_vector(sigma, 5, rng)
            b = random_vector(sigma, 5, rng)
            al, be = Fraction(rng.randint(-9, 9), 7), Fraction(rng.randint(-9, 9), 5)
            assert average(a * al + b * be) == average(a) * al + average(b) * be


def test_average_independent_of_level():
    for sigma in SIGMAS.values():
        v = average(FlagVector.unit(sigma).lift_to(5))
        assert v == average(FlagVector.unit(sigma))


def test_lift_examples():
    for i, g in enumerate(basis(5).graphs[:5]):
        assert lift(g) == RationalVector.unit_vector(i)
    assert lift(TricoloredGraph(1, [])) == RationalVector([1] * 142)


def test_lift_chain_rule():
    f4 = basis(4).graphs
    for h in basis(3).graphs:
        via = RationalVector.zeros()
        for m in f4:
            d = density(h, m)
            if d:
                via = via + lift(m) * d
        assert via == lift(h)


def test_json_roundtrip():
    rng = random.Random(5)
    v = random_vector(SIGMAS["3"], 5, rng)
    assert FlagVector.from_json(v.to_json()) == v
    r = average(v)
    assert RationalVector.from_json(r.to_json()) == r


def test_rational_vector_length():
    with pytest.raises(ValueError):
        RationalVector([1, 2, 3])


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=3, max_size=3), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_product_bilinear(xs, ys):
    fl = enumerate_flags(SIGMA_B, 4)[:3]
    a = FlagVector.from_flags(SIGMA_B, zip(xs, fl))
    b = FlagVector.from_flags(SIGMA_B, zip(ys, fl))
    assert flag_product(a + b, b) == flag_product(a, b) + flag_product(b, b)
