"""Typed flags over tricoloured graphs and the exact flag-algebra operations.

A type is a fully labelled tricoloured graph sigma on k vertices. A sigma-flag
of level l is a graph on l vertices whose first k vertices induce sigma
exactly. Two flags are the same class when a vertex bijection fixing the
labelled vertices, combined with a colour permutation from the colour
stabilizer of sigma, carries one to the other.

Everything is exact (``fractions.Fraction``) and computed by complete
enumeration of vertex subsets and injections.
"""
from __future__ import annotations

import itertools
import json
from fractions import Fraction
from functools import lru_cache
from math import comb, perm
from typing import Iterable, Mapping, Sequence

from .graphs import (
    COLORS,
    MAX_ENUM_LEVEL,
    TricoloredGraph,
    basis,
    canonical_form,
    density_vector,
    edge_index,
    normalize_colors,
)

TOP_LEVEL = MAX_ENUM_LEVEL


def _color_perms():
    return [(0,) + p for p in itertools.permutations(COLORS)]


class TypeSigma:
    """A fully labelled type together with its colour stabilizer."""

    __slots__ = ("graph", "color_stabilizer")

    def __init__(self, graph: TricoloredGraph):
        stab = tuple(
            p for p in _color_perms() if all(p[c] == c for c in set(graph.colors))
        )
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "color_stabilizer", stab)

    def __setattr__(self, name, value):
        raise AttributeError("TypeSigma is immutable")

    def __reduce__(self):
        return (TypeSigma, (self.graph,))

    @property
    def size(self) -> int:
        return self.graph.n

    def __len__(self):
        return self.graph.n

    def __eq__(self, other):
        return isinstance(other, TypeSigma) and self.graph == other.graph

    def __hash__(self):
        return hash(("type", self.graph))

    def __repr__(self):
        return f"TypeSigma({''.join(map(str, self.graph.colors))!r})"

    def key(self) -> str:
        """Hex of the labelled colour array, prefixed by the size."""
        return (bytes([self.size]) + bytes(self.graph.colors)).hex()

    @classmethod
    def from_key(cls, text: str) -> "TypeSigma":
        raw = bytes.fromhex(text)
        return cls(TricoloredGraph(raw[0], raw[1:]))

    def unit(self) -> "Flag":
        return Flag(self, self.graph)


def type_from_colors(*colors: int) -> TypeSigma:
    """Type whose labelled colour array is ``colors`` (row-major upper triangle)."""
    m = len(colors)
    n = 1
    while n * (n - 1) // 2 < m:
        n += 1
    return TypeSigma(TricoloredGraph(n, colors))


class Flag:
    """A sigma-flag: ``graph`` with its first ``len(type)`` vertices labelled."""

    __slots__ = ("type", "graph")

    def __init__(self, sigma: TypeSigma, graph: TricoloredGraph):
        k = sigma.size
        if graph.n < k:
            raise ValueError("flag has fewer vertices than its type")
        if graph.induced(range(k)) != sigma.graph:
            raise ValueError("labelled vertices do not induce the type exactly")
        object.__setattr__(self, "type", sigma)
        object.__setattr__(self, "graph", graph)

    def __setattr__(self, name, value):
        raise AttributeError("Flag is immutable")

    def __reduce__(self):
        return (Flag, (self.type, self.graph))

    @property
    def level(self) -> int:
        return self.graph.n

    def key(self) -> bytes:
        return flag_key(self.type, self.graph)

    def __eq__(self, other):
        return isinstance(other, Flag) and self.type == other.type and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Flag({self.type!r}, {''.join(map(str, self.graph.colors))!r})"


def flag_key(sigma: TypeSigma, g: TricoloredGraph) -> bytes:
    """Canonical key of the flag class of ``g`` (first k vertices labelled)."""
    k, n = sigma.size, g.n
    cols = g.colors
    best = None
    for pos in _unlabeled_perm_positions(k, n):
        permuted = [cols[p] for p in pos]
        for p in sigma.color_stabilizer:
            cand = tuple(p[c] for c in permuted)
            if best is None or cand < best:
                best = cand
    return bytes([k, n]) + bytes(best)


@lru_cache(maxsize=None)
def _unlabeled_perm_positions(k: int, n: int):
    idx = edge_index(n)
    out = []
    for tail in itertools.permutations(range(k, n)):
        order = tuple(range(k)) + tail
        out.append(tuple(idx[order[a]][order[b]] for a in range(n) for b in range(a + 1, n)))
    return tuple(out)


def recolor_to_type(sigma: TypeSigma, g: TricoloredGraph) -> TricoloredGraph | None:
    """Recolour ``g`` so its first k vertices induce sigma exactly.

    Returns None when the labelled part is not sigma up to a colour permutation.
    """
    k = sigma.size
    induced = g.induced(range(k)).colors
    mapping: dict[int, int] = {}
    for src, dst in zip(induced, sigma.graph.colors):
        if mapping.setdefault(src, dst) != dst:
            return None
    if len(set(mapping.values())) != len(mapping):
        return None
    free_src = [c for c in COLORS if c not in mapping]
    free_dst = [c for c in COLORS if c not in mapping.values()]
    mapping.update(zip(free_src, free_dst))
    return g.recolor(mapping)


# Flag bases -------------------------------------------------------------------


class FlagBasis:
    """Ordered flag classes of a given type and level."""

    def __init__(self, sigma: TypeSigma, level: int):
        k = sigma.size
        if level < k or level > TOP_LEVEL:
            raise ValueError(f"level must lie in [{k}, {TOP_LEVEL}], got {level}")
        self.type = sigma
        self.level = level
        idx = edge_index(level)
        # Positions of edges touching an unlabelled vertex, in colour-array order.
        fixed = {idx[a][b]: sigma.graph.color(a, b) for a in range(k) for b in range(a + 1, k)}
        free = [p for p in range(level * (level - 1) // 2) if p not in fixed]
        by_key: dict[bytes, int] = {}
        self.class_of: dict[tuple[int, ...], int] = {}
        raw: list[bytes] = []
        for ext in itertools.product(COLORS, repeat=len(free)):
            cols = [0] * (level * (level - 1) // 2)
            for p, c in fixed.items():
                cols[p] = c
            for p, c in zip(free, ext):
                cols[p] = c
            cols = tuple(cols)
            key = flag_key(sigma, TricoloredGraph(level, cols))
            cid = by_key.get(key)
            if cid is None:
                cid = by_key[key] = len(raw)
                raw.append(key)
            self.class_of[cols] = cid
        order = sorted(range(len(raw)), key=lambda c: raw[c])
        rank = {c: r for r, c in enumerate(order)}
        self.keys = [raw[c] for c in order]
        self.class_of = {cols: rank[c] for cols, c in self.class_of.items()}
        self.index = {key: i for i, key in enumerate(self.keys)}
        self.flags = [Flag(sigma, TricoloredGraph(level, key[2:])) for key in self.keys]

    def __len__(self):
        return len(self.keys)

    def class_index(self, g: TricoloredGraph) -> int:
        return self.class_of[g.colors]


@lru_cache(maxsize=None)
def flag_basis(sigma: TypeSigma, level: int) -> FlagBasis:
    return FlagBasis(sigma, level)


def enumerate_flags(sigma: TypeSigma, l: int) -> list[Flag]:
    """One representative per flag class of type sigma on l vertices."""
    if l < sigma.size or l > TOP_LEVEL:
        raise ValueError(f"level must lie in [{sigma.size}, {TOP_LEVEL}], got {l}")
    return list(flag_basis(sigma, l).flags)


def extension_flag(sigma: TypeSigma, colors: Sequence[int]) -> Flag:
    """Flag on k+1 vertices whose new vertex meets labelled vertex j in ``colors[j]``."""
    k = sigma.size
    if len(colors) != k:
        raise ValueError(f"need {k} extension colours, got {len(colors)}")
    g = TricoloredGraph.from_function(
        k + 1,
        lambda i, j: sigma.graph.color(i, j) if j < k else int(colors[i]),
    )
    return Flag(sigma, g)


# Densities and products --------------------------------------------------------


def _check_same_type(a: Flag, b: Flag):
    if a.type != b.type:
        raise ValueError("flags have different types")


def flag_density(h: Flag, g: Flag) -> Fraction:
    """Probability that the labelled vertices of g plus a random set of
    |h|-k unlabelled ones induce a flag isomorphic to h."""
    _check_same_type(h, g)
    if h.level > g.level:
        raise ValueError("h is larger than g")
    k = h.type.size
    target = h.key()
    free = range(k, g.level)
    hits = 0
    total = 0
    for sub in itertools.combinations(free, h.level - k):
        total += 1
        if flag_key(h.type, g.graph.induced(tuple(range(k)) + sub)) == target:
            hits += 1
    return Fraction(hits, total)


@lru_cache(maxsize=None)
def _density_table(sigma: TypeSigma, low: int, high: int) -> tuple[tuple[Fraction, ...], ...]:
    """table[g][h] = flag_density(h, g) for classes of levels high and low."""
    lo = flag_basis(sigma, low)
    hi = flag_basis(sigma, high)
    k = sigma.size
    rows = []
    for g in hi.flags:
        counts = [0] * len(lo)
        subs = list(itertools.combinations(range(k, high), low - k))
        for sub in subs:
            counts[lo.class_index(g.graph.induced(tuple(range(k)) + sub))] += 1
        rows.append(tuple(Fraction(c, len(subs)) for c in counts))
    return tuple(rows)


@lru_cache(maxsize=None)
def _product_table(sigma: TypeSigma, la: int, lb: int):
    """For every class F of level la+lb-k, the map (class_a, class_b) -> p(a, b; F)."""
    k = sigma.size
    m = la + lb - k
    ba, bb, bm = flag_basis(sigma, la), flag_basis(sigma, lb), flag_basis(sigma, m)
    labelled = tuple(range(k))
    rows = []
    for f in bm.flags:
        counts: dict[tuple[int, int], int] = {}
        total = 0
        free = range(k, m)
        for s1 in itertools.combinations(free, la - k):
            rest = [v for v in free if v not in s1]
            for s2 in itertools.combinations(rest, lb - k):
                ca = ba.class_index(f.graph.induced(labelled + s1))
                cb = bb.class_index(f.graph.induced(labelled + s2))
                counts[(ca, cb)] = counts.get((ca, cb), 0) + 1
                total += 1
        rows.append({pair: Fraction(c, total) for pair, c in counts.items()})
    return rows


class FlagVector:
    """Formal rational combination of sigma-flags of one level."""

    __slots__ = ("type", "level", "coeffs")

    def __init__(self, sigma: TypeSigma, level: int, coeffs: Mapping[bytes, Fraction] | None = None):
        self.type = sigma
        self.level = level
        b = flag_basis(sigma, level)
        self.coeffs: dict[bytes, Fraction] = {}
        for key, val in (coeffs or {}).items():
            if key not in b.index:
                raise ValueError(f"flag key {key.hex()} is not a class of this type/level")
            val = Fraction(val)
            if val:
                self.coeffs[key] = val

    @classmethod
    def from_flags(cls, sigma: TypeSigma, terms: Iterable[tuple[Fraction | int, Flag]]):
        terms = list(terms)
        if not terms:
            raise ValueError("cannot infer level from an empty combination")
        level = terms[0][1].level
        acc: dict[bytes, Fraction] = {}
        for coef, f in terms:
            if f.type != sigma or f.level != level:
                raise ValueError("all flags must share the type and level")
            acc[f.key()] = acc.get(f.key(), Fraction(0)) + Fraction(coef)
        return cls(sigma, level, acc)

    @classmethod
    def unit(cls, sigma: TypeSigma) -> "FlagVector":
        return cls(sigma, sigma.size, {sigma.unit().key(): Fraction(1)})

    def __getitem__(self, flag: Flag) -> Fraction:
        return self.coeffs.get(flag.key(), Fraction(0))

    def __add__(self, other: "FlagVector") -> "FlagVector":
        self._compatible(other)
        acc = dict(self.coeffs)
        for k, v in other.coeffs.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return FlagVector(self.type, self.level, acc)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, scalar):
        if isinstance(scalar, FlagVector):
            return flag_product(self, scalar)
        s = Fraction(scalar)
        return FlagVector(self.type, self.level, {k: v * s for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, FlagVector)
            and self.type == other.type
            and self.level == other.level
            and self.coeffs == other.coeffs
        )

    def _compatible(self, other):
        if self.type != other.type or self.level != other.level:
            raise ValueError("flag vectors differ in type or level")

    def lift_to(self, level: int) -> "FlagVector":
        """Same element of A^sigma written at a higher level."""
        if level == self.level:
            return self
        table = _density_table(self.type, self.level, level)
        lo = flag_basis(self.type, self.level)
        hi = flag_basis(self.type, level)
        out = {}
        for gi, row in enumerate(table):
            val = sum((row[lo.index[k]] * v for k, v in self.coeffs.items()), Fraction(0))
            if val:
                out[hi.keys[gi]] = val
        return FlagVector(self.type, level, out)

    def to_json(self) -> dict:
        return {
            "type": canonical_form(self.type.graph).hex(),
            "type_labelled": self.type.key(),
            "level": self.level,
            "entries": [
                {"classKey": k.hex(), "numerator": str(v.numerator), "denominator": str(v.denominator)}
                for k, v in sorted(self.coeffs.items())
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "FlagVector":
        sigma = TypeSigma.from_key(doc["type_labelled"])
        return cls(
            sigma,
            int(doc["level"]),
            {
                bytes.fromhex(e["classKey"]): Fraction(int(e["numerator"]), int(e["denominator"]))
                for e in doc["entries"]
            },
        )

    def __repr__(self):
        return f"FlagVector({self.type!r}, level={self.level}, terms={len(self.coeffs)})"


def flag_product(a: FlagVector, b: FlagVector) -> FlagVector:
    """Bilinear flag product; the result has level la + lb - k."""
    if a.type != b.type:
        raise ValueError("flag vectors have different types")
    k = a.type.size
    m = a.level + b.level - k
    if m > TOP_LEVEL:
        raise ValueError(f"product level {m} exceeds {TOP_LEVEL}")
    ba, bb, bm = flag_basis(a.type, a.level), flag_basis(a.type, b.level), flag_basis(a.type, m)
    ca = {ba.index[key]: v for key, v in a.coeffs.items()}
    cb = {bb.index[key]: v for key, v in b.coeffs.items()}
    out = {}
    for fi, row in enumerate(_product_table(a.type, a.level, b.level)):
        val = Fraction(0)
        for (i, j), p in row.items():
            x = ca.get(i)
            if x is None:
                continue
            y = cb.get(j)
            if y is None:
                continue
            val += p * x * y
        if val:
            out[bm.keys[fi]] = val
    return FlagVector(a.type, m, out)


# Unlabelled side ---------------------------------------------------------------


class RationalVector:
    """Exact coefficient vector over the basis of F_5 (142 entries)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Fraction | int]):
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != len(basis(TOP_LEVEL)):
            raise ValueError(f"expected {len(basis(TOP_LEVEL))} coefficients, got {len(coeffs)}")
        self.coeffs = coeffs

    @classmethod
    def zeros(cls) -> "RationalVector":
        return cls([0] * len(basis(TOP_LEVEL)))

    @classmethod
    def unit_vector(cls, index: int) -> "RationalVector":
        v = [Fraction(0)] * len(basis(TOP_LEVEL))
        v[index] = Fraction(1)
        return cls(v)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __add__(self, other: "RationalVector") -> "RationalVector":
        return RationalVector([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "RationalVector") -> "RationalVector":
        return RationalVector([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return RationalVector([-a for a in self.coeffs])

    def __mul__(self, scalar) -> "RationalVector":
        s = Fraction(scalar)
        return RationalVector([a * s for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, RationalVector) and self.coeffs == other.coeffs

    def dot(self, values: Sequence) -> object:
        return sum(a * b for a, b in zip(self.coeffs, values))

    def to_json(self) -> dict:
        keys = basis(TOP_LEVEL).keys
        return {
            "level": TOP_LEVEL,
            "entries": [
                {"classKey": keys[i].hex(), "numerator": str(v.numerator), "denominator": str(v.denominator)}
                for i, v in enumerate(self.coeffs)
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "RationalVector":
        b = basis(TOP_LEVEL)
        from .graphs import CanonicalForm

        v = [Fraction(0)] * len(b)
        for e in doc["entries"]:
            v[b.index[CanonicalForm.fromhex(e["classKey"])]] = Fraction(
                int(e["numerator"]), int(e["denominator"])
            )
        return cls(v)

    def __repr__(self):
        nz = sum(1 for c in self.coeffs if c)
        return f"RationalVector(nonzero={nz})"


@lru_cache(maxsize=None)
def _lift_matrix(level: int) -> tuple[tuple[Fraction, ...], ...]:
    """rows[h] = (density(h, g) for g in F_5) for every class h of F_level."""
    top = basis(TOP_LEVEL)
    cols = [density_vector(g, level) for g in top.graphs]
    return tuple(tuple(col[h] for col in cols) for h in range(len(basis(level))))


def lift(element, level: int | None = None) -> RationalVector:
    """Express an unlabelled element in the F_5 basis.

    ``element`` is a TricoloredGraph, or a mapping/sequence of coefficients over
    the classes of F_level (``level`` required in that case).
    """
    if isinstance(element, TricoloredGraph):
        level = element.n
        coeffs = {basis(level).class_index(element): Fraction(1)}
    elif isinstance(element, Mapping):
        coeffs = {int(i): Fraction(v) for i, v in element.items()}
    else:
        coeffs = {i: Fraction(v) for i, v in enumerate(element) if v}
    if level is None:
        raise ValueError("level is required for coefficient input")
    if level > TOP_LEVEL:
        raise ValueError(f"level {level} exceeds {TOP_LEVEL}")
    rows = _lift_matrix(level)
    out = [Fraction(0)] * len(basis(TOP_LEVEL))
    for h, v in coeffs.items():
        if not v:
            continue
        for gi, d in enumerate(rows[h]):
            if d:
                out[gi] += v * d
    return RationalVector(out)


@lru_cache(maxsize=None)
def _averaging_table(sigma: TypeSigma, level: int) -> tuple[tuple[int, Fraction], ...]:
    """For each flag class: (index of its unlabelled class in F_level, probability p)."""
    fb = flag_basis(sigma, level)
    ub = basis(level)
    k = sigma.size
    sig_norm = normalize_colors(sigma.graph.colors)
    counts = [0] * len(fb)
    for rep in ub.graphs:
        for emb in itertools.permutations(range(level), k):
            if normalize_colors(rep.induced(emb).colors) != sig_norm:
                continue
            order = emb + tuple(v for v in range(level) if v not in emb)
            g = recolor_to_type(sigma, rep.induced(order))
            counts[fb.class_index(g)] += 1
    injections = perm(level, k)
    out = []
    for f, c in zip(fb.flags, counts):
        out.append((ub.class_index(f.graph), Fraction(c, injections)))
    return tuple(out)


def average_flag(f: Flag) -> tuple[int, Fraction]:
    """The averaging operator on a single flag: (unlabelled class index, p)."""
    table = _averaging_table(f.type, f.level)
    return table[flag_basis(f.type, f.level).index[f.key()]]


def average(a: FlagVector) -> RationalVector:
    """Averaging (unlabelling) operator, lifted into the F_5 basis."""
    if a.level > TOP_LEVEL:
        raise ValueError(f"level {a.level} exceeds {TOP_LEVEL}")
    table = _averaging_table(a.type, a.level)
    fb = flag_basis(a.type, a.level)
    unl: dict[int, Fraction] = {}
    for key, v in a.coeffs.items():
        h, p = table[fb.index[key]]
        unl[h] = unl.get(h, Fraction(0)) + v * p
    return lift(unl, a.level)
