"""Tricolored complete graphs: storage, canonical forms, enumeration, densities.

Vertices are 0-based in the Python API. Edge colors are the integers 1, 2, 3.
The colour array is stored upper-triangular, row-major: (0,1), (0,2), ...,
(0,n-1), (1,2), ...
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

COLORS = (1, 2, 3)
MAX_CANONICAL_N = 7
MAX_ENUM_LEVEL = 5


def num_edges(n: int) -> int:
    return n * (n - 1) // 2


@lru_cache(maxsize=None)
def edge_index(n: int) -> tuple[tuple[int, ...], ...]:
    """Matrix ``idx[i][j]`` giving the position of edge ij in the colour array."""
    idx = [[-1] * n for _ in range(n)]
    pos = 0
    for i in range(n):
        for j in range(i + 1, n):
            idx[i][j] = idx[j][i] = pos
            pos += 1
    return tuple(tuple(row) for row in idx)


class TricoloredGraph:
    """Complete graph on ``n`` vertices with every edge coloured 1, 2 or 3.

    Instances are immutable and hashable on their exact colour array (labels
    and colours as given, not up to isomorphism).
    """

    __slots__ = ("n", "colors", "_hash")

    def __init__(self, n: int, colors: Iterable[int]):
        colors = tuple(int(c) for c in colors)
        if n < 1:
            raise ValueError(f"vertex count must be >= 1, got {n}")
        if len(colors) != num_edges(n):
            raise ValueError(
                f"expected {num_edges(n)} edge colours for n={n}, got {len(colors)}"
            )
        for c in colors:
            if c not in COLORS:
                raise ValueError(f"edge colour {c} not in {{1,2,3}}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "_hash", hash((n, colors)))

    def __setattr__(self, name, value):
        raise AttributeError("TricoloredGraph is immutable")

    def __reduce__(self):
        return (TricoloredGraph, (self.n, self.colors))

    def __eq__(self, other):
        if not isinstance(other, TricoloredGraph):
            return NotImplemented
        return self.n == other.n and self.colors == other.colors

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"TricoloredGraph({self.n}, {''.join(map(str, self.colors))!r})"

    def __len__(self):
        return self.n

    @classmethod
    def monochromatic(cls, n: int, color: int = 1) -> "TricoloredGraph":
        return cls(n, [color] * num_edges(n))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "TricoloredGraph":
        n = len(matrix)
        return cls(n, [matrix[i][j] for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def from_function(cls, n: int, fn) -> "TricoloredGraph":
        """Build from ``fn(i, j)`` evaluated for every ``i < j``."""
        return cls(n, [fn(i, j) for i in range(n) for j in range(i + 1, n)])

    def color(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("loops carry no colour")
        return self.colors[edge_index(self.n)[i][j]]

    def matrix(self) -> list[list[int]]:
        """Symmetric colour matrix with zeros on the diagonal."""
        idx = edge_index(self.n)
        cols = self.colors
        return [[0 if i == j else cols[idx[i][j]] for j in range(self.n)] for i in range(self.n)]

    def induced(self, vertices: Sequence[int]) -> "TricoloredGraph":
        """Subgraph induced by ``vertices``, relabelled in the given order."""
        idx = edge_index(self.n)
        cols = self.colors
        m = len(vertices)
        return TricoloredGraph(
            m,
            [cols[idx[vertices[a]][vertices[b]]] for a in range(m) for b in range(a + 1, m)],
        )

    def relabel(self, perm: Sequence[int]) -> "TricoloredGraph":
        """Graph whose vertex ``a`` is vertex ``perm[a]`` of this graph."""
        return self.induced(perm)

    def recolor(self, mapping) -> "TricoloredGraph":
        """Apply a colour permutation given as a dict or a length-4 sequence."""
        return TricoloredGraph(self.n, [mapping[c] for c in self.colors])

    def incident_colors(self, v: int) -> frozenset[int]:
        return frozenset(self.color(v, u) for u in range(self.n) if u != v)

    def code(self) -> int:
        """Base-3 integer encoding of the colour array (first edge least significant)."""
        value = 0
        for c in reversed(self.colors):
            value = value * 3 + (c - 1)
        return value

    @classmethod
    def from_code(cls, n: int, code: int) -> "TricoloredGraph":
        colors = []
        for _ in range(num_edges(n)):
            code, r = divmod(code, 3)
            colors.append(r + 1)
        return cls(n, colors)

    # .tcg text format -----------------------------------------------------

    def to_tcg(self) -> str:
        return f"{self.n}\n{' '.join(map(str, self.colors))}\n"

    @classmethod
    def from_tcg(cls, text: str) -> "TricoloredGraph":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty .tcg document")
        n = int(lines[0])
        digits = lines[1].split() if len(lines) > 1 else []
        if len(digits) == 1 and len(digits[0]) > 1:
            digits = list(digits[0])
        return cls(n, [int(d) for d in digits])


def read_tcg(path) -> TricoloredGraph:
    return TricoloredGraph.from_tcg(Path(path).read_text())


def write_tcg(graph: TricoloredGraph, path) -> None:
    Path(path).write_text(graph.to_tcg())


# Canonical forms ------------------------------------------------------------


def normalize_colors(colors: Sequence[int]) -> tuple[int, ...]:
    """Rename colours in order of first appearance.

    This is the lexicographically smallest image of ``colors`` under S_3.
    """
    mapping = {}
    out = []
    nxt = 1
    for c in colors:
        m = mapping.get(c)
        if m is None:
            m = mapping[c] = nxt
            nxt += 1
        out.append(m)
    return tuple(out)


@lru_cache(maxsize=None)
def _vertex_perm_positions(n: int) -> tuple[tuple[int, ...], ...]:
    """For each vertex permutation, the source edge position of every target edge."""
    idx = edge_index(n)
    table = []
    for perm in itertools.permutations(range(n)):
        table.append(tuple(idx[perm[a]][perm[b]] for a in range(n) for b in range(a + 1, n)))
    return tuple(table)


def canonical_colors(g: TricoloredGraph) -> tuple[int, ...]:
    if g.n > MAX_CANONICAL_N:
        raise ValueError(f"canonical_form supports n <= {MAX_CANONICAL_N}, got {g.n}")
    cols = g.colors
    best = None
    for pos in _vertex_perm_positions(g.n):
        cand = normalize_colors([cols[p] for p in pos])
        if best is None or cand < best:
            best = cand
    return best if best is not None else ()


class CanonicalForm:
    """Isomorphism-class key under vertex and colour permutations."""

    __slots__ = ("key",)

    def __init__(self, key: bytes):
        object.__setattr__(self, "key", bytes(key))

    def __setattr__(self, name, value):
        raise AttributeError("CanonicalForm is immutable")

    def __reduce__(self):
        return (CanonicalForm, (self.key,))

    def __eq__(self, other):
        return isinstance(other, CanonicalForm) and self.key == other.key

    def __lt__(self, other):
        return self.key < other.key

    def __hash__(self):
        return hash(self.key)

    def hex(self) -> str:
        return self.key.hex()

    @classmethod
    def fromhex(cls, text: str) -> "CanonicalForm":
        return cls(bytes.fromhex(text))

    def graph(self) -> TricoloredGraph:
        return TricoloredGraph(self.key[0], self.key[1:])

    def __repr__(self):
        return f"CanonicalForm({self.hex()})"


def canonical_form(g: TricoloredGraph) -> CanonicalForm:
    """Lexicographically minimal colour array over all of S_n x S_3, prefixed by n."""
    if g.n <= MAX_ENUM_LEVEL:
        return basis(g.n).key_of_code[g.code()]
    return CanonicalForm(bytes([g.n]) + bytes(canonical_colors(g)))


def is_isomorphic(g: TricoloredGraph, h: TricoloredGraph) -> bool:
    return g.n == h.n and canonical_form(g) == canonical_form(h)


# Enumeration ----------------------------------------------------------------


class Basis:
    """The ordered classes of F_l together with a code -> class lookup."""

    def __init__(self, level: int):
        self.level = level
        n = level
        positions = _vertex_perm_positions(n)
        total = 3 ** num_edges(n)
        class_of = [-1] * total
        reps: list[tuple[int, ...]] = []
        for code in range(total):
            if class_of[code] != -1:
                continue
            cols = TricoloredGraph.from_code(n, code).colors
            orbit = set()
            best = None
            for pos in positions:
                permuted = [cols[p] for p in pos]
                for cperm in itertools.permutations(COLORS):
                    img = tuple(cperm[c - 1] for c in permuted)
                    orbit.add(img)
                cand = normalize_colors(permuted)
                if best is None or cand < best:
                    best = cand
            cid = len(reps)
            reps.append(best)
            for img in orbit:
                class_of[TricoloredGraph(n, img).code()] = cid
        order = sorted(range(len(reps)), key=lambda c: reps[c])
        rank = {cid: r for r, cid in enumerate(order)}
        self.keys = [CanonicalForm(bytes([n]) + bytes(reps[cid])) for cid in order]
        self.graphs = [TricoloredGraph(n, reps[cid]) for cid in order]
        self.class_of_code = [rank[c] for c in class_of]
        self.key_of_code = [self.keys[r] for r in self.class_of_code]
        self.index = {k: i for i, k in enumerate(self.keys)}

    def __len__(self):
        return len(self.keys)

    def class_index(self, g: TricoloredGraph) -> int:
        if g.n != self.level:
            raise ValueError(f"graph has {g.n} vertices, basis level is {self.level}")
        return self.class_of_code[g.code()]


@lru_cache(maxsize=None)
def basis(level: int) -> Basis:
    if not 1 <= level <= MAX_ENUM_LEVEL:
        raise ValueError(f"level must lie in [1, {MAX_ENUM_LEVEL}], got {level}")
    return Basis(level)


def enumerate_unlabeled(l: int) -> list[TricoloredGraph]:
    """One representative per isomorphism class of l-vertex tricoloured graphs.

    Sorted by canonical key; this order is the basis index used everywhere.
    """
    return list(basis(l).graphs)


def class_index(g: TricoloredGraph) -> int:
    return basis(g.n).class_index(g)


# Densities ------------------------------------------------------------------


def induced_class_counts(g: TricoloredGraph, size: int) -> list[int]:
    """Number of ``size``-subsets of V(g) inducing each class of F_size."""
    b = basis(size)
    counts = [0] * len(b)
    idx = edge_index(g.n)
    cols = g.colors
    pairs = [(a, c) for a in range(size) for c in range(a + 1, size)]
    for sub in itertools.combinations(range(g.n), size):
        code = 0
        for a, c in reversed(pairs):
            code = code * 3 + cols[idx[sub[a]][sub[c]]] - 1
        counts[b.class_of_code[code]] += 1
    return counts


def density(h: TricoloredGraph, g: TricoloredGraph) -> Fraction:
    """Probability that a random |h|-subset of V(g) induces a copy of h."""
    if h.n > g.n:
        raise ValueError(f"|h|={h.n} exceeds |g|={g.n}")
    if h.n > MAX_ENUM_LEVEL:
        key = canonical_form(h)
        hits = sum(
            1 for sub in itertools.combinations(range(g.n), h.n)
            if canonical_form(g.induced(sub)) == key
        )
        return Fraction(hits, comb(g.n, h.n))
    counts = induced_class_counts(g, h.n)
    return Fraction(counts[class_index(h)], comb(g.n, h.n))


def density_vector(g: TricoloredGraph, size: int) -> list[Fraction]:
    """Densities of every class of F_size in g, in basis order."""
    total = comb(g.n, size)
    return [Fraction(c, total) for c in induced_class_counts(g, size)]
