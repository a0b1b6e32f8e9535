"""Independent brute-force oracles and frozen expected values.

Nothing here imports the package's canonical-form, density or domination code;
graphs are plain dicts {(i, j): colour} with i < j.
"""
import itertools
from fractions import Fraction

# Frozen expected values -------------------------------------------------------

CLASS_COUNTS = {1: 1, 2: 1, 3: 3, 4: 15, 5: 142}
SIGMA_C_LEVEL4 = 27
ADMISSIBLE_PAIRS = 14
ADMISSIBLE_BY_COLOR = {1: 7, 2: 5, 3: 2}
W3_ONES = 116                      # F_5 classes containing a vertex that sees 3 colours
COLORINGS = {2: 3, 3: 27, 4: 729, 5: 59049}
SIX_VERTEX_EXTENSIONS = 34506      # distinct colourings in the n=6 extension check
KIERSTEAD_BEST = {9: 6, 12: 8, 15: 10}
RAINBOW_BLOCK_M5_TRIANGLE = 7      # m + 2
DEFAULT_INTERPRETATION = "111123/112123/111223/112213/112223/112233/112323"
FEASIBLE_INTERPRETATIONS = 8       # of 16 admissible readings, SDP margin > 0

F = Fraction
REFERENCE_TABLE = {
    1: (F(-1, 3), F(0), F(-1, 3), F(-1, 3), F(0), F(0), F(0)),
    2: (F(1, 2), F(0), F(1, 6), F(-1, 3), F(-1, 3), F(-1, 3), F(0)),
    3: (F(1, 2), F(1, 2), F(1, 2), F(1, 2), F(1, 2), F(0), F(0)),
}


# Brute-force helpers -------------------------------------------------------------


def edges(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def graph(n, colors):
    return dict(zip(edges(n), colors))


def col(g, a, b):
    return g[(a, b) if a < b else (b, a)]


def canon(n, g):
    """Minimal colour tuple over all vertex and colour permutations."""
    best = None
    for p in itertools.permutations(range(n)):
        for cp in itertools.permutations((1, 2, 3)):
            t = tuple(cp[col(g, p[i], p[j]) - 1] for i, j in edges(n))
            if best is None or t < best:
                best = t
    return best


def count_classes(n):
    return len({canon(n, graph(n, c)) for c in itertools.product((1, 2, 3), repeat=len(edges(n)))})


def density(hn, h, gn, g):
    key = canon(hn, h)
    subs = list(itertools.combinations(range(gn), hn))
    hits = 0
    for s in subs:
        sub = {(a, b): col(g, s[a], s[b]) for a, b in edges(hn)}
        hits += canon(hn, sub) == key
    return Fraction(hits, len(subs))


def dominated(n, g, a, c):
    return {y for y in range(n) if any(x != y and col(g, x, y) == c for x in a)}


def best_size(n, g, t):
    best = 0
    for s in range(1, t + 1):
        for a in itertools.combinations(range(n), s):
            for c in (1, 2, 3):
                best = max(best, len(dominated(n, g, a, c)))
    return best
