"""Sum-of-squares candidates for the certificate LP.

The four reference square vectors are not enough to close the certificate LP (see
the project notes), so this module proposes extra square candidates
``average(u * u)`` for sigma-flag combinations ``u`` of level |sigma| + 1.

Search is floating point (a small SDP through cvxpy); everything handed back to
the caller is exact. Every proposed ``u`` lies in the exact subspace of
combinations that vanish on all rootings of the generalized Kierstead family
(three equal parts, Kierstead cross colours, arbitrary in-part colourings from
the two colours allowed in that part). Any valid certificate must be exactly
zero on graphs of that family, so squares outside the subspace are useless, and
restricting to it is what makes rounding to rationals possible.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .flags import (
    FlagVector,
    RationalVector,
    TOP_LEVEL,
    TypeSigma,
    _averaging_table,
    _product_table,
    flag_basis,
    recolor_to_type,
)
from .graphs import TricoloredGraph
from .lp import nullspace

log = logging.getLogger(__name__)

# Colours seen by a vertex of each part (0-based) in the Kierstead colouring;
# in the generalized family the in-part edges may use either of them.
PART_COLORS = {0: (1, 3), 1: (1, 2), 2: (2, 3)}


def kierstead_cross_color(p: int, q: int) -> int:
    """Colour of an edge between distinct parts p and q (0-based)."""
    p, q = min(p, q), max(p, q)
    return 3 if (p, q) == (0, 2) else p + 1


def _family_rootings(sigma: TypeSigma):
    """Yield (parts, labelled graph) for every way sigma roots in the family."""
    k = sigma.size
    pairs = [(a, b) for a in range(k) for b in range(a + 1, k)]
    for parts in itertools.product(range(3), repeat=k):
        choices = [
            PART_COLORS[parts[a]] if parts[a] == parts[b] else (kierstead_cross_color(parts[a], parts[b]),)
            for a, b in pairs
        ]
        for cols in itertools.product(*choices):
            g = TricoloredGraph(k, cols)
            if recolor_to_type(sigma, g) is not None:
                yield parts, g


def family_rooting_rows(sigma: TypeSigma) -> list[list[Fraction]]:
    """Spanning set of the extension-density vectors of family rootings.

    For a rooting and a part P the new vertex falls in P with probability 1/3;
    its colours to labelled vertices outside P are forced, those inside P follow
    an arbitrary distribution on PART_COLORS[P]. The point-mass distributions
    span everything, so each row picks one pattern per part.
    """
    k = sigma.size
    fb = flag_basis(sigma, k + 1)
    rows = set()
    for parts, g in _family_rootings(sigma):
        per_part = []
        for p in range(3):
            inside = [j for j in range(k) if parts[j] == p]
            flags = []
            for pattern in itertools.product(PART_COLORS[p], repeat=len(inside)):
                ext = {j: kierstead_cross_color(parts[j], p) for j in range(k) if parts[j] != p}
                ext.update(zip(inside, pattern))
                full = TricoloredGraph.from_function(
                    k + 1, lambda i, j: g.color(i, j) if j < k else ext[i]
                )
                flags.append(fb.class_index(recolor_to_type(sigma, full)))
            per_part.append(flags)
        for choice in itertools.product(*per_part):
            row = [Fraction(0)] * len(fb)
            for idx in choice:
                row[idx] += Fraction(1, 3)
            rows.add(tuple(row))
    return [list(r) for r in sorted(rows)]


@lru_cache(maxsize=None)
def square_space(sigma: TypeSigma) -> tuple[tuple[Fraction, ...], ...]:
    """Exact basis of the flag combinations vanishing on every family rooting."""
    width = len(flag_basis(sigma, sigma.size + 1))
    return tuple(tuple(u) for u in nullspace(family_rooting_rows(sigma), width))


@lru_cache(maxsize=None)
def averaged_products(sigma: TypeSigma) -> dict[tuple[int, int], dict[int, Fraction]]:
    """(x, y) -> average(F_x * F_y) as a sparse F_5 vector, for level k+1 flags x, y."""
    k = sigma.size
    level = k + 1
    if 2 * level - k != TOP_LEVEL:
        raise ValueError("square search needs 2(k+1)-k equal to the top level")
    rows = _product_table(sigma, level, level)
    avg = _averaging_table(sigma, TOP_LEVEL)
    out: dict[tuple[int, int], dict[int, Fraction]] = {}
    for fi, row in enumerate(rows):
        cls, coef = avg[fi]
        if not coef:
            continue
        for pair, p in row.items():
            slot = out.setdefault(pair, {})
            slot[cls] = slot.get(cls, Fraction(0)) + coef * p
    return out


def square_of(sigma: TypeSigma, u: Sequence[Fraction]) -> RationalVector:
    """average(u * u) in the F_5 basis, for u given in level-(k+1) flag coordinates."""
    out = [Fraction(0)] * 142
    for (x, y), slot in averaged_products(sigma).items():
        if u[x] and u[y]:
            s = u[x] * u[y]
            for cls, v in slot.items():
                out[cls] += s * v
    return RationalVector(out)


def flag_vector_of(sigma: TypeSigma, u: Sequence[Fraction]) -> FlagVector:
    fb = flag_basis(sigma, sigma.size + 1)
    return FlagVector(sigma, sigma.size + 1, {fb.keys[i]: v for i, v in enumerate(u) if v})


@dataclass
class SquareProposal:
    sigma: TypeSigma
    u: list[Fraction]  # level-(k+1) flag coordinates
    weight: float      # eigenvalue in the float solution (diagnostic only)


def _float_gram(sigma: TypeSigma, space):
    import numpy as np

    d = len(space)
    R = np.array([[float(x) for x in r] for r in space])
    P = np.zeros((R.shape[1], R.shape[1], 142))
    for (x, y), slot in averaged_products(sigma).items():
        for cls, v in slot.items():
            P[x, y, cls] = float(v)
    P = 0.5 * (P + P.transpose(1, 0, 2))
    G = np.einsum("ax,xyh,by->abh", R, P, R)
    return G.reshape(d * d, 142).T, d


def propose_squares(
    inequalities: Sequence[RationalVector],
    w3: RationalVector,
    sigmas: Sequence[TypeSigma],
    margin_share: float = 0.5,
    denominators: Sequence[int] = (10**3, 10**4, 10**6),
) -> list[list[SquareProposal]]:
    """Float SDP search, then rational rounding of the Gram eigenvectors.

    Step one maximises the uniform margin s in w3*s + sum(lam v) + sum(<Q, G>) <= 0.
    Step two fixes s at ``margin_share`` of the optimum and maximises the smallest
    eigenvalue of every Q, which yields a well-conditioned interior point whose
    eigenvectors survive rounding. Returns one proposal list per denominator.
    """
    import cvxpy as cp
    import numpy as np

    I = np.array([[float(x) for x in v] for v in inequalities]).T
    W = np.array([float(x) for x in w3])
    spaces = [square_space(s) for s in sigmas]
    grams = [_float_gram(s, sp) for s, sp in zip(sigmas, spaces)]

    def build(s_value, t_var):
        lam = cp.Variable(I.shape[1], nonneg=True)
        Qs = [cp.Variable((d, d), symmetric=True) for _, d in grams]
        expr = s_value * W + I @ lam
        cons = []
        for Q, (G, d) in zip(Qs, grams):
            expr = expr + G @ cp.vec(Q, order="F")
            cons.append(Q - t_var * np.eye(d) >> 0 if t_var is not None else Q >> 0)
        cons += [expr <= 0, cp.sum(lam) + sum(cp.trace(Q) for Q in Qs) <= 1]
        return lam, Qs, cons

    s = cp.Variable()
    _, _, cons = build(s, None)
    cp.Problem(cp.Maximize(s), cons).solve(solver="CLARABEL")
    s_star = float(s.value) if s.value is not None else 0.0
    log.info("square search: float margin %.3e", s_star)
    if s_star <= 0:
        return []
    t = cp.Variable()
    _, Qs, cons = build(margin_share * s_star, t)
    cp.Problem(cp.Maximize(t), cons).solve(solver="CLARABEL")
    log.info("square search: min eigenvalue %.3e", float(t.value))

    out = []
    for den in denominators:
        props = []
        for sigma, space, Q in zip(sigmas, spaces, Qs):
            ev, V = np.linalg.eigh(Q.value)
            for lam_i, vec in zip(ev, V.T):
                if lam_i <= 0:
                    continue
                scale = np.abs(vec).max()
                z = [Fraction(round(x / scale * den), den) for x in vec]
                u = [sum((z[a] * space[a][x] for a in range(len(space)) if z[a]), Fraction(0))
                     for x in range(len(space[0]))]
                props.append(SquareProposal(sigma, u, float(lam_i)))
        out.append(props)
    return out
