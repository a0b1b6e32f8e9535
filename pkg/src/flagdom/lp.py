"""Exact rational feasibility LP by the two-phase simplex method (phase one only).

Solves: find x >= 0 with A x <= b, every entry a ``Fraction``. Pivoting uses
Bland's rule (smallest eligible column, then smallest basic index on ties), so
the run is deterministic and terminates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class LPError(RuntimeError):
    pass


@dataclass
class FeasibilityResult:
    feasible: bool
    x: list[Fraction] | None
    pivots: int
    # Optimal phase-one objective (sum of artificials) when infeasible.
    infeasibility: Fraction | None = None
    # Farkas witness y >= 0 with y A >= 0 and y b < 0, when infeasible.
    farkas: list[Fraction] | None = None


def solve_feasibility(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction], max_pivots: int = 100_000) -> FeasibilityResult:
    m = len(A)
    n = len(A[0]) if m else 0
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    # Columns: x (n), slack (m), artificial (one per row with b < 0).
    art_rows = [i for i in range(m) if b[i] < 0]
    n_art = len(art_rows)
    width = n + m + n_art
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    art_col = {}
    for i in range(m):
        row = [Fraction(0)] * (width + 1)
        sign = -1 if b[i] < 0 else 1
        for j in range(n):
            if A[i][j]:
                row[j] = sign * A[i][j]
        row[n + i] = Fraction(sign)
        row[width] = sign * b[i]
        if b[i] < 0:
            col = n + m + len(art_col)
            art_col[i] = col
            row[col] = Fraction(1)
            basis.append(col)
        else:
            basis.append(n + i)
        tab.append(row)

    # Phase-one objective: minimise the sum of artificials -> reduced costs.
    cost = [Fraction(0)] * (width + 1)
    for i in art_rows:
        for j in range(width + 1):
            if tab[i][j]:
                cost[j] -= tab[i][j]
    for col in art_col.values():
        cost[col] = Fraction(0)

    pivots = 0
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        leave = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise LPError("phase-one objective unbounded; tableau is corrupt")
        _pivot(tab, cost, leave, enter)
        basis[leave] = enter
        pivots += 1
        if pivots > max_pivots:
            raise LPError(f"no convergence after {max_pivots} pivots")

    residual = -cost[width]
    if residual > 0:
        # Reduced costs of the slack columns are the dual multipliers: they are
        # >= 0 at optimality, y A equals the reduced costs of x (>= 0) and
        # y b = -residual < 0.
        y = [cost[n + i] for i in range(m)]
        return FeasibilityResult(False, None, pivots, residual, y)
    x = [Fraction(0)] * n
    for i, col in enumerate(basis):
        if col < n:
            x[col] = tab[i][width]
    return FeasibilityResult(True, x, pivots)


def _pivot(tab, cost, r, c):
    prow = tab[r]
    piv = prow[c]
    if piv != 1:
        inv = 1 / piv
        prow[:] = [v * inv for v in prow]
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(tab):
        if i == r:
            continue
        f = row[c]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
    f = cost[c]
    if f:
        for j in nz:
            cost[j] -= f * prow[j]


def check_farkas(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction], y: Sequence[Fraction]) -> bool:
    """True iff y proves that {x >= 0 : A x <= b} is empty."""
    if any(v < 0 for v in y):
        return False
    n = len(A[0]) if A else 0
    for j in range(n):
        if sum(y[i] * A[i][j] for i in range(len(A)) if y[i]) < 0:
            return False
    return sum(y[i] * b[i] for i in range(len(b)) if y[i]) < 0


def nullspace(rows: Sequence[Sequence[Fraction]], width: int) -> list[list[Fraction]]:
    """Exact basis of {u : r . u = 0 for every row r}, one vector per free column."""
    mat = [[Fraction(v) for v in r] for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(width):
        pr = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if pr is None:
            continue
        mat[rank], mat[pr] = mat[pr], mat[rank]
        piv = mat[rank][col]
        mat[rank] = [v / piv for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * c for a, c in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(width) if c not in pivots]
    out = []
    for fc in free:
        u = [Fraction(0)] * width
        u[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            u[pc] = -mat[r][fc]
        out.append(u)
    return out
