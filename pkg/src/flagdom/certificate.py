"""Certificate vectors, verification and exact re-derivation.

The target is w3, the indicator over F_5 of classes with a vertex incident with
all three colours. A certificate is a set of candidate vectors v_j (each known
to have non-negative value on every counterexample) together with rationals
lambda_j >= 0 such that w3 + sum_j lambda_j v_j <= 0 entry by entry.

Candidates come in three kinds:

* ``inequality`` -- average(sum_d (2/3 - [c in d]) F^i_d) for an admissible
  pair (i, c), i.e. one with epsilon_c(sigma_i) <= 0;
* ``square`` -- average(w * w) for one of the four reference flag combinations
  w_B, w'_B, w_C, w'_C under a chosen labelling of the triangle type;
* ``sos`` -- average(u * u) for a combination u proposed by ``flagdom.sos``
  (stored explicitly in the report so that it can be re-checked).
"""
from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .flags import (
    FlagVector,
    RationalVector,
    TypeSigma,
    average,
    extension_flag,
    flag_basis,
    type_from_colors,
)
from .graphs import COLORS, TricoloredGraph, basis, _vertex_perm_positions
from .lp import check_farkas, solve_feasibility

log = logging.getLogger(__name__)

F = Fraction

# The 14 reference certificate coefficients, in their published order.
REFERENCE_COEFFICIENTS = (
    F(23457815885978657985, 1029505785512512),
    F(134730108347752975, 4596007971038),
    F(134730108347752975, 4596007971038),
    F(15852088219609163945, 514752892756256),
    F(196791037567187109905, 12354069426150144),
    F(33245823856447882025, 24708138852300288),
    F(3956624143678293415, 772129339134384),
    F(30762195734543710715, 772129339134384),
    F(20816545085118359705, 4118023142050048),
    F(74313622711306287405, 2059011571025024),
    F(48968798259015, 514752892756256),
    F(39315342699665, 6177034713075072),
    F(15977347300925119, 32944185136400384),
    F(8880723226482731, 24708138852300288),
)

# Reference epsilon values, row c, column i. Used only to decide which concrete
# four-vertex types are consistent with the reference table; the values used by
# the certificate are always recomputed by ``epsilon_rule``.
REFERENCE_EPSILON = {
    1: (F(-1, 3), F(0), F(-1, 3), F(-1, 3), F(0), F(0), F(0)),
    2: (F(1, 2), F(0), F(1, 6), F(-1, 3), F(-1, 3), F(-1, 3), F(0)),
    3: (F(1, 2), F(1, 2), F(1, 2), F(1, 2), F(1, 2), F(0), F(0)),
}

# Square weights: family -> (index words, coefficients). An index word t1 t2 t3
# names the flag whose extra vertex meets labelled vertex j in colour t_j.
SQUARE_INDEX = {
    "B": ("113", "333", "123", "131", "133", "233", "323"),
    "C": ("112", "312", "113", "133", "122", "221"),
}
SQUARE_WEIGHTS = {
    "w_B": ("B", (165, 165, -279, -44, 328, 10, 421)),
    "w'_B": ("B", (-580, -580, 668, -264, 10, 725, 632)),
    "w_C": ("C", (100, 100, -100, -100, 162, 163)),
    "w'_C": ("C", (-10, -10, 10, 10, -77, 89)),
}


class CertificateError(ValueError):
    pass


# Epsilon ---------------------------------------------------------------------


def _color_edges(g: TricoloredGraph, c: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(g.n) for b in range(a + 1, g.n) if g.color(a, b) == c]


def epsilon_rule(g: TricoloredGraph, c: int) -> Fraction:
    """The four-case rule, applied in order, to a concrete four-vertex type."""
    edges = _color_edges(g, c)
    if len(edges) == 1:
        return F(1, 2)
    touched = {v for e in edges for v in e}
    if len(touched) == g.n:
        return F(-1, 3)
    if len(edges) >= 2 and any(
        len(g.incident_colors(v)) == 1 and c not in g.incident_colors(v) for v in range(g.n)
    ):
        return F(1, 6)
    return F(0)


def epsilon_bound(g: TricoloredGraph, c: int) -> Fraction:
    """Additive term the domination argument actually justifies (in units of k).

    The base-level set contributes at most 2n/3 - 1/3. Each vertex of the type
    with no c-edge inside the type adds its own c-neighbours in its clique: at
    most 1/3 if it sees two colours other than c in the type (its base vertex
    then sees all three colours once it has c-neighbours), else at most 1/2.
    """
    bound = F(-1, 3)
    for v in range(g.n):
        seen = g.incident_colors(v)
        if c in seen:
            continue
        bound += F(1, 3) if len(seen) >= 2 else F(1, 2)
    return bound


def _vertex_canonical(colors: tuple[int, ...]) -> tuple[int, ...]:
    """Smallest colour array over vertex relabellings only (colours stay fixed)."""
    return min(tuple(colors[p] for p in pos) for pos in _vertex_perm_positions(4))


@lru_cache(maxsize=None)
def type_options() -> tuple[tuple[tuple[int, ...], ...], ...]:
    """For each i in 1..7, the concrete four-vertex types consistent with the reference epsilon table.

    A colouring qualifies for sigma_i when the rule reproduces column i for all
    three colours and, for every colour with a non-positive entry, the bound the
    argument justifies is non-positive too (otherwise the inequality would not
    be a valid one). Types are listed once per vertex-relabelling class.
    """
    reps = sorted({_vertex_canonical(TricoloredGraph.from_code(4, code).colors) for code in range(3 ** 6)})
    out = []
    for i in range(7):
        opts = []
        for cols in reps:
            g = TricoloredGraph(4, cols)
            if any(epsilon_rule(g, c) != REFERENCE_EPSILON[c][i] for c in COLORS):
                continue
            if any(epsilon_bound(g, c) > 0 for c in COLORS if REFERENCE_EPSILON[c][i] <= 0):
                continue
            opts.append(cols)
        out.append(tuple(opts))
    return tuple(out)


@lru_cache(maxsize=None)
def table_matches() -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Like ``type_options`` but without the soundness filter (diagnostic)."""
    reps = sorted({_vertex_canonical(TricoloredGraph.from_code(4, code).colors) for code in range(3 ** 6)})
    return tuple(
        tuple(
            cols for cols in reps
            if all(epsilon_rule(TricoloredGraph(4, cols), c) == REFERENCE_EPSILON[c][i] for c in COLORS)
        )
        for i in range(7)
    )


@dataclass(frozen=True)
class Interpretation:
    """A concrete choice of sigma_1..sigma_7 (colour arrays on edges 01,02,03,12,13,23)."""

    types: tuple[tuple[int, ...], ...]

    @property
    def id(self) -> str:
        return "/".join("".join(map(str, t)) for t in self.types)

    @classmethod
    def from_id(cls, text: str) -> "Interpretation":
        parts = text.split("/")
        if len(parts) != 7:
            raise CertificateError(f"interpretation id needs 7 types, got {text!r}")
        interp = cls(tuple(tuple(int(ch) for ch in p) for p in parts))
        if interp not in admissible_interpretations():
            raise CertificateError(f"interpretation {text!r} is not consistent with the reference epsilon table")
        return interp

    def sigma(self, i: int) -> TypeSigma:
        if not 1 <= i <= 7:
            raise CertificateError(f"type index must be in 1..7, got {i}")
        return type_from_colors(*self.types[i - 1])


@lru_cache(maxsize=None)
def admissible_interpretations() -> tuple[Interpretation, ...]:
    return tuple(Interpretation(combo) for combo in itertools.product(*type_options()))


def default_interpretation() -> Interpretation:
    return admissible_interpretations()[0]


def compute_epsilon(i: int, c: int, interpretation: Interpretation | None = None) -> Fraction:
    interp = interpretation or default_interpretation()
    if c not in COLORS:
        raise CertificateError(f"colour must be 1, 2 or 3, got {c}")
    return epsilon_rule(interp.sigma(i).graph, c)


def epsilon_table(interpretation: Interpretation | None = None) -> dict[int, tuple[Fraction, ...]]:
    return {c: tuple(compute_epsilon(i, c, interpretation) for i in range(1, 8)) for c in COLORS}


def admissible_pairs(interpretation: Interpretation | None = None) -> list[tuple[int, int]]:
    """(i, c) with epsilon_c(sigma_i) <= 0, ordered by colour then type."""
    return [
        (i, c) for c in COLORS for i in range(1, 8) if compute_epsilon(i, c, interpretation) <= 0
    ]


# Candidates --------------------------------------------------------------------


@dataclass
class CandidateVector:
    kind: str
    key: str
    vector: RationalVector
    note: str = ""
    flag_vector: FlagVector | None = None  # for sos candidates

    def to_json(self) -> dict:
        doc = {"kind": self.kind, "key": self.key}
        if self.note:
            doc["note"] = self.note
        if self.flag_vector is not None:
            doc["u"] = self.flag_vector.to_json()
        return doc


@lru_cache(maxsize=None)
def _inequality(colors: tuple[int, ...], c: int) -> RationalVector:
    sigma = type_from_colors(*colors)
    terms = [
        (F(2, 3) - (1 if c in d else 0), extension_flag(sigma, d))
        for d in itertools.product(COLORS, repeat=4)
    ]
    return average(FlagVector.from_flags(sigma, terms))


def build_inequality_vector(i: int, c: int, interpretation: Interpretation | None = None) -> CandidateVector:
    interp = interpretation or default_interpretation()
    eps = compute_epsilon(i, c, interp)
    if eps > 0:
        raise CertificateError(f"(i={i}, c={c}) has epsilon {eps} > 0; the inequality is not available")
    cols = interp.types[i - 1]
    return CandidateVector(
        "inequality",
        f"ineq:i={i},c={c}",
        _inequality(cols, c),
        note=f"sigma_{i}={''.join(map(str, cols))}",
    )


@dataclass(frozen=True)
class SquareWeights:
    """A combination of triangle-type flags, indexed by extension words."""

    family: str  # "B" (two-coloured triangle) or "C" (rainbow triangle)
    coeffs: tuple[Fraction, ...]

    @classmethod
    def named(cls, name: str) -> "SquareWeights":
        if name not in SQUARE_WEIGHTS:
            raise CertificateError(f"unknown square weight {name!r}")
        fam, vals = SQUARE_WEIGHTS[name]
        return cls(fam, tuple(F(v) for v in vals))

    def scaled(self, s) -> "SquareWeights":
        return SquareWeights(self.family, tuple(v * F(s) for v in self.coeffs))


def square_labellings(family: str) -> list[str]:
    """Concrete colourings (edges 01, 02, 12) of the triangle type of a family."""
    if family == "B":
        out = {
            tuple(b if p == pos else a for p in range(3))
            for a, b in itertools.permutations(COLORS, 2)
            for pos in range(3)
        }
    elif family == "C":
        out = set(itertools.permutations(COLORS))
    else:
        raise CertificateError(f"unknown square family {family!r}")
    return ["".join(map(str, t)) for t in sorted(out)]


def square_flag_vector(w: SquareWeights, labelling: str) -> FlagVector:
    if labelling not in square_labellings(w.family):
        raise CertificateError(f"labelling {labelling!r} is not a type of family {w.family}")
    sigma = type_from_colors(*(int(ch) for ch in labelling))
    terms = [
        (coef, extension_flag(sigma, [int(ch) for ch in word]))
        for word, coef in zip(SQUARE_INDEX[w.family], w.coeffs)
        if coef
    ]
    if not terms:
        return FlagVector(sigma, 4)
    return FlagVector.from_flags(sigma, terms)


def build_square_vector(w: str | SquareWeights, interpretation: str) -> CandidateVector:
    """average(w * w) for ``w`` under the triangle labelling ``interpretation``."""
    name = w if isinstance(w, str) else None
    weights = SquareWeights.named(w) if isinstance(w, str) else w
    fv = square_flag_vector(weights, interpretation)
    vec = average(fv * fv) if fv.coeffs else RationalVector.zeros()
    key = f"square:{name or 'custom'}@{interpretation}"
    return CandidateVector("square", key, vec)


def build_w3() -> RationalVector:
    """Per-vertex scan: some vertex meets all three colours."""
    return RationalVector([
        1 if any(len(g.incident_colors(v)) == 3 for v in range(5)) else 0
        for g in basis(5).graphs
    ])


def build_w3_complement() -> RationalVector:
    """Independent scan: complement of 'every vertex misses some colour'."""
    out = []
    for g in basis(5).graphs:
        m = g.matrix()
        all_miss = all(
            any(all(m[v][u] != c for u in range(5) if u != v) for c in COLORS)
            for v in range(5)
        )
        out.append(0 if all_miss else 1)
    return RationalVector(out)


def candidate_pool(
    interpretation: Interpretation | None = None,
    squares: bool = True,
) -> dict[str, CandidateVector]:
    """The admissible inequalities plus the four reference squares under every labelling."""
    interp = interpretation or default_interpretation()
    pool = {}
    for i, c in admissible_pairs(interp):
        cand = build_inequality_vector(i, c, interp)
        pool[cand.key] = cand
    if squares:
        for name, (fam, _) in SQUARE_WEIGHTS.items():
            for lab in square_labellings(fam):
                cand = build_square_vector(name, lab)
                pool[cand.key] = cand
    return pool


def candidate_from_key(key: str, interpretation: Interpretation | None = None) -> CandidateVector:
    if key.startswith("ineq:"):
        try:
            fields = dict(part.split("=") for part in key[5:].split(","))
            i, c = int(fields["i"]), int(fields["c"])
        except (KeyError, ValueError) as exc:
            raise CertificateError(f"malformed inequality key {key!r}") from exc
        return build_inequality_vector(i, c, interpretation)
    if key.startswith("square:"):
        name, _, lab = key[7:].partition("@")
        return build_square_vector(name, lab)
    raise CertificateError(f"unknown candidate key {key!r}")


def sos_candidate(index: int, fv: FlagVector) -> CandidateVector:
    from .sos import square_of

    fb = flag_basis(fv.type, fv.level)
    u = [fv.coeffs.get(k, F(0)) for k in fb.keys]
    return CandidateVector(
        "sos", f"sos:{fv.type.key()}:{index}", square_of(fv.type, u), flag_vector=fv
    )


# Reports -----------------------------------------------------------------------


@dataclass
class CertificateReport:
    interpretation: str
    candidates: list[CandidateVector]
    coefficients: list[Fraction]
    slack: list[Fraction]
    verdict: str
    metadata: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return self.verdict == "valid"

    def min_slack(self) -> tuple[int, Fraction]:
        idx = min(range(len(self.slack)), key=lambda h: (self.slack[h], h))
        return idx, self.slack[idx]

    def to_json(self) -> dict:
        keys = basis(5).keys
        return {
            "interpretation": self.interpretation,
            "candidates": [c.to_json() for c in self.candidates],
            "coefficients": [{"num": str(x.numerator), "den": str(x.denominator)} for x in self.coefficients],
            "slack": [
                {"classKey": keys[h].hex(), "num": str(s.numerator), "den": str(s.denominator)}
                for h, s in enumerate(self.slack)
            ],
            "verdict": self.verdict,
            "metadata": self.metadata,
        }


def _parse_interpretation(text: str | None) -> Interpretation:
    if not text or text in ("default", "union"):
        return default_interpretation()
    return Interpretation.from_id(text)


def candidates_from_json(doc: dict) -> tuple[Interpretation, list[CandidateVector]]:
    interp = _parse_interpretation(doc.get("interpretation"))
    cands = []
    for entry in doc["candidates"]:
        kind = entry.get("kind")
        if kind == "sos":
            fv = FlagVector.from_json(entry["u"])
            cand = sos_candidate(0, fv)
            cand.key = entry["key"]
        elif kind in ("inequality", "square"):
            cand = candidate_from_key(entry["key"], interp)
            if cand.kind != kind:
                raise CertificateError(f"candidate {entry['key']!r} is not of kind {kind!r}")
        else:
            raise CertificateError(f"unknown candidate kind {kind!r}")
        cands.append(cand)
    return interp, cands


def coefficients_from_json(doc: dict) -> list[Fraction]:
    return [F(int(c["num"]), int(c["den"])) for c in doc["coefficients"]]


def evaluate(coeffs: Sequence[Fraction], candidates: Sequence[CandidateVector], w3: RationalVector | None = None) -> list[Fraction]:
    """Slack -(w3 + sum coeff * v), entry by entry."""
    w3 = w3 if w3 is not None else build_w3()
    total = list(w3)
    for lam, cand in zip(coeffs, candidates):
        if lam:
            for h, v in enumerate(cand.vector):
                if v:
                    total[h] += lam * v
    return [-t for t in total]


def check(
    coeffs: Sequence[Fraction],
    candidates: Sequence[CandidateVector],
    interpretation: Interpretation,
    metadata: dict | None = None,
) -> CertificateReport:
    coeffs = [F(c) for c in coeffs]
    if len(coeffs) != len(candidates):
        raise CertificateError(f"{len(coeffs)} coefficients for {len(candidates)} candidates")
    neg = [i for i, c in enumerate(coeffs) if c < 0]
    if neg:
        raise CertificateError(f"negative coefficient at position {neg[0]}")
    slack = evaluate(coeffs, candidates)
    verdict = "valid" if all(s >= 0 for s in slack) else "invalid"
    return CertificateReport(interpretation.id, list(candidates), coeffs, slack, verdict, dict(metadata or {}))


def verify_certificate(
    coeffs: Sequence[Fraction],
    assignment: Sequence[str] | Mapping[int, str],
    interpretation: Interpretation | None = None,
) -> CertificateReport:
    """Check sum coeff_j * candidate(assignment_j) against w3, exactly.

    ``assignment`` lists one candidate key per coefficient (or maps coefficient
    positions to keys). Only inequality and reference-square keys are accepted.
    """
    interp = interpretation or default_interpretation()
    if isinstance(assignment, Mapping):
        assignment = [assignment[i] for i in range(len(coeffs))]
    cands = [candidate_from_key(k, interp) for k in assignment]
    return check(coeffs, cands, interp, {"source": "assignment"})


def verify_report(doc: dict) -> CertificateReport:
    """Re-check a serialized CertificateReport from scratch."""
    interp, cands = candidates_from_json(doc)
    report = check(coefficients_from_json(doc), cands, interp, {"source": "file"})
    report.interpretation = doc.get("interpretation", interp.id)
    return report


# LP -------------------------------------------------------------------------------


@dataclass
class LPOutcome:
    feasible: bool
    coefficients: list[Fraction] | None
    pivots: int
    seconds: float
    farkas_checked: bool = False
    residual: Fraction | None = None


def _float_support(columns: Sequence[RationalVector], target: RationalVector) -> list[int] | None:
    """Columns carrying weight in a floating-point solution, or None if that fails."""
    try:
        import numpy as np
        from scipy.optimize import linprog
    except ImportError:  # pragma: no cover - scipy is a declared dependency
        return None
    A = np.array([[float(col[h]) for col in columns] for h in range(len(target))])
    b = -np.array([float(x) for x in target])
    res = linprog(np.ones(A.shape[1]), A_ub=A, b_ub=b, bounds=(0, None), method="highs")
    if res.status != 0:
        return None
    return [j for j, x in enumerate(res.x) if x > 1e-12]


def solve_certificate_lp(columns: Sequence[RationalVector], target: RationalVector | None = None) -> LPOutcome:
    """Exact feasibility of target + sum lam_j columns_j <= 0 with lam >= 0.

    A floating-point LP first guesses the support; the exact solver is run on
    that support and, if that does not succeed, on every column. Infeasibility
    is only ever reported from the full exact run, with its Farkas witness
    re-checked.
    """
    target = target if target is not None else build_w3()
    t0 = time.perf_counter()
    b = [-x for x in target]

    def run(idx):
        A = [[columns[j][h] for j in idx] for h in range(len(target))]
        return A, solve_feasibility(A, b)

    support = _float_support(columns, target)
    pivots = 0
    if support:
        _, res = run(support)
        pivots += res.pivots
        if res.feasible:
            lam = [F(0)] * len(columns)
            for j, x in zip(support, res.x):
                lam[j] = x
            return LPOutcome(True, lam, pivots, time.perf_counter() - t0)
    idx = list(range(len(columns)))
    A, res = run(idx)
    pivots += res.pivots
    if res.feasible:
        return LPOutcome(True, list(res.x), pivots, time.perf_counter() - t0)
    ok = res.farkas is not None and check_farkas(A, b, res.farkas)
    if not ok:
        raise CertificateError("LP reported infeasible without a valid Farkas witness")
    return LPOutcome(False, None, pivots, time.perf_counter() - t0, True, res.infeasibility)


def derive_certificate(
    interpretation: Interpretation | None = None,
    exclude_squares: bool = False,
    search_squares: bool = True,
    denominators: Sequence[int] = (10**3, 10**4, 10**6),
) -> CertificateReport:
    """Re-derive a certificate by exact LP.

    Stage one uses the admissible inequalities and (unless excluded) the four
    reference squares under every triangle labelling. If that LP is infeasible
    and ``search_squares`` is set, stage two adds square candidates proposed by
    ``flagdom.sos`` and solves again. The report's metadata records each stage.
    An infeasible final stage yields verdict "infeasible".
    """
    interp = interpretation or default_interpretation()
    w3 = build_w3()
    pool = list(candidate_pool(interp, squares=not exclude_squares).values())
    meta: dict = {"stages": []}
    out = solve_certificate_lp([c.vector for c in pool], w3)
    meta["stages"].append(_stage_meta("reference", pool, out))
    if out.feasible:
        return _report_from(interp, pool, out.coefficients, meta)
    if exclude_squares or not search_squares:
        return CertificateReport(interp.id, pool, [], [], "infeasible", meta)

    from .sos import propose_squares

    ineqs = [c for c in pool if c.kind == "inequality"]
    sigmas = [type_from_colors(1, 1, 2), type_from_colors(1, 2, 3)]
    for den, props in zip(denominators, propose_squares([c.vector for c in ineqs], w3, sigmas, denominators=denominators)):
        extra = [sos_candidate(j, _fv(p.sigma, p.u)) for j, p in enumerate(props)]
        cands = ineqs + extra
        out = solve_certificate_lp([c.vector for c in cands], w3)
        stage = _stage_meta(f"sos-1/{den}", cands, out)
        meta["stages"].append(stage)
        if out.feasible:
            return _report_from(interp, cands, out.coefficients, meta)
    return CertificateReport(interp.id, ineqs, [], [], "infeasible", meta)


def _fv(sigma, u):
    from .sos import flag_vector_of

    return flag_vector_of(sigma, u)


def _stage_meta(name, cands, out: LPOutcome) -> dict:
    doc = {
        "stage": name,
        "candidates": len(cands),
        "feasible": out.feasible,
        "pivots": out.pivots,
        "seconds": round(out.seconds, 3),
    }
    if not out.feasible:
        doc["farkasChecked"] = out.farkas_checked
        doc["phaseOneResidual"] = str(out.residual)
    return doc


def _report_from(interp, cands, coeffs, meta) -> CertificateReport:
    used = [(c, x) for c, x in zip(cands, coeffs) if x]
    report = check([x for _, x in used], [c for c, _ in used], interp, meta)
    return report


# The reference coefficients ---------------------------------------------------------


def reference_assignment_search(interpretation: Interpretation | None = None) -> dict:
    """Decide whether any assignment of the 14 reference coefficients can validate.

    An assignment puts non-negative weights on candidates from the reference pool
    (admissible inequalities plus the four reference squares under any triangle
    labelling). If the exact LP over the whole pool is infeasible, its Farkas
    witness rules out every assignment at once, so no enumeration is needed.
    Otherwise the LP support is reported for manual comparison.
    """
    interp = interpretation or default_interpretation()
    pool = list(candidate_pool(interp).values())
    out = solve_certificate_lp([c.vector for c in pool])
    doc = {
        "interpretation": interp.id,
        "poolSize": len(pool),
        "poolFeasible": out.feasible,
        "pivots": out.pivots,
    }
    if not out.feasible:
        doc["found"] = False
        doc["reason"] = (
            "no non-negative combination of the reference candidates is a certificate "
            "(exact Farkas witness checked), so no assignment of the reference coefficients validates"
        )
        doc["farkasChecked"] = out.farkas_checked
        doc["phaseOneResidual"] = str(out.residual)
        return doc
    # The reference pool admits some certificate. The coefficient-to-column map is
    # not recoverable, and 14! orderings are out of reach, so only the LP's own
    # support is reported.
    doc["lpSupport"] = [pool[j].key for j, x in enumerate(out.coefficients) if x]
    doc["found"] = False
    doc["reason"] = "reference pool is feasible; the reference coefficients were not matched to columns"
    return doc
