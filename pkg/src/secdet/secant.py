"""Higher secant varieties: degree bound, Terracini dimension, determinantal
presentations from multiplication maps, their certification and factorization.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Sequence

import numpy as np

from . import _kernels
from .linmat import LinearMatrix, MatrixError, is_one_generic, minors_ideal
from .symkernel import linalg as la
from .symkernel.gcd import NotDivisible, exact_div, gcd_list
from .symkernel.groebner import DEFAULT_BUDGET, BudgetExceeded, Ideal
from .symkernel.poly import PolyRing, Polynomial, monomials_of_degree
from .varieties import (
    ParamVariety,
    Point,
    VarietyError,
    forms_vanishing,
    sample_point,
    sample_points,
    tangent_space,
    tangential_projection,
)

N_SAMPLES = 200
TERRACINI_TRIALS = 5


class PresentationError(ValueError):
    pass


def min_degree(e: int, q: int) -> int:
    """Lower bound C(e+q, q) for the degree of a q-secant variety of codimension e."""
    if e < 0 or q < 1:
        raise ValueError("need e >= 0, q >= 1")
    return comb(e + q, q)


@dataclass
class SecantProfile:
    variety: ParamVariety
    q: int
    dim_secant: int
    e: int
    measured_degree: int | None = None

    @property
    def minimal_degree_target(self) -> int:
        return min_degree(self.e, self.q)

    def as_dict(self) -> dict:
        return {"variety": self.variety.provenance, "q": self.q, "dim_secant": self.dim_secant, "e": self.e,
                "minimal_degree_target": self.minimal_degree_target, "measured_degree": self.measured_degree}


# ---------------------------------------------------------------------------
# sampling

def sample_secant_point(V: ParamVariety, q: int, rng) -> Point:
    F = V.field
    pts = sample_points(V, q, rng, independent=True)
    for _ in range(32):
        lam = [F.random_nonzero(rng) for _ in range(q)]
        x = tuple(F.norm(sum(l * p.coords[k] for l, p in zip(lam, pts))) for k in range(V.r + 1))
        if any(x):
            return Point(x)
    raise VarietyError("secant sample vanished")  # pragma: no cover


def sample_secant_points(V: ParamVariety, q: int, n: int, rng) -> list:
    return [sample_secant_point(V, q, rng) for _ in range(n)]


def terracini(V: ParamVariety, q: int, rng, trials: int = TERRACINI_TRIALS) -> tuple:
    """(dim S^q(V), codim e) from the span of q general tangent spaces."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    F = V.field
    best = -1
    failures = 0
    done = 0
    while done < trials:
        try:
            rows = []
            for _ in range(q):
                p = sample_point(V, rng)
                rows.extend(tangent_space(V, p.params).rows)
        except VarietyError:
            failures += 1
            if failures > 32:
                raise
            continue
        best = max(best, la.rank(rows, F) - 1)
        done += 1
    return best, V.r - best


def secant_profile(V: ParamVariety, q: int, rng, trials: int = TERRACINI_TRIALS) -> SecantProfile:
    d, e = terracini(V, q, rng, trials)
    return SecantProfile(V, q, d, e)


# ---------------------------------------------------------------------------
# multiplication maps

def _section_solver(V: ParamVariety):
    mons = sorted({m for s in V.sections for m in s.termdict})
    cols = [[s.termdict.get(m, 0) for s in V.sections] for m in mons]
    F = V.field

    def solve(f: Polynomial):
        if any(m not in set(mons) for m in f.termdict):
            return None
        return la.solve(cols, [f.termdict.get(m, 0) for m in mons], F)

    return solve


def pullback_form(V: ParamVariety, coeffs) -> Polynomial:
    return sum((s.scale(c) for c, s in zip(coeffs, V.sections) if c), V.pring.zero())


def matrix_from_multiplication(V: ParamVariety, S1: Sequence[Polynomial], S2: Sequence[Polynomial],
                               base: Polynomial | None = None, symmetric: bool | None = None) -> LinearMatrix:
    """Matrix whose (i, j) entry is the ambient linear form pulling back to S1[i] S2[j] base."""
    solve = _section_solver(V)
    u = base if base is not None else V.pring.one()
    co = []
    for a in S1:
        row = []
        for b in S2:
            x = solve(a * b * u)
            if x is None:
                raise PresentationError(f"product ({a})*({b})*({u}) is not in the span of the sections")
            row.append(tuple(x))
        co.append(row)
    if symmetric is None:
        symmetric = list(S1) == list(S2)
    return LinearMatrix(V.ring, co, symmetric)


def decomposition(V: ParamVariety, q: int, kind: str | None = None) -> tuple:
    """Family recipe (S1, S2, base) for a presentation of S^q(V).

    ``kind`` selects between the scroll and Veronese recipes when both exist
    (rational normal curves of degree 2q+2).
    """
    fam = V.family[0] if V.family else "custom"
    R = V.pring
    if fam == "veronese" and V.family[1] == 1:
        fam, params = "scroll", (V.family[2],)
    else:
        params = V.family[1:]
    if fam == "scroll":
        a = params
        n = len(a)
        s, t = R.gen("s"), R.gen("t")
        if kind == "veronese":
            if n != 1 or a[0] != 2 * q + 2:
                raise PresentationError("Veronese recipe needs a rational normal curve of degree 2q+2")
            half = [s ** (q + 1 - j) * t ** j for j in range(q + 2)]
            return half, half, R.one()
        S1 = [s ** (q - j) * t ** j for j in range(q + 1)]
        S2 = []
        for i, ai in enumerate(a):
            li = R.gen(f"l{i + 1}") if n > 1 else R.one()
            S2.extend(li * s ** (ai - q - j) * t ** j for j in range(ai - q + 1))
        if not S2:
            raise PresentationError("no block of degree >= q")
        return S1, S2, R.one()
    if fam == "veronese":
        n, d = params
        T = R.gens()
        if d == 2:
            return T, T, R.one()
        if d == 3 and n == 2:
            return T, [R.monomial(e) for e in monomials_of_degree(3, 2)], R.one()
    if fam == "segre":
        a, b = params
        return [R.gen(f"s{i}") for i in range(a + 1)], [R.gen(f"t{j}") for j in range(b + 1)], R.one()
    if fam == "delpezzo":
        from .varieties import _forms_through

        gamma = V.meta.get("gamma", ())
        return R.gens(), _forms_through(list(gamma), 2, V.field, R), R.one()
    if fam == "p1p1_22":
        s, t, u, v = R.gens()
        half = [s * u, s * v, t * u, t * v]
        return half, half, R.one()
    raise PresentationError(f"no presentation recipe for {V.provenance}")


def presentation(V: ParamVariety, q: int, kind: str | None = None) -> LinearMatrix:
    S1, S2, u = decomposition(V, q, kind)
    return matrix_from_multiplication(V, S1, S2, u)


# ---------------------------------------------------------------------------
# certification

@dataclass
class PresentationVerdict:
    kind: str                    # scroll | veronese | not-certified
    matrix: LinearMatrix
    checks: dict                 # name -> True / False / None (skipped)
    level: str = "exact"         # exact | evidence
    data: dict = dc_field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.kind != "not-certified"

    def failing(self) -> list:
        return [k for k, v in self.checks.items() if v is False]

    def as_dict(self) -> dict:
        return {"kind": self.kind, "level": self.level, "checks": dict(self.checks), "data": dict(self.data)}


def two_minors_vanish(M: LinearMatrix, V: ParamVariety) -> bool:
    """Symbolic check that every 2-minor of M pulls back to zero on V."""
    P = [[pullback_form(V, M.coeffs[i][j]) for j in range(M.b)] for i in range(M.a)]
    for i in range(M.a):
        for k in range(i + 1, M.a):
            for j in range(M.b):
                for l in range(j + 1, M.b):
                    if P[i][j] * P[k][l] != P[i][l] * P[k][j]:
                        return False
    return True


def secant_ranks(M: LinearMatrix, points) -> np.ndarray:
    F = M.field
    if F.characteristic:
        stack = M.evaluate_many([p.coords if isinstance(p, Point) else p for p in points])
        return _kernels.batch_rank_mod_p(stack, F.characteristic)
    return np.array([la.rank(M.evaluate(p.coords if isinstance(p, Point) else p), F) for p in points])


def rank_bound_check(M: LinearMatrix, V: ParamVariety, q: int, trials: int, rng) -> bool:
    pts = sample_secant_points(V, q, trials, rng)
    return bool(np.all(secant_ranks(M, pts) <= q))


def expected_kind(M: LinearMatrix, q: int, e: int) -> str | None:
    if M.symmetric and M.a == M.b == q + 2 and e == 3:
        return "veronese"
    if M.a == q + 1 and M.b == e + q:
        return "scroll"
    return None


def certify_presentation(M: LinearMatrix, V: ParamVariety, q: int, profile: SecantProfile, rng,
                         samples: int = N_SAMPLES, budget: int | None = DEFAULT_BUDGET,
                         hilbert: bool = True) -> PresentationVerdict:
    """Run the five presentation checks in order; see PresentationVerdict."""
    e = profile.e
    checks: dict = {}
    data: dict = {}
    checks["one_generic"] = bool(is_one_generic(M, budget))
    checks["rank1_on_X"] = two_minors_vanish(M, V)
    kind = expected_kind(M, q, e)
    checks["size_matches_e"] = kind is not None
    ranks = secant_ranks(M, sample_secant_points(V, q, samples, rng))
    data["secant_samples"] = int(len(ranks))
    data["secant_max_rank"] = int(ranks.max()) if len(ranks) else 0
    checks["secant_vanishing"] = bool(np.all(ranks <= q))
    level = "exact"
    if hilbert and M.a >= q + 1 and M.b >= q + 1:
        try:
            hd = minors_ideal(M, q + 1, budget).hilbert_data()
            data["hilbert"] = hd.as_dict()
            profile.measured_degree = hd.degree
            checks["degree_matches"] = hd.codimension == e and hd.degree == min_degree(e, q)
        except BudgetExceeded:
            checks["degree_matches"] = None
            level = "evidence"
    else:
        checks["degree_matches"] = None if hilbert is False else False
        if hilbert is False:
            level = "evidence"
    if any(v is False for v in checks.values()) or kind is None:
        kind = "not-certified"
    if M.field.characteristic and level == "exact":
        data["provenance"] = "char-p evidence"
    return PresentationVerdict(kind, M, checks, level, data)


# ---------------------------------------------------------------------------
# factorization of presentations

class FactorizationError(ValueError):
    pass


@dataclass
class SectionFactorization:
    s: list
    t: list
    u: Polynomial
    alpha: object = None

    def as_dict(self) -> dict:
        return {"s": [str(x) for x in self.s], "t": [str(x) for x in self.t], "u": str(self.u),
                "alpha": None if self.alpha is None else str(self.alpha)}


def factor_presentation(M: LinearMatrix, V: ParamVariety) -> SectionFactorization:
    """Pullback entries as s_i t_j u with u the common base section.

    u and the row gcds are made monic; any scalar by which row i differs from
    row 0 stays on s_i, so that the pullback of M[i][j] equals s_i t_j u exactly.
    """
    P = [[pullback_form(V, M.coeffs[i][j]) for j in range(M.b)] for i in range(M.a)]
    if any(not x for row in P for x in row):
        raise FactorizationError("an entry pulls back to zero")
    u = gcd_list([x for row in P for x in row])
    try:
        Q = [[exact_div(x, u) for x in row] for row in P]
        s = [gcd_list(row) for row in Q]
        t = [exact_div(Q[0][j], s[0]) for j in range(M.b)]
        for i in range(1, M.a):
            ratio = exact_div(Q[i][0], s[i] * t[0])
            if not ratio.is_constant():
                raise FactorizationError(f"row {i} is not a multiple of row 0's t-vector")
            s[i] = s[i] * ratio
    except NotDivisible as exc:
        raise FactorizationError(str(exc)) from exc
    for i in range(M.a):
        for j in range(M.b):
            if s[i] * t[j] * u != P[i][j]:
                raise FactorizationError(f"entry ({i},{j}) is not s_i t_j u")
    alpha = None
    if M.symmetric:
        F = V.field
        alpha = F.div(s[0].lc, t[0].lc)
        if any(x != y.scale(alpha) for x, y in zip(s, t)):
            raise FactorizationError("symmetric matrix without s_i = alpha t_i")
    return SectionFactorization(s, t, u, alpha)


# ---------------------------------------------------------------------------
# classification and the tiny secant oracle

def tangential_minimality(V: ParamVariety, q: int, rng, budget: int | None = DEFAULT_BUDGET) -> dict:
    """Degree vs codim+1 of a general (q-1)-tangential projection (implicitized in degree 2)."""
    if q < 2:
        W = V
    else:
        pts = [sample_point(V, rng) for _ in range(q - 1)]
        W = tangential_projection(V, [tangent_space(V, p.params) for p in pts]).target
    from .varieties import implicitize

    hd = implicitize(W, 2, budget).hilbert_data()
    return {"projection": W.provenance, "ambient": W.r, "codim": hd.codimension, "degree": hd.degree,
            "minimal": hd.degree == hd.codimension + 1}


def classify(V: ParamVariety, q: int, rng, M: LinearMatrix | None = None, budget: int | None = DEFAULT_BUDGET,
             samples: int = N_SAMPLES) -> dict:
    """Type of S^q(V) by verification: scroll / veronese from a certified presentation,
    neither when a general (q-1)-tangential projection is not of minimal degree."""
    profile = secant_profile(V, q, rng)
    out = {"e": profile.e, "dim_secant": profile.dim_secant}
    tang = tangential_minimality(V, q, rng, budget)
    out["tangential"] = tang
    candidates = [M] if M is not None else []
    if M is None:
        for kind in ("veronese", None):
            try:
                candidates.append(presentation(V, q, kind))
            except PresentationError:
                pass
    for cand in candidates:
        if expected_kind(cand, q, profile.e) is None:
            continue
        verdict = certify_presentation(cand, V, q, profile, rng, samples, budget)
        if verdict.certified:
            out.update(type=verdict.kind, verdict=verdict.as_dict())
            return out
    out["type"] = "neither" if not tang["minimal"] else "unknown"
    return out


def _qfold(V: ParamVariety, q: int):
    names = []
    for i in range(q):
        names.extend(f"{v}_{i}" for v in V.pring.variables)
    names.extend(f"c_{i}" for i in range(q))
    R = PolyRing(tuple(names), V.field)
    n = V.pring.nvars
    images = []
    for k in range(V.r + 1):
        acc = R.zero()
        for i in range(q):
            sub = [R.gen(i * n + j) for j in range(n)]
            acc = acc + R.gen(q * n + i) * V.sections[k].pullback(sub, R)
        images.append(acc)
    return R, images


def secant_ideal_tiny(V: ParamVariety, q: int, D: int, rng, margin: int = 20,
                      budget: int | None = DEFAULT_BUDGET) -> Ideal:
    """Minimal generators of degree <= D of the q-secant ideal, by sampling and symbolic certification."""
    if V.r > 8 or q > 2 or D > 4:
        raise ValueError("secant_ideal_tiny is limited to r <= 8, q <= 2, D <= 4")
    if q == 1:
        from .varieties import implicitize

        return implicitize(V, D, budget)
    F = V.field
    Rx = V.ring
    R, images = _qfold(V, q)
    kept: list = []
    for d in range(1, D + 1):
        mons = monomials_of_degree(Rx.nvars, d)
        pts = sample_secant_points(V, q, len(mons) + margin, rng)
        rows = [[Rx.monomial(e).eval(p.coords) for e in mons] for p in pts]
        ker = la.nullspace(rows, F, len(mons))
        cands = [Polynomial(Rx, {e: c for e, c in zip(mons, v) if c}) for v in ker]
        cands = [f for f in cands if f.pullback(images, R).is_zero()]
        # drop what lower-degree generators already give in degree d
        span = []
        for g in kept:
            for e in monomials_of_degree(Rx.nvars, d - g.degree):
                h = g * Rx.monomial(e)
                span.append([h.termdict.get(m, 0) for m in mons])
        base_rank = la.rank(span, F) if span else 0
        for f in cands:
            vec = [f.termdict.get(m, 0) for m in mons]
            if la.rank(span + [vec], F) > base_rank:
                span.append(vec)
                base_rank += 1
                kept.append(f)
    return Ideal(Rx, kept or [Rx.zero()], budget)
