"""Parametrized projective varieties: families, sampling, tangent spaces,
implicitization in bounded degree and linear projections.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np

from .symkernel import linalg as la
from .symkernel.field import GF32003, QQ, Field
from .symkernel.gcd import exact_div, gcd_list
from .symkernel.groebner import DEFAULT_BUDGET, Ideal
from .symkernel.poly import PolyError, PolyRing, Polynomial, ambient_ring, monomials_of_degree, poly_parse, poly_print

SAMPLE_RETRIES = 32


class VarietyError(ValueError):
    pass


@dataclass(frozen=True)
class Point:
    coords: tuple
    params: tuple | None = None

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)


@dataclass(frozen=True)
class TangentSpace:
    point: Point
    rows: tuple        # basis of the affine cone over the embedded tangent space
    cutting: tuple     # basis of linear forms vanishing on it

    @property
    def dim(self) -> int:
        return len(self.rows) - 1


@dataclass(frozen=True, eq=False)
class ParamVariety:
    pring: PolyRing
    sections: tuple
    provenance: str = "custom"
    family: tuple = ()          # (name, *params) for built-in families
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        secs = tuple(self.sections)
        object.__setattr__(self, "sections", secs)
        if not secs:
            raise VarietyError("no sections")
        degs = {s.degree for s in secs if s}
        if any(not s for s in secs):
            raise VarietyError("zero section")
        if len(degs) != 1 and not self.meta.get("weighted", False):
            raise VarietyError("sections do not share one degree")

    @property
    def field(self) -> Field:
        return self.pring.field

    @property
    def r(self) -> int:
        return len(self.sections) - 1

    @cached_property
    def ring(self) -> PolyRing:
        """Ambient coordinate ring x0..xr (degrevlex)."""
        return ambient_ring(self.r + 1, self.field)

    @cached_property
    def jacobian(self) -> tuple:
        return tuple(tuple(s.diff(k) for s in self.sections) for k in range(self.pring.nvars))

    @cached_property
    def dim(self) -> int:
        """Dimension from the Jacobian rank at a few random parameter values."""
        rng = np.random.default_rng(7)
        best = 0
        for _ in range(3):
            params = [self.field.random(rng, 1000) for _ in range(self.pring.nvars)]
            best = max(best, la.rank(self._tangent_rows(params), self.field))
        return best - 1

    def evaluate(self, params) -> tuple:
        return tuple(s.eval(params) for s in self.sections)

    def _tangent_rows(self, params) -> list:
        rows = [[d.eval(params) for d in row] for row in self.jacobian]
        rows.append(list(self.evaluate(params)))
        return rows

    def is_independent(self) -> bool:
        mons = sorted({e for s in self.sections for e in s.termdict})
        rows = [[s.termdict.get(e, 0) for e in mons] for s in self.sections]
        return la.rank(rows, self.field) == len(self.sections)

    def __repr__(self):
        return f"<ParamVariety {self.provenance} in P^{self.r}>"


def _ring(names, F, order="degrevlex"):
    return PolyRing(tuple(names), F, order)


# ---------------------------------------------------------------------------
# families

def make_scroll(*a: int, field: Field = GF32003) -> ParamVariety:
    """Rational normal scroll S(a_1..a_n); sections l_i s^(a_i-j) t^j, l suppressed for n = 1."""
    if not a or any(x < 0 for x in a) or not any(a):
        raise VarietyError("scroll needs a_i >= 0, not all zero")
    n = len(a)
    lam = [f"l{i + 1}" for i in range(n)] if n > 1 else []
    R = _ring(lam + ["s", "t"], field)
    s, t = R.gen("s"), R.gen("t")
    secs = []
    for i, ai in enumerate(a):
        li = R.gen(lam[i]) if n > 1 else R.one()
        for j in range(ai + 1):
            secs.append(li * s ** (ai - j) * t ** j)
    return ParamVariety(R, secs, f"scroll({','.join(map(str, a))})", ("scroll",) + tuple(a),
                        {"weighted": n > 1 and len(set(a)) > 1})


def make_veronese(n: int, d: int, field: Field = GF32003) -> ParamVariety:
    if n < 1 or d < 1:
        raise VarietyError("veronese needs n >= 1, d >= 1")
    R = _ring([f"t{i}" for i in range(n + 1)], field)
    secs = [R.monomial(e) for e in monomials_of_degree(n + 1, d)]
    return ParamVariety(R, secs, f"veronese({n},{d})", ("veronese", n, d))


def make_segre(a: int, b: int, field: Field = GF32003) -> ParamVariety:
    if a < 1 or b < 1:
        raise VarietyError("segre needs a, b >= 1")
    R = _ring([f"s{i}" for i in range(a + 1)] + [f"t{j}" for j in range(b + 1)], field)
    secs = [R.gen(f"s{i}") * R.gen(f"t{j}") for i in range(a + 1) for j in range(b + 1)]
    return ParamVariety(R, secs, f"segre({a},{b})", ("segre", a, b))


def make_p1p1_22(field: Field = GF32003) -> ParamVariety:
    """P1 x P1 embedded by O(2,2): x_ij = s^(2-i) t^i u^(2-j) v^j, row-major."""
    R = _ring(["s", "t", "u", "v"], field)
    s, t, u, v = R.gens()
    secs = [s ** (2 - i) * t ** i * u ** (2 - j) * v ** j for i in range(3) for j in range(3)]
    return ParamVariety(R, secs, "p1p1_22", ("p1p1_22",))


def _forms_through(points, deg, F, R):
    """Basis of degree-``deg`` forms in R vanishing at ``points`` (None if no point)."""
    mons = monomials_of_degree(R.nvars, deg)
    if not points:
        return [R.monomial(e) for e in mons]
    rows = [[R.monomial(e).eval(p) for e in mons] for p in points]
    ker = la.nullspace(rows, F, len(mons))
    # present kernel vectors with leading monomial first for readability
    return [Polynomial(R, {e: c for e, c in zip(mons, v) if c}) for v in ker]


def check_general_position(gamma, F: Field) -> None:
    pts = [tuple(F(x) for x in p) for p in gamma]
    for p in pts:
        if len(p) != 3 or not any(p):
            raise VarietyError(f"bad point {p}")
    for p, q in combinations(pts, 2):
        if la.rank([p, q], F) < 2:
            raise VarietyError("two points of gamma coincide")
    for trip in combinations(pts, 3):
        if la.det(list(trip), F) == 0:
            raise VarietyError("three points of gamma are collinear")
    if len(pts) == 6:
        mons = monomials_of_degree(3, 2)
        R = _ring(["t0", "t1", "t2"], F)
        rows = [[R.monomial(e).eval(p) for e in mons] for p in pts]
        if la.det(rows, F) == 0:
            raise VarietyError("six points of gamma lie on a conic")


def make_delpezzo_blowup(gamma: Sequence = (), field: Field = GF32003) -> ParamVariety:
    """Blowup of P2 at s <= 6 general points, embedded by cubics through them."""
    gamma = [tuple(field(x) for x in p) for p in gamma]
    if len(gamma) > 6:
        raise VarietyError("at most 6 points")
    check_general_position(gamma, field)
    R = _ring(["t0", "t1", "t2"], field)
    secs = _forms_through(gamma, 3, field, R)
    return ParamVariety(R, secs, f"delpezzo(s={len(gamma)})", ("delpezzo", tuple(gamma)), {"gamma": tuple(gamma)})


def random_gamma(s: int, field: Field, rng) -> list:
    for _ in range(SAMPLE_RETRIES):
        pts = [tuple(field.random(rng) for _ in range(3)) for _ in range(s)]
        try:
            check_general_position(pts, field)
            return pts
        except VarietyError:
            continue
    raise VarietyError("could not sample points in general position")


def custom_variety(variables: Sequence[str], sections: Sequence[str], field: Field = GF32003) -> ParamVariety:
    R = _ring(variables, field)
    return ParamVariety(R, [poly_parse(s, R) for s in sections], "custom", ("custom",))


# ---------------------------------------------------------------------------
# sampling and tangent spaces

def sample_point(V: ParamVariety, rng, params=None) -> Point:
    F = V.field
    for _ in range(SAMPLE_RETRIES):
        pr = tuple(F(x) for x in params) if params is not None else tuple(
            F.random(rng) for _ in range(V.pring.nvars))
        coords = V.evaluate(pr)
        if any(coords):
            return Point(coords, pr)
        if params is not None:
            break
    raise VarietyError("sampled point vanishes identically")


def sample_points(V: ParamVariety, m: int, rng, independent: bool = True) -> list:
    F = V.field
    for _ in range(SAMPLE_RETRIES):
        pts = [sample_point(V, rng) for _ in range(m)]
        if not independent or la.rank([p.coords for p in pts], F) == m:
            return pts
    raise VarietyError("could not sample independent points")


def tangent_space(V: ParamVariety, params) -> TangentSpace:
    F = V.field
    params = tuple(F(x) for x in params)
    rows = V._tangent_rows(params)
    basis = la.row_space(rows, F)
    if len(basis) != V.dim + 1:
        raise VarietyError("Jacobian rank deficient at this parameter")
    cutting = la.nullspace(basis, F, V.r + 1)
    return TangentSpace(Point(V.evaluate(params), params), tuple(map(tuple, basis)), tuple(map(tuple, cutting)))


# ---------------------------------------------------------------------------
# implicitization

def forms_vanishing(V: ParamVariety, d: int) -> list:
    """Basis of degree-d forms in the ambient ring whose pullback is zero."""
    R = V.ring
    F = V.field
    mons = monomials_of_degree(R.nvars, d)
    images: dict = {}
    for e in mons:
        # build product incrementally from a smaller monomial
        k = next(i for i, x in enumerate(e) if x)
        prev = list(e)
        prev[k] -= 1
        prev = tuple(prev)
        base = images[prev] if prev in images else (V.pring.one() if not any(prev) else None)
        if base is None:
            base = V.pring.one()
            for i, x in enumerate(prev):
                for _ in range(x):
                    base = base * V.sections[i]
        images[e] = base * V.sections[k]
    pmons = sorted({m for e in mons for m in images[e].termdict})
    pidx = {m: i for i, m in enumerate(pmons)}
    rows = [[F.zero] * len(mons) for _ in pmons]
    for j, e in enumerate(mons):
        for m, c in images[e].termdict.items():
            rows[pidx[m]][j] = c
    ker = la.nullspace(rows, F, len(mons))
    return [Polynomial(R, {e: c for e, c in zip(mons, v) if c}) for v in ker]


def implicitize(V: ParamVariety, max_degree: int, budget: int | None = DEFAULT_BUDGET) -> Ideal:
    """Ideal generated by the forms of degree <= D vanishing on V (a truncation)."""
    if max_degree < 1:
        raise VarietyError("max_degree must be >= 1")
    gens = []
    for d in range(1, max_degree + 1):
        gens.extend(forms_vanishing(V, d))
    return Ideal(V.ring, gens or [V.ring.zero()], budget)


# ---------------------------------------------------------------------------
# projections

@dataclass(frozen=True, eq=False)
class Projection:
    """Linear projection of V from a center.

    ``P`` rows are a basis of the linear forms vanishing on the center; the
    target coordinates are y = P x, so a target form c.y lifts to c.P.
    """

    source: ParamVariety
    center: tuple
    P: tuple
    target: ParamVariety

    def lift_form(self, c) -> tuple:
        F = self.source.field
        return tuple(F.norm(sum(ci * row[k] for ci, row in zip(c, self.P) if ci)) for k in range(self.source.r + 1))

    def push_form(self, f):
        """Target coefficients of an ambient form vanishing on the center, or None."""
        F = self.source.field
        return la.solve(la.transpose(self.P), list(f), F)

    def point(self, x) -> tuple:
        return tuple(la.matvec(self.P, list(x), self.source.field))

    def lift_matrix(self, M):
        """A matrix over the target's coordinates rewritten in source coordinates."""
        return M.change_ring(self.source.ring, self.P)

    def push_matrix(self, M):
        from .linmat import LinearMatrix, MatrixError

        co = []
        for row in M.coeffs:
            crow = []
            for v in row:
                c = self.push_form(v)
                if c is None:
                    raise MatrixError("entry does not vanish on the projection center")
                crow.append(tuple(c))
            co.append(crow)
        return LinearMatrix(self.target.ring, co, M.symmetric)

    def compose(self, other: "Projection") -> "Projection":
        """``other`` (from self.target) after self, as a projection of self.source."""
        F = self.source.field
        P = la.matmul(other.P, self.P, F)
        center = tuple(map(tuple, la.nullspace(P, F, self.source.r + 1)))
        return Projection(self.source, center, tuple(map(tuple, P)), other.target)


def project_from(V: ParamVariety, center_rows, tag: str = "projection", strip: bool = True) -> Projection:
    F = V.field
    center = la.row_space([list(c) for c in center_rows], F)
    P = la.nullspace(center, F, V.r + 1) if center else la.identity(V.r + 1, F)
    # put the basis in reduced echelon form for deterministic coordinates
    P = la.row_space(P, F)
    secs = [sum((s.scale(c) for c, s in zip(row, V.sections) if c), V.pring.zero()) for row in P]
    if any(not s for s in secs):
        raise VarietyError("degenerate projection (a coordinate vanishes on the image)")
    if strip:
        g = gcd_list(secs)
        if not g.is_constant():
            secs = [exact_div(s, g) for s in secs]
    W = ParamVariety(V.pring, secs, f"{tag}-of({V.provenance})", ("projection",), {"weighted": True})
    if not W.is_independent():
        raise VarietyError("projected sections are linearly dependent")
    return Projection(V, tuple(map(tuple, center)), tuple(map(tuple, P)), W)


def inner_projection(V: ParamVariety, z: Point) -> Projection:
    return project_from(V, [z.coords], "inner")


def tangential_projection(V: ParamVariety, T: TangentSpace | Sequence[TangentSpace]) -> Projection:
    Ts = [T] if isinstance(T, TangentSpace) else list(T)
    rows = [r for t in Ts for r in t.rows]
    return project_from(V, rows, "tangential")


# ---------------------------------------------------------------------------
# spec files

def variety_from_spec(spec: dict) -> ParamVariety:
    F = Field.from_spec(spec.get("field", "gf:32003"))
    fam = spec.get("family", "custom")
    params = [int(x) for x in str(spec.get("params", "")).replace(",", " ").split()]
    if fam == "scroll":
        return make_scroll(*params, field=F)
    if fam == "veronese":
        return make_veronese(*params, field=F)
    if fam == "segre":
        return make_segre(*params, field=F)
    if fam == "p1p1_22":
        return make_p1p1_22(F)
    if fam == "delpezzo":
        pts = spec.get("gamma", "").strip()
        gamma = [tuple(int(x) for x in p.split()) for p in pts.split(";") if p.strip()] if pts else []
        if not gamma and params:
            gamma = random_gamma(params[0], F, np.random.default_rng(int(spec.get("seed", 0))))
        return make_delpezzo_blowup(gamma, F)
    if fam == "custom":
        names = spec["variables"].split()
        body = spec["sections"].strip()
        if body.startswith("["):
            body = body[1:-1]
        return custom_variety(names, [s for s in body.split(",") if s.strip()], F)
    raise VarietyError(f"unknown family {fam!r}")


def parse_variety_spec(text: str) -> dict:
    spec = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise VarietyError(f"bad spec line {line!r}")
        k, v = line.split("=", 1)
        spec[k.strip()] = v.strip()
    return spec


def load_variety(text: str) -> ParamVariety:
    return variety_from_spec(parse_variety_spec(text))


def variety_to_text(V: ParamVariety, seed: int | None = None) -> str:
    fam = V.family[0] if V.family else "custom"
    lines = [f"family = {fam}"]
    if fam in ("scroll", "veronese", "segre"):
        lines.append("params = " + " ".join(map(str, V.family[1:])))
    elif fam == "delpezzo":
        lines.append("gamma = " + "; ".join(" ".join(str(x) for x in p) for p in V.family[1]))
    elif fam != "p1p1_22":
        lines[0] = "family = custom"
        lines.append("variables = " + " ".join(V.pring.variables))
        lines.append("sections = [" + ", ".join(poly_print(s) for s in V.sections) + "]")
    lines.append(f"field = {V.field.spec()}")
    if seed is not None:
        lines.append(f"seed = {seed}")
    return "\n".join(lines) + "\n"
