"""Gluing scroll and Veronese matrices from their projections.

All classes are held in ambient coordinates: a class on an inner or
tangential projection of X is a matrix of ambient linear forms vanishing on
the projection center.  Evaluating at ambient points of Gamma then computes
the projected matrices, and no coordinate change is needed to compare blocks.
Every "we may assume" step is an explicit GL witness applied block-wise.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

import numpy as np

from .linmat import (
    GLWitness,
    LinearMatrix,
    MatrixClass,
    MatrixError,
    column_dependence,
    gamma_regular,
    gl_equivalent,
    is_one_generic,
    normalize_at_point,
    project_partial,
    project_pi,
    project_pi_T,
    random_gl_action,
)
from .secant import presentation, two_minors_vanish
from .symkernel import linalg as la
from .varieties import (
    ParamVariety,
    Point,
    Projection,
    TangentSpace,
    VarietyError,
    inner_projection,
    sample_points,
    tangent_space,
    tangential_projection,
)

MAX_CONFIGS = 8


class GlueError(ValueError):
    """A gluing step failed; ``condition`` names the failing check."""

    def __init__(self, condition: str, message: str = ""):
        super().__init__(f"{condition}: {message}" if message else condition)
        self.condition = condition


@dataclass(frozen=True, eq=False)
class GlueContext:
    V: ParamVariety
    gamma: tuple          # Points of X; z = gamma[0], w = gamma[1]

    @property
    def z(self) -> Point:
        return self.gamma[0]

    @property
    def w(self) -> Point:
        return self.gamma[1]

    def swapped(self) -> "GlueContext":
        g = list(self.gamma)
        g[0], g[1] = g[1], g[0]
        return GlueContext(self.V, tuple(g))

    def rest(self, *drop: Point) -> list:
        ids = {id(p) for p in drop}
        return [p.coords for p in self.gamma if id(p) not in ids]

    @cached_property
    def Tz(self) -> TangentSpace:
        return tangent_space(self.V, self.z.params)

    @cached_property
    def Tw(self) -> TangentSpace:
        return tangent_space(self.V, self.w.params)

    def tangent(self, p: Point) -> TangentSpace:
        return self.Tz if p is self.z else self.Tw if p is self.w else tangent_space(self.V, p.params)

    # projection witnesses (reporting and pushing matrices to target coordinates)
    @cached_property
    def inner_z(self) -> Projection:
        return inner_projection(self.V, self.z)

    @cached_property
    def inner_w(self) -> Projection:
        return inner_projection(self.V, self.w)

    @cached_property
    def tangential_z(self) -> Projection:
        return tangential_projection(self.V, self.Tz)

    @cached_property
    def tangential_w(self) -> Projection:
        return tangential_projection(self.V, self.Tw)


def make_context(V: ParamVariety, n_points: int, rng) -> GlueContext:
    return GlueContext(V, tuple(sample_points(V, n_points, rng)))


def gamma_size(kind: str, e: int, q: int) -> int:
    """Number of general points: e+q-1 for scroll classes, q+2 for Veronese classes."""
    return q + 2 if kind == "veronese" else e + q - 1


def _rep(M) -> LinearMatrix:
    return M.representative if isinstance(M, MatrixClass) else M


def _block_diag(F, *blocks):
    n = sum(len(b) for b in blocks)
    out = [[F.zero] * n for _ in range(n)]
    o = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[o + i][o + j] = x
        o += len(b)
    return out


def _align_tail(M: LinearMatrix, W: GLWitness, rows_head: int = 1, cols_head: int = 1) -> LinearMatrix:
    """Apply W to the block of M below/right of the first rows_head rows and cols_head columns."""
    F = M.field
    A = _block_diag(F, la.identity(rows_head, F), W.A)
    B = _block_diag(F, la.identity(cols_head, F), W.B)
    out = GLWitness(A, B).apply(M)
    return out.with_symmetric(True) if M.symmetric and W.congruence_scale(F) is not None else out


def _equiv(X: LinearMatrix, Y: LinearMatrix, condition: str, rng, symmetric: bool | None = None) -> GLWitness:
    W = gl_equivalent(X, Y, rng, symmetric=symmetric)
    if W is None:
        raise GlueError(condition, f"no GL witness between {X.shape} blocks")
    if symmetric and W.congruence_scale(X.field) != X.field.one:
        raise GlueError(condition, "congruence only up to a non-square scalar")
    return W


def _normalize(M: LinearMatrix, p: Point, rng, condition="normalization") -> LinearMatrix:
    try:
        return normalize_at_point(M, p.coords, rng)[1]
    except MatrixError as exc:
        raise GlueError(condition, str(exc)) from exc


def _sub(M: LinearMatrix, rows, cols) -> LinearMatrix:
    return M.submatrix(list(rows), list(cols))


# ---------------------------------------------------------------------------
# induced classes

def induce_inner(M, ctx: GlueContext, p: Point, rng=None, transpose: bool = False) -> MatrixClass:
    """pi_p (or pi_p^T) of the class of M, as a class on the inner projection from p."""
    M = _rep(M)
    Mn = _normalize(M, p, rng)
    out = project_pi_T(Mn) if transpose else project_pi(Mn)
    rest = ctx.rest(p)
    try:
        if not gamma_regular(out, rest):
            raise GlueError("gamma-regularity", "induced class is not regular at the projected points")
    except MatrixError as exc:
        raise GlueError("gamma-regularity", str(exc)) from exc
    return MatrixClass(out, ctx.V, tuple(rest), ("inner", p), "scroll")


def induce_tangential(M, ctx: GlueContext, p: Point, rng=None) -> MatrixClass:
    """partial_p of the class of M, as a class on the tangential projection from T_pX."""
    M = _rep(M)
    Mn = _normalize(M, p, rng)
    out = project_partial(Mn)
    T = ctx.tangent(p)
    F = M.field
    for row in out.coeffs:
        for v in row:
            if any(F.norm(sum(c * x for c, x in zip(v, t))) for t in T.rows):
                raise GlueError("tangent-vanishing", "an entry of the partial does not vanish on T_zX")
    rest = ctx.rest(p)
    try:
        if not gamma_regular(out, rest):
            raise GlueError("gamma-regularity", "tangential class is not regular at the projected points")
    except MatrixError as exc:
        raise GlueError("gamma-regularity", str(exc)) from exc
    kind = "veronese" if M.symmetric else "scroll"
    return MatrixClass(out, ctx.V, tuple(rest), ("tangential", p), kind)


# ---------------------------------------------------------------------------
# verification battery

def verify_glued(M: LinearMatrix, ctx: GlueContext, rng, *, inner=None, inner_T=None, partial=None) -> dict:
    """Checks on a glued matrix; inner/inner_T/partial map points to the classes to recover."""
    checks = {
        "one_generic": bool(is_one_generic(M)),
        "rank1_on_X": two_minors_vanish(M, ctx.V),
    }
    try:
        checks["gamma_regular"] = gamma_regular(M, [p.coords for p in ctx.gamma])
    except MatrixError:
        checks["gamma_regular"] = False
    sym = M.symmetric
    for label, table, op in (("pi", inner, "pi"), ("piT", inner_T, "piT"), ("partial", partial, "partial")):
        for name, (p, target) in (table or {}).items():
            Mn = _normalize(M, p, rng)
            got = project_pi(Mn) if op == "pi" else project_pi_T(Mn) if op == "piT" else project_partial(Mn)
            checks[f"{label}_{name}"] = gl_equivalent(got, _rep(target), rng,
                                                     symmetric=sym and op == "partial") is not None
    return checks


def _battery_or_raise(M, ctx, rng, **kw) -> dict:
    checks = verify_glued(M, ctx, rng, **kw)
    bad = [k for k, v in checks.items() if not v]
    if bad:
        raise GlueError("output-verification", ", ".join(bad))
    return checks


# ---------------------------------------------------------------------------
# scroll gluing I

def check_pipi(Mz, Mw, ctx: GlueContext, rng) -> bool:
    """(pi pi): pi_w[M_z] = pi_z[M_w]."""
    try:
        a = project_pi(_normalize(_rep(Mz), ctx.w, rng))
        b = project_pi(_normalize(_rep(Mw), ctx.z, rng))
    except GlueError:
        return False
    return gl_equivalent(a, b, rng) is not None


def glue_scroll_I(Mz, Mw, ctx: GlueContext, rng, verify: bool = True) -> MatrixClass:
    Mz, Mw = _rep(Mz), _rep(Mw)
    if Mz.shape != Mw.shape:
        raise GlueError("shape", f"{Mz.shape} vs {Mw.shape}")
    q = Mz.a - 1
    p = Mz.b - q + 1
    if p < 3:
        raise GlueError("shape", "scroll gluing I needs p >= 3")
    Zn = _normalize(Mz, ctx.w, rng)          # (B | C_z), B(w) != 0
    Wn = _normalize(Mw, ctx.z, rng)          # (A | C_w), A(z) != 0
    Cz = _sub(Zn, range(Zn.a), range(1, Zn.b))
    Cw = _sub(Wn, range(Wn.a), range(1, Wn.b))
    W = _equiv(Cw, Cz, "(pipi)", rng)
    F = Mz.field
    Wn = GLWitness(W.A, _block_diag(F, [[F.one]], W.B)).apply(Wn)
    M = Wn.submatrix(range(Wn.a), [0]).hstack(Zn.submatrix(range(Zn.a), [0]), Cz)
    return _finish_scroll(M, ctx, rng, Mz, Mw, verify)


def _finish_scroll(M, ctx, rng, Mz, Mw, verify) -> MatrixClass:
    checks = {}
    if verify:
        checks = _battery_or_raise(M, ctx, rng, inner={"z": (ctx.z, Mz), "w": (ctx.w, Mw)})
    return MatrixClass(M, ctx.V, tuple(p.coords for p in ctx.gamma), None, "scroll", checks)


# ---------------------------------------------------------------------------
# scroll gluing II

def scroll_II_conditions(Mz, Mw, MTz, MTw, ctx: GlueContext, rng) -> dict:
    """(dd): d_w[M_Tz] = d_z[M_Tw]; (dpi): d_w[M_z] = pi_z[M_Tw] and d_z[M_w] = pi_w[M_Tz]."""
    out = {}

    def eq(x, y, sym=False):
        return gl_equivalent(x, y, rng, symmetric=sym) is not None

    try:
        Tz = _normalize(_rep(MTz), ctx.w, rng)
        Tw = _normalize(_rep(MTw), ctx.z, rng)
        Zn = _normalize(_rep(Mz), ctx.w, rng)
        Wn = _normalize(_rep(Mw), ctx.z, rng)
    except GlueError:                # an input is not normalizable at the other point
        return {"(dd)": False, "(dpi)": False}
    out["(dd)"] = eq(project_partial(Tz), project_partial(Tw))
    out["(dpi)"] = eq(project_partial(Zn), project_pi(Tw)) and eq(project_partial(Wn), project_pi(Tz))
    return out


def glue_scroll_II(Mz, Mw, MTz, MTw, ctx: GlueContext, rng, verify: bool = True) -> MatrixClass:
    """Glue (q+1)x(q+2) classes on X_z, X_w and qx(q+2) classes on the tangential
    projections into a (q+1)x(q+3) scroll matrix.

    Relies on the emptiness of the (2,q) scroll classes on the projection from
    the line <z, w>; when that fails the column dependence below has no solution.
    """
    Mz, Mw, MTz, MTw = map(_rep, (Mz, Mw, MTz, MTw))
    q = Mz.a - 1
    if q < 2 or Mz.shape != (q + 1, q + 2) or Mw.shape != Mz.shape or MTz.shape != (q, q + 2) or MTw.shape != MTz.shape:
        raise GlueError("shape", "expected (q+1)x(q+2) inner and qx(q+2) tangential classes")
    F = Mz.field
    # (dd): share the block I
    Tz = _normalize(MTz, ctx.w, rng)                 # [[*, F0], [*, I]]
    Tw = _normalize(MTw, ctx.z, rng)                 # [[*, C], [*, I']]
    W = _equiv(project_partial(Tw), project_partial(Tz), "(dd)", rng)
    Tw = _align_tail(Tw, W)
    # (dpi) part 1: d_w M_z = pi_z M_Tw = [C; I]
    Zn = _normalize(Mz, ctx.w, rng)                  # row 0: (e, F); rows 1..: (b, C), (H, I)
    W = _equiv(project_partial(Zn), project_pi(Tw), "(dpi)", rng)
    Zn = _align_tail(Zn, W)
    # (dpi) part 2: d_z M_w = pi_w M_Tz = [F0; I]
    Wn = _normalize(Mw, ctx.z, rng)                  # rows: (*, C0), (*, F0), (G, I)
    W = _equiv(project_partial(Wn), project_pi(Tz), "(dpi)", rng)
    Wn = _align_tail(Wn, W)
    # K = [C; F; I] is the tail of M_z with its special row moved to position 1
    order = [1, 0] + list(range(2, q + 1))
    Zr = Zn.submatrix(order, range(Zn.b))
    K = _sub(Zr, range(q + 1), range(1, q + 2))
    KT = K.transpose()
    C0 = [Wn.coeffs[0][j] for j in range(1, q + 2)]
    F0 = [Wn.coeffs[1][j] for j in range(1, q + 2)]
    g = column_dependence(C0, KT)
    d = column_dependence(F0, KT)
    if g is None or d is None:
        raise GlueError("emptiness-assumption",
                        "C0 or F0 is not a combination of the rows of [C; F; I]; the (2,q) classes on the "
                        "projection from <z,w> are not empty for this configuration")
    R0 = la.identity(q + 1, F)
    R0[0] = list(g)
    R0[1] = list(d)
    try:
        R0inv = la.inverse(R0, F)
    except la.SingularMatrix as exc:
        raise GlueError("emptiness-assumption", "row transformation is singular") from exc
    Wn = GLWitness(R0inv, la.identity(Wn.b, F)).apply(Wn)
    if _sub(Wn, range(q + 1), range(1, q + 2)) != K:
        raise GlueError("(pipi)", "tails do not agree after the row transformation")  # pragma: no cover
    M = Wn.submatrix(range(q + 1), [0]).hstack(Zr.submatrix(range(q + 1), [0]), K)
    checks = {}
    if verify:
        checks = _battery_or_raise(M, ctx, rng, inner={"z": (ctx.z, Mz), "w": (ctx.w, Mw)},
                                   partial={"z": (ctx.z, MTz), "w": (ctx.w, MTw)})
    return MatrixClass(M, ctx.V, tuple(p.coords for p in ctx.gamma), None, "scroll", checks)


# ---------------------------------------------------------------------------
# the D map and Veronese gluing

@dataclass
class DParts:
    a: tuple
    b0: tuple
    C0: list
    d: tuple
    E: list
    F: LinearMatrix
    Mw: LinearMatrix       # aligned [[a, b0, C0], [c0^T, E^T, F]]
    MT: LinearMatrix       # aligned [[d, E], [E^T, F]]


def D_map(MTz, Mw, ctx: GlueContext, rng, parts: bool = False):
    """D^z_w: (class on the tangential projection at z, class on X_w) -> class on X_z."""
    MTz, Mw = _rep(MTz), _rep(Mw)
    q = MTz.a - 1
    if not MTz.symmetric or MTz.a != MTz.b:
        raise GlueError("shape", "tangential class must be symmetric")
    if Mw.shape != (q + 1, q + 2):
        raise GlueError("shape", f"class on X_w must be {(q + 1, q + 2)}, got {Mw.shape}")
    T = _normalize(MTz, ctx.w, rng)                  # [[d, E], [E^T, F]]
    target = project_pi_T(T)                         # [E^T | F]
    Wn = _normalize(Mw, ctx.z, rng)
    W = _equiv(project_partial(Wn), target, "(dpiT)", rng)
    Wn = _align_tail(Wn, W)
    b0 = Wn.coeffs[0][1]
    C0 = [Wn.coeffs[0][j] for j in range(2, q + 2)]
    d = T.coeffs[0][0]
    E = [T.coeffs[0][j] for j in range(1, q + 1)]
    Fb = _sub(T, range(1, q + 1), range(1, q + 1)).with_symmetric(True)
    co = [[b0, d] + E] + [[C0[k], E[k]] + list(Fb.coeffs[k]) for k in range(q)]
    Mz = LinearMatrix(MTz.ring, co)
    if parts:
        return Mz, DParts(Wn.coeffs[0][0], b0, C0, d, E, Fb, Wn, T)
    return Mz


def veronese_conditions(Mz, Mw, MTz, MTw, ctx: GlueContext, rng) -> dict:
    out = {}

    def eq(x, y, sym=None):
        return gl_equivalent(x, y, rng, symmetric=sym) is not None

    try:
        Tz = _normalize(_rep(MTz), ctx.w, rng)
        Tw = _normalize(_rep(MTw), ctx.z, rng)
        Zn = _normalize(_rep(Mz), ctx.w, rng)
        Wn = _normalize(_rep(Mw), ctx.z, rng)
    except GlueError:
        return {"(dd)": False, "(dpiT)": False, "(D)": False}
    out["(dd)"] = eq(project_partial(Tz), project_partial(Tw), True)
    out["(dpiT)"] = eq(project_partial(Zn), project_pi_T(Tw)) and eq(project_partial(Wn), project_pi_T(Tz))
    parts = []
    for MT, Mo, c, target in ((MTz, Mw, ctx, Mz), (MTw, Mz, ctx.swapped(), Mw)):
        try:
            parts.append(eq(D_map(MT, Mo, c, rng), _rep(target)))
        except GlueError:
            parts.append(None)       # outside the domain of the D map (fiber condition fails)
    out["(D)"] = False if False in parts else (None if None in parts else True)
    return out


def glue_veronese(Mz, Mw, MTz, MTw, ctx: GlueContext, rng, verify: bool = True) -> MatrixClass:
    Mz, Mw, MTz, MTw = map(_rep, (Mz, Mw, MTz, MTw))
    q = MTz.a - 1
    if q < 1 or Mz.shape != (q + 1, q + 2) or Mw.shape != Mz.shape or MTw.shape != MTz.shape:
        raise GlueError("shape", "expected (q+1)x(q+2) inner and (q+1)x(q+1) tangential classes")
    F = Mz.field
    # (D), first half: representative [[b0, d, E], [C0^T, E^T, F]] of [M_z]
    MzD, P = D_map(MTz, Mw, ctx, rng, parts=True)
    if gl_equivalent(MzD, Mz, rng) is None:
        raise GlueError("(D)", "D^z_w(M_Tz, M_w) differs from M_z")
    if gl_equivalent(D_map(MTw, Mz, ctx.swapped(), rng), Mw, rng) is None:
        raise GlueError("(D)", "D^w_z(M_Tw, M_z) differs from M_w")
    # (dd): M_Tw normalized at z with the same F
    Tw = _normalize(MTw, ctx.z, rng)                 # [[a, C'], [C'^T, F']]
    W = _equiv(project_partial(Tw), P.F, "(dd)", rng, symmetric=True)
    Tw = _align_tail(Tw, W).with_symmetric(True)
    a = Tw.coeffs[0][0]
    C = [Tw.coeffs[0][j] for j in range(1, q + 1)]
    # (dpiT): C0^T = gamma C^T + F delta
    rhs = LinearMatrix(Mz.ring, [[C[k]] + list(P.F.coeffs[k]) for k in range(q)])
    sol = column_dependence(P.C0, rhs)
    if sol is None or not sol[0]:
        raise GlueError("(dpiT)", "C0 is not a combination of C and the columns of F")
    gam, delta = sol[0], sol[1:]
    n = Mz.ring.nvars
    b = tuple(F.div(F.norm(P.b0[v] - sum(dk * P.E[k][v] for k, dk in enumerate(delta))), gam) for v in range(n))
    rows = [[a, b] + C, [b, P.d] + P.E]
    rows += [[C[k], P.E[k]] + list(P.F.coeffs[k]) for k in range(q)]
    M = LinearMatrix(Mz.ring, rows, symmetric=True)
    checks = {}
    if verify:
        checks = _battery_or_raise(M, ctx, rng, inner_T={"z": (ctx.z, Mz), "w": (ctx.w, Mw)},
                                   partial={"z": (ctx.z, MTz), "w": (ctx.w, MTw)})
    return MatrixClass(M, ctx.V, tuple(p.coords for p in ctx.gamma), None, "veronese", checks)


# ---------------------------------------------------------------------------
# forward drivers

@dataclass
class GlueInputs:
    ctx: GlueContext
    M: LinearMatrix
    classes: dict = dc_field(default_factory=dict)


def _shuffle(C: MatrixClass, rng) -> LinearMatrix:
    """A random representative of the class (congruence when symmetric)."""
    return random_gl_action(C.representative, rng)[1]


def project_inputs(M: LinearMatrix, ctx: GlueContext, mode: str, rng) -> dict:
    """The classes a glue operation consumes, computed from a known presentation M."""
    z, w = ctx.z, ctx.w
    if mode == "scroll1":
        cls = {"Mz": induce_inner(M, ctx, z, rng), "Mw": induce_inner(M, ctx, w, rng)}
    elif mode == "scroll2":
        cls = {"Mz": induce_inner(M, ctx, z, rng), "Mw": induce_inner(M, ctx, w, rng),
               "MTz": induce_tangential(M, ctx, z, rng), "MTw": induce_tangential(M, ctx, w, rng)}
    elif mode == "veronese":
        cls = {"Mz": induce_inner(M, ctx, z, rng, transpose=True), "Mw": induce_inner(M, ctx, w, rng, transpose=True),
               "MTz": induce_tangential(M, ctx, z, rng), "MTw": induce_tangential(M, ctx, w, rng)}
    else:
        raise ValueError(f"unknown glue mode {mode!r}")
    return {k: _shuffle(v, rng) for k, v in cls.items()}


def run_glue(mode: str, inputs: dict, ctx: GlueContext, rng, verify: bool = True) -> MatrixClass:
    if mode == "scroll1":
        return glue_scroll_I(inputs["Mz"], inputs["Mw"], ctx, rng, verify)
    if mode == "scroll2":
        return glue_scroll_II(inputs["Mz"], inputs["Mw"], inputs["MTz"], inputs["MTw"], ctx, rng, verify)
    if mode == "veronese":
        return glue_veronese(inputs["Mz"], inputs["Mw"], inputs["MTz"], inputs["MTw"], ctx, rng, verify)
    raise ValueError(f"unknown glue mode {mode!r}")


def conditions(mode: str, inputs: dict, ctx: GlueContext, rng) -> dict:
    if mode == "scroll1":
        return {"(pipi)": check_pipi(inputs["Mz"], inputs["Mw"], ctx, rng)}
    if mode == "scroll2":
        return scroll_II_conditions(inputs["Mz"], inputs["Mw"], inputs["MTz"], inputs["MTw"], ctx, rng)
    return veronese_conditions(inputs["Mz"], inputs["Mw"], inputs["MTz"], inputs["MTw"], ctx, rng)


def mode_kind(mode: str) -> str:
    return "veronese" if mode == "veronese" else "scroll"


def glue_roundtrip(V: ParamVariety, q: int, mode: str, rng, M: LinearMatrix | None = None,
                   e: int | None = None) -> dict:
    """Project a known presentation at general points, re-glue, compare with the original."""
    kind = mode_kind(mode)
    if M is None:
        M = presentation(V, q, "veronese" if kind == "veronese" else None)
    if e is None:
        e = 3 if kind == "veronese" else M.b - q
    n = gamma_size(kind, e, q)
    last = None
    for attempt in range(MAX_CONFIGS):
        try:
            ctx = make_context(V, max(n, 2), rng)
            inputs = project_inputs(M, ctx, mode, rng)
            conds = conditions(mode, inputs, ctx, rng)
            glued = run_glue(mode, inputs, ctx, rng)
        except (GlueError, VarietyError) as exc:
            last = exc
            continue
        W = gl_equivalent(glued.representative, M, rng, symmetric=M.symmetric or None)
        return {"mode": mode, "variety": V.provenance, "q": q, "gamma": n, "attempts": attempt + 1,
                "conditions": conds, "checks": glued.checks,
                "roundtrip": W is not None, "glued": glued.representative}
    raise GlueError(getattr(last, "condition", "resample-limit"), f"no good configuration in {MAX_CONFIGS} tries: {last}")


# ---------------------------------------------------------------------------
# uniqueness

def direct_presentation(V: ParamVariety, q: int, kind: str | None = None) -> LinearMatrix:
    """Presentations written down from coordinate indices, without multiplication maps."""
    fam = V.family[0] if V.family else "custom"
    R = V.ring
    F = V.field
    n = R.nvars

    def unit(k):
        return tuple(F.one if i == k else F.zero for i in range(n))

    if fam == "veronese" and V.family[1] == 1:
        fam, params = "scroll", (V.family[2],)
    else:
        params = V.family[1:]
    if fam == "scroll" and (kind == "veronese"):
        h = q + 2
        return LinearMatrix(R, [[unit(i + j) for j in range(h)] for i in range(h)], True)
    if fam == "scroll":
        blocks, off = [], 0
        for ai in params:
            if ai >= q:
                blocks.append([[unit(off + i + j) for j in range(ai - q + 1)] for i in range(q + 1)])
            off += ai + 1
        return LinearMatrix(R, [sum((b[i] for b in blocks), []) for i in range(q + 1)])
    if fam == "segre":
        a, b = params
        return LinearMatrix(R, [[unit(i * (b + 1) + j) for j in range(b + 1)] for i in range(a + 1)])
    if fam == "veronese" and params[1] == 2:
        from .symkernel.poly import monomials_of_degree

        nn = params[0] + 1
        idx = {e: k for k, e in enumerate(monomials_of_degree(nn, 2))}

        def ix(i, j):
            e = [0] * nn
            e[i] += 1
            e[j] += 1
            return idx[tuple(e)]

        return LinearMatrix(R, [[unit(ix(i, j)) for j in range(nn)] for i in range(nn)], True)
    if fam == "p1p1_22":
        # rows/cols su, sv, tu, tv; entry x_{i,j} sits at index 3 i + j
        lab = [(0, 0), (0, 1), (1, 0), (1, 1)]
        return LinearMatrix(R, [[unit(3 * (a1 + b1) + (a2 + b2)) for (b1, b2) in lab] for (a1, a2) in lab], True)
    raise ValueError(f"no direct presentation for {V.provenance}")


def uniqueness_check(V: ParamVariety, q: int, kind: str, rng, with_glue: bool = False) -> dict:
    """Compare presentations derived along independent routes; all pairs must be GL-equivalent."""
    routes = {"direct": direct_presentation(V, q, kind),
              "multiplication": presentation(V, q, "veronese" if kind == "veronese" else None)}
    if with_glue:
        mode = "veronese" if kind == "veronese" else ("scroll1" if q == 1 else "scroll2")
        routes["glue"] = glue_roundtrip(V, q, mode, rng, routes["multiplication"])["glued"]
    names = list(routes)
    base = routes[names[0]]
    sym = kind == "veronese"
    pairs = {f"{names[0]}~{k}": gl_equivalent(base, routes[k], rng, symmetric=sym or None) is not None
             for k in names[1:]}
    return {"equivalent": all(pairs.values()), "pairs": pairs, "shapes": {k: v.shape for k, v in routes.items()}}


# ---------------------------------------------------------------------------
# negative tests: perturbations aimed at a single gluing condition

def random_form_vanishing_at(points, F, n, rng) -> tuple:
    ker = la.nullspace([list(p) for p in points], F, n)
    cs = [F.random(rng) for _ in ker]
    return tuple(F.norm(sum(c * v[k] for c, v in zip(cs, ker))) for k in range(n))


def _add_entry(M: LinearMatrix, i: int, j: int, form) -> LinearMatrix:
    F = M.field
    co = [list(r) for r in M.coeffs]
    co[i][j] = tuple(F.norm(x + y) for x, y in zip(co[i][j], form))
    if M.symmetric and i != j:
        co[j][i] = co[i][j]
    return LinearMatrix(M.ring, co, M.symmetric)


PERTURBATIONS = {
    "scroll1": ("(pipi)",),
    "scroll2": ("(dd)", "(dpi)"),
    "veronese": ("(dd)", "(dpiT)", "(D)"),
}


def perturb_inputs(mode: str, inputs: dict, ctx: GlueContext, condition: str, rng) -> dict:
    """Inputs modified in one block so that ``condition`` is meant to fail.

    scroll1 (pipi): a C-block entry of M_w gains a form vanishing at z and w.
    scroll2 (dpi):  an entry of the partial_w block of M_z gains such a form.
    scroll2 (dd):   the first-column entries of rows 0 and 1 of M_Tz (normalized
                    at w) are swapped, moving the pivot row into the I block.
    veronese (D):   d of M_Tz is replaced by d + F_00.
    veronese (dpiT): C_0 of M_Tw gains a form vanishing at z and w.
    veronese (dd):  F_00 of M_Tw gains such a form.
    """
    V = ctx.V
    F = V.field
    n = V.r + 1
    out = dict(inputs)
    ell = random_form_vanishing_at([ctx.z.coords, ctx.w.coords], F, n, rng)
    key = (mode, condition)
    if key == ("scroll1", "(pipi)"):
        out["Mw"] = _add_entry(_normalize(inputs["Mw"], ctx.z, rng), 0, 1, ell)
    elif key == ("scroll2", "(dpi)"):
        out["Mz"] = _add_entry(_normalize(inputs["Mz"], ctx.w, rng), 1, 1, ell)
    elif key == ("scroll2", "(dd)"):
        T = _normalize(inputs["MTz"], ctx.w, rng)
        co = [list(r) for r in T.coeffs]
        co[0][0], co[1][0] = co[1][0], co[0][0]
        out["MTz"] = LinearMatrix(T.ring, co)
    elif key == ("veronese", "(D)"):
        T = _normalize(inputs["MTz"], ctx.w, rng)
        out["MTz"] = _add_entry(T, 0, 0, T.coeffs[1][1])
    elif key == ("veronese", "(dpiT)"):
        out["MTw"] = _add_entry(_normalize(inputs["MTw"], ctx.z, rng), 0, 1, ell)
    elif key == ("veronese", "(dd)"):
        out["MTw"] = _add_entry(_normalize(inputs["MTw"], ctx.z, rng), 1, 1, ell)
    else:
        raise ValueError(f"no perturbation for {condition} in mode {mode}")
    return out


def negative_matrix(V: ParamVariety, q: int, mode: str, rng, M: LinearMatrix | None = None) -> dict:
    """For each condition: the conditions that fail after its targeted perturbation,
    and the condition named by the glue error."""
    kind = mode_kind(mode)
    if M is None:
        M = presentation(V, q, "veronese" if kind == "veronese" else None)
    e = 3 if kind == "veronese" else M.b - q
    n = max(gamma_size(kind, e, q), 2)
    for _ in range(MAX_CONFIGS):
        try:
            ctx = make_context(V, n, rng)
            inputs = project_inputs(M, ctx, mode, rng)
            break
        except (GlueError, VarietyError):
            continue
    else:
        raise GlueError("resample-limit")
    out = {}
    for cond in PERTURBATIONS[mode]:
        bad = perturb_inputs(mode, inputs, ctx, cond, rng)
        res = conditions(mode, bad, ctx, rng)
        try:
            run_glue(mode, bad, ctx, rng)
            raised = None
        except GlueError as exc:
            raised = exc.condition
        out[cond] = {"failed": sorted(k for k, v in res.items() if v is False),
                     "not_evaluable": sorted(k for k, v in res.items() if v is None),
                     "glue_error": raised}
    return out
