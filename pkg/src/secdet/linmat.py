"""Matrices of linear forms.

A :class:`LinearMatrix` stores an ``a x b x n`` coefficient tensor over the
ring's field (``n`` = number of ring variables), so the GL(a) x GL(b) action
and evaluation at points are plain linear algebra.  Entries are exposed as
:class:`~secdet.symkernel.Polynomial` on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from . import _kernels
from .symkernel import linalg as la
from .symkernel.field import Field
from .symkernel.gcd import exact_div
from .symkernel.groebner import DEFAULT_BUDGET, Ideal, groebner_basis
from .symkernel.poly import PolyError, PolyRing, Polynomial, poly_parse, poly_print


class MatrixError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LinearMatrix:
    ring: PolyRing
    coeffs: tuple
    symmetric: bool = False

    def __post_init__(self):
        co = tuple(tuple(tuple(v) for v in row) for row in self.coeffs)
        object.__setattr__(self, "coeffs", co)
        if not co or not co[0]:
            raise MatrixError("empty matrix")
        n = self.ring.nvars
        for row in co:
            if len(row) != len(co[0]):
                raise MatrixError("ragged rows")
            for v in row:
                if len(v) != n:
                    raise MatrixError("coefficient vector length differs from number of variables")
        if self.symmetric:
            if self.a != self.b:
                raise MatrixError("symmetric matrix must be square")
            for i in range(self.a):
                for j in range(i):
                    if co[i][j] != co[j][i]:
                        raise MatrixError("matrix flagged symmetric is not symmetric")

    # construction ---------------------------------------------------------
    @classmethod
    def from_entries(cls, ring: PolyRing, entries, symmetric: bool = False) -> "LinearMatrix":
        coeffs = []
        for row in entries:
            crow = []
            for e in row:
                if isinstance(e, str):
                    e = poly_parse(e, ring)
                elif not isinstance(e, Polynomial):
                    e = ring.const(e)
                if e.ring != ring:
                    raise MatrixError("entry ring mismatch")
                if not e.is_zero() and not (e.is_homogeneous() and e.degree == 1):
                    raise MatrixError(f"entry {e} is not a linear form")
                crow.append(tuple(e.linear_coeffs()))
            coeffs.append(crow)
        return cls(ring, coeffs, symmetric)

    @classmethod
    def hankel(cls, ring: PolyRing, rows: int, cols: int, offset: int = 0) -> "LinearMatrix":
        """Matrix with entry (i, j) the variable number ``offset + i + j``."""
        F = ring.field
        n = ring.nvars
        co = [[tuple(F.one if k == offset + i + j else F.zero for k in range(n)) for j in range(cols)]
              for i in range(rows)]
        return cls(ring, co, symmetric=(rows == cols))

    # shape / access -------------------------------------------------------
    @property
    def a(self) -> int:
        return len(self.coeffs)

    @property
    def b(self) -> int:
        return len(self.coeffs[0])

    @property
    def shape(self) -> tuple:
        return (self.a, self.b)

    @property
    def field(self) -> Field:
        return self.ring.field

    def entry(self, i: int, j: int) -> Polynomial:
        return self.ring.linear_form(self.coeffs[i][j])

    def entries(self) -> list:
        return [[self.entry(i, j) for j in range(self.b)] for i in range(self.a)]

    def is_zero_entry(self, i, j) -> bool:
        return not any(self.coeffs[i][j])

    def column(self, j) -> list:
        return [self.coeffs[i][j] for i in range(self.a)]

    def __eq__(self, other):
        return (
            isinstance(other, LinearMatrix)
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        flag = " symmetric" if self.symmetric else ""
        return f"<LinearMatrix {self.a}x{self.b}{flag}: {self.to_rows_str()}>"

    def to_rows_str(self) -> str:
        return "; ".join(", ".join(str(self.entry(i, j)) for j in range(self.b)) for i in range(self.a))

    # structural operations ---------------------------------------------------
    def transpose(self) -> "LinearMatrix":
        co = [[self.coeffs[i][j] for i in range(self.a)] for j in range(self.b)]
        return LinearMatrix(self.ring, co, self.symmetric)

    @property
    def T(self) -> "LinearMatrix":
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int], symmetric: bool | None = None) -> "LinearMatrix":
        co = [[self.coeffs[i][j] for j in cols] for i in rows]
        if symmetric is None:
            symmetric = self.symmetric and list(rows) == list(cols)
        return LinearMatrix(self.ring, co, symmetric)

    def delete(self, rows=(), cols=()) -> "LinearMatrix":
        keep_r = [i for i in range(self.a) if i not in set(rows)]
        keep_c = [j for j in range(self.b) if j not in set(cols)]
        return self.submatrix(keep_r, keep_c)

    def hstack(self, *others) -> "LinearMatrix":
        co = [list(r) for r in self.coeffs]
        for o in others:
            if o.a != self.a or o.ring != self.ring:
                raise MatrixError("hstack shape/ring mismatch")
            for i in range(self.a):
                co[i].extend(o.coeffs[i])
        return LinearMatrix(self.ring, co)

    def vstack(self, *others) -> "LinearMatrix":
        co = [list(r) for r in self.coeffs]
        for o in others:
            if o.b != self.b or o.ring != self.ring:
                raise MatrixError("vstack shape/ring mismatch")
            co.extend(list(r) for r in o.coeffs)
        return LinearMatrix(self.ring, co)

    def with_symmetric(self, flag: bool = True) -> "LinearMatrix":
        return LinearMatrix(self.ring, self.coeffs, flag)

    def act(self, A, B=None) -> "LinearMatrix":
        """A M B^T for scalar matrices A (a x a) and B (b x b); B defaults to A."""
        F = self.field
        sym = B is None and self.symmetric
        if B is None:
            B = A
        n = self.ring.nvars
        # (A M)_{i,l} then (A M B^T)_{i,j} = sum_l (A M)_{i,l} B_{j,l}
        AM = [[tuple(F.norm(sum(A[i][k] * self.coeffs[k][l][v] for k in range(self.a))) for v in range(n))
               for l in range(self.b)] for i in range(len(A))]
        out = [[tuple(F.norm(sum(AM[i][l][v] * B[j][l] for l in range(self.b))) for v in range(n))
                for j in range(len(B))] for i in range(len(A))]
        sym = sym or (self.symmetric and _is_scalar_multiple(B, A, F) is not None)
        return LinearMatrix(self.ring, out, sym)

    def scale(self, c) -> "LinearMatrix":
        F = self.field
        co = [[tuple(F.norm(c * x) for x in v) for v in row] for row in self.coeffs]
        return LinearMatrix(self.ring, co, self.symmetric)

    def change_ring(self, ring: PolyRing, lift_rows) -> "LinearMatrix":
        """Rewrite entries through a linear map of forms: new = old_coeffs @ lift_rows."""
        F = ring.field
        n_new = ring.nvars
        co = [[tuple(F.norm(sum(c * lift_rows[k][v] for k, c in enumerate(vec) if c)) for v in range(n_new))
               for vec in row] for row in self.coeffs]
        return LinearMatrix(ring, co, self.symmetric)

    # evaluation --------------------------------------------------------------------
    def evaluate(self, point) -> list:
        F = self.field
        pt = [F(x) for x in point]
        if len(pt) != self.ring.nvars:
            raise MatrixError("point length differs from number of variables")
        return [[F.norm(sum(c * x for c, x in zip(v, pt))) for v in row] for row in self.coeffs]

    def evaluate_many(self, points) -> np.ndarray:
        """Batch evaluation over GF(p); returns an int64 array (k, a, b)."""
        p = self.field.characteristic
        if not p:
            return np.array([self.evaluate(z) for z in points], dtype=object)
        return _kernels.eval_linear_mod_p(np.array(self.coeffs, dtype=np.int64),
                                          np.array([[int(x) for x in z] for z in points], dtype=np.int64), p)

    def rank_at(self, point) -> int:
        return la.rank(self.evaluate(point), self.field)

    def bilinear(self, v, w) -> tuple:
        """Coefficient vector of the linear form v^T M w."""
        F = self.field
        n = self.ring.nvars
        return tuple(F.norm(sum(v[i] * w[j] * self.coeffs[i][j][k]
                                for i in range(self.a) for j in range(self.b) if v[i] and w[j]))
                     for k in range(n))

    # text format -------------------------------------------------------------------------
    def to_text(self) -> str:
        head = f"linmat {self.a} {self.b}" + (" symmetric" if self.symmetric else "")
        rows = [", ".join(poly_print(self.entry(i, j)) for j in range(self.b)) for i in range(self.a)]
        return head + "\n" + ";\n".join(rows) + "\n"


def _is_scalar_multiple(B, A, F):
    """mu with B = mu * A, or None."""
    mu = None
    for rb, ra in zip(B, A):
        for x, y in zip(rb, ra):
            if y:
                m = F.div(x, y)
                if mu is None:
                    mu = m
                elif m != mu:
                    return None
            elif x:
                return None
    return mu


def parse_linmat(text: str, ring: PolyRing) -> LinearMatrix:
    """Parse ``linmat a b [symmetric]`` followed by ';'-separated rows of ','-separated entries."""
    lines = text.strip().split("\n", 1)
    head = lines[0].split()
    if len(head) not in (3, 4) or head[0] != "linmat":
        raise MatrixError("matrix header must be 'linmat a b [symmetric]'")
    a, b = int(head[1]), int(head[2])
    sym = len(head) == 4
    if sym and head[3] != "symmetric":
        raise MatrixError(f"unknown header flag {head[3]!r}")
    body = lines[1] if len(lines) > 1 else ""
    rows = [r for r in body.split(";")]
    if len(rows) != a:
        raise MatrixError(f"expected {a} rows, found {len(rows)}")
    entries = []
    for r in rows:
        cells = [c.strip() for c in r.split(",")]
        if len(cells) != b:
            raise MatrixError(f"expected {b} entries per row, found {len(cells)}")
        entries.append([poly_parse(c, ring) for c in cells])
    return LinearMatrix.from_entries(ring, entries, sym)


# ---------------------------------------------------------------------------
# GL witnesses

@dataclass(frozen=True)
class GLWitness:
    """(A, B) with M' = A M B^T.  For symmetric actions B = mu * A (mu = 1 when possible)."""

    A: tuple
    B: tuple

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(tuple(r) for r in self.A))
        object.__setattr__(self, "B", tuple(tuple(r) for r in self.B))

    def apply(self, M: LinearMatrix) -> LinearMatrix:
        return M.act([list(r) for r in self.A], [list(r) for r in self.B])

    def inverse(self, F: Field) -> "GLWitness":
        return GLWitness(la.inverse(self.A, F), la.inverse(self.B, F))

    def compose(self, other: "GLWitness", F: Field) -> "GLWitness":
        """Witness of ``other`` applied after ``self``."""
        return GLWitness(la.matmul(other.A, self.A, F), la.matmul(other.B, self.B, F))

    def is_invertible(self, F: Field) -> bool:
        return la.is_invertible(self.A, F) and la.is_invertible(self.B, F)

    def congruence_scale(self, F: Field):
        return _is_scalar_multiple(self.B, self.A, F)

    @classmethod
    def identity(cls, a: int, b: int, F: Field) -> "GLWitness":
        return cls(la.identity(a, F), la.identity(b, F))


@dataclass
class MatrixClass:
    """A representative up to the natural GL action, with its variety and point set."""

    representative: LinearMatrix
    variety: object = None
    gamma: tuple = ()
    projection: object = None
    kind: str = "scroll"
    checks: dict = field(default_factory=dict)

    @property
    def shape(self):
        return self.representative.shape


# ---------------------------------------------------------------------------
# minors

def _det_bareiss(rows: list, ring: PolyRing) -> Polynomial:
    n = len(rows)
    M = [list(r) for r in rows]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return ring.zero()
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = exact_div(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign > 0 else -d


def minors(M: LinearMatrix, s: int) -> list:
    """All s-minors, rows then columns in lexicographic combination order."""
    if not 1 <= s <= min(M.a, M.b):
        raise MatrixError(f"minor size {s} out of range for {M.a}x{M.b}")
    E = M.entries()
    ring = M.ring
    if s > 4:
        return [_det_bareiss([[E[i][j] for j in cols] for i in rows], ring)
                for rows in combinations(range(M.a), s) for cols in combinations(range(M.b), s)]
    memo: dict = {}

    def det(rows: tuple, cols: tuple) -> Polynomial:
        if len(rows) == 1:
            return E[rows[0]][cols[0]]
        key = (rows, cols)
        if key in memo:
            return memo[key]
        r0, rest = rows[0], rows[1:]
        acc = ring.zero()
        for idx, c in enumerate(cols):
            e = E[r0][c]
            if e.is_zero():
                continue
            sub = det(rest, cols[:idx] + cols[idx + 1:])
            if sub.is_zero():
                continue
            term = e * sub
            acc = acc + term if idx % 2 == 0 else acc - term
        memo[key] = acc
        return acc

    return [det(rows, cols) for rows in combinations(range(M.a), s) for cols in combinations(range(M.b), s)]


def minors_ideal(M: LinearMatrix, s: int, budget: int | None = DEFAULT_BUDGET) -> Ideal:
    gens = []
    seen = set()
    for m in minors(M, s):
        if m.is_zero():
            continue
        key = m.monic()
        if key in seen:
            continue
        seen.add(key)
        gens.append(m)
    if not gens:
        gens = [M.ring.zero()]
    return Ideal(M.ring, gens, budget)


# ---------------------------------------------------------------------------
# 1-genericity

@dataclass(frozen=True)
class OneGenericResult:
    generic: bool
    witness: tuple | None = None     # (v, w) with v^T M w = 0
    chart: tuple | None = None       # (i, j) of a consistent chart

    def __bool__(self):
        return self.generic


def _chart_system(M: LinearMatrix, i0: int, j0: int):
    a, b, n = M.a, M.b, M.ring.nvars
    F = M.field
    vnames = [f"v{i}" for i in range(i0 + 1, a)]
    wnames = [f"w{j}" for j in range(j0 + 1, b)]
    names = tuple(vnames + wnames)
    R = PolyRing(names or ("_dummy",), F)
    one = R.one()
    v = [R.zero()] * a
    w = [R.zero()] * b
    v[i0] = one
    w[j0] = one
    for idx, i in enumerate(range(i0 + 1, a)):
        v[i] = R.gen(idx)
    for idx, j in enumerate(range(j0 + 1, b)):
        w[j] = R.gen(len(vnames) + idx)
    eqs = []
    for k in range(n):
        acc: dict = {}
        for i in range(i0, a):
            for j in range(j0, b):
                c = M.coeffs[i][j][k]
                if c:
                    term = v[i] * w[j]
                    for e, x in term.termdict.items():
                        acc[e] = F.norm(acc.get(e, 0) + x * c)
        poly = Polynomial(R, {e: x for e, x in acc.items() if x})
        if poly:
            eqs.append(poly)
    return R, eqs, v, w


def _univariate_roots(f: Polynomial, var: int, F: Field) -> list:
    """Roots in F of a polynomial involving only variable ``var``."""
    coeffs: dict = {}
    for e, c in f.termdict.items():
        coeffs[e[var]] = c
    deg = max(coeffs)
    if deg == 0:
        return []
    p = F.characteristic
    if p:
        xs = np.arange(p, dtype=np.int64)
        acc = np.zeros(p, dtype=np.int64)
        for d in range(deg, -1, -1):
            acc = (acc * xs + int(coeffs.get(d, 0))) % p
        return [int(x) for x in np.nonzero(acc == 0)[0]]
    from fractions import Fraction
    from math import lcm

    den = 1
    for c in coeffs.values():
        den = lcm(den, Fraction(c).denominator)
    ints = {d: int(Fraction(c) * den) for d, c in coeffs.items()}
    roots = []
    low = min(ints)
    if low > 0:
        roots.append(Fraction(0))
    ints = {d - low: c for d, c in ints.items()}
    a0, an = abs(ints.get(0, 0)), abs(ints[max(ints)])
    if a0 == 0 or a0 > 10**6 or an > 10**6:
        return roots

    def divisors(n):
        return [d for d in range(1, n + 1) if n % d == 0]

    for pn in divisors(a0):
        for qd in divisors(an):
            for sgn in (1, -1):
                x = Fraction(sgn * pn, qd)
                if sum(c * x**d for d, c in ints.items()) == 0 and x not in roots:
                    roots.append(x)
    return roots


def _find_point(eqs: list, R: PolyRing, budget, fixed: dict | None = None) -> dict | None:
    """A field-rational solution of ``eqs`` (dict var index -> value), or None.

    Lex elimination: solve for the smallest unfixed variable, substitute, recurse.
    Free variables are tried at 0 and 1.
    """
    F = R.field
    n = R.nvars
    fixed = dict(fixed or {})
    gb = groebner_basis(eqs, R, budget) if eqs else []
    gb = [g for g in gb if g]
    if any(g.is_constant() for g in gb):
        return None
    free = [v for v in range(n) if v not in fixed]
    if not free:
        return fixed if not gb else None
    if not gb:
        for v in free:
            fixed[v] = F.zero
        return fixed
    used = set().union(*(g.variables_used() for g in gb))
    var = None
    for v in reversed(free):
        if v not in used:
            var, candidates = v, [F.zero, F.one]
            break
        uni = [g for g in gb if g.variables_used() == {v}]
        if uni:
            var, candidates = v, _univariate_roots(uni[0], v, F)
            break
    if var is None:
        return None
    for val in candidates[:8]:
        sub = [R.gen(i) if i != var else R.const(val) for i in range(n)]
        new_eqs = [h for h in (g.pullback(sub, R) for g in gb) if h]
        rest = _find_point(new_eqs, R, budget, {**fixed, var: val})
        if rest is not None:
            return rest
    return None


def is_one_generic(M: LinearMatrix, budget: int | None = DEFAULT_BUDGET, find_witness: bool = True) -> OneGenericResult:
    """Decide 1-genericity over the algebraic closure by chart-wise consistency tests."""
    F = M.field
    if all(not any(v) for row in M.coeffs for v in row):
        raise MatrixError("zero matrix")
    for i in range(M.a):
        for j in range(M.b):
            if M.is_zero_entry(i, j):
                v = [F.one if k == i else F.zero for k in range(M.a)]
                w = [F.one if k == j else F.zero for k in range(M.b)]
                return OneGenericResult(False, (tuple(v), tuple(w)), (i, j))
    for i0 in range(M.a):
        for j0 in range(M.b):
            R, eqs, v, w = _chart_system(M, i0, j0)
            if not eqs:
                return OneGenericResult(False, None, (i0, j0))
            gb = groebner_basis(eqs, R, budget)
            if any(g.is_constant() and g for g in gb):
                continue
            witness = None
            if find_witness:
                Rl = R.with_order("lex")
                sol = _find_point([Polynomial(Rl, dict(g.termdict)) for g in gb], Rl, budget)
                if sol is not None:
                    pt = [sol.get(k, F.zero) for k in range(Rl.nvars)]
                    vv = tuple(x.eval(pt) for x in v)
                    ww = tuple(x.eval(pt) for x in w)
                    if not any(M.bilinear(vv, ww)):
                        witness = (vv, ww)
            return OneGenericResult(False, witness, (i0, j0))
    return OneGenericResult(True)


# ---------------------------------------------------------------------------
# points, regularity, normalization

def _rank1_row(Mz, F) -> list | None:
    for row in Mz:
        if any(row):
            return list(row)
    return None


def gamma_regular(M: LinearMatrix, gamma: Sequence, transpose: bool = False) -> bool:
    """True iff the right kernels of M(z), z in gamma, meet in codimension |gamma|.

    With ``transpose=True`` the test uses left kernels (regularity of M^T).
    """
    if transpose:
        M = M.transpose()
    F = M.field
    rows = []
    for z in gamma:
        Mz = M.evaluate(z)
        if la.rank(Mz, F) >= 2:
            raise MatrixError("M(z) has rank >= 2 at a point of gamma")
        r = _rank1_row(Mz, F)
        if r is not None:
            rows.append(r)
    if not gamma:
        return True
    return la.rank(rows, F) == len(gamma) if rows else False


def _is_unit_pattern(Mz, i0=0, j0=0) -> bool:
    for i, row in enumerate(Mz):
        for j, x in enumerate(row):
            if (i, j) == (i0, j0):
                if not x:
                    return False
            elif x:
                return False
    return True


def is_normalized_at(M: LinearMatrix, z) -> bool:
    return _is_unit_pattern(M.evaluate(z))


def _elim_matrix(vec, pivot, F, size):
    """Invertible matrix sending ``vec`` (with vec[pivot] != 0) to e_0 up to scale.

    Row 0 picks out the pivot coordinate; other rows clear the remaining
    coordinates against it; the pivot is moved to position 0.
    """
    inv = F.inv(vec[pivot])
    A = [[F.zero] * size for _ in range(size)]
    order = [pivot] + [k for k in range(size) if k != pivot]
    for new, old in enumerate(order):
        if new == 0:
            A[0][pivot] = F.one
        else:
            A[new][old] = F.one
            A[new][pivot] = F.neg(F.norm(vec[old] * inv))
    return A


def normalize_at_point(M: LinearMatrix, z, rng=None) -> tuple:
    """(witness, M') with M' = A M B^T and M'(z) = E^{0,0} (unit at (0,0)).

    Pivot is the first nonzero entry of M(z) in row-major order; for symmetric
    M the pivot is a nonzero diagonal entry and the action is a congruence,
    times a scalar when the pivot value is not a square.
    """
    F = M.field
    Mz = M.evaluate(z)
    rk = la.rank(Mz, F)
    if rk == 0:
        raise MatrixError("M(z) = 0")
    if rk >= 2:
        raise MatrixError("M(z) has rank >= 2")
    if M.symmetric:
        A_pre = la.identity(M.a, F)
        diag = [k for k in range(M.a) if Mz[k][k]]
        tries = 0
        while not diag:
            if rng is None:
                rng = np.random.default_rng(0)
            tries += 1
            if tries > 8:
                raise MatrixError("no nonzero diagonal in M(z) after 8 random congruences")
            U = [[F.one if i == j else (F.random(rng) if j > i else F.zero) for j in range(M.a)] for i in range(M.a)]
            A_pre = U
            Mz2 = la.matmul(la.matmul(U, Mz, F), la.transpose(U), F)
            diag = [k for k in range(M.a) if Mz2[k][k]]
            if diag:
                Mz = Mz2
        k = diag[0]
        col = [Mz[i][k] for i in range(M.a)]
        A = la.matmul(_elim_matrix(col, k, F, M.a), A_pre, F)
        W = GLWitness(A, A)
    else:
        i0, j0 = next((i, j) for i in range(M.a) for j in range(M.b) if Mz[i][j])
        col = [Mz[i][j0] for i in range(M.a)]
        row = [Mz[i0][j] for j in range(M.b)]
        A = _elim_matrix(col, i0, F, M.a)
        B = _elim_matrix(row, j0, F, M.b)
        W = GLWitness(A, B)
    # scale so that M'(z) is E^{0,0} for this affine representative of z
    v = W.apply(M).evaluate(z)[0][0]
    A = [list(r) for r in W.A]
    B = [list(r) for r in W.B]
    if M.symmetric:
        s = F.sqrt(v)
        if s:
            A[0] = [F.div(x, s) for x in A[0]]
            B = A
        else:
            B = [[F.div(x, v) for x in r] for r in A]   # congruence up to the scalar 1/v
    else:
        A[0] = [F.div(x, v) for x in A[0]]
    W = GLWitness(A, B)
    Mp = W.apply(M)
    if M.symmetric:
        Mp = Mp.with_symmetric(True)
    if not is_normalized_at(Mp, z) or Mp.evaluate(z)[0][0] != F.one:
        raise MatrixError("normalization failed")  # pragma: no cover
    return W, Mp


def _require_normalized(M, z):
    if z is not None and not is_normalized_at(M, z):
        raise MatrixError("matrix is not normalized at z (M(z) != E^{0,0})")


def project_pi(M: LinearMatrix, z=None) -> LinearMatrix:
    """Delete the first column (M normalized at z)."""
    _require_normalized(M, z)
    return M.delete(cols=[0])


def project_pi_T(M: LinearMatrix, z=None) -> LinearMatrix:
    return project_pi(M, z).transpose()


def project_partial(M: LinearMatrix, z=None) -> LinearMatrix:
    """Delete the first row and column (M normalized at z)."""
    _require_normalized(M, z)
    out = M.delete(rows=[0], cols=[0])
    return out.with_symmetric(True) if M.symmetric else out


# ---------------------------------------------------------------------------
# linear combinations and GL equivalence

def column_dependence(A, Mp: LinearMatrix):
    """Scalars c with A = Mp * c as columns of linear forms, or None.

    ``A`` is a sequence of coefficient vectors (or linear Polynomials), one per row.
    """
    F = Mp.field
    n = Mp.ring.nvars
    A = [tuple(x.linear_coeffs()) if isinstance(x, Polynomial) else tuple(x) for x in A]
    if len(A) != Mp.a:
        raise MatrixError("column length differs from number of rows")
    rows, rhs = [], []
    for i in range(Mp.a):
        for k in range(n):
            rows.append([Mp.coeffs[i][j][k] for j in range(Mp.b)])
            rhs.append(A[i][k])
    return la.solve(rows, rhs, F)


def _gl_system(M: LinearMatrix, M2: LinearMatrix):
    """Rows of the linear system A M - M2 C = 0 in the unknowns (A, C)."""
    a, b, n = M.a, M.b, M.ring.nvars
    F = M.field
    na = a * a
    rows = []
    for i in range(a):
        for j in range(b):
            for k in range(n):
                row = [F.zero] * (na + b * b)
                for l in range(a):
                    row[i * a + l] = M.coeffs[l][j][k]
                for l in range(b):
                    c = M2.coeffs[i][l][k]
                    if c:
                        row[na + l * b + j] = F.neg(c)
                if any(row):
                    rows.append(row)
    return rows


def _split(vec, a, b):
    A = [list(vec[i * a:(i + 1) * a]) for i in range(a)]
    C = [list(vec[a * a + l * b: a * a + (l + 1) * b]) for l in range(b)]
    return A, C


def _poly_det(rows, ring):
    if len(rows) == 1:
        return rows[0][0]
    return _det_bareiss(rows, ring)


def gl_equivalent(M: LinearMatrix, M2: LinearMatrix, rng=None, samples: int = 16,
                  symmetric: bool | None = None) -> GLWitness | None:
    """A witness (A, B) with M2 = A M B^T, or None when no invertible pair exists.

    Solves A M = M2 C jointly (linear in A, C), then samples the solution space
    for an invertible pair and returns (A, C^{-T}).  With ``symmetric`` (default:
    both inputs symmetric) only witnesses with B proportional to A are returned;
    B = A whenever the proportionality constant is a square in the field.
    """
    if M.shape != M2.shape or M.ring != M2.ring:
        return None
    F = M.field
    a, b = M.a, M.b
    if symmetric is None:
        symmetric = M.symmetric and M2.symmetric
    rng = rng if rng is not None else np.random.default_rng(0x5EC0DE01)
    rows = _gl_system(M, M2)
    basis = la.nullspace(rows, F, a * a + b * b) if rows else [
        [F.one if i == j else F.zero for i in range(a * a + b * b)] for j in range(a * a + b * b)]
    if not basis:
        return None

    def candidate(vec):
        A, C = _split(vec, a, b)
        if not (la.is_invertible(A, F) and la.is_invertible(C, F)):
            return None
        B = la.transpose(la.inverse(C, F))
        if symmetric:
            mu = _is_scalar_multiple(B, A, F)
            if mu is None:
                return None
            s = F.sqrt(mu)
            if s is not None and s:
                A = [[F.norm(s * x) for x in r] for r in A]
                B = A
        return GLWitness(A, B)

    if len(basis) == 1:
        w = candidate(basis[0])
        if w is not None:
            return w
    for _ in range(samples):
        coeffs = [F.random_nonzero(rng) for _ in basis]
        vec = [F.norm(sum(c * v[k] for c, v in zip(coeffs, basis))) for k in range(a * a + b * b)]
        w = candidate(vec)
        if w is not None:
            return w
    # exact fallback: is det(A) det(C) identically zero on the solution space?
    d = len(basis)
    R = PolyRing(tuple(f"l{k}" for k in range(d)), F)
    lam = R.gens()
    vec = [sum((lam[k].scale(basis[k][idx]) for k in range(d) if basis[k][idx]), R.zero())
           for idx in range(a * a + b * b)]
    A, C = _split(vec, a, b)
    if _poly_det(A, R).is_zero() or _poly_det(C, R).is_zero():
        return None
    for _ in range(64 * samples):
        coeffs = [F.random(rng) for _ in basis]
        v2 = [F.norm(sum(c * v[k] for c, v in zip(coeffs, basis))) for k in range(a * a + b * b)]
        w = candidate(v2)
        if w is not None:
            return w
    return None


def random_gl_action(M: LinearMatrix, rng) -> tuple:
    """(witness, A M B^T) for random invertible A, B (congruence when M is symmetric)."""
    F = M.field
    A = la.random_invertible(M.a, F, rng)
    if M.symmetric:
        W = GLWitness(A, A)
        return W, W.apply(M).with_symmetric(True)
    B = la.random_invertible(M.b, F, rng)
    W = GLWitness(A, B)
    return W, W.apply(M)
