"""Exact dense linear algebra over a :class:`Field` on lists of rows.

GF(p) work is delegated to the compiled kernels; QQ uses Fraction elimination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .. import _kernels
from .field import Field


class SingularMatrix(ArithmeticError):
    pass


def _rref_qq(rows):
    A = [[Fraction(x) for x in r] for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        k = next((i for i in range(r, m) if A[i][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        pr = A[r]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], pr)]
        pivots.append(c)
        r += 1
    return A, pivots


def rref(rows: Sequence[Sequence], F: Field, ncols: int | None = None):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    if F.characteristic:
        R, piv = _kernels.rref_mod_p(np.array(rows, dtype=np.int64), F.characteristic)
        return [[int(x) for x in r] for r in R], [int(c) for c in piv]
    return _rref_qq(rows)


def rank(rows, F: Field) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    if F.characteristic:
        return int(_kernels.rank_mod_p(np.array(rows, dtype=np.int64), F.characteristic))
    return len(_rref_qq(rows)[1])


def nullspace(rows, F: Field, ncols: int | None = None) -> list:
    """Basis of {v : A v = 0}, one vector per free column (deterministic)."""
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    if not rows:
        return [[F.one if i == j else F.zero for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(rows, F)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [F.zero] * ncols
        v[f] = F.one
        for r, c in enumerate(piv):
            v[c] = F.neg(R[r][f])
        basis.append(v)
    return basis


def row_space(rows, F: Field) -> list:
    R, piv = rref(rows, F)
    return R[: len(piv)]


def solve(A, b, F: Field):
    """A solution x of A x = b, or None when inconsistent."""
    A = [list(r) for r in A]
    if not A:
        return None
    n = len(A[0])
    aug = [r + [bi] for r, bi in zip(A, b)]
    R, piv = rref(aug, F)
    if n in piv:
        return None
    x = [F.zero] * n
    for r, c in enumerate(piv):
        x[c] = R[r][n]
    return x


def matmul(A, B, F: Field):
    Bt = list(zip(*B))
    return [[F.norm(sum(a * b for a, b in zip(row, col))) for col in Bt] for row in A]


def matvec(A, v, F: Field):
    return [F.norm(sum(a * b for a, b in zip(row, v))) for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def identity(n: int, F: Field):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def inverse(A, F: Field):
    n = len(A)
    aug = [list(r) + e for r, e in zip(A, identity(n, F))]
    R, piv = rref(aug, F)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise SingularMatrix("matrix is not invertible")
    return [r[n:] for r in R[:n]]


def det(A, F: Field):
    """Determinant by Gaussian elimination over the field."""
    n = len(A)
    M = [[F(x) for x in r] for r in A]
    d = F.one
    for c in range(n):
        k = next((i for i in range(c, n) if M[i][c]), None)
        if k is None:
            return F.zero
        if k != c:
            M[c], M[k] = M[k], M[c]
            d = F.neg(d)
        piv = M[c][c]
        d = F.norm(d * piv)
        inv = F.inv(piv)
        for i in range(c + 1, n):
            if M[i][c]:
                f = F.norm(M[i][c] * inv)
                M[i] = [F.norm(x - f * y) for x, y in zip(M[i], M[c])]
    return d


def is_invertible(A, F: Field) -> bool:
    return rank(A, F) == len(A)


def random_matrix(n: int, m: int, F: Field, rng):
    return [[F.random(rng) for _ in range(m)] for _ in range(n)]


def random_invertible(n: int, F: Field, rng, max_tries: int = 64):
    for _ in range(max_tries):
        A = random_matrix(n, n, F, rng)
        if is_invertible(A, F):
            return A
    raise SingularMatrix("could not sample an invertible matrix")
