"""numba-compiled GF(p) kernels with the same signatures as the numpy fallback."""

import numpy as np
from numba import njit


@njit(cache=True)
def _powmod(a, e, p):
    result = 1
    a %= p
    while e > 0:
        if e & 1:
            result = result * a % p
        a = a * a % p
        e >>= 1
    return result


@njit(cache=True)
def _rref_inplace(A, p):
    m, n = A.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        k = -1
        for i in range(r, m):
            if A[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(n):
                tmp = A[r, j]
                A[r, j] = A[k, j]
                A[k, j] = tmp
        inv = _powmod(A[r, c], p - 2, p)
        for j in range(n):
            A[r, j] = A[r, j] * inv % p
        for i in range(m):
            if i != r:
                f = A[i, c]
                if f != 0:
                    for j in range(c, n):
                        A[i, j] = (A[i, j] - f * A[r, j]) % p
        pivots[r] = c
        r += 1
    return pivots[:r].copy()


def rref_mod_p(A, p):
    A = np.array(A, dtype=np.int64) % p
    piv = _rref_inplace(A, np.int64(p))
    return A, piv


@njit(cache=True)
def _batch_rank(stack, p):
    k = stack.shape[0]
    out = np.empty(k, dtype=np.int64)
    for t in range(k):
        M = stack[t].copy()
        out[t] = _rref_inplace(M, p).shape[0]
    return out


def rank_mod_p(A, p):
    return rref_mod_p(A, p)[1].shape[0]


def batch_rank_mod_p(stack, p):
    stack = np.ascontiguousarray(np.asarray(stack, dtype=np.int64) % p)
    return _batch_rank(stack, np.int64(p))


@njit(cache=True)
def _eval_linear(coeffs, points, p):
    a, b, n = coeffs.shape
    k = points.shape[0]
    out = np.zeros((k, a, b), dtype=np.int64)
    for t in range(k):
        for i in range(a):
            for j in range(b):
                s = 0
                for v in range(n):
                    s = (s + coeffs[i, j, v] * points[t, v]) % p
                out[t, i, j] = s
    return out


def eval_linear_mod_p(coeffs, points, p):
    coeffs = np.ascontiguousarray(np.asarray(coeffs, dtype=np.int64) % p)
    points = np.ascontiguousarray(np.asarray(points, dtype=np.int64) % p)
    return _eval_linear(coeffs, points, np.int64(p))
