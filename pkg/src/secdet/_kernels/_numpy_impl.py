"""Pure-numpy GF(p) kernels.  Matrices are int64 with entries in [0, p)."""

import numpy as np


def rref_mod_p(A, p):
    A = np.array(A, dtype=np.int64) % p
    m, n = A.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            A[rows] = (A[rows] - np.outer(col[rows], A[r])) % p
        pivots[r] = c
        r += 1
    return A, pivots[:r].copy()


def rank_mod_p(A, p):
    return rref_mod_p(A, p)[1].shape[0]


def batch_rank_mod_p(stack, p):
    stack = np.asarray(stack, dtype=np.int64)
    return np.array([rank_mod_p(M, p) for M in stack], dtype=np.int64)


def eval_linear_mod_p(coeffs, points, p):
    """coeffs: (a, b, n) linear-form tensor; points: (k, n).  Returns (k, a, b)."""
    coeffs = np.asarray(coeffs, dtype=np.int64) % p
    points = np.asarray(points, dtype=np.int64) % p
    a, b, n = coeffs.shape
    flat = coeffs.reshape(a * b, n)
    out = (points @ flat.T) % p
    return out.reshape(points.shape[0], a, b)
