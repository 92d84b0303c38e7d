"""GF(p) dense linear-algebra kernels.

The numba backend is used when numba imports and ``SECDET_NUMBA`` is not set
to ``0``; otherwise the pure-numpy implementation is used.  Both expose
``rref_mod_p``, ``rank_mod_p``, ``batch_rank_mod_p`` and ``eval_linear_mod_p``;
evaluation always goes through numpy (see benchmarks/bench_kernels.py).
"""

import os

from . import _numpy_impl

BACKEND = "numpy"
_impl = _numpy_impl

if os.environ.get("SECDET_NUMBA", "1") != "0":
    try:
        from . import _numba_impl

        _impl = _numba_impl
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba missing
        pass

rref_mod_p = _impl.rref_mod_p
rank_mod_p = _impl.rank_mod_p
batch_rank_mod_p = _impl.batch_rank_mod_p
# one vectorized contraction: numpy is already faster than the jitted loop
eval_linear_mod_p = _numpy_impl.eval_linear_mod_p

__all__ = ["BACKEND", "rref_mod_p", "rank_mod_p", "batch_rank_mod_p", "eval_linear_mod_p"]
