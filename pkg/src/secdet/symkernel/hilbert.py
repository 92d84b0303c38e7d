"""Hilbert series, dimension and degree of a homogeneous ideal from its leading monomials."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .poly import PolyError, divides


@dataclass(frozen=True)
class HilbertData:
    dimension: int          # Krull dimension of S/I (affine cone)
    codimension: int
    degree: int
    numerator: tuple        # coefficients of N(t), HS(S/I) = N(t) / (1-t)^nvars

    def numerator_str(self, var: str = "t") -> str:
        return format_tpoly(self.numerator, var)

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "codimension": self.codimension,
            "degree": self.degree,
            "numerator": list(self.numerator),
        }


def format_tpoly(coeffs, var: str = "t") -> str:
    parts = []
    for d, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) or "0"


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _shift(a, k):
    return [0] * k + list(a)


def minimalize(mons) -> list:
    mons = sorted(set(mons), key=sum)
    out = []
    for m in mons:
        if not any(divides(g, m) for g in out):
            out.append(m)
    return out


def hilbert_numerator(mons, nvars: int) -> list:
    """Numerator N(t) of the Hilbert series of S/(mons) over ``nvars`` variables.

    Pivot recursion: N(I) = N(I + (x)) + t * N(I : x) for a variable x that
    occurs in the most non-linear minimal generators.
    """
    G = minimalize(mons)
    if not G:
        return [1]
    if any(sum(g) == 0 for g in G):
        return [0]
    supports = [frozenset(i for i, k in enumerate(g) if k) for g in G]
    disjoint = True
    seen: set = set()
    for s in supports:
        if seen & s:
            disjoint = False
            break
        seen |= s
    if disjoint:
        out = [1]
        for g in G:
            out = _pmul(out, [1] + [0] * (sum(g) - 1) + [-1])
        return out
    counts = [0] * nvars
    for g, s in zip(G, supports):
        if len(s) > 1:
            for i in s:
                counts[i] += 1
    i = max(range(nvars), key=lambda k: counts[k])
    x = tuple(1 if k == i else 0 for k in range(nvars))
    plus = G + [x]
    colon = [tuple(k - 1 if (j == i and k) else k for j, k in enumerate(g)) for g in G]
    return _trim(_padd(hilbert_numerator(plus, nvars), _shift(hilbert_numerator(colon, nvars), 1)))


def monomial_dimension(mons, nvars: int) -> int:
    """Krull dimension of S/(mons): largest variable subset containing no generator support."""
    G = minimalize(mons)
    if any(sum(g) == 0 for g in G):
        return -1
    supports = [frozenset(i for i, k in enumerate(g) if k) for g in G]
    for size in range(nvars, -1, -1):
        for U in combinations(range(nvars), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return size
    return 0


def _divide_by_one_minus_t(p):
    # p(t) = (1 - t) q(t)  =>  q_k = sum_{j<=k} p_j
    out, acc = [], 0
    for c in p[:-1]:
        acc += c
        out.append(acc)
    if acc + p[-1] != 0:
        raise ArithmeticError("not divisible by 1 - t")
    return out


def hilbert_data_from_monomials(mons, nvars: int) -> HilbertData:
    num = _trim(hilbert_numerator(mons, nvars))
    dim = monomial_dimension(mons, nvars)
    if dim < 0 or not num:
        return HilbertData(-1, nvars, 0, tuple(num))
    codim = nvars - dim
    q = list(num)
    for _ in range(codim):
        q = _divide_by_one_minus_t(q)
    degree = sum(q)
    if degree == 0:
        raise ArithmeticError("pole order of the Hilbert series disagrees with the independent-set dimension")
    return HilbertData(dim, codim, degree, tuple(num))


def hilbert_data(I) -> HilbertData:
    """(dimension, codimension, degree, numerator) of S/I for a homogeneous ideal."""
    if not I.is_homogeneous():
        raise PolyError("hilbert_data needs a homogeneous ideal")
    return hilbert_data_from_monomials(I.leading_monomials(), I.ring.nvars)
