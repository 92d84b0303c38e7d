"""Eagon-Northcott ranks and Hilbert-numerator cross-checks for determinantal ideals.

No resolutions are computed.  The observable is the Hilbert numerator: for a
scroll-type ideal the numerator from the Groebner basis must equal the
alternating sum of the Eagon-Northcott ranks; for the symmetric case we check
codimension 3, the minimal degree and a linear shape of the numerator.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .linmat import LinearMatrix, minors_ideal
from .symkernel.groebner import DEFAULT_BUDGET
from .symkernel.hilbert import HilbertData, format_tpoly


@dataclass(frozen=True)
class BettiTable:
    """Syzygy modules F_1 .. F_e of S/I as (index, twist, rank); F_0 = S is implicit."""
    entries: tuple

    def __post_init__(self):
        for i, d, b in self.entries:
            if b < 1:
                raise ValueError(f"rank must be positive, got {b} at index {i}")
        idx = [i for i, _, _ in self.entries]
        if len(set(idx)) != len(idx):
            raise ValueError("a linear table has one twist per index")

    @property
    def length(self) -> int:
        return len(self.entries)

    def ranks(self) -> list:
        return [b for _, _, b in self.entries]

    def as_json(self) -> list:
        return [{"i": i, "twist": d, "rank": b} for i, d, b in self.entries]


def en_betti(q: int, e: int) -> BettiTable:
    """Ranks of the Eagon-Northcott complex of the maximal minors of a (q+1)x(e+q) matrix.

    The i-th syzygy term (i = 0 for the generators) is
    wedge^{q+1+i} S^{e+q} (x) Sym^i(S^{q+1})^*, of rank C(e+q, q+1+i) C(q+i, i), in twist q+1+i.
    """
    if q < 1 or e < 1:
        raise ValueError("need q >= 1 and e >= 1")
    a, b = q + 1, e + q
    return BettiTable(tuple((i, a + i, comb(b, a + i) * comb(a + i - 1, i)) for i in range(e)))


def hilbert_numerator_from_betti(B: BettiTable, nvars: int | None = None) -> tuple:
    """Coefficients of 1 - beta_0 t^{d_0} + beta_1 t^{d_1} - ... (nvars is accepted for symmetry with
    hilbert_data; the numerator over (1-t)^nvars does not depend on it)."""
    top = max((d for _, d, _ in B.entries), default=0)
    out = [0] * (top + 1)
    out[0] = 1
    for i, d, b in B.entries:
        out[d] += (-1) ** (i + 1) * b
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def numerator_vanishing_order(num) -> int:
    """Order of vanishing of the numerator at t = 1 (the codimension)."""
    p = list(num)
    k = 0
    while p and sum(p) == 0:
        # synthetic division by (t - 1)
        q, acc = [], 0
        for c in reversed(p):
            acc += c
            q.append(acc)
        q.reverse()
        p = q[1:]
        k += 1
    return k


def numerator_degree(num, codim: int) -> int:
    """N(t) / (1-t)^codim evaluated at t = 1."""
    p = list(num)
    for _ in range(codim):
        q, acc = [], 0
        for c in reversed(p):
            acc += c
            q.append(acc)
        q.reverse()
        if q[0] != 0:
            raise ValueError("numerator does not vanish to the requested order")
        p = [-c for c in q[1:]]
    return sum(p)


def is_linear_shape(num, q: int) -> bool:
    """Constant term 1, nothing in degrees 1..q (generators all sit in degree q+1)."""
    return len(num) > 0 and num[0] == 1 and all(c == 0 for c in num[1:q + 1])


@dataclass
class ResolutionCheck:
    kind: str
    consistent: bool
    gb_numerator: tuple
    expected: tuple | None
    codimension: int
    degree: int
    notes: str = ""

    def as_dict(self) -> dict:
        return {"kind": self.kind, "consistent": self.consistent,
                "gb_numerator": format_tpoly(self.gb_numerator),
                "expected": None if self.expected is None else format_tpoly(self.expected),
                "codimension": self.codimension, "degree": self.degree, "notes": self.notes}


def resolution_check(M: LinearMatrix, q: int, e: int, budget: int | None = DEFAULT_BUDGET,
                     hd: HilbertData | None = None) -> ResolutionCheck:
    if hd is None:
        hd = minors_ideal(M, q + 1, budget).hilbert_data()
    num = tuple(hd.numerator)
    if M.symmetric and M.a == M.b == q + 2:
        ok = hd.codimension == 3 and hd.degree == comb(q + 3, q) and is_linear_shape(num, q)
        return ResolutionCheck("veronese", ok, num, None, hd.codimension, hd.degree,
                               "codimension 3 and minimal degree; consistent with Cohen-Macaulay")
    expected = hilbert_numerator_from_betti(en_betti(q, e))
    ok = (M.a, M.b) == (q + 1, e + q) and num == expected
    return ResolutionCheck("scroll", ok, num, expected, hd.codimension, hd.degree)


def resolution_consistency(M: LinearMatrix, q: int, e: int, budget: int | None = DEFAULT_BUDGET,
                           hd: HilbertData | None = None) -> bool:
    return resolution_check(M, q, e, budget, hd).consistent
