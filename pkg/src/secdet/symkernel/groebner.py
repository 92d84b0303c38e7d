"""Buchberger's algorithm with sugar selection and the Gebauer-Moeller criteria.

Polynomials are handled internally as plain dicts; the leading monomial of a
dict under reduction is tracked with a lazy max-heap of integer order keys.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .poly import PolyError, PolyRing, Polynomial, divides

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    """The reduction-step budget ran out; the instance exceeds desk scale."""


class _Counter:
    __slots__ = ("steps", "budget")

    def __init__(self, budget):
        self.steps = 0
        self.budget = budget

    def tick(self, n=1):
        self.steps += n
        if self.budget is not None and self.steps > self.budget:
            raise BudgetExceeded(f"Groebner budget of {self.budget} reduction steps exceeded")


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


def _lead(d: dict, ikey):
    return max(d, key=ikey)


def _reduce(f: dict, basis: Sequence[tuple], ring: PolyRing, counter: _Counter, full: bool = True) -> dict:
    """Normal form of ``f`` w.r.t. ``basis`` (list of ``(lm, monic dict)``)."""
    if not f:
        return {}
    p = ring.field.characteristic
    ikey = ring.ikey
    f = dict(f)
    heap = [(-ikey(e), e) for e in f]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = f.pop(e, None)
        if c is None:
            continue
        red = None
        for lm, g in basis:
            if divides(lm, e):
                red = (lm, g)
                break
        if red is None:
            rem[e] = c
            if not full:
                # top-reduction only: the rest passes through unchanged
                for e2, c2 in f.items():
                    rem[e2] = c2
                return rem
            continue
        lm, g = red
        shift = tuple(a - b for a, b in zip(e, lm))
        counter.tick()
        for ge, gc in g.items():
            if ge == lm:
                continue
            ne = tuple(a + b for a, b in zip(ge, shift))
            old = f.get(ne)
            if p:
                v = ((old or 0) - c * gc) % p
            else:
                v = (old or 0) - c * gc
            if v:
                if old is None:
                    heapq.heappush(heap, (-ikey(ne), ne))
                f[ne] = v
            elif old is not None:
                del f[ne]
    return rem


def _monic(d: dict, lm, field):
    c = d[lm]
    if c == field.one:
        return d
    inv = field.inv(c)
    return {e: field.norm(v * inv) for e, v in d.items()}


def _spoly(f: dict, lf, g: dict, lg, ring: PolyRing) -> dict:
    L = _lcm(lf, lg)
    p = ring.field.characteristic
    sf = tuple(a - b for a, b in zip(L, lf))
    sg = tuple(a - b for a, b in zip(L, lg))
    out = {}
    for e, c in f.items():
        out[tuple(a + b for a, b in zip(e, sf))] = c
    for e, c in g.items():
        ne = tuple(a + b for a, b in zip(e, sg))
        v = out.get(ne, 0) - c
        if p:
            v %= p
        if v:
            out[ne] = v
        else:
            out.pop(ne, None)
    return out


def groebner_basis(gens: Iterable[Polynomial], ring: PolyRing, budget: int | None = DEFAULT_BUDGET) -> list:
    """Reduced Groebner basis of the ideal generated by ``gens`` (monic, sorted)."""
    F = ring.field
    ikey = ring.ikey
    counter = _Counter(budget)
    polys: list = []       # all basis elements ever added: (lm, dict, sugar)
    active: list = []      # indices still in the basis
    pairs: list = []       # heap of (sugar, ikey(lcm), i, j)

    def reducers():
        return [(polys[k][0], polys[k][1]) for k in active]

    def update(h_idx):
        lh = polys[h_idx][0]
        sh = polys[h_idx][2]
        dh = sum(lh)
        cand = []
        for k in active:
            lk = polys[k][0]
            L = _lcm(lh, lk)
            cand.append((k, L))
        # chain criterion among the new pairs (Gebauer-Moeller)
        keep = []
        rest = list(cand)
        while rest:
            k, L = rest.pop(0)
            cop = _coprime(lh, polys[k][0])
            if cop or not (
                any(divides(L2, L) for _, L2 in rest) or any(divides(L2, L) for _, L2, _ in keep)
            ):
                keep.append((k, L, cop))
        new_pairs = []
        for k, L, cop in keep:
            if cop:
                continue  # product criterion
            sk = polys[k][2] + sum(L) - sum(polys[k][0])
            sugar = max(sh + sum(L) - dh, sk)
            new_pairs.append((sugar, ikey(L), k, h_idx))
        # old pairs made redundant by the new leading monomial
        survivors = []
        for pr in pairs:
            _, _, i, j = pr
            li, lj = polys[i][0], polys[j][0]
            L = _lcm(li, lj)
            if divides(lh, L) and _lcm(li, lh) != L and _lcm(lj, lh) != L:
                continue
            survivors.append(pr)
        survivors.extend(new_pairs)
        heapq.heapify(survivors)
        pairs[:] = survivors
        active[:] = [k for k in active if not divides(lh, polys[k][0])]
        active.append(h_idx)

    def add(d, sugar):
        lm = _lead(d, ikey)
        d = _monic(d, lm, F)
        polys.append((lm, d, sugar))
        update(len(polys) - 1)

    inputs = []
    for g in gens:
        if g.ring != ring:
            raise PolyError("generator ring mismatch")
        if g:
            inputs.append(g)
    inputs.sort(key=lambda g: (g.degree, ikey(g.lm)))
    for g in inputs:
        r = _reduce(g.termdict, reducers(), ring, counter)
        if r:
            add(r, g.degree)
    while pairs:
        sugar, _, i, j = heapq.heappop(pairs)
        s = _spoly(polys[i][1], polys[i][0], polys[j][1], polys[j][0], ring)
        r = _reduce(s, reducers(), ring, counter)
        if r:
            add(r, sugar)
    return _interreduce([(polys[k][0], polys[k][1]) for k in active], ring, counter)


def _interreduce(basis, ring, counter) -> list:
    F = ring.field
    ikey = ring.ikey
    basis = sorted(basis, key=lambda b: ikey(b[0]))
    minimal = []
    for lm, d in basis:
        if any(divides(l2, lm) for l2, _ in minimal):
            continue
        minimal.append((lm, d))
    out = []
    for idx, (lm, d) in enumerate(minimal):
        others = [b for k, b in enumerate(minimal) if k != idx]
        tail = {e: c for e, c in d.items() if e != lm}
        tail = _reduce(tail, others, ring, counter)
        tail[lm] = d[lm]
        tail = _monic(tail, lm, F)
        out.append(Polynomial(ring, tail))
    return out


def normal_form(f: Polynomial, gb: Sequence[Polynomial], budget: int | None = DEFAULT_BUDGET) -> Polynomial:
    ring = f.ring
    basis = [(g.lm, g.termdict) for g in gb]
    return Polynomial(ring, _reduce(f.termdict, basis, ring, _Counter(budget)))


@dataclass(eq=False)
class Ideal:
    """Ideal given by generators; the reduced Groebner basis is computed lazily."""

    ring: PolyRing
    generators: list
    budget: int | None = DEFAULT_BUDGET
    _gb: list | None = field(default=None, repr=False)
    _hilbert: object = field(default=None, repr=False)

    def __post_init__(self):
        self.generators = list(self.generators)
        for g in self.generators:
            if g.ring != self.ring:
                raise PolyError("generator ring mismatch")

    @classmethod
    def of(cls, gens: Sequence[Polynomial], budget: int | None = DEFAULT_BUDGET) -> "Ideal":
        gens = list(gens)
        if not gens:
            raise PolyError("need at least one generator to infer the ring")
        return cls(gens[0].ring, gens, budget)

    @property
    def gb(self) -> list:
        if self._gb is None:
            self._gb = groebner_basis(self.generators, self.ring, self.budget)
        return self._gb

    def buchberger(self) -> "Ideal":
        """A new ideal whose generators are the reduced Groebner basis."""
        gb = self.gb
        return Ideal(self.ring, list(gb), self.budget, list(gb))

    def leading_monomials(self) -> list:
        return [g.lm for g in self.gb]

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.gb, self.budget)

    def contains(self, f: Polynomial) -> bool:
        return ideal_membership(f, self)

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.gb)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def hilbert_data(self):
        from .hilbert import hilbert_data
        if self._hilbert is None:
            self._hilbert = hilbert_data(self)
        return self._hilbert

    def __len__(self):
        return len(self.generators)


def buchberger(I: Ideal) -> Ideal:
    return I.buchberger()


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    if f.ring != I.ring:
        raise PolyError("ring mismatch")
    if f.is_zero():
        return True
    return I.normal_form(f).is_zero()


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise PolyError("ring mismatch")
    return all(J.contains(g) for g in I.generators) and all(I.contains(g) for g in J.generators)


def eliminate(I: Ideal, drop: Sequence[str]) -> Ideal:
    """Generators of the elimination ideal ``I`` intersected with the subring without ``drop``.

    The ring order must be ``block`` with exactly the dropped variables forming
    the leading block (or ``drop`` empty).
    """
    ring = I.ring
    drop = list(drop)
    if not drop:
        return Ideal(ring, list(I.gb), I.budget)
    k = len(drop)
    if ring.order != "block" or ring.block != k or list(ring.variables[:k]) != drop:
        raise PolyError("eliminate needs a block order with the dropped variables leading")
    keep_vars = ring.variables[k:]
    sub = PolyRing(keep_vars, ring.field, "degrevlex")
    out = []
    for g in I.gb:
        if all(not any(e[:k]) for e in g.termdict):
            out.append(Polynomial(sub, {e[k:]: c for e, c in g.termdict.items()}))
    if not out:
        out = [sub.zero()]
    return Ideal(sub, out, I.budget)


def elimination_ring(ring: PolyRing, drop: Sequence[str]) -> tuple:
    """Ring with ``drop`` moved to a leading block, plus the embedding map of variables."""
    drop = list(drop)
    for v in drop:
        ring.index(v)
    rest = [v for v in ring.variables if v not in drop]
    new = PolyRing(tuple(drop) + tuple(rest), ring.field, "block", len(drop))
    images = [new.gen(v) for v in ring.variables]
    return new, images
