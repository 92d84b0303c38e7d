"""Multivariate exact division and gcd.

The general gcd goes through the lcm: ``(p) ∩ (q)`` is computed by
eliminating an auxiliary variable from ``(T p, (1 - T) q)``.
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable

from .groebner import Ideal, eliminate
from .poly import PolyError, PolyRing, Polynomial, divides


class NotDivisible(ArithmeticError):
    pass


def exact_div(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient f / g; raises NotDivisible when g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = f.ring
    F = ring.field
    lg, cg = g.lm, g.lc
    inv = F.inv(cg)
    rem = f
    quot: dict = {}
    while rem:
        lr = rem.lm
        if not divides(lg, lr):
            raise NotDivisible(f"{g} does not divide {f}")
        e = tuple(a - b for a, b in zip(lr, lg))
        c = F.norm(rem.lc * inv)
        quot[e] = c
        rem = rem - g.mul_term(e, c)
    return Polynomial(ring, quot)


def monomial_content(f: Polynomial) -> tuple:
    """Largest monomial dividing every term of ``f``."""
    it = iter(f.termdict)
    m = next(it)
    for e in it:
        m = tuple(min(a, b) for a, b in zip(m, e))
    return m


def _strip(f: Polynomial):
    m = monomial_content(f)
    if any(m):
        return m, exact_div(f, f.ring.monomial(m))
    return m, f


def _lcm_by_elimination(p: Polynomial, q: Polynomial) -> Polynomial:
    ring = p.ring
    T = "_T"
    while T in ring.variables:
        T += "_"
    big = PolyRing((T,) + ring.variables, ring.field, "block", 1)
    emb = [big.gen(v) for v in ring.variables]
    P, Q = p.pullback(emb, big), q.pullback(emb, big)
    t = big.gen(0)
    J = eliminate(Ideal(big, [t * P, (big.one() - t) * Q]), [T])
    gens = [g for g in J.generators if g]
    if len(gens) != 1:
        raise PolyError("intersection of principal ideals is not principal")
    g = gens[0]
    return Polynomial(ring, dict(g.termdict))


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic greatest common divisor; gcd(p, 0) = monic(p)."""
    if p.ring != q.ring:
        raise PolyError("ring mismatch")
    ring = p.ring
    if q.is_zero():
        return p.monic()
    if p.is_zero():
        return q.monic()
    if p.is_constant() or q.is_constant():
        return ring.one()
    mp, p1 = _strip(p)
    mq, q1 = _strip(q)
    mono = ring.monomial(tuple(min(a, b) for a, b in zip(mp, mq)))
    if p1.is_constant() or q1.is_constant():
        return mono
    if p1.monic() == q1.monic():
        return (mono * p1).monic()
    lcm = _lcm_by_elimination(p1, q1)
    g = exact_div(p1 * q1, lcm)
    return (mono * g).monic()


def gcd_list(polys: Iterable[Polynomial]) -> Polynomial:
    polys = list(polys)
    if not polys:
        raise PolyError("gcd of an empty list")
    return reduce(poly_gcd, polys[1:], polys[0].monic() if polys[0] else polys[0])
