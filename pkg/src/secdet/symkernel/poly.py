"""Sparse multivariate polynomials over QQ or GF(p).

A polynomial is a dict ``{exponent tuple: nonzero coefficient}`` wrapped in an
immutable :class:`Polynomial`.  Monomial orders are given as sort keys so the
leading term is ``max(terms, key=ring.key)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .field import Field, FieldError


class PolyError(ValueError):
    pass


def _degrevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _lex_key(e):
    return e


@dataclass(frozen=True)
class PolyRing:
    variables: tuple
    field: Field
    order: str = "degrevlex"
    block: int = 0
    _index: dict = dc_field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        vs = tuple(self.variables)
        object.__setattr__(self, "variables", vs)
        if len(set(vs)) != len(vs):
            raise PolyError("variable names must be distinct")
        if self.order not in ("degrevlex", "lex", "block"):
            raise PolyError(f"unknown order {self.order!r}")
        if self.order == "block" and not 0 <= self.block <= len(vs):
            raise PolyError("block size out of range")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(vs)})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @cached_property
    def key(self):
        if self.order == "lex":
            return _lex_key
        if self.order == "degrevlex":
            return _degrevlex_key
        k = self.block

        def block_key(e):
            return (_degrevlex_key(e[:k]), _degrevlex_key(e[k:]))

        return block_key

    @cached_property
    def ikey(self):
        """Order-preserving integer key (exponents and degrees below 2**10)."""
        n = self.nvars
        B = 1 << 10

        def dr(e):
            v = sum(e)
            for x in reversed(e):
                v = v * B + (B - 1 - x)
            return v

        if self.order == "lex":
            def lex(e):
                v = 0
                for x in e:
                    v = v * B + x
                return v
            return lex
        if self.order == "degrevlex":
            return dr
        k = self.block
        shift = B ** (n - k + 1)

        def blk(e):
            return dr(e[:k]) * shift + dr(e[k:])

        return blk

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PolyError(f"unknown variable {name!r}") from None

    def with_order(self, order: str, block: int = 0) -> "PolyRing":
        return PolyRing(self.variables, self.field, order, block)

    # constructors -------------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exp, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exp): c} if c else {})

    def linear_form(self, coeffs: Sequence) -> "Polynomial":
        terms = {}
        for i, c in enumerate(coeffs):
            c = self.field(c)
            if c:
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return Polynomial(self, terms)

    def from_dict(self, terms: dict) -> "Polynomial":
        F = self.field
        out = {}
        for e, c in terms.items():
            c = F(c)
            if c:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        return poly_parse(text, self)

    def __repr__(self):
        o = self.order if self.order != "block" else f"block({self.block})"
        return f"PolyRing({','.join(self.variables)}; {self.field!r}; {o})"


class Polynomial:
    """Immutable sparse polynomial.  ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "_t", "__dict__")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._t = terms

    # basic queries --------------------------------------------------------
    @property
    def termdict(self) -> dict:
        return self._t

    @cached_property
    def terms(self) -> tuple:
        """Terms sorted strictly descending in the ring order."""
        return tuple(sorted(self._t.items(), key=lambda ec: self.ring.key(ec[0]), reverse=True))

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    @cached_property
    def lm(self) -> tuple:
        if not self._t:
            raise PolyError("zero polynomial has no leading monomial")
        return max(self._t, key=self.ring.key)

    @property
    def lc(self):
        return self._t[self.lm]

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._t), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._t}) <= 1

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._t)

    def linear_coeffs(self) -> list:
        """Coefficient vector of a linear form (degree 1 homogeneous or zero)."""
        F = self.ring.field
        out = [F.zero] * self.ring.nvars
        for e, c in self._t.items():
            if sum(e) != 1:
                raise PolyError(f"{self} is not a linear form")
            out[e.index(1)] = c
        return out

    # arithmetic -------------------------------------------------------------
    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise PolyError("ring mismatch")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._check(other)
        F = self.ring.field
        t = dict(self._t)
        for e, c in other._t.items():
            v = F.norm(t.get(e, 0) + c)
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self._t.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        F = self.ring.field
        t: dict = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Polynomial(self.ring, {e: v for e, c in t.items() if (v := F.norm(c))})

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: F.norm(v * c) for e, v in self._t.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise PolyError("negative power")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_term(self, exp, coeff) -> "Polynomial":
        F = self.ring.field
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): F.norm(c * coeff) for e, c in self._t.items()},
        )

    def monic(self) -> "Polynomial":
        if not self._t:
            return self
        return self.scale(self.ring.field.inv(self.lc))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    # evaluation / substitution ------------------------------------------------
    def eval(self, point: Sequence):
        """Exact value at ``point`` (length must equal the number of variables)."""
        if len(point) != self.ring.nvars:
            raise PolyError(f"point has length {len(point)}, ring has {self.ring.nvars} variables")
        F = self.ring.field
        pt = [F(x) for x in point]
        total = 0
        for e, c in self._t.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * x**k
            total += v
        return F.norm(total) if F.characteristic else Fraction(total)

    def diff(self, i: int) -> "Polynomial":
        F = self.ring.field
        t = {}
        for e, c in self._t.items():
            if e[i]:
                v = F.norm(c * e[i])
                if v:
                    ne = list(e)
                    ne[i] -= 1
                    t[tuple(ne)] = v
        return Polynomial(self.ring, t)

    def pullback(self, images: Sequence["Polynomial"], target: PolyRing | None = None) -> "Polynomial":
        return poly_pullback(self, images, target)

    def variables_used(self) -> set:
        used = set()
        for e in self._t:
            used.update(i for i, k in enumerate(e) if k)
        return used

    # printing ---------------------------------------------------------------------
    def __str__(self):
        return poly_print(self)

    def __repr__(self):
        return f"Polynomial({poly_print(self)!r})"


# ---------------------------------------------------------------------------
# printing / parsing

def _mono_str(ring: PolyRing, e) -> str:
    parts = []
    for v, k in zip(ring.variables, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def poly_print(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    F = p.ring.field
    out = []
    for idx, (e, c) in enumerate(p.terms):
        s = F.to_str(c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        mono = _mono_str(p.ring, e)
        if mono:
            body = mono if s == "1" else f"{s}*{mono}"
        else:
            body = s
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, ident, sym = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif ident is not None:
            toks.append(("var", ident))
        else:
            if sym not in "+-*/^()":
                raise PolyError(f"malformed token {sym!r} at position {m.start(3)}")
            toks.append(("sym", sym))
        pos = m.end()
    return toks


def poly_parse(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` in the grammar ``term (('+'|'-') term)*``.

    Terms are products of coefficients (integers or ``a/b``) and powers
    ``var^k``.  Raises :class:`PolyError` on unknown variables, malformed
    tokens or literals with no image in the coefficient field.
    """
    toks = _tokenize(text)
    if not toks:
        raise PolyError("empty polynomial")
    F = ring.field
    n = ring.nvars
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        tok = toks[pos]
        pos += 1
        return tok

    def factor():
        kind, val = peek()
        if kind == "num":
            take()
            num = val
            if peek() == ("sym", "/"):
                take()
                k2, den = peek()
                if k2 != "num":
                    raise PolyError("expected denominator after '/'")
                take()
                if den == 0:
                    raise PolyError("zero denominator")
                try:
                    return F(Fraction(num, den)), None
                except FieldError as exc:
                    raise PolyError(str(exc)) from None
            return F(num), None
        if kind == "var":
            take()
            i = ring.index(val)
            k = 1
            if peek() == ("sym", "^"):
                take()
                k2, k = peek()
                if k2 != "num":
                    raise PolyError("expected integer exponent after '^'")
                take()
            return F.one, (i, k)
        raise PolyError(f"unexpected token {val!r}")

    def term():
        c = F.one
        e = [0] * n
        while True:
            cc, ve = factor()
            c = F.norm(c * cc)
            if ve:
                e[ve[0]] += ve[1]
            if peek() == ("sym", "*"):
                take()
                continue
            return c, tuple(e)

    acc: dict = {}
    sign = 1
    if peek() in (("sym", "-"), ("sym", "+")):
        sign = -1 if take()[1] == "-" else 1
    while True:
        c, e = term()
        v = F.norm(acc.get(e, 0) + (c if sign > 0 else F.neg(c)))
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)
        kind, val = peek()
        if kind is None:
            break
        if kind == "sym" and val in "+-":
            take()
            sign = 1 if val == "+" else -1
            continue
        raise PolyError(f"unexpected token {val!r}")
    return Polynomial(ring, acc)


# ---------------------------------------------------------------------------
# substitution

def poly_pullback(p: Polynomial, images: Sequence[Polynomial], target: PolyRing | None = None) -> Polynomial:
    """Substitute ``images[i]`` for the i-th variable of ``p`` and expand."""
    if len(images) != p.ring.nvars:
        raise PolyError("map length must equal the number of variables")
    if target is None:
        if not images:
            raise PolyError("target ring required for an empty map")
        target = images[0].ring
    for im in images:
        if im.ring != target:
            raise PolyError("ring mismatch in pullback map")
    if target.field != p.ring.field:
        raise PolyError("field mismatch in pullback")
    cache: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = images[i] if k == 1 else power(i, k - 1) * images[i]
        return cache[key]

    acc: dict = {}
    F = target.field
    for e, c in p.termdict.items():
        term = None
        for i, k in enumerate(e):
            if k:
                f = power(i, k)
                term = f if term is None else term * f
        if term is None:
            term = target.one()
        for te, tc in term.termdict.items():
            acc[te] = acc.get(te, 0) + tc * c
    return Polynomial(target, {e: v for e, c in acc.items() if (v := F.norm(c))})


def monomials_of_degree(n: int, d: int) -> list:
    """Exponent tuples of total degree ``d`` in ``n`` variables, graded-lex descending."""
    if n == 0:
        return [()] if d == 0 else []
    if n == 1:
        return [(d,)]
    out = []
    for k in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - k):
            out.append((k,) + rest)
    return out


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def ambient_ring(nvars: int, field: Field, prefix: str = "x", order: str = "degrevlex") -> PolyRing:
    return PolyRing(tuple(f"{prefix}{i}" for i in range(nvars)), field, order)
