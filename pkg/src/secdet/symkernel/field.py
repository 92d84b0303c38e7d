"""Exact coefficient fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class Field:
    """A coefficient field. ``characteristic == 0`` means QQ, otherwise GF(p).

    Elements are plain Python objects: ``Fraction`` over QQ and ``int`` in
    ``[0, p)`` over GF(p).  Arithmetic is done with the usual operators
    followed by :meth:`norm`.
    """

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise FieldError(f"characteristic {c} is not prime")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime field"

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, x):
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise FieldError(f"{x} has no image in GF({p})")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def norm(self, x):
        return x % self.characteristic if self.characteristic else Fraction(x)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return pow(x, -1, p) if p else 1 / Fraction(x)

    def div(self, x, y):
        return self.norm(x * self.inv(y))

    def neg(self, x):
        return (-x) % self.characteristic if self.characteristic else -x

    def random(self, rng, height: int = 50):
        """Uniform element of GF(p), or a random integer of bounded height over QQ."""
        if self.characteristic:
            return int(rng.integers(0, self.characteristic))
        return Fraction(int(rng.integers(-height, height + 1)))

    def random_nonzero(self, rng, height: int = 50):
        while True:
            x = self.random(rng, height)
            if x:
                return x

    def sqrt(self, x):
        """A square root of ``x`` in the field, or None."""
        p = self.characteristic
        if p == 0:
            x = Fraction(x)
            if x < 0:
                return None
            n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
            if n * n == x.numerator and d * d == x.denominator:
                return Fraction(n, d)
            return None
        x %= p
        if x == 0 or p == 2:
            return x
        if pow(x, (p - 1) // 2, p) != 1:
            return None
        if p % 4 == 3:
            return pow(x, (p + 1) // 4, p)
        # Tonelli-Shanks
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(x, q, p), pow(x, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
        return r

    def to_str(self, x) -> str:
        p = self.characteristic
        if p == 0:
            return str(x)
        # symmetric representative reads better and reparses to the same element
        return str(x - p if x > p // 2 else x)

    def spec(self) -> str:
        return "q" if self.characteristic == 0 else f"gf:{self.characteristic}"

    @classmethod
    def from_spec(cls, text: str) -> "Field":
        text = text.strip().lower()
        if text in ("q", "qq", "0"):
            return cls(0)
        if text.startswith("gf:"):
            return cls(int(text[3:]))
        raise FieldError(f"unknown field spec {text!r}")

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)
GF32003 = Field(32003)
