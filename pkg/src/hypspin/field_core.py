"""Exact scalars over the rationals and odd prime fields.

Rationals are plain :class:`fractions.Fraction` values. Prime-field residues
are :class:`GF` instances that remember their modulus, so ordinary Python
operators work on both kinds and the rest of the library can stay generic.
"""
from __future__ import annotations

import math
from random import Random
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

from .errors import FieldMismatch, ParseError, UnsupportedField, ZeroInput, ZeroInverse

# exhaustive root search below this modulus, Tonelli-Shanks above
EXHAUSTIVE_SQRT_LIMIT = 10_000


def is_prime(n: int) -> bool:
    from sympy import isprime  # deferred: sympy is slow to import

    return bool(isprime(n))


class GF:
    """Residue modulo an odd prime, stored in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> Optional[int]:
        if isinstance(other, GF):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GF(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GF(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GF(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GF(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GF(-self.value, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "GF":
        if self.value == 0:
            raise ZeroInverse(f"0 has no inverse in GF({self.p})")
        return GF(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * GF(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GF(o, self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return GF(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, GF):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, GF]


class Field:
    """Common interface of :class:`Rationals` and :class:`PrimeField`."""

    tag: str

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, x) -> Scalar:
        raise NotImplementedError

    def parse(self, text: str) -> Scalar:
        raise NotImplementedError

    def format(self, a: Scalar) -> str:
        return str(self(a))

    def sqrt(self, a: Scalar) -> Optional[Scalar]:
        raise NotImplementedError

    def random(self, rng: Random, nonzero: bool = False) -> Scalar:
        raise NotImplementedError

    def contains(self, a) -> bool:
        raise NotImplementedError

    # integer fast path used by the Clifford product
    def to_ints(self, values: Iterable[Scalar]) -> tuple[list[int], int]:
        raise NotImplementedError

    def from_int(self, v: int, denom: int) -> Scalar:
        raise NotImplementedError

    def __repr__(self):
        return self.tag


class Rationals(Field):
    tag = "Q"

    def __call__(self, x) -> Fraction:
        if isinstance(x, GF):
            raise FieldMismatch("cannot coerce a prime-field residue into Q")
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def contains(self, a) -> bool:
        return isinstance(a, (Fraction, int)) and not isinstance(a, bool)

    def parse(self, text: str) -> Fraction:
        m = re.fullmatch(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*", str(text))
        if not m:
            raise ParseError(f"not a rational scalar: {text!r}")
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)

    def format(self, a) -> str:
        return str(Fraction(a))

    def sqrt(self, a) -> Optional[Fraction]:
        a = Fraction(a)
        if a == 0:
            raise ZeroInput("square root of zero requested")
        if a < 0:
            return None
        rn, rd = math.isqrt(a.numerator), math.isqrt(a.denominator)
        if rn * rn == a.numerator and rd * rd == a.denominator:
            return Fraction(rn, rd)
        return None

    def random(self, rng: Random, nonzero: bool = False, bound: int = 9) -> Fraction:
        while True:
            x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
            if x or not nonzero:
                return x

    def to_ints(self, values):
        values = list(values)
        denom = 1
        for v in values:
            denom = denom * v.denominator // math.gcd(denom, v.denominator)
        return [v.numerator * (denom // v.denominator) for v in values], denom

    def from_int(self, v: int, denom: int) -> Fraction:
        return Fraction(v, denom)


class PrimeField(Field):
    def __init__(self, p: int):
        p = int(p)
        if p == 2:
            raise UnsupportedField("GF(2) violates the standing hypothesis that 2 is invertible")
        if not is_prime(p):
            raise UnsupportedField(f"{p} is not a prime")
        self.p = p
        self.tag = f"GF({p})"

    def __call__(self, x) -> GF:
        if isinstance(x, GF):
            if x.p != self.p:
                raise FieldMismatch(f"GF({x.p}) residue used in GF({self.p})")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return GF(x.numerator, self.p) / GF(x.denominator, self.p)
        return GF(int(x), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def contains(self, a) -> bool:
        return isinstance(a, GF) and a.p == self.p

    def parse(self, text: str) -> GF:
        m = re.fullmatch(r"\s*([+-]?\d+)\s*", str(text))
        if not m:
            raise ParseError(f"not a GF({self.p}) residue: {text!r}")
        return GF(int(m.group(1)), self.p)

    def sqrt(self, a) -> Optional[GF]:
        a = self(a)
        if a.value == 0:
            raise ZeroInput("square root of zero requested")
        if self.p < EXHAUSTIVE_SQRT_LIMIT:
            r = _sqrt_table(self.p).get(a.value)
        else:
            r = tonelli_shanks(a.value, self.p)
            if r is not None:
                r = min(r, self.p - r)
        return None if r is None else GF(r, self.p)

    def random(self, rng: Random, nonzero: bool = False) -> GF:
        return GF(rng.randint(1 if nonzero else 0, self.p - 1), self.p)

    def to_ints(self, values):
        return [v.value for v in values], 1

    def from_int(self, v: int, denom: int) -> GF:
        return GF(v, self.p)


QQ = Rationals()


@lru_cache(maxsize=None)
def _sqrt_table(p: int) -> dict[int, int]:
    # ascending x, so the first root recorded is the smaller representative
    table: dict[int, int] = {}
    for x in range(1, p):
        table.setdefault(x * x % p, x)
    return table


def tonelli_shanks(a: int, p: int) -> Optional[int]:
    """Some r with r*r = a mod p, or None for a non-residue (sympy's sqrt_mod)."""
    from sympy.ntheory import sqrt_mod

    r = sqrt_mod(a % p, p)
    return None if r is None else int(r)


_FIELD_RE = re.compile(r"\s*(?:Q|QQ|GF\s*[(:]\s*(\d+)\s*\)?)\s*", re.IGNORECASE)


def parse_field(tag: str) -> Field:
    """Accept ``Q``, ``GF(p)`` or ``GF:p``."""
    m = _FIELD_RE.fullmatch(str(tag))
    if not m:
        raise UnsupportedField(f"unknown field tag {tag!r}")
    if m.group(1) is None:
        return QQ
    return PrimeField(int(m.group(1)))


def field_of(a) -> Field:
    if isinstance(a, GF):
        return PrimeField(a.p)
    if isinstance(a, (Fraction, int)):
        return QQ
    raise FieldMismatch(f"not a field scalar: {a!r}")


def invert_scalar(a: Scalar) -> Scalar:
    if not a:
        raise ZeroInverse("0 has no inverse")
    if isinstance(a, GF):
        return a.inverse()
    return 1 / Fraction(a)


def sqrt_in_field(a: Scalar) -> Optional[Scalar]:
    """Square root of a nonzero scalar, or None when ``a`` is not a square.

    Rationals return the positive root; residues return the smaller of the
    two representatives.
    """
    return field_of(a).sqrt(a)


def same_square_class(a: Scalar, b: Scalar) -> bool:
    if not a or not b:
        raise ZeroInput("square classes are defined on units only")
    f = field_of(a)
    return f.sqrt(f(a) / f(b)) is not None
