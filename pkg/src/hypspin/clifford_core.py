"""Normal-form arithmetic in the Clifford algebra of Hyp(W).

Generators are numbered 1..2n: index i <= n is the dual generator
f_i = ι(e^i, 0), index n + i is the primal generator w_i = ι(0, e_i).
A monomial is a bitmask over the 2n generators (bit k-1 for index k) and
stands for the product of its generators in increasing index order.

Relations: f_i² = w_i² = 0, f_i w_i + w_i f_i = 1, all other pairs of
distinct generators anticommute.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Mapping, Optional

from . import linalg
from .errors import RankMismatch
from .exterior_model import popcount
from .field_core import Field, Scalar
from .orthogonal_group import HyperbolicVector, OrthoMap

_MONO_CACHE: dict[int, dict[tuple[int, int], tuple]] = {}
_CONJ_CACHE: dict[int, dict[int, tuple]] = {}


def _times_generator(n: int, m: int, b: int) -> list[tuple[int, int]]:
    """Normal form of (monomial m) * (generator bit b) as [(mask, sign)].

    The generator is bubbled leftwards into place. Passing a distinct,
    non-partner generator flips the sign; meeting its partner w_i (only
    possible when b is the dual f_i) uses w_i f_i = 1 - f_i w_i and splits
    the term; meeting itself annihilates.
    """
    bit = 1 << b
    if b < n and m & (1 << (b + n)):
        p = b + n
        s = -1 if popcount(m >> (p + 1)) % 2 else 1
        out = [(m ^ (1 << p), s)]
        if not m & bit:
            between = popcount((m >> (b + 1)) & ((1 << (p - b - 1)) - 1))
            out.append((m | bit, -s if between % 2 == 0 else s))
        return out
    if m & bit:
        return []
    return [(m | bit, -1 if popcount(m >> (b + 1)) % 2 else 1)]


def mono_product(n: int, a: int, b: int) -> tuple[tuple[int, int], ...]:
    """Normal form of monomial a times monomial b, with integer coefficients."""
    cache = _MONO_CACHE.setdefault(n, {})
    key = (a, b)
    hit = cache.get(key)
    if hit is not None:
        return hit
    terms: dict[int, int] = {a: 1}
    k = 0
    bb = b
    while bb:
        if bb & 1:
            nxt: dict[int, int] = defaultdict(int)
            for m, c in terms.items():
                for m2, s in _times_generator(n, m, k):
                    nxt[m2] += s * c
            terms = {m: c for m, c in nxt.items() if c}
        bb >>= 1
        k += 1
    result = tuple(sorted(terms.items()))
    cache[key] = result
    return result


def _conj_mono(n: int, m: int) -> tuple[tuple[int, int], ...]:
    cache = _CONJ_CACHE.setdefault(n, {})
    hit = cache.get(m)
    if hit is not None:
        return hit
    # reversing the factor list already is the reversion; only the grade sign remains
    sign = -1 if popcount(m) % 2 else 1
    terms: dict[int, int] = {0: sign}
    for b in reversed([i for i in range(2 * n) if m >> i & 1]):
        nxt: dict[int, int] = defaultdict(int)
        for mm, c in terms.items():
            for m2, s in _times_generator(n, mm, b):
                nxt[m2] += s * c
        terms = {mm: c for mm, c in nxt.items() if c}
    result = tuple(sorted(terms.items()))
    cache[m] = result
    return result


class CliffordElement:
    __slots__ = ("field", "n", "coeffs")

    def __init__(self, field: Field, n: int, coeffs: Mapping[int, Scalar] | None = None):
        self.field = field
        self.n = n
        full = (1 << (2 * n)) - 1
        clean = {}
        for m, c in (coeffs or {}).items():
            if m < 0 or m & ~full:
                raise RankMismatch(f"mask {m} invalid for rank {n}")
            c = field(c)
            if c:
                clean[m] = c
        self.coeffs = clean

    @classmethod
    def scalar(cls, field: Field, n: int, c=1) -> "CliffordElement":
        return cls(field, n, {0: c})

    @classmethod
    def generator(cls, field: Field, n: int, index: int) -> "CliffordElement":
        """Generator by 1-based index: 1..n duals, n+1..2n primals."""
        if not 1 <= index <= 2 * n:
            raise RankMismatch(f"generator {index} out of range for rank {n}")
        return cls(field, n, {1 << (index - 1): 1})

    @classmethod
    def f(cls, field: Field, n: int, i: int) -> "CliffordElement":
        return cls.generator(field, n, i)

    @classmethod
    def w(cls, field: Field, n: int, i: int) -> "CliffordElement":
        return cls.generator(field, n, n + i)

    def _check(self, other: "CliffordElement"):
        if self.n != other.n:
            raise RankMismatch(f"rank {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(self.field, self.n, other)
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return CliffordElement(self.field, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement(self.field, self.n, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(self.field, self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return cl_mul(self, other)
        c = self.field(other)
        return CliffordElement(self.field, self.n, {m: c * x for m, x in self.coeffs.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if isinstance(other, CliffordElement):
            return self.n == other.n and self.coeffs == other.coeffs
        if isinstance(other, (int,)) or self.field.contains(other):
            return self == CliffordElement.scalar(self.field, self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_even(self) -> bool:
        return all(popcount(m) % 2 == 0 for m in self.coeffs)

    def grade(self, k: int) -> "CliffordElement":
        return CliffordElement(self.field, self.n, {m: c for m, c in self.coeffs.items() if popcount(m) == k})

    def scalar_part(self) -> Scalar:
        return self.coeffs.get(0, self.field.zero)

    def to_json(self) -> list:
        return [[m, self.field.format(c)] for m, c in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, field: Field, n: int, data) -> "CliffordElement":
        return cls(field, n, {int(m): field.parse(c) for m, c in data})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for m, c in sorted(self.coeffs.items()):
            gens = []
            for k in range(2 * self.n):
                if m >> k & 1:
                    gens.append(f"f{k + 1}" if k < self.n else f"w{k + 1 - self.n}")
            terms.append(f"{c}" + ("*" + "*".join(gens) if gens else ""))
        return " + ".join(terms)


def embed_vector(z: HyperbolicVector) -> CliffordElement:
    """ι(d, u) = Σ d_i f_i + Σ u_i w_i."""
    n = z.n
    coeffs = {1 << i: c for i, c in enumerate(z.dual)}
    coeffs.update({1 << (n + i): c for i, c in enumerate(z.primal)})
    return CliffordElement(z.field, n, coeffs)


def cl_mul(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    x._check(y)
    field, n = x.field, x.n
    if not x.coeffs or not y.coeffs:
        return CliffordElement(field, n)
    xm, xc = zip(*x.coeffs.items())
    ym, yc = zip(*y.coeffs.items())
    xi, dx = field.to_ints(xc)
    yi, dy = field.to_ints(yc)
    ys = list(zip(ym, yi))
    out: dict[int, int] = defaultdict(int)
    for a, ca in zip(xm, xi):
        for b, cb in ys:
            c = ca * cb
            for m, s in mono_product(n, a, b):
                out[m] += s * c
    d = dx * dy
    return CliffordElement(field, n, {m: field.from_int(v, d) for m, v in out.items() if v})


def _linear_map(x: CliffordElement, table) -> CliffordElement:
    field, n = x.field, x.n
    out: dict[int, Scalar] = {}
    for m, c in x.coeffs.items():
        for m2, s in table(n, m):
            out[m2] = out.get(m2, 0) + (c if s == 1 else s * c)
    return CliffordElement(field, n, out)


def cl_conj(x: CliffordElement) -> CliffordElement:
    """Clifford conjugation: grade involution composed with reversion."""
    return _linear_map(x, _conj_mono)


def parity_split(x: CliffordElement) -> tuple[CliffordElement, CliffordElement]:
    even = {m: c for m, c in x.coeffs.items() if popcount(m) % 2 == 0}
    odd = {m: c for m, c in x.coeffs.items() if popcount(m) % 2}
    return CliffordElement(x.field, x.n, even), CliffordElement(x.field, x.n, odd)


def cl_inverse(x: CliffordElement) -> CliffordElement:
    """Inverse through the faithful exterior representation."""
    from .spin_rep import rho, rho_preimage
    from .errors import NotAUnit, SingularMatrix
    from .exterior_model import ExteriorOperator

    m = rho(x)
    try:
        inv = linalg.inverse(m.matrix)
    except SingularMatrix:
        raise NotAUnit("element is not invertible in the Clifford algebra") from None
    return rho_preimage(ExteriorOperator(x.field, x.n, inv))


def conjugation_action(x: CliffordElement, x_inv: CliffordElement) -> Optional[OrthoMap]:
    """Matrix of z ↦ x ι(z) x⁻¹ on W*⊕W, or None if some image leaves V.

    Instead of forming x ι(z) x⁻¹ we solve x ι(z) = ι(z') x for z'; for
    invertible x that is the same condition and avoids a dense product.
    """
    field, n = x.field, x.n
    gens = [CliffordElement(field, n, {1 << k: 1}) for k in range(2 * n)]
    right = [cl_mul(g, x) for g in gens]
    masks = sorted({m for r in right for m in r.coeffs})
    support = set(masks)
    zero = field.zero
    cols = []
    for g in gens:
        lhs = cl_mul(x, g)
        if any(m not in support for m in lhs.coeffs):
            return None
        a = [[r.coeffs.get(m, zero) for r in right] for m in masks]
        b = [lhs.coeffs.get(m, zero) for m in masks]
        sol = linalg.solve(a, b) if masks else None
        if sol is None:
            return None
        cols.append(sol)
    return OrthoMap(field, n, linalg.transpose(cols))


def spin_check(x: CliffordElement) -> Optional[OrthoMap]:
    """The orthogonal image of x when x is in Spin, otherwise None.

    Checks: x even, x·x̃ = x̃·x = 1, and conjugation preserves V.
    """
    if not x.coeffs or not x.is_even():
        return None
    xt = cl_conj(x)
    one = CliffordElement.scalar(x.field, x.n)
    if cl_mul(x, xt) != one or cl_mul(xt, x) != one:
        return None
    return conjugation_action(x, xt)
