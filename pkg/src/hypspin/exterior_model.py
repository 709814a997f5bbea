"""The spinor module S = ⋀W on a chosen basis e_1..e_n.

Basis monomials are bitmasks: bit i-1 set means e_i occurs, and the monomial
is the wedge of its factors in increasing index order. All signs come from
counting the transpositions needed to restore that order.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Optional, Sequence

from . import linalg
from .errors import IndexOutOfRange, RankMismatch, SingularMatrix
from .field_core import Field, Scalar

DualVector = tuple  # coordinates in e^1..e^n
PrimalVector = tuple  # coordinates in e_1..e_n


def popcount(m: int) -> int:
    return bin(m).count("1")


def mask_indices(mask: int) -> list[int]:
    """1-based indices of the set bits, increasing."""
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def indices_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def wedge_basis(i: int, mask: int) -> tuple[int, int]:
    """e_i ∧ e_mask as (sign, mask); sign 0 when e_i already occurs."""
    bit = 1 << (i - 1)
    if mask & bit:
        return 0, mask
    sign = -1 if popcount(mask & (bit - 1)) % 2 else 1
    return sign, mask | bit


def contract_basis(i: int, mask: int) -> tuple[int, int]:
    """ι_{e^i}(e_mask) as (sign, mask); sign 0 when e_i does not occur."""
    bit = 1 << (i - 1)
    if not mask & bit:
        return 0, mask
    sign = -1 if popcount(mask & (bit - 1)) % 2 else 1
    return sign, mask ^ bit


def _mono_wedge(a: int, b: int) -> tuple[int, int]:
    # e_a ∧ e_b: each factor of b moves left past the larger factors of a
    if a & b:
        return 0, 0
    swaps = 0
    for j in mask_indices(b):
        swaps += popcount(a >> j)
    return (-1 if swaps % 2 else 1), a | b


@dataclass(frozen=True)
class ExteriorElement:
    field: Field
    n: int
    coeffs: Mapping[int, Scalar] = dc_field(default_factory=dict)

    def __post_init__(self):
        full = (1 << self.n) - 1
        clean = {}
        for m, c in self.coeffs.items():
            if m & ~full or m < 0:
                raise IndexOutOfRange(f"mask {m} invalid for rank {self.n}")
            c = self.field(c)
            if c:
                clean[m] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def basis(cls, field: Field, n: int, mask: int, coeff=1) -> "ExteriorElement":
        return cls(field, n, {mask: coeff})

    @classmethod
    def from_vector(cls, field: Field, u: Sequence) -> "ExteriorElement":
        return cls(field, len(u), {1 << i: x for i, x in enumerate(u)})

    @classmethod
    def from_dense(cls, field: Field, n: int, column: Sequence) -> "ExteriorElement":
        return cls(field, n, dict(enumerate(column)))

    def dense(self) -> list[Scalar]:
        zero = self.field.zero
        return [self.coeffs.get(m, zero) for m in range(1 << self.n)]

    def _check(self, other: "ExteriorElement"):
        if self.n != other.n:
            raise RankMismatch(f"rank {self.n} vs {other.n}")

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return ExteriorElement(self.field, self.n, out)

    def __neg__(self):
        return ExteriorElement(self.field, self.n, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c) -> "ExteriorElement":
        c = self.field(c)
        return ExteriorElement(self.field, self.n, {m: c * x for m, x in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def parts(self) -> tuple["ExteriorElement", "ExteriorElement"]:
        """(even, odd) components."""
        even = {m: c for m, c in self.coeffs.items() if popcount(m) % 2 == 0}
        odd = {m: c for m, c in self.coeffs.items() if popcount(m) % 2}
        return ExteriorElement(self.field, self.n, even), ExteriorElement(self.field, self.n, odd)

    def to_json(self) -> list:
        return [[m, self.field.format(c)] for m, c in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, field: Field, n: int, data) -> "ExteriorElement":
        return cls(field, n, {int(m): field.parse(c) for m, c in data})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for m, c in sorted(self.coeffs.items()):
            name = "1" if m == 0 else "e" + "".join(map(str, mask_indices(m)))
            terms.append(f"{c}*{name}")
        return " + ".join(terms)


def wedge(x: ExteriorElement, y: ExteriorElement) -> ExteriorElement:
    x._check(y)
    out: dict[int, Scalar] = {}
    for a, ca in x.coeffs.items():
        for b, cb in y.coeffs.items():
            s, m = _mono_wedge(a, b)
            if s:
                out[m] = out.get(m, 0) + (ca * cb if s > 0 else -(ca * cb))
    return ExteriorElement(x.field, x.n, out)


def contract(delta: Sequence, x: ExteriorElement) -> ExteriorElement:
    """Interior product ι_δ x for a dual vector δ given in the e^i coordinates."""
    if len(delta) != x.n:
        raise RankMismatch(f"dual vector of length {len(delta)} on rank {x.n}")
    out: dict[int, Scalar] = {}
    for i, d in enumerate(delta, start=1):
        d = x.field(d)
        if not d:
            continue
        for m, c in x.coeffs.items():
            s, m2 = contract_basis(i, m)
            if s:
                out[m2] = out.get(m2, 0) + (d * c if s > 0 else -(d * c))
    return ExteriorElement(x.field, x.n, out)


def unit_dual(field: Field, n: int, i: int) -> tuple:
    return tuple(field.one if k == i else field.zero for k in range(1, n + 1))


unit_primal = unit_dual


def vacuum_test(x: ExteriorElement) -> Optional[Scalar]:
    """Return c when every contraction kills x (so x = c·1), else None."""
    for i in range(1, x.n + 1):
        if not contract(unit_dual(x.field, x.n, i), x).is_zero():
            return None
    return x.coeffs.get(0, x.field.zero)


class ExteriorOperator:
    """Endomorphism of ⋀W as a dense 2^n x 2^n matrix.

    ``matrix[I][J]`` is the coefficient of e_I in the image of e_J, with the
    subset basis ordered by mask value.
    """

    __slots__ = ("field", "n", "matrix")

    def __init__(self, field: Field, n: int, matrix: linalg.Matrix):
        dim = 1 << n
        if len(matrix) != dim or any(len(row) != dim for row in matrix):
            raise RankMismatch(f"operator on rank {n} must be {dim}x{dim}")
        self.field = field
        self.n = n
        self.matrix = matrix

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExteriorOperator":
        return cls(field, n, linalg.identity(field, 1 << n))

    @classmethod
    def zero(cls, field: Field, n: int) -> "ExteriorOperator":
        return cls(field, n, linalg.zeros(field, 1 << n, 1 << n))

    @classmethod
    def unit(cls, field: Field, n: int, i: int, j: int) -> "ExteriorOperator":
        """The matrix unit E_{I,J} for masks i, j."""
        m = linalg.zeros(field, 1 << n, 1 << n)
        m[i][j] = field.one
        return cls(field, n, m)

    def __call__(self, x: ExteriorElement) -> ExteriorElement:
        if x.n != self.n:
            raise RankMismatch(f"rank {x.n} element for rank {self.n} operator")
        out: dict[int, Scalar] = {}
        for j, c in x.coeffs.items():
            for i in range(1 << self.n):
                a = self.matrix[i][j]
                if a:
                    out[i] = out.get(i, 0) + a * c
        return ExteriorElement(self.field, self.n, out)

    def column(self, mask: int) -> ExteriorElement:
        return ExteriorElement(self.field, self.n, {i: row[mask] for i, row in enumerate(self.matrix)})

    def __matmul__(self, other: "ExteriorOperator") -> "ExteriorOperator":
        if other.n != self.n:
            raise RankMismatch(f"rank {self.n} vs {other.n}")
        return ExteriorOperator(self.field, self.n, linalg.matmul(self.matrix, other.matrix))

    def __add__(self, other):
        return ExteriorOperator(self.field, self.n, linalg.add(self.matrix, other.matrix))

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, c) -> "ExteriorOperator":
        return ExteriorOperator(self.field, self.n, linalg.scale(self.field(c), self.matrix))

    def __eq__(self, other):
        if not isinstance(other, ExteriorOperator):
            return NotImplemented
        return self.n == other.n and linalg.equal(self.matrix, other.matrix)

    def is_identity(self) -> bool:
        return linalg.is_identity(self.matrix)

    def flat(self) -> list[Scalar]:
        return [x for row in self.matrix for x in row]

    def to_json(self) -> list[list[str]]:
        return [[self.field.format(x) for x in row] for row in self.matrix]

    @classmethod
    def from_json(cls, field: Field, data) -> "ExteriorOperator":
        dim = len(data)
        n = dim.bit_length() - 1
        return cls(field, n, [[field.parse(x) for x in row] for row in data])

    def __repr__(self):
        return f"ExteriorOperator(n={self.n}, {self.to_json()})"


def exterior_functor(field: Field, g: Sequence[Sequence]) -> ExteriorOperator:
    """⋀g: e_I ↦ (g e_{i1}) ∧ ... ∧ (g e_{ik})."""
    g = linalg.coerce(field, g)
    n = len(g)
    if not linalg.is_square(g):
        raise RankMismatch("exterior functor needs a square matrix")
    if not linalg.det(g):
        raise SingularMatrix("exterior functor of a singular matrix")
    images = [ExteriorElement.from_vector(field, [g[r][c] for r in range(n)]) for c in range(n)]
    dim = 1 << n
    cols = []
    for mask in range(dim):
        acc = ExteriorElement.basis(field, n, 0)
        for i in mask_indices(mask):
            acc = wedge(acc, images[i - 1])
        cols.append(acc.dense())
    return ExteriorOperator(field, n, linalg.transpose(cols))
