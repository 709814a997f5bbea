"""The hyperbolic quadratic space W*⊕W and its explicit isometries.

Coordinates are ordered duals first: a vector (d, u) has coordinates
(d_1..d_n, u_1..u_n), and the form is Q(d, u) = d(u).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import (
    BadPairing,
    IsotropicVector,
    NotIsotropicPair,
    RankMismatch,
    SingularMatrix,
    ZeroParameter,
)
from .field_core import Field, Scalar


def dot(a: Sequence[Scalar], b: Sequence[Scalar]) -> Scalar:
    if len(a) != len(b):
        raise RankMismatch(f"length {len(a)} vs {len(b)}")
    acc = 0
    for x, y in zip(a, b):
        acc = acc + x * y
    return acc


@dataclass(frozen=True)
class HyperbolicVector:
    field: Field
    dual: tuple
    primal: tuple

    def __post_init__(self):
        if len(self.dual) != len(self.primal):
            raise RankMismatch("dual and primal parts must have the same rank")
        object.__setattr__(self, "dual", tuple(self.field(x) for x in self.dual))
        object.__setattr__(self, "primal", tuple(self.field(x) for x in self.primal))

    @property
    def n(self) -> int:
        return len(self.dual)

    @classmethod
    def from_coords(cls, field: Field, coords: Sequence) -> "HyperbolicVector":
        n = len(coords) // 2
        return cls(field, tuple(coords[:n]), tuple(coords[n:]))

    @classmethod
    def basis(cls, field: Field, n: int, k: int) -> "HyperbolicVector":
        """k-th basis vector, 0-based over (e^1..e^n, e_1..e_n)."""
        coords = [field.zero] * (2 * n)
        coords[k] = field.one
        return cls.from_coords(field, coords)

    def coords(self) -> list[Scalar]:
        return list(self.dual) + list(self.primal)

    def __add__(self, other: "HyperbolicVector") -> "HyperbolicVector":
        return HyperbolicVector(
            self.field,
            tuple(a + b for a, b in zip(self.dual, other.dual)),
            tuple(a + b for a, b in zip(self.primal, other.primal)),
        )

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c) -> "HyperbolicVector":
        c = self.field(c)
        return HyperbolicVector(
            self.field, tuple(c * x for x in self.dual), tuple(c * x for x in self.primal)
        )


def q_value(z: HyperbolicVector) -> Scalar:
    return z.field.zero + dot(z.dual, z.primal)


def pairing(z: HyperbolicVector, y: HyperbolicVector) -> Scalar:
    if z.n != y.n:
        raise RankMismatch(f"rank {z.n} vs {y.n}")
    return z.field.zero + dot(z.dual, y.primal) + dot(y.dual, z.primal)


class OrthoMap:
    """Linear map on W*⊕W; column k is the image of the k-th basis vector."""

    __slots__ = ("field", "n", "matrix")

    def __init__(self, field: Field, n: int, matrix: linalg.Matrix):
        if len(matrix) != 2 * n or any(len(row) != 2 * n for row in matrix):
            raise RankMismatch(f"orthogonal map on rank {n} must be {2 * n}x{2 * n}")
        self.field = field
        self.n = n
        self.matrix = matrix

    @classmethod
    def identity(cls, field: Field, n: int) -> "OrthoMap":
        return cls(field, n, linalg.identity(field, 2 * n))

    @classmethod
    def from_blocks(cls, field: Field, dd, du, ud, uu) -> "OrthoMap":
        """Assemble [[dd, du], [ud, uu]]: dd maps duals to duals, du primals to duals, etc."""
        n = len(dd)
        top = [list(dd[i]) + list(du[i]) for i in range(n)]
        bottom = [list(ud[i]) + list(uu[i]) for i in range(n)]
        return cls(field, n, linalg.coerce(field, top + bottom))

    def __call__(self, z: HyperbolicVector) -> HyperbolicVector:
        if z.n != self.n:
            raise RankMismatch(f"rank {z.n} vector for rank {self.n} map")
        return HyperbolicVector.from_coords(self.field, linalg.matvec(self.matrix, z.coords()))

    def __matmul__(self, other: "OrthoMap") -> "OrthoMap":
        if other.n != self.n:
            raise RankMismatch(f"rank {self.n} vs {other.n}")
        return OrthoMap(self.field, self.n, linalg.matmul(self.matrix, other.matrix))

    def inverse(self) -> "OrthoMap":
        return OrthoMap(self.field, self.n, linalg.inverse(self.matrix))

    def det(self) -> Scalar:
        return linalg.det(self.matrix)

    def w_block(self) -> linalg.Matrix:
        """The W→W block (acting on primal coordinates)."""
        n = self.n
        return [row[n:] for row in self.matrix[n:]]

    def dual_block(self) -> linalg.Matrix:
        n = self.n
        return [row[:n] for row in self.matrix[:n]]

    def is_levi(self) -> bool:
        n = self.n
        return all(not self.matrix[i][j] for i in range(n) for j in range(n, 2 * n)) and all(
            not self.matrix[i][j] for i in range(n, 2 * n) for j in range(n)
        )

    def __eq__(self, other):
        if not isinstance(other, OrthoMap):
            return NotImplemented
        return self.n == other.n and linalg.equal(self.matrix, other.matrix)

    def is_identity(self) -> bool:
        return linalg.is_identity(self.matrix)

    def to_json(self) -> list[list[str]]:
        return [[self.field.format(x) for x in row] for row in self.matrix]

    def __repr__(self):
        return f"OrthoMap(n={self.n}, {self.to_json()})"


def reflection(v: HyperbolicVector) -> OrthoMap:
    """r_v(z) = z - (<z,v>/Q(v)) v."""
    qv = q_value(v)
    if not qv:
        raise IsotropicVector("cannot reflect in an isotropic vector")
    field, n = v.field, v.n
    cols = []
    for k in range(2 * n):
        z = HyperbolicVector.basis(field, n, k)
        cols.append((z - v.scaled(pairing(z, v) / qv)).coords())
    return OrthoMap(field, n, linalg.transpose(cols))


def levi_embed(field: Field, g: Sequence[Sequence]) -> OrthoMap:
    """Λ(g): inverse transpose on W*, g on W."""
    g = linalg.coerce(field, g)
    n = len(g)
    if not linalg.is_square(g):
        raise RankMismatch("Levi element must be square")
    try:
        ginv = linalg.inverse(g)
    except SingularMatrix:
        raise SingularMatrix("Levi element is not invertible") from None
    zero = linalg.zeros(field, n, n)
    return OrthoMap.from_blocks(field, linalg.transpose(ginv), zero, zero, g)


def _check_rank(field: Field, *vectors) -> int:
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise RankMismatch("vector lengths differ")
    return n


def transvection_map(field: Field, delta: Sequence, w: Sequence) -> OrthoMap:
    """T_{δ,w}(d, u) = (d + d(w) δ, u - δ(u) w), defined when δ(w) = 0."""
    delta = [field(x) for x in delta]
    w = [field(x) for x in w]
    n = _check_rank(field, delta, w)
    if field.zero + dot(delta, w):
        raise NotIsotropicPair("transvection needs δ(w) = 0")
    one, zero = field.one, field.zero
    dd = [[(one if i == j else zero) + delta[i] * w[j] for j in range(n)] for i in range(n)]
    uu = [[(one if i == j else zero) - w[i] * delta[j] for j in range(n)] for i in range(n)]
    z = linalg.zeros(field, n, n)
    return OrthoMap.from_blocks(field, dd, z, z, uu)


def line_scaling_map(field: Field, w: Sequence, f: Sequence, t) -> OrthoMap:
    """λ_t(d, u) = (d + (t^-2 - 1) d(w) f, u + (t^2 - 1) f(u) w)."""
    w = [field(x) for x in w]
    f = [field(x) for x in f]
    t = field(t)
    n = _check_rank(field, w, f)
    if field.zero + dot(f, w) != 1:
        raise BadPairing("line scaling needs f(w) = 1")
    if not t:
        raise ZeroParameter("line scaling parameter must be a unit")
    one, zero = field.one, field.zero
    a = 1 / (t * t) - 1
    b = t * t - 1
    dd = [[(one if i == j else zero) + a * f[i] * w[j] for j in range(n)] for i in range(n)]
    uu = [[(one if i == j else zero) + b * w[i] * f[j] for j in range(n)] for i in range(n)]
    z = linalg.zeros(field, n, n)
    return OrthoMap.from_blocks(field, dd, z, z, uu)


def is_isometry(m: OrthoMap) -> bool:
    field, n = m.field, m.n
    basis = [HyperbolicVector.basis(field, n, k) for k in range(2 * n)]
    images = [m(z) for z in basis]
    for z, mz in zip(basis, images):
        if q_value(mz) != q_value(z):
            return False
    for a in range(2 * n):
        for b in range(a + 1, 2 * n):
            if pairing(images[a], images[b]) != pairing(basis[a], basis[b]):
                return False
    return True
