"""Explicit spin lifts of split Levi elements and their factorizations.

Matrix and Clifford products are read the same way: the rightmost factor
acts first. An elementary transvection ``(i, j, r)`` is T_ij(r) = 1 + r E_ij,
i.e. e_j ↦ e_j + r e_i, with 1-based indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from . import linalg
from .certificates import IN_IMAGE, SpinLiftCertificate
from .clifford_core import CliffordElement, cl_conj, cl_mul, conjugation_action, embed_vector
from .errors import (
    EqualIndices,
    IndexOutOfRange,
    IndicesNotDistinct,
    NeedRankAtLeast2,
    NeedRankAtLeast3,
    NonSquareDeterminant,
    RankMismatch,
    SingularMatrix,
    ZeroParameter,
)
from .exterior_model import ExteriorElement, exterior_functor, unit_dual, vacuum_test
from .field_core import Field, Scalar
from .orthogonal_group import (
    HyperbolicVector,
    OrthoMap,
    levi_embed,
    line_scaling_map,
    reflection,
    transvection_map,
)
from .spin_rep import act, rho

Elementary = tuple  # (i, j, r)


@dataclass
class LiftFactor:
    kind: str  # "transvection", "line_scaling", "pair", "elementary_levi"
    params: dict
    element: CliffordElement
    ortho: OrthoMap


def _vec(field: Field, v: Sequence) -> tuple:
    return tuple(field(x) for x in v)


def _iota(field: Field, dual: Sequence, primal: Sequence) -> CliffordElement:
    return embed_vector(HyperbolicVector(field, tuple(dual), tuple(primal)))


def transvection_lift(field: Field, delta: Sequence, w: Sequence) -> LiftFactor:
    """x_{δ,w} = 1 + ι(δ,0) ι(0,w)."""
    delta, w = _vec(field, delta), _vec(field, w)
    ortho = transvection_map(field, delta, w)  # validates δ(w) = 0
    zero = (field.zero,) * len(w)
    n_part = cl_mul(_iota(field, delta, zero), _iota(field, zero, w))
    element = CliffordElement.scalar(field, len(w)) + n_part
    return LiftFactor("transvection", {"delta": delta, "w": w}, element, ortho)


def line_scaling_lift(field: Field, w: Sequence, f: Sequence, t) -> LiftFactor:
    """s_t = ι(-t⁻¹f, tw) ι(-f, w); acts on W*⊕W as λ_t."""
    w, f, t = _vec(field, w), _vec(field, f), field(t)
    ortho = line_scaling_map(field, w, f, t)  # validates f(w) = 1 and t ≠ 0
    u_t = _iota(field, [-(x / t) for x in f], [t * x for x in w])
    v = _iota(field, [-x for x in f], w)
    return LiftFactor("line_scaling", {"w": w, "f": f, "t": t}, cl_mul(u_t, v), ortho)


def _check_index(n: int, *idx: int):
    for i in idx:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"index {i} out of range for rank {n}")


def pair_generator(field: Field, n: int, p: int, q: int, a) -> LiftFactor:
    """s_pq(a) = ι(-(ε_p + a ε_q), e_p) ι(-ε_p, e_p)."""
    _check_index(n, p, q)
    if p == q:
        raise EqualIndices("pair generator needs p ≠ q")
    a = field(a)
    e_p = unit_dual(field, n, p)
    eps_q = unit_dual(field, n, q)
    first = HyperbolicVector(field, tuple(-(x + a * y) for x, y in zip(e_p, eps_q)), e_p)
    second = HyperbolicVector(field, tuple(-x for x in e_p), e_p)
    element = cl_mul(embed_vector(first), embed_vector(second))
    # conjugation by a vector v is -r_v, so a product of two is r_first r_second
    ortho = reflection(first) @ reflection(second)
    return LiftFactor("pair", {"p": p, "q": q, "a": a}, element, ortho)


def five_factor_schedule(i: int, j: int, c, k: int) -> list[tuple[int, int, Scalar]]:
    """The pair generators (p, q, a) of P_ki(1) P_kj(c/2) P_ki(-1) P_kj(-c/2) P_ij(-c), left to right."""
    half = c / 2
    return [(k, i, 1), (k, j, half), (k, i, -1), (k, j, -half), (i, j, -c)]


def elementary_levi_lift(field: Field, n: int, i: int, j: int, c, k: Optional[int] = None) -> LiftFactor:
    """Lift of Λ(T_ij(c)) as a product of five pair generators through an auxiliary index k."""
    if n < 3:
        raise NeedRankAtLeast3("the five-factor commutator needs an auxiliary index (rank ≥ 3)")
    if k is None:
        k = next(x for x in range(1, n + 1) if x not in (i, j))
    _check_index(n, i, j, k)
    if len({i, j, k}) < 3:
        raise IndicesNotDistinct(f"indices {i}, {j}, {k} must be pairwise distinct")
    c = field(c)
    element = CliffordElement.scalar(field, n)
    ortho = OrthoMap.identity(field, n)
    for p, q, a in five_factor_schedule(i, j, c, k):
        factor = pair_generator(field, n, p, q, a)
        element = cl_mul(element, factor.element)
        ortho = ortho @ factor.ortho
    return LiftFactor("elementary_levi", {"i": i, "j": j, "c": c, "k": k}, element, ortho)


def elementary_matrix(field: Field, n: int, i: int, j: int, r) -> linalg.Matrix:
    m = linalg.identity(field, n)
    m[i - 1][j - 1] = m[i - 1][j - 1] + field(r)
    return m


def product_of_elementary(field: Field, n: int, factors: Sequence[Elementary]) -> linalg.Matrix:
    acc = linalg.identity(field, n)
    for i, j, r in factors:
        acc = linalg.matmul(acc, elementary_matrix(field, n, i, j, r))
    return acc


def block_scaling_factorization(field: Field, i: int, j: int, a) -> list[Elementary]:
    """D_ij(a) = T_ij(a-1) T_ji(1) T_ij(a⁻¹-1) T_ji(-a)."""
    if i == j:
        raise EqualIndices("block scaling needs i ≠ j")
    a = field(a)
    if not a:
        raise ZeroParameter("block scaling parameter must be a unit")
    one = field.one
    return [(i, j, a - 1), (j, i, one), (i, j, 1 / a - 1), (j, i, -a)]


def transvection_reduce(
    field: Field, g: Sequence[Sequence], order: Optional[Sequence[int]] = None
) -> tuple[list[Elementary], list[Scalar], list[Elementary]]:
    """Write g = (∏A) · diag(D) · (∏B) using elementary transvections only.

    ``order`` is the sequence of 1-based pivot indices (default 1..n). A zero
    pivot is repaired by adding a later row, so no row swaps are needed.
    """
    m = linalg.coerce(field, g)
    n = len(m)
    if not linalg.is_square(m):
        raise RankMismatch("Levi element must be square")
    if n < 2:
        raise NeedRankAtLeast2("transvection reduction needs rank ≥ 2")
    order = [k - 1 for k in (order or range(1, n + 1))]
    if sorted(order) != list(range(n)):
        raise IndexOutOfRange("pivot order must be a permutation of 1..n")
    left: list[Elementary] = []
    right: list[Elementary] = []
    for s, k in enumerate(order):
        rest = order[s + 1:]
        if not m[k][k]:
            l = next((x for x in rest if m[x][k]), None)
            if l is None:
                raise SingularMatrix("Levi element is not invertible")
            m[k] = [a + b for a, b in zip(m[k], m[l])]
            left.append((k + 1, l + 1, field.one))
        p = m[k][k]
        for l in rest:
            if m[l][k]:
                r = -m[l][k] / p
                m[l] = [a + r * b for a, b in zip(m[l], m[k])]
                left.append((l + 1, k + 1, r))
        for l in rest:
            if m[k][l]:
                r = -m[k][l] / p
                for row in m:
                    row[l] = row[l] + r * row[k]
                right.append((k + 1, l + 1, r))
    diag = [m[k][k] for k in range(n)]
    A = [(i, j, -r) for i, j, r in left]
    B = [(i, j, -r) for i, j, r in reversed(right)]
    return A, diag, B


@dataclass
class SquareDetFactorization:
    field: Field
    g: list
    u: Scalar
    A: list[Elementary]
    line_scale: Scalar  # u², the L_1 factor
    blocks: list[tuple[int, int, Scalar]]  # D_{j1}(t_j) as (j, 1, t_j)
    B: list[Elementary]
    diagonal: list[Scalar] = dc_field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.g)

    def matrices(self) -> list[linalg.Matrix]:
        """Every factor as an n x n matrix, in product order."""
        field, n = self.field, self.n
        mats = [elementary_matrix(field, n, *t) for t in self.A]
        l1 = linalg.identity(field, n)
        l1[0][0] = self.line_scale
        mats.append(l1)
        for j, i, t in self.blocks:
            d = linalg.identity(field, n)
            d[j - 1][j - 1] = t
            d[i - 1][i - 1] = 1 / t
            mats.append(d)
        mats += [elementary_matrix(field, n, *t) for t in self.B]
        return mats

    def recompose(self) -> linalg.Matrix:
        acc = linalg.identity(self.field, self.n)
        for m in self.matrices():
            acc = linalg.matmul(acc, m)
        return acc

    def to_json(self) -> list[dict]:
        fmt = self.field.format
        out = [{"kind": "T", "i": i, "j": j, "r": fmt(r)} for i, j, r in self.A]
        out.append({"kind": "L1", "t": fmt(self.line_scale), "u": fmt(self.u)})
        out += [{"kind": "D", "i": j, "j": i, "a": fmt(t)} for j, i, t in self.blocks]
        out += [{"kind": "T", "i": i, "j": j, "r": fmt(r)} for i, j, r in self.B]
        return out


def square_det_factor(
    field: Field, g: Sequence[Sequence], order: Optional[Sequence[int]] = None
) -> SquareDetFactorization:
    """g = A · L_1(u²) · ∏_{j≥2} D_{j1}(t_j) · B with u² = det(g)."""
    g = linalg.coerce(field, g)
    n = len(g)
    if n < 2:
        raise NeedRankAtLeast2("square-determinant factorization needs rank ≥ 2")
    d = linalg.det(g)
    if not d:
        raise SingularMatrix("Levi element is not invertible")
    u = field.sqrt(d)
    if u is None:
        raise NonSquareDeterminant(d)
    A, diag, B = transvection_reduce(field, g, order)
    blocks = [(j, 1, diag[j - 1]) for j in range(2, n + 1)]
    return SquareDetFactorization(field, g, u, A, u * u, blocks, B, diag)


def elementary_lift(field: Field, n: int, i: int, j: int, r, via: str = "transvection") -> LiftFactor:
    """Spin lift of Λ(T_ij(r)).

    ``via="transvection"`` uses x_{δ,w} with δ = -r ε_j, w = e_i (any rank ≥ 2);
    ``via="pair"`` uses the five pair generators (rank ≥ 3).
    """
    if via == "pair":
        return elementary_levi_lift(field, n, i, j, r)
    r = field(r)
    delta = tuple(-r if x == j else field.zero for x in range(1, n + 1))
    return transvection_lift(field, delta, unit_dual(field, n, i))


def factor_lifts(fac: SquareDetFactorization, via: str = "transvection") -> list[LiftFactor]:
    field, n = fac.field, fac.n
    lifts = [elementary_lift(field, n, i, j, r, via) for i, j, r in fac.A if r]
    e1 = unit_dual(field, n, 1)
    lifts.append(line_scaling_lift(field, e1, e1, fac.u))
    for j, i, t in fac.blocks:
        for a, b, r in block_scaling_factorization(field, j, i, t):
            if r:
                lifts.append(elementary_lift(field, n, a, b, r, via))
    lifts += [elementary_lift(field, n, i, j, r, via) for i, j, r in fac.B if r]
    return lifts


def exterior_scalar(x: CliffordElement, g: Sequence[Sequence]) -> Optional[Scalar]:
    """c with ρ(x) = c·⋀g, or None when no such scalar exists."""
    field, n = x.field, x.n
    vac = act(x, ExteriorElement.basis(field, n, 0))
    c = vacuum_test(vac)
    if c is None or not c:
        return None
    if rho(x) != exterior_functor(field, g).scaled(c):
        return None
    return c


def verify_levi_lift(x: CliffordElement, g: Sequence[Sequence], u: Optional[Scalar] = None) -> tuple[dict, Optional[Scalar]]:
    """Re-run the four lift checks from scratch; returns (checks, c)."""
    field = x.field
    g = linalg.coerce(field, g)
    checks = {"even": x.is_even(), "norm_one": False, "conj_matches": False, "exterior_action_matches": False}
    xt = cl_conj(x)
    one = CliffordElement.scalar(field, x.n)
    checks["norm_one"] = cl_mul(x, xt) == one and cl_mul(xt, x) == one
    if checks["even"] and checks["norm_one"]:
        action = conjugation_action(x, xt)
        checks["conj_matches"] = action is not None and action == levi_embed(field, g)
    c = exterior_scalar(x, g)
    if c is not None:
        ok = True
        if u is not None:
            ok = c * c * u * u == 1
        checks["exterior_action_matches"] = ok
    return checks, c


def assemble_lift(
    field: Field, g: Sequence[Sequence], via: str = "transvection", order: Optional[Sequence[int]] = None
) -> SpinLiftCertificate:
    """Even unitary Clifford lift of Λ(g) for det(g) a square, with its checks."""
    fac = square_det_factor(field, g, order)
    n = fac.n
    if via == "pair" and n < 3:
        raise NeedRankAtLeast3("pair-generator lifts need an auxiliary index (rank ≥ 3)")
    x = CliffordElement.scalar(field, n)
    for lf in factor_lifts(fac, via):
        x = cl_mul(x, lf.element)
    checks, c = verify_levi_lift(x, fac.g, fac.u)
    return SpinLiftCertificate(
        verdict=IN_IMAGE,
        field=field,
        matrix=fac.g,
        det=fac.u * fac.u,
        sqrt=fac.u,
        lift=x,
        scalar_c=c,
        checks=checks,
        factorization=fac.to_json(),
    )
