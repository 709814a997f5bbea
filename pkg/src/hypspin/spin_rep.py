"""The exterior representation ρ: Cl(Hyp(W)) → End(⋀W).

Dual generators act by contraction, primal generators by wedge. The module
also builds the basis projectors and matrix units that make ρ bijective.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .clifford_core import CliffordElement, cl_mul
from .errors import IndexOutOfRange, RankBoundExceeded, RankMismatch
from .exterior_model import (
    ExteriorElement,
    ExteriorOperator,
    contract_basis,
    mask_indices,
    popcount,
    wedge_basis,
)
from .field_core import Field

# dense operators are 2^n x 2^n; raise to go further
MAX_RANK = 8


def _check_rank(n: int):
    if n > MAX_RANK:
        raise RankBoundExceeded(f"rank {n} exceeds the operator bound {MAX_RANK}")


@lru_cache(maxsize=None)
def _mono_action(n: int, m: int) -> tuple[Optional[tuple[int, int]], ...]:
    """ρ(monomial m) as a signed partial permutation: entry J is (I, sign) or None."""
    gens = [k for k in range(2 * n) if m >> k & 1]
    out = []
    for J in range(1 << n):
        mask, sign = J, 1
        for k in reversed(gens):
            if k < n:
                s, mask = contract_basis(k + 1, mask)
            else:
                s, mask = wedge_basis(k - n + 1, mask)
            if not s:
                sign = 0
                break
            sign *= s
        out.append((mask, sign) if sign else None)
    return tuple(out)


def rho(x: CliffordElement) -> ExteriorOperator:
    field, n = x.field, x.n
    _check_rank(n)
    dim = 1 << n
    mat = [[field.zero] * dim for _ in range(dim)]
    for m, c in x.coeffs.items():
        for J, hit in enumerate(_mono_action(n, m)):
            if hit is not None:
                I, s = hit
                mat[I][J] = mat[I][J] + (c if s > 0 else -c)
    return ExteriorOperator(field, n, mat)


def act(x: CliffordElement, v: ExteriorElement) -> ExteriorElement:
    """ρ(x) applied to one exterior element, without forming the matrix."""
    if x.n != v.n:
        raise RankMismatch(f"rank {x.n} vs {v.n}")
    out: dict = {}
    for m, c in x.coeffs.items():
        action = _mono_action(x.n, m)
        for J, a in v.coeffs.items():
            hit = action[J]
            if hit is not None:
                I, s = hit
                out[I] = out.get(I, 0) + (c * a if s > 0 else -(c * a))
    return ExteriorElement(x.field, x.n, out)


def _validate_subset(n: int, mask: int):
    if mask < 0 or mask >> n:
        raise IndexOutOfRange(f"subset mask {mask} invalid for rank {n}")


def _product(field: Field, n: int, factors: list[CliffordElement]) -> CliffordElement:
    acc = CliffordElement.scalar(field, n)
    for f in factors:
        acc = cl_mul(acc, f)
    return acc


@lru_cache(maxsize=None)
def projector(field: Field, n: int, subset: int) -> CliffordElement:
    """P_I = ∏_{i∈I} w_i f_i · ∏_{j∉I} f_j w_j, each product in increasing index order."""
    _validate_subset(n, subset)
    inside = [i for i in range(1, n + 1) if subset >> (i - 1) & 1]
    outside = [j for j in range(1, n + 1) if not subset >> (j - 1) & 1]
    factors = []
    for i in inside:
        factors += [CliffordElement.w(field, n, i), CliffordElement.f(field, n, i)]
    for j in outside:
        factors += [CliffordElement.f(field, n, j), CliffordElement.w(field, n, j)]
    return _product(field, n, factors)


@dataclass(frozen=True)
class MatrixUnitElement:
    source: int
    target: int
    element: CliffordElement
    sign: int


@lru_cache(maxsize=None)
def matrix_unit(field: Field, n: int, target: int, source: int) -> MatrixUnitElement:
    """T_{I,J} with ρ(T_{I,J}) = E_{I,J}; I = target mask, J = source mask."""
    _validate_subset(n, target)
    _validate_subset(n, source)
    add = [i for i in mask_indices(target & ~source)]
    remove = [j for j in mask_indices(source & ~target)]
    factors = [CliffordElement.w(field, n, i) for i in add]
    factors += [CliffordElement.f(field, n, j) for j in remove]
    unsigned = cl_mul(_product(field, n, factors), projector(field, n, source))
    # read the sign off the action on e_J
    image = act(unsigned, ExteriorElement.basis(field, n, source))
    coeff = image.coeffs.get(target)
    if coeff == 1:
        sign = 1
    elif coeff == -1:
        sign = -1
    else:
        raise AssertionError(f"T_({target},{source}) does not send e_J to ±e_I: {image}")
    element = unsigned if sign == 1 else -unsigned
    return MatrixUnitElement(source, target, element, sign)


def rho_preimage(op: ExteriorOperator) -> CliffordElement:
    """The unique Clifford element x with ρ(x) = op, as Σ op[I,J] T_{I,J}."""
    field, n = op.field, op.n
    _check_rank(n)
    out: dict = {}
    for I, row in enumerate(op.matrix):
        for J, a in enumerate(row):
            if not a:
                continue
            for m, c in matrix_unit(field, n, I, J).element.coeffs.items():
                out[m] = out.get(m, 0) + a * c
    return CliffordElement(field, n, out)


def occupation_projectors(field: Field, n: int, i0: int) -> tuple[CliffordElement, CliffordElement]:
    """(P_in, P_out) = (w_i0 f_i0, f_i0 w_i0)."""
    if not 1 <= i0 <= n:
        raise IndexOutOfRange(f"index {i0} out of range for rank {n}")
    f = CliffordElement.f(field, n, i0)
    w = CliffordElement.w(field, n, i0)
    return cl_mul(w, f), cl_mul(f, w)


def parity_order(n: int) -> list[int]:
    """Subset masks with all even masks first, each group by mask value."""
    dim = 1 << n
    return [m for m in range(dim) if popcount(m) % 2 == 0] + [m for m in range(dim) if popcount(m) % 2]
