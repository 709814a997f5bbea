"""Spin-image membership for split Levi elements, with checkable certificates."""
from __future__ import annotations

from typing import Sequence

from . import linalg
from .certificates import (
    IN_IMAGE,
    OBSTRUCTION,
    RANK2_FORWARD_ONLY,
    SpinLiftCertificate,
)
from .clifford_core import CliffordElement, cl_conj, cl_mul
from .errors import (
    DecompositionFails,
    NormIdentityFails,
    NotALeviLift,
    NotEven,
    RankMismatch,
    SingularMatrix,
    ZeroParameter,
)
from .exterior_model import ExteriorElement, ExteriorOperator, exterior_functor, vacuum_test
from .field_core import Field, Scalar
from .levi_lifts import assemble_lift, line_scaling_lift, verify_levi_lift
from .spin_rep import act, occupation_projectors, rho, rho_preimage


def split_line_decide(field: Field, a) -> SpinLiftCertificate:
    """Decide the rank-1 reciprocal scaling (x, y) ↦ (a⁻¹x, a·y)."""
    a = field(a)
    if not a:
        raise ZeroParameter("split-line scaling must be a unit")
    g = [[a]]
    t = field.sqrt(a)
    if t is None:
        return SpinLiftCertificate(OBSTRUCTION, field, g, a)
    lift = line_scaling_lift(field, (1,), (1,), t).element
    checks, c = verify_levi_lift(lift, g, t)
    return SpinLiftCertificate(IN_IMAGE, field, g, a, sqrt=t, lift=lift, scalar_c=c, checks=checks)


def split_line_image_form(x: CliffordElement) -> tuple[Scalar, Scalar]:
    """(a, b) with x = a·pq + b·qp, where p = w_1 and q = f_1."""
    if x.n != 1:
        raise RankMismatch("split-line form is defined at rank 1")
    if not x.is_even():
        raise NotEven("split-line form needs an even element")
    # pq = w1 f1 = 1 - f1 w1 and qp = f1 w1, so x = α + β f1w1 gives a = α, b = α + β
    alpha = x.coeffs.get(0, x.field.zero)
    beta = x.coeffs.get(0b11, x.field.zero)
    return alpha, alpha + beta


def vacuum_scalar(s: CliffordElement, g: Sequence[Sequence]) -> Scalar:
    """The c with ρ(s) = c·⋀g, read off the vacuum line and then checked in full."""
    field, n = s.field, s.n
    c = vacuum_test(act(s, ExteriorElement.basis(field, n, 0)))
    if c is None or not c:
        raise NotALeviLift("ρ(s)(1) is not a nonzero multiple of the vacuum")
    if rho(s) != exterior_functor(field, g).scaled(c):
        raise NotALeviLift("ρ(s) is not c·⋀g on all of ⋀W")
    return c


def projector_converse_check(s: CliffordElement, i0: int, t) -> Scalar:
    """For a lift s of Λ(L_i0(t)): check s = c t P_in + c P_out and c² t = 1."""
    field, n = s.field, s.n
    t = field(t)
    g = linalg.identity(field, n)
    g[i0 - 1][i0 - 1] = t
    c = vacuum_scalar(s, g)
    p_in, p_out = occupation_projectors(field, n, i0)
    if s != p_in * (c * t) + p_out * c:
        raise DecompositionFails("s differs from c·t·P_in + c·P_out")
    if c * c * t != 1:
        raise NormIdentityFails(f"c²t = {c * c * t} ≠ 1")
    return c


def levi_decide(field: Field, g: Sequence[Sequence], via: str = "transvection") -> SpinLiftCertificate:
    g = linalg.coerce(field, g)
    n = len(g)
    if not linalg.is_square(g):
        raise RankMismatch("Levi element must be square")
    d = linalg.det(g)
    if not d:
        raise SingularMatrix("Levi element is not invertible")
    if n == 1:
        return split_line_decide(field, d)
    if field.sqrt(d) is not None:
        return assemble_lift(field, g, via=via)
    # the exact converse is only established for rank ≥ 3
    verdict = OBSTRUCTION if n >= 3 else RANK2_FORWARD_ONLY
    return SpinLiftCertificate(verdict, field, g, d)


def verify_certificate(cert: SpinLiftCertificate) -> tuple[bool, list[str]]:
    """Re-check a certificate without trusting anything it claims beyond g."""
    problems: list[str] = []
    field, g, n = cert.field, cert.matrix, cert.n
    if not g or not linalg.is_square(g):
        return False, ["matrix is not square"]
    d = linalg.det(g)
    if d != cert.det:
        problems.append("det does not match the matrix")
    if not d:
        return False, problems + ["matrix is singular"]
    root = field.sqrt(d)
    if cert.verdict == IN_IMAGE:
        if root is None:
            problems.append("determinant is not a square")
        if cert.sqrt is None or cert.sqrt * cert.sqrt != d:
            problems.append("recorded sqrt does not square to det")
        if cert.lift is None:
            problems.append("lift missing")
        else:
            checks, c = verify_levi_lift(cert.lift, g, cert.sqrt)
            for name, ok in checks.items():
                if not ok:
                    problems.append(f"check {name} fails")
                if cert.checks.get(name) != ok:
                    problems.append(f"recorded check {name} disagrees")
            if cert.scalar_c is not None and c != cert.scalar_c:
                problems.append("recorded scalar_c disagrees")
    elif cert.verdict == OBSTRUCTION:
        if root is not None:
            problems.append("determinant is a square")
        if n == 2:
            problems.append("rank-2 obstruction is not established")
        if cert.lift is not None:
            problems.append("obstruction carries a lift")
    elif cert.verdict == RANK2_FORWARD_ONLY:
        if n != 2:
            problems.append("rank2_forward_only verdict at rank != 2")
        if root is not None:
            problems.append("determinant is a square")
    else:
        problems.append(f"unknown verdict {cert.verdict!r}")
    return not problems, problems


def kernel_elements(field: Field, n: int) -> list[CliffordElement]:
    """All x in Spin acting trivially on V, found by solving the centralizer
    condition through ρ and then the norm equation on the solution line."""
    dim = 1 << n
    gens = [rho(CliffordElement(field, n, {1 << k: 1})).matrix for k in range(2 * n)]
    zero = field.zero
    rows = []
    # X R - R X = 0 for every generator image R; unknown X[a][c] at a*dim + c
    for R in gens:
        for a in range(dim):
            for b in range(dim):
                row = [zero] * (dim * dim)
                for c in range(dim):
                    if R[c][b]:
                        row[a * dim + c] = row[a * dim + c] + R[c][b]
                    if R[a][c]:
                        row[c * dim + b] = row[c * dim + b] - R[a][c]
                if any(row):
                    rows.append(row)
    basis = linalg.nullspace(rows)
    if len(basis) != 1:
        raise AssertionError(f"centralizer has dimension {len(basis)}, expected 1")
    vec = basis[0]
    N = rho_preimage_from_flat(field, n, vec)
    mu_el = cl_mul(N, cl_conj(N))
    if any(m != 0 for m in mu_el.coeffs):
        raise AssertionError("norm of the central element is not a scalar")
    mu = mu_el.scalar_part()
    lam = field.sqrt(1 / mu)
    if lam is None:
        return []
    return [N * lam, N * (-lam)]


def rho_preimage_from_flat(field: Field, n: int, flat: Sequence) -> CliffordElement:
    dim = 1 << n
    return rho_preimage(ExteriorOperator(field, n, [list(flat[r * dim:(r + 1) * dim]) for r in range(dim)]))


def same_projective_action(x: CliffordElement, y: CliffordElement) -> bool:
    """True when ρ(x) and ρ(y) send every basis line of ⋀W to the same line."""
    field, n = x.field, x.n
    for J in range(1 << n):
        e = ExteriorElement.basis(field, n, J)
        a, b = act(x, e), act(y, e)
        if a.is_zero() or b.is_zero():
            return False
        # a and b are proportional iff all 2x2 minors vanish
        keys = sorted(set(a.coeffs) | set(b.coeffs))
        da, db = a.dense(), b.dense()
        for i in keys:
            for j in keys:
                if da[i] * db[j] != da[j] * db[i]:
                    return False
    return True
