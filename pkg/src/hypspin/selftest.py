"""Seeded invariant suite behind ``hypspin selftest``."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from . import linalg
from .certificates import IN_IMAGE, OBSTRUCTION
from .clifford_core import CliffordElement, cl_conj, cl_mul, embed_vector, spin_check
from .exterior_model import ExteriorOperator, exterior_functor
from .field_core import QQ, Field, PrimeField
from .image_decision import kernel_elements, levi_decide, split_line_decide, verify_certificate
from .levi_lifts import (
    elementary_levi_lift,
    elementary_matrix,
    line_scaling_lift,
    transvection_lift,
)
from .orthogonal_group import is_isometry, levi_embed, line_scaling_map, q_value, transvection_map
from .sampling import (
    random_hyperbolic,
    random_kernel_pair,
    random_split_pair,
    random_square_det,
)
from .spin_rep import matrix_unit, rho

FIELDS: tuple[Field, ...] = (QQ, PrimeField(7), PrimeField(11))


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _clifford_relation(field, n, rng, trials):
    for _ in range(trials):
        z, y = random_hyperbolic(field, n, rng), random_hyperbolic(field, n, rng)
        iz, iy = embed_vector(z), embed_vector(y)
        if cl_mul(iz, iz) != CliffordElement.scalar(field, n, q_value(z)):
            return False
        if cl_mul(iz, iy) + cl_mul(iy, iz) != CliffordElement.scalar(
            field, n, q_value(z + y) - q_value(z) - q_value(y)
        ):
            return False
    return True


def _rho_homomorphism(field, n, rng, trials):
    for _ in range(trials):
        x = cl_mul(embed_vector(random_hyperbolic(field, n, rng)), embed_vector(random_hyperbolic(field, n, rng)))
        y = embed_vector(random_hyperbolic(field, n, rng)) + field.random(rng)
        if rho(cl_mul(x, y)) != rho(x) @ rho(y):
            return False
    return True


def _matrix_units(field, n, rng, trials):
    dim = 1 << n
    return all(
        rho(matrix_unit(field, n, I, J).element) == ExteriorOperator.unit(field, n, I, J)
        for I in range(dim)
        for J in range(dim)
    )


def _kernel(field, n, rng, trials):
    one = CliffordElement.scalar(field, n)
    found = kernel_elements(field, n)
    return sorted(map(repr, found)) == sorted(map(repr, [one, -one])) and spin_check(-one) == levi_embed(
        field, linalg.identity(field, n)
    )


def _transvections(field, n, rng, trials):
    if n < 2:
        return True
    for _ in range(trials):
        delta, w = random_kernel_pair(field, n, rng)
        eta = list(random_kernel_pair(field, n, rng)[0])
        # force η(w) = 0 for the same w
        k = next(i for i, x in enumerate(w) if x)
        s = sum((e * x for i, (e, x) in enumerate(zip(eta, w)) if i != k), field.zero)
        eta[k] = -s / w[k]
        lf = transvection_lift(field, delta, w)
        if spin_check(lf.element) != lf.ortho:
            return False
        total = [a + b for a, b in zip(delta, eta)]
        if transvection_map(field, delta, w) @ transvection_map(field, eta, w) != transvection_map(field, total, w):
            return False
        t = field.random(rng, nonzero=True)
        # a functional with f(w) = 1 for this w
        wv = w
        fv = [field.one / w[k] if i == k else field.zero for i in range(n)]
        lam = line_scaling_map(field, wv, fv, t)
        t2d = [t * t * a for a in delta]
        if lam @ transvection_map(field, delta, wv) @ lam.inverse() != transvection_map(field, t2d, wv):
            return False
        st = line_scaling_lift(field, wv, fv, t).element
        if cl_mul(cl_mul(st, lf.element), cl_conj(st)) != transvection_lift(field, t2d, wv).element:
            return False
    return True


def _torus(field, n, rng, trials):
    for _ in range(trials):
        w, f = random_split_pair(field, n, rng)
        t = field.random(rng, nonzero=True)
        lf = line_scaling_lift(field, w, f, t)
        ell = lf.ortho.w_block()
        if rho(lf.element) != exterior_functor(field, ell).scaled(-1 / t):
            return False
        if not is_isometry(lf.ortho) or spin_check(lf.element) != lf.ortho:
            return False
    return True


def _five_factor(field, n, rng, trials):
    if n < 3:
        return True
    for _ in range(trials):
        c = field.random(rng)
        i, j, k = rng.sample(range(1, n + 1), 3)
        lf = elementary_levi_lift(field, n, i, j, c, k)
        if lf.ortho != levi_embed(field, elementary_matrix(field, n, i, j, c)):
            return False
    return True


def _square_det(field, n, rng, trials):
    if n < 2:
        return True
    for _ in range(trials):
        g = random_square_det(field, n, rng)
        cert = levi_decide(field, g)
        if cert.verdict != IN_IMAGE or not cert.all_checks() or not verify_certificate(cert)[0]:
            return False
        if cert.scalar_c != -1 / cert.sqrt:
            return False
    return True


def _golden(field, n, rng, trials):
    if field == QQ and n == 3:
        cert = levi_decide(QQ, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])
        return cert.verdict == OBSTRUCTION and cert.det == 2 and verify_certificate(cert)[0]
    if isinstance(field, PrimeField) and n == 1:
        squares = {x * x % field.p for x in range(1, field.p)}
        for a in range(1, field.p):
            cert = split_line_decide(field, a)
            if (cert.verdict == IN_IMAGE) != (a in squares) or not verify_certificate(cert)[0]:
                return False
    return True


SUITE: list[tuple[str, Callable, int, int]] = [
    # name, check, max rank it is run at, trials
    ("clifford_relation", _clifford_relation, 4, 50),
    ("rho_homomorphism", _rho_homomorphism, 4, 20),
    ("matrix_units", _matrix_units, 3, 0),
    ("kernel_is_plus_minus_one", _kernel, 3, 0),
    ("transvection_package", _transvections, 4, 10),
    ("torus_normalization", _torus, 4, 10),
    ("five_factor_commutator", _five_factor, 4, 10),
    ("square_det_lift", _square_det, 4, 5),
    ("golden_decisions", _golden, 3, 0),
]


def run_selftest(rank_max: int = 3, seed: int = 0) -> list[CheckResult]:
    results = []
    for name, check, cap, trials in SUITE:
        for field in FIELDS:
            for n in range(1, min(rank_max, cap) + 1):
                rng = random.Random(f"{seed}:{name}:{field.tag}:{n}")
                try:
                    ok = bool(check(field, n, rng, trials))
                    detail = ""
                except Exception as exc:  # a crash is a failed check, not a crashed suite
                    ok, detail = False, f"{type(exc).__name__}: {exc}"
                results.append(CheckResult(f"{name}[{field.tag},n={n}]", ok, detail))
    return results
