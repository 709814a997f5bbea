from fractions import Fraction

import pytest

from hypspin import linalg
from hypspin.clifford_core import CliffordElement, cl_conj, cl_inverse, cl_mul, spin_check
from hypspin.errors import (
    BadPairing,
    EqualIndices,
    IndicesNotDistinct,
    NeedRankAtLeast2,
    NeedRankAtLeast3,
    NonSquareDeterminant,
    NotIsotropicPair,
    SingularMatrix,
    ZeroParameter,
)
from hypspin.exterior_model import ExteriorElement, exterior_functor
from hypspin.field_core import QQ, PrimeField
from hypspin.levi_lifts import (
    assemble_lift,
    block_scaling_factorization,
    elementary_levi_lift,
    elementary_matrix,
    five_factor_schedule,
    line_scaling_lift,
    pair_generator,
    product_of_elementary,
    square_det_factor,
    transvection_lift,
    transvection_reduce,
)
from hypspin.orthogonal_group import HyperbolicVector, levi_embed, q_value, transvection_map
from hypspin.sampling import (
    random_invertible,
    random_kernel_pair,
    random_sl,
    random_split_pair,
    random_square_det,
)
from hypspin.spin_rep import act, rho

from conftest import GF7, make_rng, minors_exterior


def hv(field, dual, primal):
    return HyperbolicVector(field, tuple(field(x) for x in dual), tuple(field(x) for x in primal))


def basis(field, n, mask, c=1):
    return ExteriorElement.basis(field, n, mask, c)


# ---- transvection units ----

def test_transvection_lift_examples(field):
    lf = transvection_lift(field, (0, 0), (1, 0))
    assert lf.element == CliffordElement.scalar(field, 2)
    lf = transvection_lift(field, (0, 1), (1, 0))
    assert spin_check(lf.element) == lf.ortho == transvection_map(field, (0, 1), (1, 0))
    # ρ(1 + f_2 w_1): 1, e1, e12 fixed; e2 -> e2 - e1, the W-block of the shear
    op = rho(lf.element)
    for J in (0b00, 0b01, 0b11):
        assert op(basis(field, 2, J)) == basis(field, 2, J)
    assert op(basis(field, 2, 0b10)) == basis(field, 2, 0b10) - basis(field, 2, 0b01)
    assert op == exterior_functor(field, lf.ortho.w_block())
    with pytest.raises(NotIsotropicPair):
        transvection_lift(field, (1, 0), (1, 0))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_transvection_lift_package(field, n):
    rng = make_rng("tlift", field.tag, n)
    one = CliffordElement.scalar(field, n)
    for _ in range(10):
        delta, w = random_kernel_pair(field, n, rng)
        lf = transvection_lift(field, delta, w)
        assert spin_check(lf.element) == lf.ortho
        assert rho(lf.element) == exterior_functor(field, lf.ortho.w_block())
        # x⁻¹ = 1 - n
        assert cl_inverse(lf.element) == one + one - lf.element
        eta = list(random_kernel_pair(field, n, rng)[0])
        k = next(i for i, x in enumerate(w) if x)
        eta[k] = -sum((e * x for i, (e, x) in enumerate(zip(eta, w)) if i != k), field.zero) / w[k]
        total = tuple(a + b for a, b in zip(delta, eta))
        assert cl_mul(lf.element, transvection_lift(field, eta, w).element) == transvection_lift(field, total, w).element


# ---- line scalings ----

def test_line_scaling_examples(field):
    lf = line_scaling_lift(field, (1,), (1,), 1)
    assert lf.element == CliffordElement.scalar(field, 1, -1)
    assert rho(lf.element).is_identity() is False and rho(lf.element) == rho(CliffordElement.scalar(field, 1, -1))
    s2 = line_scaling_lift(QQ, (1,), (1,), 2).element
    assert act(s2, basis(QQ, 1, 0)) == basis(QQ, 1, 0, Fraction(-1, 2))
    assert act(s2, basis(QQ, 1, 1)) == basis(QQ, 1, 1, -2)
    with pytest.raises(BadPairing):
        line_scaling_lift(field, (1, 0), (0, 1), 2)
    with pytest.raises(ZeroParameter):
        line_scaling_lift(field, (1,), (1,), 0)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_internal_weight_two_law(field, n):
    rng = make_rng("weight2", field.tag, n)
    for _ in range(10):
        w, f = random_split_pair(field, n, rng)
        t = field.random(rng, nonzero=True)
        delta = list(random_kernel_pair(field, n, rng)[0])
        k = next(i for i, x in enumerate(w) if x)
        delta[k] = -sum((e * x for i, (e, x) in enumerate(zip(delta, w)) if i != k), field.zero) / w[k]
        s = line_scaling_lift(field, w, f, t).element
        x = transvection_lift(field, delta, w).element
        lhs = cl_mul(cl_mul(s, x), cl_inverse(s))
        assert lhs == transvection_lift(field, tuple(t * t * a for a in delta), w).element


# ---- pair generators and the five-factor commutator ----

def test_pair_generator_examples(field):
    n = 3
    assert pair_generator(field, n, 1, 2, 0).element == CliffordElement.scalar(field, n, -1)
    lf = pair_generator(field, n, 1, 2, 1)
    # (d, u) = (e^1, e_2): x1 = 1, y2 = 1
    out = lf.ortho(hv(field, [1, 0, 0], [0, 1, 0]))
    x1, x2, y1 = out.dual[0], out.dual[1], out.primal[0]
    assert (x1, y1) == (2, -1)
    assert x2 == 0 + 1 * (1 - 0) + 1 * 1
    with pytest.raises(EqualIndices):
        pair_generator(field, n, 2, 2, 1)


@pytest.mark.parametrize("p,q", [(1, 2), (2, 1), (3, 1), (2, 3)])
def test_pair_generator_coordinate_rule(field, p, q):
    n = 3
    rng = make_rng("pairrule", field.tag, p, q)
    for _ in range(10):
        a = field.random(rng)
        lf = pair_generator(field, n, p, q, a)
        assert spin_check(lf.element) == lf.ortho
        e_p = tuple(field.one if i == p else field.zero for i in range(1, n + 1))
        eps = tuple(-(x + (a if i == q else 0)) for i, x in enumerate(e_p, start=1))
        assert q_value(HyperbolicVector(field, eps, e_p)) == -1
        x = [field.random(rng) for _ in range(n)]
        y = [field.random(rng) for _ in range(n)]
        out = lf.ortho(HyperbolicVector(field, tuple(x), tuple(y)))
        X, Y = list(x), list(y)
        X[p - 1] = x[p - 1] + a * y[q - 1]
        X[q - 1] = x[q - 1] + a * (x[p - 1] - y[p - 1]) + a * a * y[q - 1]
        Y[p - 1] = y[p - 1] - a * y[q - 1]
        assert list(out.dual) == X and list(out.primal) == Y


def commutator_states(c, xs, ys):
    xi, xj, xk = xs
    yi, yj, yk = ys
    h = c / 2
    return [
        (xi - c * yj, xj - c * xi + c * yi + c * c * yj, xk, yi + c * yj, yj, yk),
        (xi - c * yj, xj - c * xi + c * yi - h * xk + h * yk + Fraction(5, 4) * c * c * yj, xk - h * yj,
         yi + c * yj, yj, yk + h * yj),
        (xi + c * yj - xk + yi + yk, xj - c * xi + c * yi - h * xk + h * yk + Fraction(5, 4) * c * c * yj,
         xk - yi - Fraction(3, 2) * c * yj, yi + c * yj, yj, yk + yi + Fraction(3, 2) * c * yj),
        (xi + c * yj - xk + yi + yk, xj - c * xi, xk - yi - c * yj, yi + c * yj, yj, yk + yi + c * yj),
        (xi, xj - c * xi, xk, yi + c * yj, yj, yk),
    ]


def test_five_factor_states_match():
    rng = make_rng("states")
    n, (i, j, k) = 3, (1, 2, 3)
    for _ in range(20):
        c = QQ.random(rng)
        xs = [QQ.random(rng) for _ in range(3)]
        ys = [QQ.random(rng) for _ in range(3)]
        z = HyperbolicVector(QQ, tuple(xs), tuple(ys))
        expected = commutator_states(c, xs, ys)
        for step, (p, q, a) in enumerate(reversed(five_factor_schedule(i, j, c, k))):
            z = pair_generator(QQ, n, p, q, a).ortho(z)
            assert tuple(z.coords()) == expected[step]


def test_elementary_levi_lift_examples(field):
    lf = elementary_levi_lift(field, 3, 1, 2, 0)
    assert lf.ortho.is_identity()
    assert spin_check(lf.element).is_identity()
    with pytest.raises(NeedRankAtLeast3):
        elementary_levi_lift(field, 2, 1, 2, 1)
    with pytest.raises(IndicesNotDistinct):
        elementary_levi_lift(field, 3, 1, 2, 5, k=2)


@pytest.mark.parametrize("n", [3, 4])
def test_elementary_levi_lift_random(field, n):
    rng = make_rng("ell", field.tag, n)
    for _ in range(5):
        i, j, k = rng.sample(range(1, n + 1), 3)
        c = field.random(rng)
        lf = elementary_levi_lift(field, n, i, j, c, k)
        assert lf.ortho == levi_embed(field, elementary_matrix(field, n, i, j, c))
        assert spin_check(lf.element) == lf.ortho


# ---- factorizations ----

def test_block_scaling_examples():
    assert product_of_elementary(QQ, 2, block_scaling_factorization(QQ, 1, 2, 1)) == linalg.identity(QQ, 2)
    assert product_of_elementary(QQ, 2, block_scaling_factorization(QQ, 1, 2, 4)) == [[4, 0], [0, Fraction(1, 4)]]
    assert product_of_elementary(GF7, 3, block_scaling_factorization(GF7, 1, 2, 3)) == linalg.coerce(
        GF7, [[3, 0, 0], [0, 5, 0], [0, 0, 1]]
    )
    with pytest.raises(EqualIndices):
        block_scaling_factorization(QQ, 1, 1, 2)
    with pytest.raises(ZeroParameter):
        block_scaling_factorization(QQ, 1, 2, 0)


def test_transvection_reduce_examples(field):
    A, D, B = transvection_reduce(field, [[2, 0, 0], [0, 3, 0], [0, 0, 5]])
    assert A == [] and B == [] and D == [2, 3, 5]
    A, D, B = transvection_reduce(field, elementary_matrix(field, 3, 1, 3, 4))
    assert all(x == 1 for x in D)
    with pytest.raises(NeedRankAtLeast2):
        transvection_reduce(field, [[2]])
    with pytest.raises(SingularMatrix):
        transvection_reduce(field, [[1, 2], [2, 4]])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_transvection_reduce_recomposes(field, n):
    rng = make_rng("reduce", field.tag, n)
    for _ in range(20):
        g = random_invertible(field, n, rng)
        A, D, B = transvection_reduce(field, g)
        diag = [[D[r] if r == c else field.zero for c in range(n)] for r in range(n)]
        recomposed = linalg.matmul(linalg.matmul(product_of_elementary(field, n, A), diag), product_of_elementary(field, n, B))
        assert recomposed == g


def test_transvection_reduce_zero_pivots(field):
    # antidiagonal and permutation matrices force pivot repair
    for g in ([[0, 1], [1, 0]], [[0, 0, 1], [0, 1, 0], [1, 0, 0]], [[0, 1, 0], [0, 0, 1], [1, 0, 0]]):
        A, D, B = transvection_reduce(field, g)
        n = len(g)
        diag = [[D[r] if r == c else field.zero for c in range(n)] for r in range(n)]
        assert linalg.matmul(linalg.matmul(product_of_elementary(field, n, A), diag), product_of_elementary(field, n, B)) == linalg.coerce(field, g)


def test_square_det_factor_examples():
    fac = square_det_factor(QQ, linalg.identity(QQ, 3))
    assert fac.u == 1 and fac.line_scale == 1 and all(t == 1 for _, _, t in fac.blocks)
    fac = square_det_factor(QQ, [[4, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert fac.u == 2 and fac.line_scale == 4 and all(t == 1 for _, _, t in fac.blocks)
    fac = square_det_factor(QQ, [[2, 0, 0], [0, 2, 0], [0, 0, 1]])
    assert fac.u == 2 and fac.line_scale == 4 and fac.blocks[0] == (2, 1, 2)
    assert fac.recompose() == linalg.coerce(QQ, [[2, 0, 0], [0, 2, 0], [0, 0, 1]])
    with pytest.raises(NonSquareDeterminant) as info:
        square_det_factor(QQ, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert info.value.to_dict()["det_class"] == "2"
    with pytest.raises(NeedRankAtLeast2):
        square_det_factor(QQ, [[4]])


def test_square_det_factor_json_tags():
    with pytest.raises(NonSquareDeterminant):
        square_det_factor(QQ, [[0, 2], [2, 2]])  # det -4
    fac = square_det_factor(PrimeField(5), [[0, 2], [2, 2]])  # -4 = 1 = 1² mod 5, zero pivot
    assert fac.recompose() == linalg.coerce(PrimeField(5), [[0, 2], [2, 2]])
    fac = square_det_factor(QQ, [[1, 2], [3, 10]])  # det 4
    kinds = [item["kind"] for item in fac.to_json()]
    assert kinds.count("L1") == 1 and set(kinds) <= {"T", "L1", "D"}
    assert all(isinstance(item.get("r", item.get("t", item.get("a"))), str) for item in fac.to_json())
    assert fac.recompose() == linalg.coerce(QQ, [[1, 2], [3, 10]])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_square_det_factor_random(field, n):
    rng = make_rng("sqfac", field.tag, n)
    for _ in range(10):
        g = random_square_det(field, n, rng)
        fac = square_det_factor(field, g)
        assert fac.u * fac.u == linalg.det(g)
        assert fac.recompose() == g
        # t_1 = u² ∏_{j≥2} t_j⁻¹ is the index-1 diagonal entry
        prod = field.one
        for _, _, t in fac.blocks:
            prod = prod * t
        assert fac.diagonal[0] == fac.u * fac.u / prod


# ---- assembled lifts ----

def test_assemble_identity():
    cert = assemble_lift(QQ, linalg.identity(QQ, 3))
    assert rho(cert.lift) == rho(CliffordElement.scalar(QQ, 3, -1))
    assert cert.scalar_c == -1 and cert.all_checks()


def test_assemble_diag_4_1_1():
    cert = assemble_lift(QQ, [[4, 0, 0], [0, 1, 0], [0, 0, 1]])
    x = cert.lift
    assert act(x, basis(QQ, 3, 0)) == basis(QQ, 3, 0, Fraction(-1, 2))
    assert act(x, basis(QQ, 3, 0b001)) == basis(QQ, 3, 0b001, -2)
    assert act(x, basis(QQ, 3, 0b010)) == basis(QQ, 3, 0b010, Fraction(-1, 2))
    assert cert.scalar_c == Fraction(-1, 2)


@pytest.mark.parametrize("via", ["transvection", "pair"])
def test_assemble_random_sl3_gf7(via):
    rng = make_rng("sl3", via)
    for _ in range(3):
        g = random_sl(GF7, 3, rng)
        cert = assemble_lift(GF7, g, via=via)
        assert cert.all_checks()
        assert cert.scalar_c in (1 / cert.sqrt, -1 / cert.sqrt)
        assert rho(cert.lift) == exterior_functor(GF7, g).scaled(cert.scalar_c)
        assert exterior_functor(GF7, g).matrix == minors_exterior(GF7, g)


def test_assemble_rank2_and_pair_route_limits():
    cert = assemble_lift(QQ, [[1, 1], [0, 4]])
    assert cert.all_checks() and cert.scalar_c == Fraction(-1, 2)
    with pytest.raises(NeedRankAtLeast3):
        assemble_lift(QQ, [[1, 1], [0, 4]], via="pair")


def test_pivot_order_changes_lift_by_sign_at_most(field):
    rng = make_rng("order", field.tag)
    for _ in range(5):
        g = random_square_det(field, 3, rng)
        ref = assemble_lift(field, g)
        for order in ([3, 1, 2], [2, 3, 1]):
            other = assemble_lift(field, g, order=order)
            assert other.all_checks()
            assert other.lift == ref.lift or other.lift == -ref.lift
            assert spin_check(other.lift) == spin_check(ref.lift) == levi_embed(field, g)


def test_norm_and_conjugation_of_assembled(field):
    g = random_square_det(field, 3, make_rng("normconj", field.tag))
    x = assemble_lift(field, g).lift
    one = CliffordElement.scalar(field, 3)
    assert x.is_even() and cl_mul(x, cl_conj(x)) == one == cl_mul(cl_conj(x), x)
