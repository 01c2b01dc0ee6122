"""Composition, application and bookkeeping of differential operators."""

import random
from fractions import Fraction as F

import pytest

from bellops import (
    DiffOperator,
    Jet,
    MatrixJet,
    RealizationMismatchError,
    d_power_operator,
    identity_operator,
    make_ls,
    x_jet,
)
from helpers import random_element, random_free_operator, random_jet, random_matrix_jet


def test_compose_leibniz_order_one(ring, s):
    # D o (s as order-0 operator) = s D + Ds
    d_op = d_power_operator(ring, 1)
    s_op = DiffOperator([s], ring)
    assert d_op.compose(s_op) == DiffOperator([s.d(), s], ring)


def test_compose_factored_square(ring, s):
    left = make_ls(s)  # D - s
    right = DiffOperator([s, ring.one], ring)  # D + s
    product = left.compose(right)
    assert product == DiffOperator([s.d() - s * s, ring.zero, ring.one], ring)


def test_compose_identity(ring):
    rng = random.Random(1)
    a = random_free_operator(rng, ring)
    ident = identity_operator(ring)
    assert a.compose(ident) == a
    assert ident.compose(a) == a


def test_compose_associative(ring):
    rng = random.Random(2)
    for _ in range(8):
        a = random_free_operator(rng, ring, 3)
        b = random_free_operator(rng, ring, 3)
        c = random_free_operator(rng, ring, 3)
        assert a.compose(b).compose(c) == a.compose(b.compose(c))


def test_compose_order_sum_with_unit_leading(ring, s):
    rng = random.Random(3)
    for _ in range(6):
        a = random_free_operator(rng, ring, 3)
        b = random_free_operator(rng, ring, 3)
        a = a - DiffOperator([ring.zero] * a.order + [a.coeff(a.order) - ring.one], ring)
        b = b - DiffOperator([ring.zero] * b.order + [b.coeff(b.order) - ring.one], ring)
        assert a.compose(b).order == a.order + b.order


def test_apply_identity_and_ls(ring, s):
    phi = random_element(random.Random(4), ring)
    assert identity_operator(ring).apply(phi) == phi
    assert make_ls(s).apply(phi) == phi.d() - s * phi


def test_apply_kernel_element():
    from bellops import exp_jet, log_derivative

    phi = MatrixJet.scalar(exp_jet(1, 10))
    s = log_derivative(phi, "right")
    assert make_ls(s).apply(phi).is_zero()


def test_application_homomorphism(ring):
    rng = random.Random(5)
    for _ in range(6):
        a = random_free_operator(rng, ring, 2)
        b = random_free_operator(rng, ring, 2)
        phi = random_element(rng, ring)
        assert a.compose(b).apply(phi) == a.apply(b.apply(phi))


def test_application_homomorphism_jets():
    rng = random.Random(6)
    for _ in range(4):
        a = DiffOperator([random_matrix_jet(rng, 2, 12) for _ in range(3)])
        b = DiffOperator([random_matrix_jet(rng, 2, 12) for _ in range(3)])
        phi = random_matrix_jet(rng, 2, 12)
        assert a.compose(b).apply(phi) == a.apply(b.apply(phi))


def test_compose_associative_jets():
    rng = random.Random(16)
    a = DiffOperator([random_matrix_jet(rng, 2, 12) for _ in range(5)])
    b = DiffOperator([random_matrix_jet(rng, 2, 12) for _ in range(5)])
    c = DiffOperator([random_matrix_jet(rng, 2, 12) for _ in range(5)])
    assert a.compose(b).compose(c) == a.compose(b.compose(c))


def test_compose_precision_exhausted():
    from bellops import PrecisionExhaustedError

    real = MatrixJet.identity(1).realization
    shallow = DiffOperator([MatrixJet.scalar(Jet((2,), 0))], real)
    with pytest.raises(PrecisionExhaustedError):
        d_power_operator(real, 1).compose(shallow)


def test_add_sub_scale(ring, s):
    rng = random.Random(7)
    a = random_free_operator(rng, ring)
    zero = DiffOperator([], ring)
    assert a + zero == a
    assert (a - a).order == -1
    assert a.scale(ring.one) == a
    assert a.scale(2) + a.scale(-2) == zero


def test_scale_is_left_multiplication(ring, s):
    u = ring.gen("u")
    op = DiffOperator([s], ring)
    assert op.scale(u).coeff(0) == u * s
    assert op.scale(u).coeff(0) != s * u


def test_make_ls(ring, s):
    ls = make_ls(s)
    assert ls.order == 1
    assert ls.coeff(1) == ring.one
    assert ls.coeff(0) == -s
    assert make_ls(ring.zero) == d_power_operator(ring, 1)


def test_ls_squared_applied_to_unit(ring, s):
    # two applications of (D - s) to e give s^2 - Ds, the right table entry at n=2
    ls = make_ls(s)
    value = ls.compose(ls).apply(ring.one)
    assert value == s * s - s.d()


def test_commutation_identity(ring, s):
    # L_s o r - r o L_s = Dr + [r, s] as an order-0 operator
    rng = random.Random(8)
    for _ in range(6):
        r = random_element(rng, ring)
        ls = make_ls(s)
        r_op = DiffOperator([r], ring)
        diff = ls.compose(r_op) - r_op.compose(ls)
        assert diff.order <= 0
        assert diff.coeff(0) == r.d() + (r * s - s * r)


def test_zero_operator_sentinel(ring):
    zero = DiffOperator([], ring)
    assert zero.order == -1
    assert zero.is_zero()
    assert str(zero) == "0"


def test_realization_mismatch(ring):
    with pytest.raises(RealizationMismatchError):
        d_power_operator(ring, 1).compose(DiffOperator([MatrixJet.identity(2)]))


def test_operator_text(ring, s):
    assert str(make_ls(s)) == "D - s"
    assert str(d_power_operator(ring, 2)) == "D^2"
    op = DiffOperator([s * s + s.d(), ring.zero, ring.one], ring)
    assert str(op) == "D^2 + s^2 + D(s)"
    assert str(DiffOperator([ring.zero, 2 * s], ring)) == "2*s*D"
    assert str(DiffOperator([ring.zero, s * s + s.d()], ring)) == "(s^2 + D(s))*D"


def test_precision_consumption_in_apply():
    op = d_power_operator(MatrixJet.scalar(x_jet(4)).realization, 2)
    phi = MatrixJet.scalar(random_jet(random.Random(9), 4))
    image = op.apply(phi)
    assert image.x_order == 2
