"""Darboux transforms, intertwining checks and the generalized Burgers flow.

The transform of L = sum a_n D^n by the factor element s is

    Ltilde = a_0 + sum_{n>=1} ( (Da_n) H_{n-1} + a_n H_n - s a_n H_{n-1} ),

which keeps the order and the leading coefficient and satisfies the t-free
intertwining identity  L_s o L - Ltilde o L_s = Dr + [r, s]  with r the
right-division remainder.  That same order-0 value is the right-hand side of
the generalized Burgers equation for s, also computable term by term as
sum_n ( (Da_n) B_n + a_n B_{n+1} - s a_n B_n ).

For two-variable checks, :func:`time_propagate` integrates d_t phi = L phi as
a formal Taylor series in t (each t-level costs order(L) x-orders), and
:func:`matveev_verify` runs the full wavefunction-transform consistency check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bell import BellTable
from .division import divide_right
from .errors import (
    ConsistencyError,
    DefectNotScalarError,
    IndexRangeError,
    InsufficientOrderError,
    UnsupportedRealizationError,
)
from .jets import MatrixJet, log_derivative
from .operators import DiffOperator, make_ls


@dataclass
class DarbouxOutcome:
    """Transformed operator plus the identities that certify it."""

    transformed: DiffOperator
    remainder: object
    intertwine_defect: object
    burgers_rhs: object


@dataclass
class CoefficientAudit:
    """Comparison of the closed coefficient formula against the H-expansion."""

    formula: DiffOperator
    oracle: DiffOperator
    agrees: bool
    first_mismatch: Optional[int]

    def report(self) -> str:
        if self.agrees:
            return "transformed coefficients agree with the operator expansion"
        k = self.first_mismatch
        return (
            f"transformed coefficient a[{k}] differs: "
            f"formula {self.formula.coeff(k)} vs expansion {self.oracle.coeff(k)}"
        )


@dataclass
class MatveevReport:
    """Residuals of the wavefunction-transform consistency check."""

    s: MatrixJet
    transformed: DiffOperator
    psi_tilde: MatrixJet
    residual: MatrixJet
    burgers_residual: MatrixJet
    ok: bool


def darboux_transform(L: DiffOperator, s, table: BellTable = None) -> DarbouxOutcome:
    """Build the transformed operator and verify its defining identities."""
    if L.order < 1:
        raise IndexRangeError("the transform needs an operator of order >= 1")
    table = table or BellTable(s)
    acc = DiffOperator([L.coeff(0)], L.realization)
    for n in range(1, L.order + 1):
        a_n = L.coeff(n)
        h_prev = table.h(n - 1)
        acc = acc + h_prev.scale(a_n.d()) + table.h(n).scale(a_n) - h_prev.scale(s * a_n)
    remainder = divide_right(L, s, table).remainder
    defect = intertwine_defect(L, acc, s)
    expected = remainder.d() + (remainder * s - s * remainder)
    if not (defect == expected):
        raise ConsistencyError("intertwine defect does not equal Dr + [r, s]")
    rhs = burgers_rhs(L, s, table)
    if not (rhs == expected):
        raise ConsistencyError("Burgers right-hand side does not equal Dr + [r, s]")
    return DarbouxOutcome(acc, remainder, defect, rhs)


def intertwine_defect(L: DiffOperator, Ltilde: DiffOperator, s):
    """Order-0 coefficient of L_s o L - Ltilde o L_s.

    Raises if the difference has positive order, which signals a wrong
    transformed operator.
    """
    ls = make_ls(s)
    diff = ls.compose(L) - Ltilde.compose(ls)
    if diff.order > 0:
        raise DefectNotScalarError(
            f"intertwining discrepancy has order {diff.order}, expected <= 0"
        )
    return diff.coeff(0)


def burgers_rhs(L: DiffOperator, s, table: BellTable = None):
    """Right-hand side of the generalized Burgers equation for s under L."""
    table = table or BellTable(s)
    acc = None
    for n in range(L.order + 1):
        a_n = L.coeff(n)
        b_n = table.left(n)
        term = a_n.d() * b_n + a_n * table.left(n + 1) - s * (a_n * b_n)
        acc = term if acc is None else acc + term
    return acc


def matveev_psi(psi, s):
    """Wavefunction transform: psi -> D psi - s psi."""
    return psi.d() - s * psi


def transformed_coefficients(L: DiffOperator, s, table: BellTable = None) -> DiffOperator:
    """Transformed operator assembled coefficient by coefficient.

        a_N[1] = a_N
        a_k[1] = sum_{n=k}^{N} ( a_n B_{n,n-k} + (Da_n - s a_n) B_{n-1,n-1-k} )

    with B_{m,j} = 0 whenever the indices leave 0 <= j <= m.  The n = k term
    of the sum contributes exactly a_k (its second part has index -1).
    """
    if L.order < 1:
        raise IndexRangeError("the transform needs an operator of order >= 1")
    table = table or BellTable(s)
    n_top = L.order
    zero = L.realization.zero

    def gen_or_zero(m, j):
        if m < 0 or j < 0 or j > m:
            return zero
        return table.gen(m, j)

    coeffs = []
    for k in range(n_top):
        acc = zero
        for n in range(k, n_top + 1):
            a_n = L.coeff(n)
            acc = acc + a_n * gen_or_zero(n, n - k)
            acc = acc + (a_n.d() - s * a_n) * gen_or_zero(n - 1, n - 1 - k)
        coeffs.append(acc)
    coeffs.append(L.coeff(n_top))
    return DiffOperator(coeffs, L.realization)


def audit_transformed_coefficients(L: DiffOperator, s) -> CoefficientAudit:
    """Validate the closed coefficient formula against the H-expansion."""
    table = BellTable(s)
    formula = transformed_coefficients(L, s, table)
    oracle = darboux_transform(L, s, table).transformed
    first = None
    for k in range(max(formula.order, oracle.order) + 1):
        if not (formula.coeff(k) == oracle.coeff(k)):
            first = k
            break
    return CoefficientAudit(formula, oracle, first is None, first)


def time_propagate(L: DiffOperator, phi0: MatrixJet, t_order: int) -> MatrixJet:
    """Taylor-in-t solution of d_t phi = L phi with phi(x, 0) = phi0.

    Level m+1 is L(level m)/(m+1); each level costs order(L) x-orders, so a
    finite starting order J must satisfy J >= order(L) * t_order.
    """
    if t_order < 0:
        raise IndexRangeError("t-order must be >= 0")
    if not isinstance(phi0, MatrixJet) or phi0.kind != "jet":
        raise UnsupportedRealizationError("initial data must be a one-variable matrix jet")
    for c in L.coeffs:
        if not isinstance(c, MatrixJet) or c.kind != "jet":
            raise UnsupportedRealizationError(
                "propagation needs time-independent one-variable jet coefficients"
            )
    n_op = max(L.order, 0)
    if phi0.x_order is not None and phi0.x_order < n_op * t_order:
        raise InsufficientOrderError(
            f"x-order {phi0.x_order} cannot support t-order {t_order} "
            f"under an order-{n_op} operator (needs >= {n_op * t_order})"
        )
    levels = [phi0]
    for m in range(t_order):
        levels.append(L.apply(levels[m]) * Fraction(1, m + 1))
    return MatrixJet.from_t_levels(levels, t_order)


def matveev_verify(
    L: DiffOperator, phi0: MatrixJet, psi0: MatrixJet, t_order: int
) -> MatveevReport:
    """End-to-end check of the wavefunction transform.

    Propagates phi and psi, forms s = phi' phi^{-1} level by level, builds the
    transformed operator and returns the residuals d_t(psi~) - Ltilde(psi~)
    and d_t(s) - burgers_rhs(L, s); both must vanish on the jointly valid
    range.
    """
    phi = time_propagate(L, phi0, t_order)
    psi = time_propagate(L, psi0, t_order)
    s = log_derivative(phi, "right")
    table = BellTable(s)
    transformed = darboux_transform(L, s, table).transformed
    psi_tilde = matveev_psi(psi, s)
    residual = psi_tilde.d0() - transformed.apply(psi_tilde)
    burgers_residual = s.d0() - burgers_rhs(L, s, table)
    ok = residual.is_zero() and burgers_residual.is_zero()
    return MatveevReport(s, transformed, psi_tilde, residual, burgers_residual, ok)
