"""Division of an operator L by the first-order factor L_s = D - s.

Right division L = M L_s + r has the closed solution

    r = sum_n a_n B_n(s),        M = sum_{n>=1} a_n H_{n-1},

so the remainder depends on the Bell table alone.  Left division
L = L_s M^+ + r^+ is solved by the backward recursion

    b_{N-1} = a_N,   b_n = a_{n+1} - L_s(b_{n+1}),   r^+ = a_0 - L_s(b_0),

where L_s(u) = Du - s u acts on coefficients; every call cross-checks the
recursion against its unrolled alternating-power form and fails loudly on
any disagreement.  Vanishing remainders are exactly the generalized Riccati
conditions for one-sided factorization.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bell import BellTable
from .errors import ConsistencyError, IndexRangeError, KernelPremiseViolatedError
from .jets import MatrixJet, log_derivative
from .operators import DiffOperator


@dataclass
class DivisionOutcome:
    """Quotient and remainder of a one-sided division, with the side tag."""

    quotient: DiffOperator
    remainder: object
    side: str
    exact: bool


def _require_divisible(L: DiffOperator):
    if L.order < 1:
        raise IndexRangeError("division needs an operator of order >= 1")


def divide_right(L: DiffOperator, s, table: BellTable = None) -> DivisionOutcome:
    """Split L as (quotient o L_s) + remainder."""
    _require_divisible(L)
    table = table or BellTable(s)
    n_top = L.order
    remainder = L.coeff(0) * table.left(0)
    for n in range(1, n_top + 1):
        remainder = remainder + L.coeff(n) * table.left(n)
    quotient = table.h(0).scale(L.coeff(1))
    for n in range(2, n_top + 1):
        quotient = quotient + table.h(n - 1).scale(L.coeff(n))
    return DivisionOutcome(quotient, remainder, "right", remainder.is_zero())


def _ls_apply(s, u):
    return u.d() - s * u


def divide_left(L: DiffOperator, s, table: BellTable = None) -> DivisionOutcome:
    """Split L as (L_s o quotient) + remainder."""
    _require_divisible(L)
    n_top = L.order
    b = [None] * n_top
    b[n_top - 1] = L.coeff(n_top)
    for n in range(n_top - 2, -1, -1):
        b[n] = L.coeff(n + 1) - _ls_apply(s, b[n + 1])
    remainder = L.coeff(0) - _ls_apply(s, b[0])
    # independent path: unrolled alternating powers of L_s
    powers = _ls_power_columns(L, s)
    for n in range(n_top):
        alt = None
        for k in range(n + 1, n_top + 1):
            term = powers[k][k - n - 1]
            if (k - n - 1) % 2:
                term = -term
            alt = term if alt is None else alt + term
        if not (alt == b[n]):
            raise ConsistencyError(
                f"left-division coefficient b_{n} differs between the recursion "
                "and the power-expansion form"
            )
    alt_remainder = _ls_power_remainder(powers)
    if not (alt_remainder == remainder):
        raise ConsistencyError(
            "left-division remainder differs between the recursion and the "
            "power-expansion form"
        )
    quotient = DiffOperator(b, L.realization)
    return DivisionOutcome(quotient, remainder, "left", remainder.is_zero())


def _ls_power_columns(L: DiffOperator, s):
    """powers[k][j] = L_s^j applied to the coefficient a_k, j = 0..k."""
    columns = {}
    for k in range(L.order + 1):
        col = [L.coeff(k)]
        for _ in range(k):
            col.append(_ls_apply(s, col[-1]))
        columns[k] = col
    return columns


def _ls_power_remainder(powers):
    acc = None
    for k, col in powers.items():
        term = col[k]
        if k % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def riccati_residual(L: DiffOperator, s, side: str, table: BellTable = None):
    """Remainder of the chosen one-sided division, computed without the quotient.

    The residual vanishes exactly when L factors through L_s on that side,
    i.e. when s solves the corresponding generalized Riccati equation.
    """
    _require_divisible(L)
    if side == "right":
        table = table or BellTable(s)
        acc = L.coeff(0) * table.left(0)
        for n in range(1, L.order + 1):
            acc = acc + L.coeff(n) * table.left(n)
        return acc
    if side == "left":
        return _ls_power_remainder(_ls_power_columns(L, s))
    raise ValueError("side must be 'left' or 'right'")


def factor_from_kernel(L: DiffOperator, phi: MatrixJet, side: str):
    """Build the factor element s from a kernel element phi and divide.

    side='right': requires L(phi) = 0 on the valid range; then s = phi' phi^{-1}
    and the right division of L by L_s is exact.  side='left': s = -phi^{-1} phi'
    and exactness of the left division is verified directly (the only
    oracle-checkable direction for this side).
    """
    if side == "right":
        image = L.apply(phi)
        if not image.is_zero():
            raise KernelPremiseViolatedError(
                "phi is not annihilated by L on the valid range"
            )
        s = log_derivative(phi, "right")
        outcome = divide_right(L, s)
        if not outcome.exact:
            raise ConsistencyError(
                "kernel element produced a nonzero right-division remainder"
            )
        return s, outcome
    if side == "left":
        s = log_derivative(phi, "left")
        outcome = divide_left(L, s)
        if not outcome.exact:
            raise KernelPremiseViolatedError(
                "phi does not witness an exact left factorization of L"
            )
        return s, outcome
    raise ValueError("side must be 'left' or 'right'")
