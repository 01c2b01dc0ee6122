"""Matrix-valued truncated power series: the analytic ring realization.

A :class:`Jet` stores rational coefficients of x^0..x^J together with its
valid order J.  ``order=None`` marks an *exact* polynomial: every coefficient
beyond the stored ones is identically zero, so no operation can exhaust it.
Binary operations are valid to the minimum of the operand orders and
differentiation costs one order; both rules are enforced, never silently bent.

:class:`BiJet` is the two-variable analogue (x and t, commuting partials);
:class:`MatrixJet` wraps a square matrix of jets (or bi-jets) sharing one set
of orders and provides the ring operations, the involution
``a*(x) = a(-x)^T`` and series inversion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    PrecisionExhaustedError,
    RealizationMismatchError,
    SingularConstantTermError,
    UnsupportedRealizationError,
)


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected an integer or Fraction, got {type(v).__name__}")


def _omin(a: Optional[int], b: Optional[int]) -> Optional[int]:
    """min of two orders where None means 'exact' (infinite order)."""
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Jet:
    """Truncated power series in one variable with exact coefficients."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: Optional[int] = None):
        cs = [_frac(c) for c in coeffs]
        if order is None:
            while len(cs) > 1 and cs[-1] == 0:
                cs.pop()
            if not cs:
                cs = [Fraction(0)]
        else:
            if order < 0:
                raise ValueError("jet order must be >= 0")
            cs = cs[: order + 1]
            cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def constant(cls, value) -> "Jet":
        return cls((_frac(value),), None)

    def at(self, k: int) -> Fraction:
        """Coefficient of x^k; beyond storage only exact jets may answer."""
        if k < len(self.coeffs):
            return self.coeffs[k]
        if self.order is None:
            return Fraction(0)
        raise PrecisionExhaustedError(f"coefficient x^{k} beyond valid order {self.order}")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def truncate(self, order: Optional[int]) -> "Jet":
        if order is None:
            if self.order is not None:
                raise PrecisionExhaustedError("cannot promote a finite-order jet to exact")
            return self
        if self.order is not None and order > self.order:
            raise PrecisionExhaustedError(
                f"cannot extend valid order {self.order} to {order}"
            )
        return Jet(self.coeffs[: order + 1], order)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Jet.constant(other)
        if not isinstance(other, Jet):
            return NotImplemented
        o = _omin(self.order, other.order)
        n = max(len(self.coeffs), len(other.coeffs)) if o is None else o + 1
        return Jet((self.at(k) + other.at(k) for k in range(n)), o)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else Jet.constant(-_frac(other)))

    def __neg__(self):
        return Jet((-c for c in self.coeffs), self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Jet((_frac(other) * c for c in self.coeffs), self.order)
        if not isinstance(other, Jet):
            return NotImplemented
        o = _omin(self.order, other.order)
        n = len(self.coeffs) + len(other.coeffs) - 1 if o is None else o + 1
        la, lb = len(self.coeffs), len(other.coeffs)
        out = []
        for k in range(n):
            acc = Fraction(0)
            for i in range(max(0, k - lb + 1), min(k, la - 1) + 1):
                acc += self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return Jet(out, o)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def d(self) -> "Jet":
        if self.order == 0:
            raise PrecisionExhaustedError("derivative of an order-0 jet")
        o = None if self.order is None else self.order - 1
        return Jet((k * self.coeffs[k] for k in range(1, len(self.coeffs))), o)

    def reflect(self) -> "Jet":
        """x -> -x: flip the sign of odd coefficients."""
        return Jet(((-c if k % 2 else c) for k, c in enumerate(self.coeffs)), self.order)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Jet.constant(other)
        if not isinstance(other, Jet):
            return NotImplemented
        o = _omin(self.order, other.order)
        if o is None:
            return self.coeffs == other.coeffs
        return all(self.at(k) == other.at(k) for k in range(o + 1))

    __hash__ = None

    def __repr__(self):
        return f"Jet({[str(c) for c in self.coeffs]}, order={self.order})"


class BiJet:
    """Truncated series in x and t with a rectangular valid range."""

    __slots__ = ("coeffs", "x_order", "t_order")

    def __init__(self, coeffs, x_order: Optional[int] = None, t_order: Optional[int] = None):
        rows = [[_frac(c) for c in row] for row in coeffs]
        if not rows:
            rows = [[Fraction(0)]]
        width = max(len(r) for r in rows)
        for r in rows:
            r += [Fraction(0)] * (width - len(r))
        if t_order is not None:
            if t_order < 0:
                raise ValueError("t-order must be >= 0")
            rows = [r[: t_order + 1] + [Fraction(0)] * (t_order + 1 - len(r)) for r in rows]
        else:
            while width > 1 and all(r[width - 1] == 0 for r in rows):
                width -= 1
            rows = [r[:width] for r in rows]
        if x_order is not None:
            if x_order < 0:
                raise ValueError("x-order must be >= 0")
            rows = rows[: x_order + 1]
            ncols = len(rows[0]) if rows else 1
            rows += [[Fraction(0)] * ncols for _ in range(x_order + 1 - len(rows))]
        else:
            while len(rows) > 1 and all(c == 0 for c in rows[-1]):
                rows.pop()
        self.coeffs = tuple(tuple(r) for r in rows)
        self.x_order = x_order
        self.t_order = t_order

    @classmethod
    def from_jet(cls, jet: Jet) -> "BiJet":
        """Embed an x-jet as a t-constant bi-jet (exactly known in t)."""
        return cls([[c] for c in jet.coeffs], jet.order, None)

    @classmethod
    def constant(cls, value) -> "BiJet":
        return cls([[_frac(value)]], None, None)

    def at(self, i: int, j: int) -> Fraction:
        if i < len(self.coeffs) and j < len(self.coeffs[0]):
            return self.coeffs[i][j]
        if (i >= len(self.coeffs) and self.x_order is not None) or (
            j >= len(self.coeffs[0]) and self.t_order is not None
        ):
            raise PrecisionExhaustedError(
                f"coefficient x^{i} t^{j} beyond valid range "
                f"({self.x_order}, {self.t_order})"
            )
        return Fraction(0)

    def is_zero(self) -> bool:
        return all(c == 0 for row in self.coeffs for c in row)

    def truncate(self, x_order: Optional[int], t_order: Optional[int]) -> "BiJet":
        for mine, target, label in ((self.x_order, x_order, "x"), (self.t_order, t_order, "t")):
            if target is None and mine is not None:
                raise PrecisionExhaustedError(f"cannot promote finite {label}-order to exact")
            if target is not None and mine is not None and target > mine:
                raise PrecisionExhaustedError(
                    f"cannot extend valid {label}-order {mine} to {target}"
                )
        return BiJet(self.coeffs, x_order, t_order)

    def _binary_orders(self, other: "BiJet"):
        return _omin(self.x_order, other.x_order), _omin(self.t_order, other.t_order)

    @staticmethod
    def _grid(xo, to, la, lb, wa, wb, mode):
        nx = (max(la, lb) if mode == "add" else la + lb - 1) if xo is None else xo + 1
        nt = (max(wa, wb) if mode == "add" else wa + wb - 1) if to is None else to + 1
        return nx, nt

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiJet.constant(other)
        if isinstance(other, Jet):
            other = BiJet.from_jet(other)
        if not isinstance(other, BiJet):
            return NotImplemented
        xo, to = self._binary_orders(other)
        nx, nt = self._grid(xo, to, len(self.coeffs), len(other.coeffs),
                            len(self.coeffs[0]), len(other.coeffs[0]), "add")
        rows = [[self.at(i, j) + other.at(i, j) for j in range(nt)] for i in range(nx)]
        return BiJet(rows, xo, to)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiJet.constant(other)
        if isinstance(other, Jet):
            other = BiJet.from_jet(other)
        return self + (-other)

    def __neg__(self):
        return BiJet([[-c for c in row] for row in self.coeffs], self.x_order, self.t_order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            v = _frac(other)
            return BiJet([[v * c for c in row] for row in self.coeffs], self.x_order, self.t_order)
        if isinstance(other, Jet):
            other = BiJet.from_jet(other)
        if not isinstance(other, BiJet):
            return NotImplemented
        xo, to = self._binary_orders(other)
        la, wa = len(self.coeffs), len(self.coeffs[0])
        lb, wb = len(other.coeffs), len(other.coeffs[0])
        nx, nt = self._grid(xo, to, la, lb, wa, wb, "mul")
        rows = []
        for i in range(nx):
            row = []
            for j in range(nt):
                acc = Fraction(0)
                for p in range(max(0, i - lb + 1), min(i, la - 1) + 1):
                    for q in range(max(0, j - wb + 1), min(j, wa - 1) + 1):
                        acc += self.coeffs[p][q] * other.coeffs[i - p][j - q]
                row.append(acc)
            rows.append(row)
        return BiJet(rows, xo, to)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        if isinstance(other, Jet):
            return BiJet.from_jet(other) * self
        return NotImplemented

    def dx(self) -> "BiJet":
        if self.x_order == 0:
            raise PrecisionExhaustedError("x-derivative of an x-order-0 bi-jet")
        xo = None if self.x_order is None else self.x_order - 1
        rows = [[i * c for c in self.coeffs[i]] for i in range(1, len(self.coeffs))]
        return BiJet(rows or [[Fraction(0)]], xo, self.t_order)

    def dt(self) -> "BiJet":
        if self.t_order == 0:
            raise PrecisionExhaustedError("t-derivative of a t-order-0 bi-jet")
        to = None if self.t_order is None else self.t_order - 1
        rows = [[j * row[j] for j in range(1, len(row))] or [Fraction(0)] for row in self.coeffs]
        return BiJet(rows, self.x_order, to)

    def reflect(self) -> "BiJet":
        """x -> -x (t untouched)."""
        rows = [[-c for c in row] if i % 2 else list(row) for i, row in enumerate(self.coeffs)]
        return BiJet(rows, self.x_order, self.t_order)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiJet.constant(other)
        if isinstance(other, Jet):
            other = BiJet.from_jet(other)
        if not isinstance(other, BiJet):
            return NotImplemented
        xo, to = self._binary_orders(other)
        nx = max(len(self.coeffs), len(other.coeffs)) if xo is None else xo + 1
        nt = max(len(self.coeffs[0]), len(other.coeffs[0])) if to is None else to + 1
        return all(
            self.at(i, j) == other.at(i, j) for i in range(nx) for j in range(nt)
        )

    __hash__ = None

    def __repr__(self):
        return f"BiJet(x_order={self.x_order}, t_order={self.t_order})"


# -- exact rational matrix helpers ------------------------------------------------


def _mat_identity(n: int):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def _mat_mul(a, b):
    n = len(a)
    return [
        [sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
        for i in range(n)
    ]


def _mat_inv(a):
    """Gauss-Jordan inverse over Fraction; raises on singular input."""
    n = len(a)
    aug = [list(row) + ident for row, ident in zip([list(r) for r in a], _mat_identity(n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularConstantTermError("constant coefficient matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_p = Fraction(1) / aug[col][col]
        aug[col] = [v * inv_p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [rv - factor * cv for rv, cv in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class MatrixRealization:
    """Tag identifying the matrix-series realization of a given dimension."""

    dim: int

    @property
    def one(self) -> "MatrixJet":
        return MatrixJet.identity(self.dim)

    @property
    def zero(self) -> "MatrixJet":
        return MatrixJet.zeros(self.dim)


class MatrixJet:
    """Square matrix of jets (or bi-jets) sharing one set of valid orders."""

    __slots__ = ("dim", "entries")

    def __init__(self, entries):
        grid = [list(row) for row in entries]
        n = len(grid)
        if n == 0 or any(len(row) != n for row in grid):
            raise ValueError("entries must form a non-empty square grid")
        if any(isinstance(v, BiJet) for row in grid for v in row):
            grid = [
                [BiJet.from_jet(v) if isinstance(v, Jet) else v for v in row] for row in grid
            ]
        kinds = {type(v) for row in grid for v in row}
        if not kinds <= {Jet, BiJet} or len(kinds) != 1:
            raise TypeError("entries must all be Jet or BiJet values")
        if kinds == {Jet}:
            xo = None
            for row in grid:
                for v in row:
                    xo = _omin(xo, v.order)
            grid = [[v.truncate(xo) for v in row] for row in grid]
        else:
            xo = to = None
            for row in grid:
                for v in row:
                    xo = _omin(xo, v.x_order)
                    to = _omin(to, v.t_order)
            grid = [[v.truncate(xo, to) for v in row] for row in grid]
        self.dim = n
        self.entries = tuple(tuple(row) for row in grid)

    # -- constructors -----------------------------------------------------------

    @classmethod
    def identity(cls, dim: int) -> "MatrixJet":
        return cls.constant(_mat_identity(dim))

    @classmethod
    def zeros(cls, dim: int) -> "MatrixJet":
        return cls.constant([[Fraction(0)] * dim for _ in range(dim)])

    @classmethod
    def constant(cls, matrix) -> "MatrixJet":
        return cls([[Jet.constant(v) for v in row] for row in matrix])

    @classmethod
    def scalar(cls, jet: Jet) -> "MatrixJet":
        return cls([[jet]])

    @classmethod
    def diagonal(cls, jet: Jet, dim: int) -> "MatrixJet":
        zero = Jet((0,), jet.order)
        return cls([[jet if i == j else zero for j in range(dim)] for i in range(dim)])

    # -- realization plumbing ------------------------------------------------------

    @property
    def realization(self) -> MatrixRealization:
        return MatrixRealization(self.dim)

    @property
    def kind(self) -> str:
        return "bijet" if isinstance(self.entries[0][0], BiJet) else "jet"

    @property
    def x_order(self) -> Optional[int]:
        v = self.entries[0][0]
        return v.x_order if isinstance(v, BiJet) else v.order

    @property
    def t_order(self) -> Optional[int]:
        v = self.entries[0][0]
        return v.t_order if isinstance(v, BiJet) else None

    def entry(self, i: int, j: int):
        return self.entries[i][j]

    def one_like(self) -> "MatrixJet":
        return MatrixJet.identity(self.dim)

    def zero_like(self) -> "MatrixJet":
        return MatrixJet.zeros(self.dim)

    def _pair(self, other: "MatrixJet"):
        if not isinstance(other, MatrixJet):
            raise RealizationMismatchError("expected a MatrixJet operand")
        if other.dim != self.dim:
            raise RealizationMismatchError(
                f"matrix dimensions differ: {self.dim} vs {other.dim}"
            )
        a, b = self, other
        if a.kind != b.kind:
            a = a.promote() if a.kind == "jet" else a
            b = b.promote() if b.kind == "jet" else b
        return a, b

    def promote(self) -> "MatrixJet":
        """Embed a jet-kind matrix as a t-constant bi-jet matrix."""
        if self.kind == "bijet":
            return self
        return MatrixJet([[BiJet.from_jet(v) for v in row] for row in self.entries])

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        return MatrixJet(
            [[a.entries[i][j] + b.entries[i][j] for j in range(a.dim)] for i in range(a.dim)]
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return MatrixJet([[-v for v in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MatrixJet([[v * other for v in row] for row in self.entries])
        a, b = self._pair(other)
        out = []
        for i in range(a.dim):
            row = []
            for j in range(a.dim):
                acc = a.entries[i][0] * b.entries[0][j]
                for k in range(1, a.dim):
                    acc = acc + a.entries[i][k] * b.entries[k][j]
                row.append(acc)
            out.append(row)
        return MatrixJet(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def d(self) -> "MatrixJet":
        if self.kind == "bijet":
            return MatrixJet([[v.dx() for v in row] for row in self.entries])
        return MatrixJet([[v.d() for v in row] for row in self.entries])

    def d0(self) -> "MatrixJet":
        if self.kind == "jet":
            raise UnsupportedRealizationError(
                "d0 needs the two-variable realization; promote to bi-jets first"
            )
        return MatrixJet([[v.dt() for v in row] for row in self.entries])

    def star(self) -> "MatrixJet":
        """Involution: transpose and reflect the series argument (x -> -x)."""
        return MatrixJet(
            [[self.entries[j][i].reflect() for j in range(self.dim)] for i in range(self.dim)]
        )

    def is_zero(self) -> bool:
        return all(v.is_zero() for row in self.entries for v in row)

    def __eq__(self, other):
        if not isinstance(other, MatrixJet):
            return NotImplemented
        if other.dim != self.dim:
            return False
        a, b = self._pair(other)
        return all(
            a.entries[i][j] == b.entries[i][j] for i in range(a.dim) for j in range(a.dim)
        )

    __hash__ = None

    def truncate(self, x_order: Optional[int], t_order: Optional[int] = None) -> "MatrixJet":
        if self.kind == "jet":
            return MatrixJet([[v.truncate(x_order) for v in row] for row in self.entries])
        return MatrixJet([[v.truncate(x_order, t_order) for v in row] for row in self.entries])

    # -- series inversion ------------------------------------------------------------

    def _x_coefficient_matrices(self):
        n_terms = max(len(self.entries[i][j].coeffs) for i in range(self.dim) for j in range(self.dim))
        return [
            [[self.entries[i][j].at(k) for j in range(self.dim)] for i in range(self.dim)]
            for k in range(n_terms)
        ]

    def invert(self) -> "MatrixJet":
        """Multiplicative inverse to the stored truncation order.

        The constant (x=0, t=0) matrix must be invertible.  Exact inputs must
        be constant: a non-constant polynomial has no polynomial inverse, so a
        finite truncation order is required first.
        """
        if self.kind == "bijet":
            return self._invert_bijet()
        mats = self._x_coefficient_matrices()
        if self.x_order is None:
            if len(mats) > 1:
                raise PrecisionExhaustedError(
                    "inverting a non-constant exact series needs a finite truncation order"
                )
            return MatrixJet.constant(_mat_inv(mats[0]))
        inv0 = _mat_inv(mats[0])
        out = [inv0]
        for k in range(1, self.x_order + 1):
            acc = [[Fraction(0)] * self.dim for _ in range(self.dim)]
            for j in range(1, min(k, len(mats) - 1) + 1):
                prod = _mat_mul(mats[j], out[k - j])
                for r in range(self.dim):
                    for c in range(self.dim):
                        acc[r][c] += prod[r][c]
            neg = _mat_mul(inv0, acc)
            out.append([[-v for v in row] for row in neg])
        entries = [
            [Jet([out[k][i][j] for k in range(len(out))], self.x_order) for j in range(self.dim)]
            for i in range(self.dim)
        ]
        return MatrixJet(entries)

    def _t_levels(self):
        """Decompose a bi-jet matrix into x-jet matrices per power of t."""
        n_levels = len(self.entries[0][0].coeffs[0])
        xo = self.x_order
        levels = []
        for m in range(n_levels):
            levels.append(
                MatrixJet(
                    [
                        [
                            Jet([self.entries[i][j].coeffs[k][m]
                                 for k in range(len(self.entries[i][j].coeffs))], xo)
                            for j in range(self.dim)
                        ]
                        for i in range(self.dim)
                    ]
                )
            )
        return levels

    @staticmethod
    def from_t_levels(levels: Sequence["MatrixJet"], t_order: Optional[int]) -> "MatrixJet":
        """Assemble a bi-jet matrix from per-t-power x-jet matrices."""
        dim = levels[0].dim
        xo = None
        for lv in levels:
            xo = _omin(xo, lv.x_order)
        levels = [lv.truncate(xo) for lv in levels]
        nx = max(
            len(lv.entries[i][j].coeffs)
            for lv in levels
            for i in range(dim)
            for j in range(dim)
        )
        entries = [
            [
                BiJet(
                    [[lv.entries[i][j].at(k) for lv in levels] for k in range(nx)],
                    xo,
                    t_order,
                )
                for j in range(dim)
            ]
            for i in range(dim)
        ]
        return MatrixJet(entries)

    def _invert_bijet(self) -> "MatrixJet":
        levels = self._t_levels()
        inv0 = levels[0].invert()
        if self.t_order is None:
            # t-constant input: the inverse is t-constant too
            return MatrixJet.from_t_levels([inv0], None).truncate(inv0.x_order, None)
        out = [inv0]
        for m in range(1, self.t_order + 1):
            acc = None
            for j in range(1, min(m, len(levels) - 1) + 1):
                term = levels[j] * out[m - j]
                acc = term if acc is None else acc + term
            if acc is None:
                acc = MatrixJet.zeros(self.dim).truncate(inv0.x_order)
            out.append(-(inv0 * acc))
        return MatrixJet.from_t_levels(out, self.t_order)

    def __repr__(self):
        return f"MatrixJet(dim={self.dim}, kind={self.kind}, x_order={self.x_order}, t_order={self.t_order})"


def log_derivative(phi: MatrixJet, side: str) -> MatrixJet:
    """phi' phi^{-1} for ``side='right'`` (then D phi = s phi), or
    -phi^{-1} phi' for ``side='left'`` (then D phi = -phi s)."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    inv = phi.invert()
    if side == "right":
        return phi.d() * inv
    return -(inv * phi.d())


def x_jet(order: Optional[int] = None) -> Jet:
    return Jet((0, 1), order)


def exp_jet(rate, order: int) -> Jet:
    """Truncation of exp(rate*x) to the given order; coefficients rate^k/k!."""
    rate = _frac(rate)
    coeffs = [Fraction(1)]
    for k in range(1, order + 1):
        coeffs.append(coeffs[-1] * rate / k)
    return Jet(coeffs, order)
