"""Left, right and generalized Bell polynomials with memoized tables.

All entries are produced by the defining recurrences:

    B_0 = e,          B_n = D B_{n-1} + B_{n-1} s
    B_0^+ = e,        B_n^+ = -D B_{n-1}^+ + s B_{n-1}^+
    B_{n,0} = e,      B_{n,k} = B_{n-1,k} + D B_{n-1,k-1}   (1 <= k <= n-1)
                      B_{n,n} = D B_{n-1,n-1} + B_n

and the quotient operators H_n = sum_k B_{n,n-k} D^k and
H_n^+ = sum_k B_{n-k}^+ D^k.  Closed alternative formulas live in the test
suite as independent oracles.
"""

from __future__ import annotations

import threading

from .errors import IndexRangeError
from .operators import DiffOperator


class BellTable:
    """Memoized Bell-polynomial family for one fixed ring element s.

    Fills are guarded by an internal lock; once computed, entries are
    immutable and safe to read concurrently.
    """

    def __init__(self, s):
        self.s = s
        self._one = s.one_like()
        self._left = [self._one]
        self._right = [self._one]
        self._gen = {(0, 0): self._one}
        self._gen_rows = 0
        self._lock = threading.RLock()

    def left(self, n: int):
        """B_n(s)."""
        if n < 0:
            raise IndexRangeError("Bell index must be >= 0")
        with self._lock:
            while len(self._left) <= n:
                prev = self._left[-1]
                self._left.append(prev.d() + prev * self.s)
        return self._left[n]

    def right(self, n: int):
        """B_n^+(s)."""
        if n < 0:
            raise IndexRangeError("Bell index must be >= 0")
        with self._lock:
            while len(self._right) <= n:
                prev = self._right[-1]
                self._right.append(-(prev.d()) + self.s * prev)
        return self._right[n]

    def gen(self, n: int, k: int):
        """B_{n,k}(s); defined for 0 <= k <= n only."""
        if n < 0 or k < 0 or k > n:
            raise IndexRangeError(f"B_(n,k) needs 0 <= k <= n, got n={n}, k={k}")
        with self._lock:
            while self._gen_rows < n:
                m = self._gen_rows + 1
                self._gen[(m, 0)] = self._one
                for j in range(1, m):
                    self._gen[(m, j)] = self._gen[(m - 1, j)] + self._gen[(m - 1, j - 1)].d()
                self._gen[(m, m)] = self._gen[(m - 1, m - 1)].d() + self.left(m)
                self._gen_rows = m
        return self._gen[(n, k)]

    def h(self, n: int) -> DiffOperator:
        """Quotient operator H_n; order n, leading coefficient e."""
        if n < 0:
            raise IndexRangeError("operator index must be >= 0")
        coeffs = [self.gen(n, n - k) for k in range(n + 1)]
        return DiffOperator(coeffs, self.s.realization)

    def h_plus(self, n: int) -> DiffOperator:
        """Quotient operator H_n^+; order n, leading coefficient e."""
        if n < 0:
            raise IndexRangeError("operator index must be >= 0")
        coeffs = [self.right(n - k) for k in range(n + 1)]
        return DiffOperator(coeffs, self.s.realization)
