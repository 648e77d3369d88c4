"""Tridiagonal determinants with a constant diagonal X.

``M^(m)`` is the (m+1) x (m+1) matrix with X on the diagonal, ``a_1..a_m``
above it and ``b_1..b_m`` below it.  Its determinant obeys a three-term
recurrence, and its coefficients count weighted sparse index sets.
"""

from dataclasses import dataclass
from itertools import combinations

from .exactalg import IntPoly, RatMatrix, charpoly, poly_from_roots
from . import hamming

_X = IntPoly.x()


@dataclass(frozen=True)
class TridiagSpec:
    """Off-diagonal entries; ``a[i-1]`` is a_i (superdiagonal), ``b[i-1]`` is b_i (subdiagonal)."""

    a: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))
        object.__setattr__(self, "b", tuple(int(v) for v in self.b))

    def _need(self, m):
        if len(self.a) < m or len(self.b) < m:
            raise ValueError(f"need at least {m} off-diagonal entries, have {len(self.a)}/{len(self.b)}")

    def product(self, i):
        """a_i * b_i (1-based)."""
        return self.a[i - 1] * self.b[i - 1]

    def matrix(self, m, last_shift=0) -> RatMatrix:
        """M^(m) - X*I as a numeric matrix, with ``last_shift`` subtracted in the bottom-right corner."""
        self._need(m)
        size = m + 1
        rows = [[0] * size for _ in range(size)]
        for i in range(m):
            rows[i][i + 1] = self.a[i]
            rows[i + 1][i] = self.b[i]
        rows[m][m] = -last_shift
        return RatMatrix.from_rows(rows)


def det_tridiag(spec: TridiagSpec, m) -> IntPoly:
    """det M^(m) via det M^(m+1) = X det M^(m) - a_(m+1) b_(m+1) det M^(m-1)."""
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    spec._need(m)
    prev, cur = IntPoly((1,)), _X
    for i in range(1, m + 1):
        prev, cur = cur, _X * cur - spec.product(i) * prev
    return cur


def det_brute(spec: TridiagSpec, m, last_shift=0) -> IntPoly:
    """det(X I + A) = charpoly(-A) for the numeric part A; independent of the recurrence."""
    A = spec.matrix(m, last_shift)
    return charpoly(-A)


def matchings_coeff(spec: TridiagSpec, m, j) -> int:
    """c_j^(m): sum over j-subsets of {1..m} with consecutive gaps > 1 of prod a_i b_i."""
    if j < 0 or 2 * j > m + 1:
        raise ValueError(f"need 0 <= 2j <= m+1, got m={m}, j={j}")
    spec._need(m)
    total = 0
    for idx in combinations(range(1, m + 1), j):
        if all(y - x > 1 for x, y in zip(idx, idx[1:])):
            term = 1
            for i in idx:
                term *= spec.product(i)
            total += term
    return total


def det_from_matchings(spec: TridiagSpec, m) -> IntPoly:
    """sum_j (-1)^j c_j^(m) X^(m+1-2j)."""
    coeffs = [0] * (m + 2)
    for j in range((m + 1) // 2 + 1):
        coeffs[m + 1 - 2 * j] = (-1) ** j * matchings_coeff(spec, m, j)
    return IntPoly(tuple(coeffs))


def _require_odd(n):
    if n % 2 == 0 or n < 3:
        raise ValueError(f"expected odd n >= 3, got {n}")


def cnplus_spec(n) -> TridiagSpec:
    """Off-diagonals of the size-(n+1)/2 matrix: a_i = -i, b_i = -(n - i + 1)."""
    _require_odd(n)
    m = (n + 1) // 2
    return TridiagSpec(tuple(-i for i in range(1, m)), tuple(-(n - i + 1) for i in range(1, m)))


def cnplus(n) -> IntPoly:
    """Determinant of the m x m matrix (m = (n+1)/2) with diagonal X,...,X,X-m.

    Expanding along the last row gives (X - m) det M^(m-2) - a_(m-1) b_(m-1) det M^(m-3).
    """
    _require_odd(n)
    m = (n + 1) // 2
    spec = cnplus_spec(n)
    top = det_tridiag(spec, m - 2)
    below = det_tridiag(spec, m - 3) if m >= 3 else IntPoly((1,))
    return (_X - m) * top - spec.product(m - 1) * below


def cnplus_brute(n) -> IntPoly:
    _require_odd(n)
    m = (n + 1) // 2
    return det_brute(cnplus_spec(n), m - 1, last_shift=m)


def cnplus_product(n) -> IntPoly:
    """prod_{l=1}^{m} (X - (-1)^(l+m) (2l - 1))."""
    _require_odd(n)
    m = (n + 1) // 2
    return poly_from_roots((-1) ** (l + m) * (2 * l - 1) for l in range(1, m + 1))


def cnplus_operator_charpoly(n) -> IntPoly:
    """Characteristic polynomial of the distance-(n-1) action on the swap-symmetric part."""
    _require_odd(n)
    char, _ = hamming.restricted_char_and_min_poly(n, n - 1, "+")
    return char
