"""Exact integer/rational arithmetic: dense polynomials, affine forms, small matrices.

Everything here is exact.  Rationals are :class:`fractions.Fraction`; there is
no floating point anywhere in the package.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPoly:
    """Dense univariate polynomial over the integers, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        coeffs = _trim(self.coeffs)
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"non-integral coefficient {c}")
            elif not isinstance(c, int):
                raise TypeError(f"coefficient {c!r} is not an integer")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots):
        return poly_from_roots(roots)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return self.lead == 1

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        result = IntPoly((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; exact for ints and Fractions."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def scale_var(self, s):
        """Return p(s*X)."""
        return IntPoly(tuple(c * s**i for i, c in enumerate(self.coeffs)))

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "X" if i == 1 else f"X^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def _as_poly(p):
    if isinstance(p, IntPoly):
        return p
    if isinstance(p, (int, Fraction)):
        return IntPoly((p,))
    raise TypeError(f"cannot use {p!r} as a polynomial")


def poly_from_roots(roots: Iterable[int]) -> IntPoly:
    """Monic polynomial with exactly the given multiset of integer roots."""
    p = IntPoly((1,))
    for r in roots:
        p = p * IntPoly((-r, 1))
    return p


def poly_arith(p, q, op):
    """Dispatch ``add``, ``mul``, ``eval`` (``q`` an integer) or ``eq``."""
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "eval":
        return p(q)
    if op == "eq":
        return p == q
    raise ValueError(f"unknown operation {op!r}")


# -- rational polynomial helpers (used for gcd / divisibility only) --------


def _rat_divmod(num, den):
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in _trim(den)]
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    num = list(num)
    while len(_trim(num)) >= len(den):
        num = list(_trim(num))
        shift = len(num) - len(den)
        f = num[-1] / den[-1]
        quot[shift] = f
        for i, d in enumerate(den):
            num[i + shift] -= f * d
        num = list(_trim(num))
    return list(_trim(quot)), list(_trim(num))


def _primitive(coeffs):
    coeffs = _trim(coeffs)
    if not coeffs:
        return IntPoly()
    den = lcm(*(Fraction(c).denominator for c in coeffs))
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPoly(tuple(ints))


def poly_divmod(p: IntPoly, q: IntPoly):
    """Exact division over the rationals; returns (quotient, remainder) as Fraction lists."""
    return _rat_divmod(p.coeffs, q.coeffs)


def divides(q: IntPoly, p: IntPoly) -> bool:
    """True iff ``q`` divides ``p`` over the rationals."""
    _, r = poly_divmod(p, q)
    return not r


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient."""
    a = [Fraction(c) for c in p.coeffs]
    b = [Fraction(c) for c in q.coeffs]
    while b:
        _, r = _rat_divmod(a, b)
        a, b = b, r
    return _primitive(a)


def is_squarefree(p: IntPoly) -> bool:
    if p.degree <= 0:
        return True
    return poly_gcd(p, p.derivative()).degree == 0


def integer_roots(p: IntPoly):
    """Integer roots of ``p`` with multiplicity, by trial division of the constant term."""
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    roots = []
    coeffs = list(p.coeffs)
    while coeffs and coeffs[0] == 0:
        roots.append(0)
        coeffs.pop(0)
    q = IntPoly(tuple(coeffs))
    c0 = abs(q.coeffs[0])
    cands = set()
    d = 1
    while d * d <= c0:
        if c0 % d == 0:
            cands.update((d, -d, c0 // d, -(c0 // d)))
        d += 1
    for r in sorted(cands):
        while q.degree > 0 and q(r) == 0:
            roots.append(r)
            quot, _ = poly_divmod(q, IntPoly((-r, 1)))
            q = IntPoly(tuple(quot))
    return sorted(roots)


# -- affine forms in (g_X - 1), (g_Y - 1), 1 --------------------------------


@dataclass(frozen=True)
class AffineExpr:
    """``gx*(g_X - 1) + gy*(g_Y - 1) + c`` with rational coefficients."""

    gx: Fraction = Fraction(0)
    gy: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("gx", "gy", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def const(cls, c):
        return cls(0, 0, c)

    @classmethod
    def lift(cls, value):
        if isinstance(value, AffineExpr):
            return value
        return cls.const(value)

    def __add__(self, other):
        o = AffineExpr.lift(other)
        return AffineExpr(self.gx + o.gx, self.gy + o.gy, self.c + o.c)

    __radd__ = __add__

    def __neg__(self):
        return AffineExpr(-self.gx, -self.gy, -self.c)

    def __sub__(self, other):
        return self + (-AffineExpr.lift(other))

    def __rsub__(self, other):
        return AffineExpr.lift(other) - self

    def __mul__(self, s):
        if isinstance(s, AffineExpr):
            raise TypeError("affine forms only scale by rationals")
        s = Fraction(s)
        return AffineExpr(self.gx * s, self.gy * s, self.c * s)

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1 / Fraction(s))

    def is_zero(self):
        return self.gx == 0 and self.gy == 0 and self.c == 0

    def evaluate(self, g_x, g_y):
        return self.gx * (g_x - 1) + self.gy * (g_y - 1) + self.c

    def to_json(self):
        return {"gx": fraction_str(self.gx), "gy": fraction_str(self.gy), "c": fraction_str(self.c)}

    def __str__(self):
        parts = []
        for coef, sym in ((self.gx, "(g_X-1)"), (self.gy, "(g_Y-1)"), (self.c, "")):
            if coef == 0:
                continue
            mag = abs(coef)
            if sym:
                body = sym if mag == 1 else f"{fraction_str(mag)}{sym}"
            else:
                body = fraction_str(mag)
            parts.append(("-" if coef < 0 else "+", body))
        if not parts:
            return "0"
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def fraction_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- matrices ----------------------------------------------------------------


class SingularSystemError(ValueError):
    """Raised when a linear system has no unique solution."""


@dataclass(frozen=True)
class RatMatrix:
    """Row-major rational matrix."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows*cols")
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(e for r in rows for e in r))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self):
        return RatMatrix.from_rows([self.col(j) for j in range(self.cols)])

    def __add__(self, other):
        self._same_shape(other)
        return RatMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._same_shape(other)
        return RatMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return RatMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, s):
        return RatMatrix(self.rows, self.cols, tuple(a * s for a in self.entries))

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            ocols = [other.col(j) for j in range(other.cols)]
            out = []
            for i in range(self.rows):
                r = self.row(i)
                for c in ocols:
                    out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
            return RatMatrix(self.rows, other.cols, tuple(out))
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return [sum((a * b for a, b in zip(self.row(i), vec) if a and b), Fraction(0)) for i in range(self.rows)]

    def trace(self):
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def is_square(self):
        return self.rows == self.cols

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")


def solve_linear(A: RatMatrix, b):
    """Solve ``A x = b`` exactly where each ``b[i]`` is an :class:`AffineExpr`.

    Rows are cleared of denominators, then eliminated fraction-free (Bareiss);
    the pivot is the first nonzero entry at or below the diagonal.
    """
    if not A.is_square():
        raise SingularSystemError("singular system: matrix is not square")
    n = A.rows
    if len(b) != n:
        raise ValueError("right-hand side length mismatch")
    rows = []
    rhs = []
    for i in range(n):
        r = A.row(i)
        den = lcm(*(e.denominator for e in r)) if r else 1
        rows.append([int(e * den) for e in r])
        rhs.append(AffineExpr.lift(b[i]) * den)

    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if piv is None:
            raise SingularSystemError("singular system: inconsistent or dependent equations")
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            rhs[k], rhs[piv] = rhs[piv], rhs[k]
        akk = rows[k][k]
        for i in range(k + 1, n):
            aik = rows[i][k]
            for j in range(k + 1, n):
                # Bareiss division is exact for integer entries
                rows[i][j] = (akk * rows[i][j] - aik * rows[k][j]) // prev
            rhs[i] = (rhs[i] * akk - rhs[k] * aik) / prev
            rows[i][k] = 0
        prev = akk

    x = [AffineExpr()] * n
    for i in range(n - 1, -1, -1):
        acc = rhs[i]
        for j in range(i + 1, n):
            if rows[i][j]:
                acc = acc - x[j] * rows[i][j]
        x[i] = acc / rows[i][i]
    return x


def _rref(rows):
    """Reduced row echelon form in place over Fractions; returns pivot columns."""
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def rank(M: RatMatrix) -> int:
    rows = [[Fraction(e) for e in r] for r in M.to_rows()]
    return len(_rref(rows)) if rows else 0


def column_basis(M: RatMatrix) -> RatMatrix:
    """Columns of ``M`` at the pivot positions, i.e. a basis of its column space."""
    rows = [[Fraction(e) for e in r] for r in M.to_rows()]
    pivots = _rref(rows)
    cols = [M.col(j) for j in pivots]
    return RatMatrix.from_rows([[c[i] for c in cols] for i in range(M.rows)]) if cols else RatMatrix.zeros(M.rows, 0)


def restrict(A: RatMatrix, basis: RatMatrix) -> RatMatrix:
    """Matrix of ``A`` on the invariant column span of ``basis`` (columns act as coordinates).

    Raises ``ValueError`` when the span is not ``A``-invariant.
    """
    image = A @ basis
    d = basis.cols
    aug = [basis.row(i) + image.row(i) for i in range(basis.rows)]
    pivots = _rref(aug)
    if pivots[:d] != list(range(d)) or any(p >= d for p in pivots):
        raise ValueError("subspace is not invariant under the operator")
    return RatMatrix.from_rows([aug[i][d:] for i in range(d)])


def charpoly(A: RatMatrix) -> IntPoly:
    """Characteristic polynomial det(X*I - A) via Faddeev-LeVerrier."""
    if not A.is_square():
        raise ValueError("charpoly needs a square matrix")
    n = A.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = RatMatrix.zeros(n, n)
    ident = RatMatrix.identity(n)
    for k in range(1, n + 1):
        M = A @ M + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(A @ M).trace() / k
    return IntPoly(tuple(coeffs))


def minpoly(A: RatMatrix) -> IntPoly:
    """Minimal polynomial: first linear dependency among I, A, A^2, ..."""
    if not A.is_square():
        raise ValueError("minpoly needs a square matrix")
    n = A.rows
    basis = []  # (pivot, reduced row, combination over powers)
    power = RatMatrix.identity(n)
    for d in range(n + 1):
        vec = list(power.entries)
        comb = [Fraction(0)] * (d + 1)
        comb[d] = Fraction(1)
        for piv, row, rcomb in basis:
            f = vec[piv]
            if f:
                vec = [a - f * b for a, b in zip(vec, row)]
                comb = [c - f * (rcomb[i] if i < len(rcomb) else 0) for i, c in enumerate(comb)]
        piv = next((i for i, e in enumerate(vec) if e != 0), None)
        if piv is None:
            return IntPoly(tuple(comb))
        inv = 1 / vec[piv]
        basis.append((piv, [e * inv for e in vec], [c * inv for c in comb]))
        power = power @ A
    raise AssertionError("Cayley-Hamilton violated")


def poly_of_matrix(p: IntPoly, A: RatMatrix) -> RatMatrix:
    """Evaluate ``p(A)`` by Horner's rule."""
    n = A.rows
    acc = RatMatrix.zeros(n, n)
    ident = RatMatrix.identity(n)
    for c in reversed(p.coeffs):
        acc = acc @ A + ident.scale(c)
    return acc
