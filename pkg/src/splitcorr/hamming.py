"""Hamming-scheme machinery on bit vectors and on the quotient space H_n.

Two models of the distance-k transform live here:

* the fiber model, a linear map on formal combinations of length-n bit
  vectors (``FiberVector``); exponential in n and used only for checks;
* the quotient model on homogeneous degree-n polynomials in X, Y
  (``HomPoly``), where ``xi_l = X^l Y^(n-l)`` stands for the weight-l class.

Invariant subspaces of H_n:

``+`` / ``-``   symmetric / antisymmetric under X <-> Y (global complement),
``e`` / ``o``   even / odd in Y,
``+e`` etc.     intersections of the above.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from .exactalg import IntPoly, RatMatrix, charpoly, column_basis, minpoly, poly_from_roots, rank, restrict

MAX_FIBER_N = 24
SUBSPACES = ("+", "-", "e", "o", "+e", "+o", "-e", "-o")


@dataclass(frozen=True)
class BitVector:
    n: int
    bits: tuple

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if len(bits) != self.n:
            raise ValueError(f"expected {self.n} bits, got {len(bits)}")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_int(cls, n, mask):
        return cls(n, tuple((mask >> i) & 1 for i in range(n)))

    @classmethod
    def zeros(cls, n):
        return cls(n, (0,) * n)

    def to_int(self):
        return sum(b << i for i, b in enumerate(self.bits))

    @property
    def weight(self):
        return sum(self.bits)

    def __xor__(self, other):
        _check_len(self, other)
        return BitVector(self.n, tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def dot(self, other):
        _check_len(self, other)
        return sum(a & b for a, b in zip(self.bits, other.bits)) & 1

    def complement(self):
        return BitVector(self.n, tuple(1 - b for b in self.bits))


def _check_len(x, y):
    if x.n != y.n:
        raise ValueError(f"length mismatch: {x.n} vs {y.n}")


def weight(x: BitVector) -> int:
    return x.weight


def distance(x: BitVector, y: BitVector) -> int:
    return (x ^ y).weight


def vectors_of_weight(n, k):
    """All length-n bit masks of weight k."""
    for idx in combinations(range(n), k):
        yield sum(1 << i for i in idx)


@dataclass(frozen=True)
class FiberVector:
    """Sparse formal combination of bit vectors, keyed by bit mask."""

    n: int
    coeffs: dict

    def __post_init__(self):
        if self.n > MAX_FIBER_N:
            raise ValueError(f"fiber model refuses n > {MAX_FIBER_N}")
        clean = {int(k): v for k, v in self.coeffs.items() if v != 0}
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def basis(cls, x: BitVector):
        return cls(x.n, {x.to_int(): 1})

    def __getitem__(self, x):
        key = x.to_int() if isinstance(x, BitVector) else x
        return self.coeffs.get(key, 0)

    def __eq__(self, other):
        return isinstance(other, FiberVector) and self.n == other.n and self.coeffs == other.coeffs

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("length mismatch")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return FiberVector(self.n, out)

    def scale(self, s):
        return FiberVector(self.n, {k: v * s for k, v in self.coeffs.items()})


def krawtchouk(n, k, ell):
    """Eigenvalue of the distance-k transform on Hadamard vectors of weight ``ell``.

    Equals the coefficient of t^k in (1-t)^ell (1+t)^(n-ell).
    """
    if not (0 <= k <= n and 0 <= ell <= n):
        raise ValueError(f"need 0 <= k, ell <= n; got n={n}, k={k}, ell={ell}")
    return sum((-1) ** i * comb(ell, i) * comb(n - ell, k - i) for i in range(0, min(k, ell) + 1))


def gamma_apply(n, k, v: FiberVector) -> FiberVector:
    """Distance-k transform: each basis vector goes to the sum of vectors at distance k."""
    if v.n != n:
        raise ValueError(f"length mismatch: vector has n={v.n}, expected {n}")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n; got k={k}")
    flips = list(vectors_of_weight(n, k))
    out = {}
    for x, c in v.coeffs.items():
        for f in flips:
            y = x ^ f
            out[y] = out.get(y, 0) + c
    return FiberVector(n, out)


def hadamard(n, x: BitVector) -> FiberVector:
    if x.n != n:
        raise ValueError("length mismatch")
    xm = x.to_int()
    return FiberVector(n, {y: (-1) ** bin(xm & y).count("1") for y in range(1 << n)})


def complement_apply(v: FiberVector) -> FiberVector:
    full = (1 << v.n) - 1
    return FiberVector(v.n, {x ^ full: c for x, c in v.coeffs.items()})


# -- quotient model -----------------------------------------------------------


@dataclass(frozen=True)
class HomPoly:
    """Homogeneous degree-n polynomial; ``coeffs[l]`` multiplies X^l Y^(n-l)."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.n + 1:
            raise ValueError(f"HomPoly of degree {self.n} needs {self.n + 1} coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def xi(cls, n, ell):
        return cls(n, tuple(int(i == ell) for i in range(n + 1)))

    def __add__(self, other):
        return HomPoly(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return HomPoly(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, s):
        return HomPoly(self.n, tuple(a * s for a in self.coeffs))

    def swap(self):
        """p(Y, X)."""
        return HomPoly(self.n, self.coeffs[::-1])

    def negate_y(self):
        """p(X, -Y)."""
        n = self.n
        return HomPoly(n, tuple(c if (n - i) % 2 == 0 else -c for i, c in enumerate(self.coeffs)))

    def even_part(self):
        return (self + self.negate_y()).scale(Fraction(1, 2))

    def odd_part(self):
        return (self - self.negate_y()).scale(Fraction(1, 2))

    def is_zero(self):
        return not any(self.coeffs)


def quotient_matrix(n, k):
    """Integer matrix G with G[l][i] = number of weight-i vectors at distance k from a weight-l one.

    Row convention: the new coefficient vector is ``c @ G``.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n; got k={k}")
    G = [[0] * (n + 1) for _ in range(n + 1)]
    for ell in range(n + 1):
        for j in range(max(0, k - (n - ell)), min(ell, k) + 1):
            G[ell][k + ell - 2 * j] += comb(ell, j) * comb(n - ell, k - j)
    return G


def delta_apply(n, k, h: HomPoly) -> HomPoly:
    """Apply (1/k!) sum_j C(k,j) X^j Y^(k-j) d_X^(k-j) d_Y^j to ``h``."""
    if h.n != n:
        raise ValueError(f"degree mismatch: {h.n} vs {n}")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n; got k={k}")
    out = [Fraction(0)] * (n + 1)
    for ell, c in enumerate(h.coeffs):
        if not c:
            continue
        ydeg = n - ell
        for j in range(k + 1):
            dx, dy = k - j, j
            if dx > ell or dy > ydeg:
                continue
            # d_X^dx X^ell = ell!/(ell-dx)! X^(ell-dx); then multiply by X^j
            falling = factorial(ell) // factorial(ell - dx) * factorial(ydeg) // factorial(ydeg - dy)
            out[ell - dx + j] += c * comb(k, j) * falling
    return HomPoly(n, tuple(o / factorial(k) for o in out))


def delta_matrix(n, k) -> RatMatrix:
    """Column-convention matrix of the distance-k quotient action on H_n (acts as ``M @ c``)."""
    return RatMatrix.from_rows(quotient_matrix(n, k)).transpose()


def eigen_vector(n, ell, variant="plain") -> HomPoly:
    """(Y - X)^ell (X + Y)^(n - ell), or its even/odd part in Y.

    With this sign the coefficient of ``xi_k`` is exactly ``krawtchouk(n, k, ell)``.
    """
    if not 0 <= ell <= n:
        raise ValueError(f"need 0 <= ell <= n; got ell={ell}")
    v = HomPoly(n, tuple(krawtchouk(n, k, ell) for k in range(n + 1)))
    if variant == "plain":
        return v
    if variant == "e":
        return v.even_part()
    if variant == "o":
        return v.odd_part()
    raise ValueError(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class SubspaceSpec:
    name: str
    dimension: int
    eigen_list: tuple  # ((eigenvector index l, eigenvalue), ...)

    @property
    def eigenvalues(self):
        return [lam for _, lam in self.eigen_list]


def _table_indices(n, name):
    """Eigenvector indices spanning ``name``, per the known invariant-subspace tables."""
    half = n // 2
    if n % 2 == 1:
        if name == "+":
            return list(range(0, n + 1, 2))
        if name == "-":
            return list(range(1, n + 1, 2))
        if name in ("e", "o"):
            return list(range(0, half + 1))
        raise ValueError(f"subspace {name!r} is only tabulated for even n")
    if name == "+":
        return list(range(0, n + 1, 2))
    if name == "-":
        return list(range(1, n + 1, 2))
    if name == "e":
        return list(range(0, half + 1))
    if name == "o":
        return list(range(0, half))
    q = n // 4
    if n % 4 == 0:
        ranges = {
            "+e": [2 * l for l in range(q + 1)],
            "+o": [2 * l for l in range(q)],
            "-e": [2 * l + 1 for l in range(q)],
            "-o": [2 * l + 1 for l in range(q)],
        }
    else:
        ranges = {
            "+e": [2 * l for l in range(q + 1)],
            "+o": [2 * l for l in range(q + 1)],
            "-e": [2 * l + 1 for l in range(q + 1)],
            "-o": [2 * l + 1 for l in range((n - 2) // 4)],
        }
    if name not in ranges:
        raise ValueError(f"unknown subspace {name!r}")
    return ranges[name]


def subspace_spectrum(n, k, name) -> SubspaceSpec:
    """Dimension and (index, eigenvalue) list of the distance-k action on an invariant subspace."""
    if name not in SUBSPACES:
        raise ValueError(f"unknown subspace {name!r}; expected one of {SUBSPACES}")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n; got k={k}")
    if name not in ("+", "-") and k % 2 == 1:
        raise ValueError(f"subspace {name!r} is not invariant for odd k={k}")
    idx = _table_indices(n, name)
    return SubspaceSpec(name, len(idx), tuple((l, krawtchouk(n, k, l)) for l in idx))


def char_and_min_poly(n, k, name):
    """(characteristic, minimal) polynomial from the tabulated spectrum."""
    spec = subspace_spectrum(n, k, name)
    lams = spec.eigenvalues
    return poly_from_roots(lams), poly_from_roots(sorted(set(lams)))


# -- independent computation of the same subspaces -----------------------------


def projector(n, name) -> RatMatrix:
    """Projector onto an invariant subspace, built from the swap and Y-sign symmetries."""
    size = n + 1
    ident = RatMatrix.identity(size)
    swap = RatMatrix.from_rows([[int(j == n - i) for j in range(size)] for i in range(size)])
    ysign = RatMatrix.from_rows([[(-1) ** (n - i) if i == j else 0 for j in range(size)] for i in range(size)])
    half = Fraction(1, 2)
    parts = {
        "+": (ident + swap).scale(half),
        "-": (ident - swap).scale(half),
        "e": (ident + ysign).scale(half),
        "o": (ident - ysign).scale(half),
    }
    if name not in SUBSPACES:
        raise ValueError(f"unknown subspace {name!r}")
    P = ident
    for ch in name:
        P = P @ parts[ch]
    return P


def subspace_dimension(n, name) -> int:
    return rank(projector(n, name))


def subspace_basis(n, name) -> RatMatrix:
    """Columns spanning the subspace, taken from the projector image."""
    return column_basis(projector(n, name))


def restrict_to_basis(A: RatMatrix, basis: RatMatrix) -> RatMatrix:
    if basis.cols == 0:
        return RatMatrix.zeros(0, 0)
    return restrict(A, basis)


def restricted_operator(n, k, name) -> RatMatrix:
    """Matrix of the distance-k quotient action restricted to the subspace, in a projector-image basis."""
    return restrict_to_basis(delta_matrix(n, k), subspace_basis(n, name))


def restricted_char_and_min_poly(n, k, name):
    """Characteristic and minimal polynomials computed directly from the operator."""
    A = restricted_operator(n, k, name)
    if A.rows == 0:
        return IntPoly((1,)), IntPoly((1,))
    return charpoly(A), minpoly(A)
