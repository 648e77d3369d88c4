from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from splitcorr import hamming
from splitcorr.exactalg import RatMatrix, poly_from_roots
from splitcorr.hamming import BitVector, FiberVector, HomPoly

from oracles import character_sum, differential_matrix, popcount


def test_krawtchouk_examples():
    assert hamming.krawtchouk(5, 4, 1) == -3
    assert all(hamming.krawtchouk(7, 0, l) == 1 for l in range(8))
    assert hamming.krawtchouk(6, 4, 2) == -1
    assert hamming.krawtchouk(8, 6, 3) == 2 == character_sum(8, 6, 3)
    with pytest.raises(ValueError):
        hamming.krawtchouk(4, 5, 0)
    with pytest.raises(ValueError):
        hamming.krawtchouk(4, 0, -1)


@pytest.mark.parametrize("n", range(1, 21))
def test_top_eigenvalue_closed_forms(n):
    for l in range(n + 1):
        assert hamming.krawtchouk(n, n - 1, l) == (-1) ** l * (n - 2 * l)
        if n >= 2:
            m = n - 2 * l  # binomial as the polynomial m(m-1)/2, valid for negative m
            assert hamming.krawtchouk(n, n - 2, l) == (-1) ** l * (m * (m - 1) // 2 - l)


def test_bitvector_basics():
    x = BitVector(4, (1, 0, 1, 1))
    assert x.weight == 3 and hamming.weight(x) == 3
    assert BitVector.from_int(4, x.to_int()) == x
    assert hamming.distance(x, x.complement()) == 4
    assert x.dot(BitVector(4, (1, 1, 1, 0))) == 0
    with pytest.raises(ValueError):
        x ^ BitVector.zeros(3)
    with pytest.raises(ValueError):
        BitVector(2, (0, 2))


def test_gamma_examples():
    v = FiberVector.basis(BitVector.zeros(2))
    assert hamming.gamma_apply(2, 1, v) == FiberVector(2, {0b01: 1, 0b10: 1})
    x = BitVector(5, (1, 0, 0, 1, 1))
    assert hamming.gamma_apply(5, 5, FiberVector.basis(x)) == FiberVector.basis(x.complement())
    with pytest.raises(ValueError):
        hamming.gamma_apply(3, 1, v)


def test_hadamard_examples():
    h = hamming.hadamard(2, BitVector(2, (1, 1)))
    assert h == FiberVector(2, {0b00: 1, 0b01: -1, 0b10: -1, 0b11: 1})
    assert hamming.hadamard(3, BitVector.zeros(3)) == FiberVector(3, {y: 1 for y in range(8)})
    assert hamming.hadamard(3, BitVector(3, (1, 0, 0)))[BitVector(3, (1, 1, 0))] == -1


def test_fiber_guard():
    with pytest.raises(ValueError):
        FiberVector(25, {})


@pytest.mark.parametrize("n", range(1, 7))
def test_hadamard_vectors_are_eigenvectors(n):
    for xm in range(1 << n):
        x = BitVector.from_int(n, xm)
        h = hamming.hadamard(n, x)
        for k in range(n + 1):
            assert hamming.gamma_apply(n, k, h) == h.scale(hamming.krawtchouk(n, k, x.weight))


fiber_vectors = st.integers(1, 8).flatmap(
    lambda n: st.dictionaries(st.integers(0, (1 << n) - 1), st.integers(-5, 5), max_size=6).map(
        lambda d: FiberVector(n, d)
    )
)


@settings(max_examples=40, deadline=None)
@given(fiber_vectors, st.data())
def test_gamma_commute(v, data):
    n = v.n
    k = data.draw(st.integers(0, n))
    j = data.draw(st.integers(0, n))
    assert hamming.gamma_apply(n, k, hamming.gamma_apply(n, j, v)) == hamming.gamma_apply(
        n, j, hamming.gamma_apply(n, k, v)
    )
    # the complement map commutes with every distance transform
    assert hamming.complement_apply(hamming.gamma_apply(n, k, v)) == hamming.gamma_apply(
        n, k, hamming.complement_apply(v)
    )


def test_quotient_matrix_examples():
    assert hamming.quotient_matrix(2, 1) == [[0, 2, 0], [1, 0, 1], [0, 2, 0]]
    assert hamming.quotient_matrix(4, 0) == [[int(i == j) for j in range(5)] for i in range(5)]
    for n in range(0, 9):
        for k in range(n + 1):
            assert all(sum(row) == comb(n, k) for row in hamming.quotient_matrix(n, k))


@pytest.mark.parametrize("n", range(1, 8))
def test_quotient_matrix_counts_neighbours(n):
    for k in range(n + 1):
        G = hamming.quotient_matrix(n, k)
        for l in range(n + 1):
            x = (1 << l) - 1
            counts = [0] * (n + 1)
            for z in range(1 << n):
                if popcount(z) == k:
                    counts[popcount(x ^ z)] += 1
            assert G[l] == counts


hom_polys = st.integers(0, 16).flatmap(
    lambda n: st.lists(st.integers(-6, 6), min_size=n + 1, max_size=n + 1).map(lambda cs: HomPoly(n, tuple(cs)))
)


@settings(max_examples=60)
@given(hom_polys, st.data())
def test_quotient_matrix_matches_differential_operator(h, data):
    n = h.n
    k = data.draw(st.integers(0, n))
    G = hamming.quotient_matrix(n, k)
    via_matrix = [sum(h.coeffs[l] * G[l][i] for l in range(n + 1)) for i in range(n + 1)]
    assert list(hamming.delta_apply(n, k, h).coeffs) == via_matrix
    assert hamming.delta_matrix(n, k) @ list(h.coeffs) == via_matrix


def test_delta_examples():
    assert hamming.delta_apply(2, 1, HomPoly.xi(2, 1)) == HomPoly(2, (1, 0, 1))
    h = HomPoly(3, (1, -2, 0, 5))
    assert hamming.delta_apply(3, 0, h) == h


@pytest.mark.parametrize("n", range(0, 13))
def test_eigen_vectors(n):
    for l in range(n + 1):
        v = hamming.eigen_vector(n, l)
        assert list(v.coeffs) == [hamming.krawtchouk(n, k, l) for k in range(n + 1)]
        for k in range(n + 1):
            lam = hamming.krawtchouk(n, k, l)
            assert hamming.delta_apply(n, k, v) == v.scale(lam)
            ve, vo = hamming.eigen_vector(n, l, "e"), hamming.eigen_vector(n, l, "o")
            if k % 2 == 0:
                assert hamming.delta_apply(n, k, ve) == ve.scale(lam)
                assert hamming.delta_apply(n, k, vo) == vo.scale(lam)
            else:
                assert hamming.delta_apply(n, k, ve) == vo.scale(lam)
                assert hamming.delta_apply(n, k, vo) == ve.scale(lam)
    assert list(hamming.eigen_vector(n, 0).coeffs) == [comb(n, k) for k in range(n + 1)]
    if n % 2 == 0:
        assert hamming.eigen_vector(n, n // 2, "o").is_zero()


def test_eigen_vector_bad_variant():
    with pytest.raises(ValueError):
        hamming.eigen_vector(4, 1, "x")


def test_subspace_spectrum_examples():
    s = hamming.subspace_spectrum(8, 6, "+e")
    assert s.dimension == 3 and [l for l, _ in s.eigen_list] == [0, 2, 4]
    s = hamming.subspace_spectrum(6, 4, "-o")
    assert s.dimension == 1 and [l for l, _ in s.eigen_list] == [1]
    s = hamming.subspace_spectrum(5, 4, "e")
    assert s.dimension == 3 and [l for l, _ in s.eigen_list] == [0, 1, 2]
    with pytest.raises(ValueError):
        hamming.subspace_spectrum(6, 3, "e")
    with pytest.raises(ValueError):
        hamming.subspace_spectrum(5, 4, "+e")
    with pytest.raises(ValueError):
        hamming.subspace_spectrum(5, 4, "q")


def test_char_and_min_poly_examples():
    assert hamming.char_and_min_poly(5, 4, "e")[1] == poly_from_roots([5, -3, 1])
    assert hamming.char_and_min_poly(8, 6, "-e")[1] == poly_from_roots([-14, 2])
    char, _ = hamming.char_and_min_poly(4, 2, "+e")
    assert sorted(set(hamming.subspace_spectrum(4, 2, "+e").eigenvalues)) == [-2, 6]
    assert char(6) == 0 and char(-2) == 0


@pytest.mark.parametrize("n", range(2, 15))
def test_tables_agree_with_operator(n):
    ks = [k for k in range(n + 1) if k % 2 == 0]
    names = hamming.SUBSPACES if n % 2 == 0 else ("+", "-", "e", "o")
    for k in ks:
        for name in names:
            assert hamming.restricted_char_and_min_poly(n, k, name) == hamming.char_and_min_poly(n, k, name)


@pytest.mark.parametrize("n", range(2, 11))
def test_odd_k_square_preserves_parity_spaces(n):
    for k in range(1, n + 1, 2):
        D = differential_matrix(n, k)
        D2 = D @ D
        for l in range(n + 1):
            lam = hamming.krawtchouk(n, k, l)
            for variant in ("e", "o"):
                v = list(hamming.eigen_vector(n, l, variant).coeffs)
                assert D2 @ v == [c * lam * lam for c in v]


def _interpolate_at_matrix(points, A):
    """p(A) for the Lagrange polynomial through ``points``, computed with exact rationals."""
    size = A.rows
    ident = RatMatrix.identity(size)
    total = RatMatrix.zeros(size, size)
    for i, (xi, yi) in enumerate(points):
        term = ident.scale(Fraction(yi))
        for j, (xj, _) in enumerate(points):
            if i != j:
                term = term @ (A - ident.scale(xj)).scale(Fraction(1, xi - xj))
        total = total + term
    return total


@pytest.mark.parametrize("n", range(3, 14, 2))
def test_lower_transforms_are_polynomials_in_the_top_one(n):
    basis = hamming.subspace_basis(n, "e")
    A = hamming.restrict_to_basis(hamming.delta_matrix(n, n - 1), basis)
    idx = [l for l, _ in hamming.subspace_spectrum(n, n - 1, "e").eigen_list]
    for j in range(0, n - 2, 2):
        B = hamming.restrict_to_basis(hamming.delta_matrix(n, j), basis)
        points = [(hamming.krawtchouk(n, n - 1, l), hamming.krawtchouk(n, j, l)) for l in idx]
        assert _interpolate_at_matrix(points, A) == B
