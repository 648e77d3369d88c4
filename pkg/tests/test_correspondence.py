from math import comb

import pytest
from hypothesis import given, strategies as st

from splitcorr import correspondence as corr
from splitcorr.exactalg import IntPoly, divides, integer_roots, is_squarefree, poly_from_roots

X = IntPoly.x()


@pytest.mark.parametrize("n", range(3, 30, 2))
def test_a_table_examples(n):
    a = corr.a_table(n)
    assert a[0, 0] == -1
    assert a[2, 0] == n
    if a.top >= 3:
        assert a[3, 1] == 3 * n - 2
    assert all(a[m, m] == -1 for m in range(a.top + 1))
    assert a[3, -1] == 0 and a[2, 1] == 0


def test_a_table_rejects_even():
    with pytest.raises(ValueError):
        corr.a_table(6)
    with pytest.raises(ValueError):
        corr.odd_equation(4)


@given(st.integers(3, 60), st.integers(0, 6))
def test_a_closed_form_examples(n, k):
    assert corr.a_closed_form(n, 2, 1) == n
    assert corr.a_closed_form(n, k, 0) == -1
    assert corr.a_closed_form(n, 3, 1) == 3 * n - 2


def test_a_closed_form_range():
    with pytest.raises(ValueError):
        corr.a_closed_form(7, 2, 2)
    with pytest.raises(ValueError):
        corr.a_closed_form(7, 2, -1)


def test_odd_equation_examples():
    assert corr.odd_equation(3) == X**2 - 2 * X - 3
    assert corr.odd_equation(5) == (X - 1) * (X + 3) * (X - 5)
    assert integer_roots(corr.odd_equation(9)) == [-7, -3, 1, 5, 9]


def test_odd_product_examples():
    assert integer_roots(corr.theorem1_product(3)) == [-1, 3]
    assert integer_roots(corr.theorem1_product(5)) == [-3, 1, 5]
    assert integer_roots(corr.theorem1_product(7)) == [-5, -1, 3, 7]


@pytest.mark.parametrize("n", range(3, 40, 2))
def test_odd_product_shape(n):
    p = corr.theorem1_product(n)
    assert p.is_monic() and p.degree == (n + 1) // 2
    assert is_squarefree(p)
    assert corr.odd_equation(n) == p


@pytest.mark.parametrize("n", range(4, 31, 2))
def test_b_table_examples(n):
    b = corr.b_table(n)
    assert b[1, 0] == 0
    assert b[2, 0] == comb(n, 2)
    assert b[2, 1] == 2 * (n - 2)
    if b.top >= 3:
        assert b[3, 0] == -4 * (n - 4) * comb(n, 2)
    assert all(b[m, m] == -1 for m in range(1, b.top + 1))


def test_b_table_rejects_odd():
    with pytest.raises(ValueError):
        corr.b_table(7)


def test_sigma_equation_errors():
    for n in (4, 5, 2, 7):
        with pytest.raises(ValueError):
            corr.even_sigma_equation(n)
    with pytest.raises(ValueError):
        corr.recursion_sigma_equation(10)


def test_sigma_equation_n6():
    sig = corr.even_sigma_equation(6)
    assert sig.degree == 2
    assert integer_roots(sig.at(-1)) == [-5, 3]
    assert sig.at(1) == corr.B_equation(6) == (X - 15) * (X + 1)


def test_even_equation_examples():
    assert corr.P_equation(8) == (X + 14) * (X - 2)
    assert integer_roots(corr.B_equation(10)) == [-3, 13, 45]
    b8, p8 = corr.theorem2_products(8)
    assert integer_roots(b8) == [-4, 4, 28]
    b10, p10 = corr.theorem2_products(10)
    assert integer_roots(p10) == [-27, -3, 5]
    b4, p4 = corr.theorem2_products(4)
    assert p4 == X and integer_roots(b4) == [-2, 6]


@pytest.mark.parametrize("n", range(6, 21, 2))
def test_even_equations(n):
    sig = corr.even_sigma_equation(n)
    b_prod, p_prod = corr.theorem2_products(n)
    k = n // 4 if n % 4 == 0 else (n + 2) // 4
    assert sig.degree == (k + 1 if n % 4 == 0 else k)
    assert sig.at(1) == corr.B_equation(n) == b_prod
    assert corr.P_equation(n) == p_prod
    assert divides(p_prod, sig.at(-1))
    assert is_squarefree(b_prod) and is_squarefree(p_prod)


@pytest.mark.parametrize("n", [8, 12, 16, 20])
def test_both_4k_placements(n):
    k = n // 4
    literal, recursion = corr.even_sigma_equation(n), corr.recursion_sigma_equation(n)
    assert literal.at(1) == recursion.at(1)
    assert corr.dropped_root(literal, n) == 4 * k * k
    assert corr.dropped_root(recursion, n) == -4 * k * k
    # the two differ by a multiple of (1 - s) q_k, so their s = -1 images differ by -8k^2 P
    assert literal.at(-1) - recursion.at(-1) == corr.P_equation(n) * (-8 * k * k)


@pytest.mark.parametrize("n", [6, 8, 10, 12])
def test_sigma_equations_annihilate_fiber_operators(n):
    T, S = corr.even_fiber_operators(n)
    assert all(e == 0 for e in corr.even_sigma_equation(n).evaluate(T, S).entries)
    if n % 4 == 0:
        assert all(e == 0 for e in corr.recursion_sigma_equation(n).evaluate(T, S).entries)


def test_sigma_poly_algebra():
    s = corr.SigmaPoly.monomial(0, 1)
    one = corr.SigmaPoly.monomial(0, 0)
    assert (s.times_sigma() - one).at(1).is_zero()
    assert (s + one).at(-1).is_zero()
    assert corr.SigmaPoly.monomial(2, 3, 5).at(-1) == X**2 * -5


@pytest.mark.parametrize("n", [4, 9, 12, 3, 6, 11])
def test_verify_split_passes(n):
    report = corr.verify_split(n)
    assert report.ok and not report.failures()


def test_verify_split_n4_skips_equations():
    report = corr.verify_split(4)
    skipped = [c.name for c in report.checks if c.status == "skipped"]
    assert "even.B_equation_vs_product" in skipped
    assert all(c.passed for c in report.checks if c.status != "skipped")


def test_verify_split_reports_dropped_root():
    report = corr.verify_split(8)
    detail = {c.name: c.detail for c in report.checks}
    assert detail["even.sigma_minus_image_divisible"] == "extra root 16"


def test_verify_split_range():
    with pytest.raises(ValueError):
        corr.verify_split(2)


def test_brace():
    assert corr.brace(0) == 1
    assert corr.brace(3) == 1 * 6 * 15
    assert poly_from_roots([]) == IntPoly((1,))
