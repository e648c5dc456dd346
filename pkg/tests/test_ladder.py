from fractions import Fraction

import pytest

from ladderlattice import (
    DegenerateCoefficientError, build_vmn, catalog_get, faults, ladder_coeffs, lowering, raising, recurrence_residual,
)
from ladderlattice.ladder import alpha_closed, alpha_from_leading, beta_matched, beta_printed, ladder_defect

NINE = ["hermite", "laguerre", "jacobi", "charlier", "meixner", "kravchuk", "hahn", "racah", "qhahn"]


def abg(fam, m, n):
    c = ladder_coeffs(fam, m, n)
    return c.alpha, c.beta, c.gamma


@pytest.mark.parametrize("n", range(9))
def test_hermite_coefficients_exact(n):
    got = abg(catalog_get("hermite"), 0, n)
    assert got == (Fraction(1, 2), 0, n)
    assert all(isinstance(v, (int, Fraction)) for v in got)


@pytest.mark.parametrize("n", range(1, 8))
def test_laguerre_coefficients(n):
    a = Fraction(1, 2)
    assert abg(catalog_get("laguerre", alpha=a), 0, n) == (-(n + 1), 2 * n + a + 1, -(n + a))


@pytest.mark.parametrize("n", range(1, 8))
def test_charlier_coefficients(n):
    mu = Fraction(3, 2)
    assert abg(catalog_get("charlier", mu=mu), 0, n) == (-mu, n + mu, -n)


@pytest.mark.parametrize("n", range(1, 8))
def test_legendre_coefficients(n):
    assert abg(catalog_get("jacobi"), 0, n) == (Fraction(n + 1, 2 * n + 1), 0, Fraction(n, 2 * n + 1))


@pytest.mark.parametrize("name", NINE)
def test_recurrence_residual_vanishes(name):
    fam = catalog_get(name)
    for m in range(3):
        for n in range(m, 8):
            assert alpha_closed(fam, m, n) == alpha_from_leading(fam, m, n)
            r = recurrence_residual(fam, m, n)
            assert r == 0 if fam.exact else r < 1e-25


@pytest.mark.parametrize("name", NINE)
def test_raise_and_lower_reproduce_neighbours(name):
    fam = catalog_get(name)
    for m in range(3):
        for n in range(m, 7):
            up = ladder_defect(fam, m, n, "raise")
            assert up == 0 if fam.exact else up < 1e-25
            if n > m:
                down = ladder_defect(fam, m, n, "lower")
                assert down == 0 if fam.exact else down < 1e-25


@pytest.mark.parametrize("name", ["kravchuk", "racah", "qhahn"])
def test_lower_after_raise_is_identity(name):
    fam = catalog_get(name)
    for m in range(3):
        for n in range(m, 6):
            up = raising(fam, m, n)
            back = lowering(fam, m, n + 1, v=up)
            assert back.samples == build_vmn(fam, m, n).samples


def test_unshifted_denominator_fails_off_the_base_level():
    # the nabla x(s) denominator is only right for m = 0 on non-uniform lattices
    fam = catalog_get("racah")
    assert ladder_defect(fam, 0, 3, "raise", nabla="x") == 0
    assert ladder_defect(fam, 1, 3, "raise", nabla="x") > Fraction(1, 100)
    assert ladder_defect(catalog_get("qhahn"), 2, 4, "lower", nabla="x") > Fraction(1, 100)


def test_quadratic_beta_closed_form_is_replaced():
    fam = catalog_get("racah")
    c = ladder_coeffs(fam, 0, 2)
    assert c.beta_printed is not None and c.beta_printed != c.beta
    assert c.beta_source == "matched" and c.beta == beta_matched(fam, 0, 2)


def test_uniform_beta_closed_form_is_kept():
    fam = catalog_get("hahn")
    for m in range(3):
        for n in range(m, 6):
            c = ladder_coeffs(fam, m, n)
            assert c.beta_source == "printed" and c.beta == beta_printed(fam, m, n)


def test_lowering_the_bottom_is_degenerate():
    with pytest.raises(DegenerateCoefficientError):
        lowering(catalog_get("kravchuk"), 2, 2)


def test_alpha_fault_breaks_the_recurrence():
    fam = catalog_get("kravchuk")
    with faults.inject(alpha_shift=1e-6):
        assert recurrence_residual(fam, 0, 3) > 1e-8
    assert recurrence_residual(fam, 0, 3) == 0


def test_beta_fault_breaks_the_recurrence():
    fam = catalog_get("hermite")
    with faults.inject(beta_shift=1e-3):
        assert recurrence_residual(fam, 1, 4) > 1e-5
