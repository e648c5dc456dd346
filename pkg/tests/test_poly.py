from fractions import Fraction

import mpmath
from hypothesis import given
from hypothesis import strategies as st

from ladderlattice.poly import fit, polyadd, polyder, polymul, polyscale, polyval, solve

coeff = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_polymul_and_polyder():
    p = polymul((1, 1), (-1, 1))            # x**2 - 1
    assert tuple(p) == (-1, 0, 1)
    assert tuple(polyder(p)) == (0, 2)
    assert tuple(polyder((1, 2, 3, 4), 2)) == (6, 24)


def test_polyval_switches_to_float():
    assert polyval((1, 2), Fraction(1, 2)) == 2
    v = polyval((1, 2), mpmath.mpf("0.5"))
    assert isinstance(v, mpmath.mpf) and v == 2


def test_solve_exact():
    x = solve([[2, 1], [1, 3]], [3, 5])
    assert [Fraction(v) for v in x] == [Fraction(4, 5), Fraction(7, 5)]


@given(st.lists(coeff, min_size=1, max_size=6))
def test_fit_recovers_polynomial_exactly(c):
    xs = [Fraction(k, 3) for k in range(len(c) + 3)]
    ys = [polyval(c, x) for x in xs]
    got, resid = fit(xs, ys, len(c) - 1)
    assert resid == 0
    assert tuple(got) == tuple(c)


@given(st.lists(coeff, min_size=1, max_size=5), st.lists(coeff, min_size=1, max_size=5), coeff)
def test_product_and_sum_evaluate_pointwise(a, b, x):
    assert polyval(polymul(a, b), x) == polyval(a, x) * polyval(b, x)
    assert polyval(polyadd(a, b), x) == polyval(a, x) + polyval(b, x)
    assert polyval(polyscale(a, 3), x) == 3 * polyval(a, x)
