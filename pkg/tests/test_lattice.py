from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ladderlattice.errors import DegenerateLatticeSiteError, WindowTooSmallError
from ladderlattice.lattice import (
    GridFunction, Lattice, delta_bwd, delta_fwd, delta_mean, div_diff, div_diff_bwd, mean_div, q_bracket,
)
from ladderlattice.poly import fit

QUAD = Lattice.quadratic(1, 1, 0)
QEXP = Lattice.qexponential(Fraction(1, 3), 0, Fraction(-1, 3), 4)
small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def test_q_bracket_exact_values():
    # [3] at q = 4: (8 - 1/8) / (2 - 1/2)
    assert q_bracket(QEXP, 3) == Fraction(21, 4)
    assert QEXP.bracket(1) == 1 and QEXP.bracket(0) == 0
    assert QEXP.ch(2) == Fraction(17, 8)      # (4 + 1/4) / 2
    assert QUAD.bracket(5) == 5


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_q_bracket_tends_to_n(n):
    lat = Lattice.qexponential(1, 0, -1, mpmath.mpf(1) + mpmath.mpf("1e-8"))
    assert abs(q_bracket(lat, n) - n) < 1e-6 * n


def test_bracket_factorial():
    assert QEXP.bracket_factorial(3) == QEXP.bracket(1) * QEXP.bracket(2) * QEXP.bracket(3)


def test_shifted_lattice():
    assert QUAD.x_k(1, 0) == Fraction(3, 4)          # x(1/2) = (1/2)(3/2)
    assert QUAD.step(0, 2) == QUAD.x(3) - QUAD.x(2) == 6
    assert Lattice.linear().x_k(2, 3) == 4


def test_grid_function_sites_and_restrict():
    g = GridFunction(Fraction(1, 2), [1, 2, 3, 4])
    assert g.sites == (Fraction(1, 2), Fraction(3, 2), Fraction(5, 2), Fraction(7, 2))
    assert g.at(Fraction(5, 2)) == 3
    assert g.restrict(Fraction(3, 2), Fraction(7, 2)).values == (2, 3)
    with pytest.raises(KeyError):
        g.at(1)
    with pytest.raises(WindowTooSmallError):
        g.restrict(Fraction(-1, 2), 3)


def test_plain_differences():
    g = GridFunction(0, [0, 1, 4, 9])
    assert delta_fwd(g).values == (1, 3, 5) and delta_fwd(g).origin == 0
    assert delta_bwd(g).origin == 1
    assert delta_mean(g).origin == Fraction(1, 2)
    with pytest.raises(WindowTooSmallError):
        delta_fwd(GridFunction(0, [1]))


@pytest.mark.parametrize("lat", [Lattice.linear(), QUAD, QEXP], ids=["linear", "quadratic", "q"])
@pytest.mark.parametrize("degree", [1, 2, 4])
def test_divided_difference_lowers_degree_on_shifted_lattice(lat, degree):
    # a degree-d polynomial in x(s) maps to a degree d-1 polynomial in x_1(s)
    sites = [Fraction(1 + i) for i in range(degree + 4)]
    f = GridFunction(sites[0], [lat.x(s) ** degree for s in sites])
    d = div_diff(f, lat, 0)
    coeffs, resid = fit([lat.x_k(1, s) for s in d.sites], list(d.values), degree - 1)
    assert resid == 0
    assert coeffs[-1] != 0


@given(st.lists(small, min_size=2, max_size=4), st.lists(small, min_size=2, max_size=4))
def test_product_rule_on_quadratic_lattice(fc, gc):
    sites = [Fraction(i) for i in range(1, 8)]
    xs = [QUAD.x(s) for s in sites]
    f = [sum(c * x ** k for k, c in enumerate(fc)) for x in xs]
    g = [sum(c * x ** k for k, c in enumerate(gc)) for x in xs]
    fg = div_diff(GridFunction(1, [a * b for a, b in zip(f, g)]), QUAD).values
    df = div_diff(GridFunction(1, f), QUAD).values
    dg = div_diff(GridFunction(1, g), QUAD).values
    for i in range(len(fg)):
        assert fg[i] == f[i + 1] * dg[i] + g[i] * df[i]


def test_backward_difference_skips_known_zeros():
    f = GridFunction(-2, [0, 0, 0, 5])
    d = div_diff_bwd(f, QUAD, 0, zero_before=1)
    assert d.values == (0, 0, Fraction(5, 2))
    with pytest.raises(DegenerateLatticeSiteError):
        div_diff_bwd(f, QUAD, 0)       # x(-1) = x(0) on s(s+1)


def test_mean_divided_difference_of_x_is_one():
    g = GridFunction(0, [QEXP.x(s) for s in range(5)])
    assert set(mean_div(g, QEXP).values) == {1}
