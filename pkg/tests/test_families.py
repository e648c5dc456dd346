import json
import math
from fractions import Fraction

import mpmath
import pytest

from ladderlattice import (
    ParameterError, PearsonError, UnknownFamilyError, build_yn, catalog_entries, catalog_get, catalog_names,
    load_catalog, norm_sq, norm_sq_direct, norm_sq_m,
)
from ladderlattice.families import PARAMETER_RANGES, integrate_poly, lattice_sum, pearson_defect
from ladderlattice.field import to_mpf
from ladderlattice.spectral import lambda_n

NINE = ["hermite", "laguerre", "jacobi", "charlier", "meixner", "kravchuk", "hahn", "racah", "qhahn"]


def close(a, b, tol="1e-28"):
    a, b = to_mpf(a), to_mpf(b)
    return abs(a - b) <= mpmath.mpf(tol) * max(1, abs(b))


def test_catalog_lists_nine_families():
    assert catalog_names()[:9] == NINE
    assert set(PARAMETER_RANGES) == set(NINE)
    entries = json.loads(json.dumps(catalog_entries()))
    assert [e["name"] for e in entries][:9] == NINE
    assert entries[7]["lattice"] == {"kind": "quadratic", "c1": "1", "c2": "1", "c3": "0"}


@pytest.mark.parametrize("name", NINE)
def test_catalog_defaults_satisfy_pearson(name):
    fam = catalog_get(name)
    d = pearson_defect(fam)
    assert d == 0 if fam.exact and not fam.continuous else d < 1e-25


@pytest.mark.parametrize("name,params", [
    ("kravchuk", {"p": 2}), ("meixner", {"mu": 1}), ("laguerre", {"alpha": -1}),
    ("hahn", {"N": "5/2"}), ("racah", {"a": 0}), ("qhahn", {"q": 1}), ("charlier", {"mu": 0}),
    ("hermite", {"alpha": 1}),
])
def test_bad_parameters_are_rejected(name, params):
    with pytest.raises(ParameterError):
        catalog_get(name, **params)


def test_unknown_family():
    with pytest.raises(UnknownFamilyError):
        catalog_get("legendre")


# closed-form squared norms, frozen from the classical tables
@pytest.mark.parametrize("n", range(6))
def test_hermite_norm(n):
    assert close(norm_sq(catalog_get("hermite"), n), 2 ** n * math.factorial(n) * mpmath.sqrt(mpmath.pi))


@pytest.mark.parametrize("n", range(6))
def test_laguerre_norm(n):
    a = Fraction(1, 2)
    assert close(norm_sq(catalog_get("laguerre", alpha=a), n), mpmath.gamma(n + 1.5) / math.factorial(n))


@pytest.mark.parametrize("n", range(6))
def test_jacobi_norm(n):
    a, b = mpmath.mpf(1) / 2, mpmath.mpf(3) / 2
    want = (2 ** (a + b + 1) * mpmath.gamma(n + a + 1) * mpmath.gamma(n + b + 1)
            / ((2 * n + a + b + 1) * mpmath.factorial(n) * mpmath.gamma(n + a + b + 1)))
    assert close(norm_sq(catalog_get("jacobi", alpha="1/2", beta="3/2"), n), want)


@pytest.mark.parametrize("n", range(6))
def test_charlier_norm(n):
    mu = Fraction(3, 2)
    assert close(norm_sq(catalog_get("charlier", mu=mu), n), math.factorial(n) * mu ** -n)


@pytest.mark.parametrize("n", range(6))
def test_meixner_norm(n):
    g, mu = Fraction(3, 2), Fraction(1, 3)
    poch = math.prod(g + j for j in range(n))
    assert close(norm_sq(catalog_get("meixner", gamma=g, mu=mu), n), poch * math.factorial(n) * mu ** -n)


@pytest.mark.parametrize("n", range(8))
def test_kravchuk_norm_exact(n):
    p, N = Fraction(1, 3), 12
    assert norm_sq(catalog_get("kravchuk", p=p, N=N), n) == math.comb(N, n) * (p / (1 - p)) ** n


def test_racah_weight_matches_gamma_form():
    fam = catalog_get("racah", alpha=1, beta="1/2", a=1, N=13)
    al, be, a, b = 1, mpmath.mpf(1) / 2, 1, 14
    G = mpmath.gamma

    def w(s):
        return (G(s + a + 1) * G(s + a - be + 1)
                / (G(s - a + 1) * G(s - a + be + 1) * G(b - s) * G(s + b + 1) * G(al + b - s) * G(s + al + b + 1)))

    for s in range(1, 14):
        assert close(fam.rho(s) / fam.rho(1), w(s) / w(1))
    assert fam.rho(0) == 0 and fam.rho(14) == 0


def test_moments_agree_with_quadrature():
    fam = catalog_get("jacobi", alpha="1/2", beta="3/2")
    for k in range(5):
        quad = mpmath.quad(lambda x: x ** k * fam.rho(x), [-1, 1])
        assert close(integrate_poly(fam, 0, (0,) * k + (1,)), quad, "1e-25")


@pytest.mark.parametrize("name", ["kravchuk", "hahn", "racah", "qhahn"])
def test_norm_product_law_exact_on_finite_support(name):
    fam = catalog_get(name)
    for m in range(3):
        for n in range(m, 6):
            assert norm_sq_m(fam, m, n) == norm_sq_direct(fam, m, n)


def test_norm_product_law_charlier():
    fam = catalog_get("charlier", mu="3/2")
    assert close(norm_sq_m(fam, 2, 4), norm_sq_direct(fam, 2, 4), "1e-25")
    assert close(norm_sq_m(fam, 2, 4),
                 norm_sq(fam, 4) * (lambda_n(fam, 4) - lambda_n(fam, 0)) * (lambda_n(fam, 4) - lambda_n(fam, 1)))


def test_lattice_sum_of_weight_is_one_for_poisson():
    fam = catalog_get("charlier", mu=2)
    assert close(lattice_sum(fam, 0, lambda s: 1), 1)


def test_perturbed_family_fails_pearson():
    fam = catalog_get("kravchuk").perturbed(Fraction(1, 10 ** 6))
    assert pearson_defect(fam) > 0


def _kravchuk_entry(base=-1, a=0):
    p, N = Fraction(1, 3), 6
    return {"name": "kravchuk_json", "lattice": {"kind": "linear"}, "support": [a, N + 1],
            "sigma": [0, 1], "tau": [str(N * p / (1 - p)), str(-1 / (1 - p))], "normalization_base": base}


def test_custom_family_reproduces_catalog(tmp_path):
    path = tmp_path / "families.json"
    path.write_text(json.dumps({"families": [_kravchuk_entry()]}))
    assert load_catalog(str(path)) == ["kravchuk_json"]
    custom, ref = catalog_get("kravchuk_json"), catalog_get("kravchuk", p="1/3", N=6)
    for n in range(5):
        yc, yr = build_yn(custom, n), build_yn(ref, n)
        # B_n = (-1)**n here and (-1)**n / n! in the catalog
        assert [a / b for a, b in zip(yc.samples, yr.samples) if b] == [math.factorial(n)] * sum(1 for b in yr.samples if b)


def test_custom_family_rejects_bad_support(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"families": [_kravchuk_entry(a=1)]}))
    with pytest.raises((PearsonError, ParameterError)):
        load_catalog(str(path))


def test_custom_catalog_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ParameterError):
        load_catalog(str(path))
    path.write_text(json.dumps({"families": [{"name": "x"}]}))
    with pytest.raises(ParameterError):
        load_catalog(str(path))
