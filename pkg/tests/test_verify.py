import csv
import io
import json

import mpmath
import pytest

from ladderlattice import SuiteConfig, catalog_get, orthogonality_check, run_suite
from ladderlattice.verify import CSV_FIELDS

SMALL = (("hermite", {}), ("kravchuk", {"p": "1/3", "N": 8}), ("racah", {}))


def small(**kw):
    base = dict(families=SMALL, n_max=3, m_max=1, ortho_n_max=3)
    base.update(kw)
    return SuiteConfig(**base)


@pytest.fixture(scope="module")
def report():
    return run_suite(small())


def test_small_suite_passes(report):
    assert report.passed
    s = report.summary()
    assert s["total"] == len(report.cells) > 100 and s["fail"] == 0


def test_every_identity_has_cells_on_every_lattice_class(report):
    ids = {"pearson", "eigenvalue", "leading-coefficient", "rodrigues-dual", "equation", "norm-product",
           "orthogonality", "recurrence", "raise", "lower", "ortho-raise", "ortho-lower", "factorization"}
    for fam in ("hermite", "kravchuk", "racah"):
        assert {c.identity for c in report.cells if c.family == fam} == ids


def test_rational_cells_are_held_to_zero(report):
    for c in report.cells:
        if c.field == "rational":
            assert c.tolerance == "0" and c.max_residual == "0"


def test_report_is_deterministic(report):
    again = run_suite(small())
    assert again.to_json() == report.to_json()
    assert again.to_csv() == report.to_csv()


def test_json_and_csv_layout(report):
    doc = json.loads(report.to_json())
    assert set(doc) == {"config", "environment", "summary", "cells"}
    assert set(doc["environment"]) == {"precision", "truncation_max_sites", "seed"}
    assert list(doc["cells"][0]) == list(CSV_FIELDS)
    rows = list(csv.DictReader(io.StringIO(report.to_csv())))
    assert len(rows) == len(report.cells)
    assert tuple(rows[0]) == CSV_FIELDS


def test_empty_family_list():
    r = run_suite(SuiteConfig(families=()))
    assert r.cells == [] and r.summary() == {"total": 0, "pass": 0, "fail": 0, "skipped": 0}


def test_construction_errors_become_failed_cells():
    r = run_suite(SuiteConfig(families=(("kravchuk", {"N": 3}),), n_max=5, m_max=0, ortho_n_max=0))
    bad = r.failures()
    assert bad and all("WindowTooSmallError" in c.note for c in bad)
    assert any(c.status == "pass" for c in r.cells)


def test_beta_fault_fails_recurrence_only_where_beta_enters():
    r = run_suite(small(families=SMALL[:2], faults={"beta_shift": 1e-3}))
    failed = {c.identity for c in r.failures()}
    assert "recurrence" in failed
    assert failed <= {"recurrence", "lower", "ortho-lower", "factorization"}


@pytest.mark.parametrize("fault", [{"tau_shift": 1e-6}, {"alpha_shift": 1e-6}, {"flip_rodrigues_sign": True}])
def test_each_fault_is_detected(fault):
    r = run_suite(small(families=SMALL[1:2], faults=fault))
    assert not r.passed


def test_claims_add_failing_cells_on_nonuniform_lattices():
    r = run_suite(small(families=SMALL[2:], claims=True))
    failed = {c.identity for c in r.failures()}
    assert {"adjointness", "factorization-printed", "ortho-raise-printed"} <= failed


def test_orthogonality_kravchuk_exact_zero():
    rep = orthogonality_check(catalog_get("kravchuk", p="1/2", N=4), 0, 4)
    assert all(e == 0 for row in rep.matrix for e in row)
    assert rep.max_relative == 0


def test_orthogonality_hermite_by_quadrature():
    rep = orthogonality_check(catalog_get("hermite"), 1, 6)
    assert rep.max_relative <= mpmath.mpf("1e-25")


def test_orthogonality_infinite_lattice_sum():
    rep = orthogonality_check(catalog_get("meixner"), 1, 5)
    assert rep.max_relative <= mpmath.mpf("1e-25")
