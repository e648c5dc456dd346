import csv
import io
import json
import os
import subprocess
import sys
from fractions import Fraction

import mpmath
import pytest

from ladderlattice import build_vmn, catalog_get, ortho_build
from ladderlattice.cli import main
from ladderlattice.field import as_rational


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_eval_hermite_at_zero(capsys):
    code, out, _ = run(capsys, "eval", "hermite", "--n", "2", "--m", "0", "--at", "0", "--format", "csv")
    assert code == 0 and rows(out) == [{"s": "0", "v": "-2"}]


def test_eval_charlier_degree_zero_is_constant(capsys):
    code, out, _ = run(capsys, "eval", "charlier", "--mu", "1", "--n", "0", "--m", "0", "--at", "0", "5", "9",
                       "--format", "csv")
    assert code == 0 and {r["v"] for r in rows(out)} == {"1"}


def test_eval_kravchuk_degree_beyond_support(capsys):
    code, _, err = run(capsys, "eval", "kravchuk", "--p", "0.5", "--N", "4", "--n", "5")
    assert code == 2 and "exceeds" in err


@pytest.mark.parametrize("argv", [
    ["eval", "nosuch", "--n", "1"],
    ["eval", "kravchuk", "--p", "2", "--n", "1"],
    ["eval", "hermite", "--n", "1", "--m", "2"],
    ["eval", "hermite", "--n", "1", "--bogus"],
    ["eval", "hermite"],
    ["ladder", "hermite", "--n", "0", "--direction", "lower"],
    ["verify", "--nmax", "2", "--family", "nosuch"],
    ["eval", "hermite", "--n", "1", "--precision", "5"],
])
def test_bad_input_exits_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_ladder_lower_hermite_matches_derivative(capsys):
    code, out, _ = run(capsys, "ladder", "hermite", "--n", "3", "--direction", "lower", "--format", "csv")
    assert code == 0
    h2 = lambda x: 4 * x * x - 2
    table = rows(out)
    assert table
    for r in table:
        s = as_rational(r["s"])
        h3 = 8 * s ** 3 - 12 * s
        assert as_rational(r["before"]) == h3
        # the lowering step maps H_3 to H_2 (H_3' = 6 H_2, and the ladder normalizes the factor away)
        assert as_rational(r["after"]) == as_rational(r["target"]) == h2(s)


def test_ladder_orthonormal_raise(capsys):
    code, out, _ = run(capsys, "ladder", "kravchuk", "--p", "1/3", "--N", "6", "--n", "2", "--direction", "raise",
                       "--orthonormal", "--format", "json")
    assert code == 0
    for r in json.loads(out):
        assert abs(mpmath.mpf(r["after"]) - mpmath.mpf(r["target"])) < mpmath.mpf("1e-28")


@pytest.mark.parametrize("family,params", [("kravchuk", ["--p", "1/3", "--N", "6"]), ("hermite", []),
                                           ("racah", [])])
def test_table_csv_round_trips_bit_exact(capsys, family, params):
    code, out, _ = run(capsys, "table", family, "--n", "3", "--m", "1", "--format", "csv", *params)
    assert code == 0
    fam = catalog_get(family, **{params[i][2:]: as_rational(params[i + 1]) for i in range(0, len(params), 2)})
    v, omega = build_vmn(fam, 1, 3), ortho_build(fam, 1, 3)
    table = rows(out)
    assert list(table[0]) == ["s", "x", "v", "omega"]
    for r in table:
        s = as_rational(r["s"])
        want_v = v.at(s)
        got_v = as_rational(r["v"]) if isinstance(want_v, Fraction) else mpmath.mpf(r["v"])
        assert got_v == want_v
        assert mpmath.mpf(r["omega"]) == omega.at(s)


def test_families_json_lists_catalog(capsys):
    code, out, _ = run(capsys, "families", "--format", "json")
    names = {e["name"] for e in json.loads(out)}
    assert code == 0 and {"hermite", "laguerre", "jacobi", "charlier", "meixner", "kravchuk", "hahn", "racah",
                          "qhahn"} <= names


def test_verify_passes_and_writes_json(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--family", "kravchuk", "--nmax", "3", "--mmax", "1", "--format", "json",
                       "--output", str(path))
    assert code == 0 and out == ""
    doc = json.loads(path.read_text())
    assert doc["summary"]["fail"] == 0 and doc["summary"]["total"] > 0


@pytest.mark.parametrize("flag", [["--fault-tau", "1e-6"], ["--fault-alpha", "1e-6"], ["--fault-beta", "1e-3"],
                                  ["--fault-sign"]])
def test_verify_fault_exits_1(capsys, flag):
    code, out, _ = run(capsys, "verify", "--family", "kravchuk", "--nmax", "3", "--mmax", "1", *flag)
    assert code == 1 and "FAIL" in out


def test_custom_family_catalog(capsys, tmp_path):
    entry = {"name": "kravchuk_custom", "lattice": {"kind": "linear"}, "support": [0, 7], "sigma": [0, 1],
             "tau": ["3", "-3/2"], "normalization_base": "1"}
    path = tmp_path / "cat.json"
    path.write_text(json.dumps({"families": [entry]}))
    code, out, _ = run(capsys, "eval", "kravchuk_custom", "--families", str(path), "--n", "2", "--format", "csv")
    assert code == 0 and len(rows(out)) == 7
    code, out, _ = run(capsys, "verify", "--families", str(path), "--nmax", "3", "--mmax", "1")
    assert code == 0 and "fail 0" in out
    bad = tmp_path / "bad.json"
    bad.write_text("[]")
    assert run(capsys, "families", "--families", str(bad))[0] == 2


def test_precision_env_var():
    argv = [sys.executable, "-m", "ladderlattice", "eval", "hermite", "--n", "2", "--at", "1/3", "--ortho",
            "--format", "csv"]
    short = subprocess.run(argv, capture_output=True, text=True, check=True)
    env = dict(os.environ, LADDERLATTICE_PRECISION="60")
    long = subprocess.run(argv, capture_output=True, text=True, check=True, env=env)
    a, b = rows(short.stdout)[0]["omega"], rows(long.stdout)[0]["omega"]
    assert len(b) > len(a) + 20
    assert abs(mpmath.mpf(a) - mpmath.mpf(b)) < mpmath.mpf("1e-32")
