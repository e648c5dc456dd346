"""Verification suite: identity cells, oracles and report serialization.

Every cell evaluates one identity for one family and one ``(m, n)`` and
compares the largest defect with a tolerance.  Exact computations are
held to an exact zero.  Cells are produced in a fixed order, so reports
are reproducible byte for byte.
"""
import csv
import io
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import mpmath

from . import faults, ladder, orthonormal, rodrigues
from .errors import LadderLatticeError
from .families import SUM_CAP, catalog_get, lattice_sum, norm_sq_direct, norm_sq_m, pearson_defect
from .field import format_scalar, is_exact, relative_deviation, to_mpf
from .poly import polymul
from .spectral import lambda_n, lambda_n_accumulated

DEFAULT_FAMILIES = (
    ("hermite", {}), ("laguerre", {"alpha": "1/2"}), ("jacobi", {"alpha": "1/2", "beta": "3/2"}),
    ("charlier", {"mu": "3/2"}), ("meixner", {"gamma": "3/2", "mu": "1/3"}),
    ("kravchuk", {"p": "1/3", "N": 12}), ("hahn", {}), ("racah", {}), ("qhahn", {}),
)

DEFAULT_TOLERANCES = {
    "exact": 0,
    "equation": "1e-25",
    "norm": "1e-22",
    "ortho": "1e-18",
}

CSV_FIELDS = ("identity", "family", "params", "m", "n", "field", "max_residual", "tolerance", "status", "note")


@dataclass
class SuiteConfig:
    """Configuration of :func:`run_suite`.

    Attributes
    ----------
    families : sequence of (name, params)
    n_max, m_max : int
        Range of the polynomial identities.
    ortho_n_max : int
        Range of the orthonormal-operator and factorization identities.
    tolerances : dict
        Keys ``exact`` (rational field, normally 0), and the float
        tolerances ``equation``, ``norm``, ``ortho``.
    claims : bool
        Also evaluate the closed forms that do not hold on every lattice
        (literal orthonormal operators, site-local factorization,
        adjointness); their cells may fail.
    faults : dict
        Fault injection: ``tau_shift`` perturbs the catalog ``tau``,
        ``alpha_shift``, ``beta_shift`` and ``flip_rodrigues_sign`` are passed to
        :func:`ladderlattice.faults.inject`.
    seed : int
        Recorded in the report; the suite itself is deterministic.
    """

    families: tuple = DEFAULT_FAMILIES
    n_max: int = 8
    m_max: int = 2
    ortho_n_max: int = 8
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    claims: bool = False
    faults: dict = field(default_factory=dict)
    seed: int = 0


@dataclass(frozen=True)
class Cell:
    """One identity evaluated for one family and one ``(m, n)``.

    ``field`` is ``rational`` when the residual was computed exactly and
    ``float`` otherwise.  ``max_residual`` and ``tolerance`` are strings so
    that exact values survive serialization.
    """

    identity: str
    family: str
    params: str
    m: object
    n: object
    field: str
    max_residual: str
    tolerance: str
    status: str
    note: str = ""


@dataclass
class VerificationReport:
    """Result of :func:`run_suite`."""

    cells: list
    config: dict
    environment: dict

    @property
    def passed(self):
        return all(c.status != "fail" for c in self.cells)

    def summary(self):
        out = {"total": len(self.cells)}
        for status in ("pass", "fail", "skipped"):
            out[status] = sum(c.status == status for c in self.cells)
        return out

    def failures(self):
        return [c for c in self.cells if c.status == "fail"]

    def to_json(self):
        doc = {"config": self.config, "environment": self.environment, "summary": self.summary(),
               "cells": [asdict(c) for c in self.cells]}
        return json.dumps(doc, indent=2)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for c in self.cells:
            w.writerow({k: ("" if v is None else v) for k, v in asdict(c).items()})
        return buf.getvalue()


# -- oracles -------------------------------------------------------------------------

@dataclass(frozen=True)
class OrthogonalityReport:
    """Gram residuals ``<v_mk, v_ml> - delta_kl d_mk**2`` for ``m <= k, l <= n_max``.

    ``matrix[i][j]`` belongs to ``k = m + i``, ``l = m + j`` and is exact on
    finite supports.  ``max_relative`` scales each entry by ``d_mk d_ml``.
    """

    m: int
    matrix: tuple
    max_relative: object


def _quad_product(family, m, p, q):
    lo = -mpmath.inf if family.a is None else to_mpf(family.a)
    hi = mpmath.inf if family.b is None else to_mpf(family.b)
    pts = [lo, 0, hi] if (family.a is None and family.b is None) else [lo, hi]
    with mpmath.workdps(mpmath.mp.dps + 10):
        prod = [to_mpf(c) for c in reversed(polymul(p.coeffs, q.coeffs))]
        val = mpmath.quad(lambda x: mpmath.polyval(prod, x) * family.rho_m(m, x), pts)
    return +val


def inner_product(family, m, k, l):
    """``<v_mk, v_ml>`` with weight ``rho_m``, by quadrature or direct summation."""
    p, q = rodrigues.build_vmn(family, m, k), rodrigues.build_vmn(family, m, l)
    if family.continuous:
        return _quad_product(family, m, p, q)
    return lattice_sum(family, m, lambda s: p.at(s) * q.at(s))


def _difference(a, b):
    if is_exact(a) and is_exact(b):
        return a - b
    return to_mpf(a) - to_mpf(b)


def orthogonality_check(family, m, n_max):
    """Gram matrix of ``v_mk`` under ``rho_m`` minus the product-law ``diag(d_mk**2)``.

    Continuous families are integrated with tanh-sinh quadrature, which is
    independent of the moment formulas behind the norms; discrete families
    are summed directly.
    """
    ks = range(m, n_max + 1)
    norms = {k: norm_sq_m(family, m, k) for k in ks}
    gram = {}
    for k in ks:
        for l in ks:
            if l < k:
                gram[k, l] = gram[l, k]
                continue
            val = inner_product(family, m, k, l)
            gram[k, l] = _difference(val, norms[k]) if k == l else val
    matrix = tuple(tuple(gram[k, l] for l in ks) for k in ks)
    worst = Fraction(0)
    for k in ks:
        for l in ks:
            e = gram[k, l]
            if is_exact(e) and e == 0:
                continue
            worst = max(to_mpf(worst), abs(to_mpf(e)) / mpmath.sqrt(abs(to_mpf(norms[k]) * to_mpf(norms[l]))))
    return OrthogonalityReport(m, matrix, worst)


def norm_product_defect(family, m, n):
    """Relative gap between the product-law ``d_mn**2`` and a direct evaluation.

    The direct value is a lattice sum, or a quadrature in the continuous class.
    """
    law = norm_sq_m(family, m, n)
    if family.continuous:
        direct = _quad_product(family, m, rodrigues.build_vmn(family, m, n), rodrigues.build_vmn(family, m, n))
    else:
        direct = norm_sq_direct(family, m, n)
    return relative_deviation([law], [direct])


def leading_defect(family, n):
    p = rodrigues.build_yn(family, n)
    return relative_deviation([rodrigues.leading_coeffs(p)[0]], [rodrigues.leading_closed(family, n)])


# -- suite ---------------------------------------------------------------------------

def _tol(value):
    if isinstance(value, (int, Fraction)) or value in ("0", 0):
        return Fraction(value)
    return mpmath.mpf(value)


def _status(defect, tol):
    if is_exact(defect) and is_exact(tol):
        return "pass" if defect <= tol else "fail"
    return "pass" if to_mpf(defect) <= to_mpf(tol) else "fail"


def _fmt(value):
    if is_exact(value):
        return format_scalar(Fraction(value))
    return mpmath.nstr(to_mpf(value), 6)


class _Collector:
    def __init__(self, config):
        self.cells = []
        self.tols = {k: _tol(v) for k, v in config.tolerances.items()}

    def run(self, identity, family, m, n, tol_key, compute):
        """Evaluate one cell; ``tol_key`` names the float tolerance of the identity."""
        float_tol = self.tols["equation" if tol_key == "exact" else tol_key]
        head = (identity, family.name, _params(family), m, n)
        try:
            defect = compute()
        except (LadderLatticeError, ArithmeticError, ValueError) as exc:
            self.cells.append(Cell(*head, "float", "", _fmt(float_tol), "fail", f"{type(exc).__name__}: {exc}"))
            return
        if defect is None:
            self.cells.append(Cell(*head, "float", "", _fmt(float_tol), "skipped", "not applicable"))
            return
        if is_exact(defect):
            kind, tol = "rational", self.tols["exact"]
        else:
            kind, tol = "float", float_tol
        self.cells.append(Cell(*head, kind, _fmt(defect), _fmt(tol), _status(defect, tol)))


def _params(family):
    return ";".join(f"{k}={format_scalar(v) if is_exact(v) else v}" for k, v in family.params)


def _family_cells(col, family, cfg):
    col.run("pearson", family, None, None, "exact", lambda: pearson_defect(family))
    for n in range(cfg.n_max + 1):
        col.run("eigenvalue", family, 0, n, "exact",
                lambda n=n: relative_deviation([lambda_n(family, n)], [lambda_n_accumulated(family, n)]))
        col.run("leading-coefficient", family, 0, n, "exact", lambda n=n: leading_defect(family, n))
    for n in range(cfg.n_max + 1):
        for m in range(min(n, cfg.m_max) + 1):
            col.run("rodrigues-dual", family, m, n, "exact",
                    lambda m=m, n=n: rodrigues.build_vmn(family, m, n).chain_deviation)
            col.run("equation", family, m, n, "equation",
                    lambda m=m, n=n: rodrigues.equation_residual(rodrigues.build_vmn(family, m, n)))
            col.run("norm-product", family, m, n, "norm", lambda m=m, n=n: norm_product_defect(family, m, n))
    for m in range(cfg.m_max + 1):
        if m <= cfg.n_max:
            col.run("orthogonality", family, m, cfg.n_max, "norm",
                    lambda m=m: orthogonality_check(family, m, cfg.n_max).max_relative)
    for n in range(cfg.n_max):
        for m in range(min(n, cfg.m_max) + 1):
            col.run("recurrence", family, m, n, "equation", lambda m=m, n=n: ladder.recurrence_residual(family, m, n))
            col.run("raise", family, m, n, "equation", lambda m=m, n=n: ladder.ladder_defect(family, m, n, "raise"))
            if n > m:
                col.run("lower", family, m, n, "equation", lambda m=m, n=n: ladder.ladder_defect(family, m, n, "lower"))
    for n in range(cfg.ortho_n_max):
        for m in range(min(n, cfg.m_max) + 1):
            col.run("ortho-raise", family, m, n, "ortho",
                    lambda m=m, n=n: orthonormal.ortho_ladder_defect(family, m, n, "raise"))
            if n > m:
                col.run("ortho-lower", family, m, n, "ortho",
                        lambda m=m, n=n: orthonormal.ortho_ladder_defect(family, m, n, "lower"))
            col.run("factorization", family, m, n, "ortho", lambda m=m, n=n: _fact(family, m, n, "derived"))
    if cfg.claims:
        _claim_cells(col, family, cfg)


def _fact(family, m, n, form):
    d = orthonormal.factorization_check(family, m, n, form)
    return max(d.raise_then_lower, d.lower_then_raise)


def _claim_cells(col, family, cfg):
    for n in range(cfg.ortho_n_max):
        for m in range(min(n, cfg.m_max) + 1):
            if not family.continuous:
                col.run("ortho-raise-printed", family, m, n, "ortho",
                        lambda m=m, n=n: orthonormal.ortho_ladder_defect(family, m, n, "raise", "printed"))
            col.run("factorization-printed", family, m, n, "ortho", lambda m=m, n=n: _fact(family, m, n, "printed"))
    if family.finite or family.continuous:
        for m in range(cfg.m_max + 1):
            col.run("adjointness", family, m, cfg.ortho_n_max, "ortho",
                    lambda m=m: orthonormal.adjointness_defect(family, m, cfg.ortho_n_max))


def _config_dict(cfg):
    d = asdict(cfg)
    d["families"] = [[name, {k: str(v) for k, v in params.items()}] for name, params in cfg.families]
    d["tolerances"] = {k: str(v) for k, v in cfg.tolerances.items()}
    return d


def _environment(cfg):
    return {"precision": mpmath.mp.dps, "truncation_max_sites": SUM_CAP, "seed": cfg.seed}


def run_suite(config=None):
    """Evaluate every identity cell for the configured families.

    Returns
    -------
    VerificationReport
    """
    cfg = config or SuiteConfig()
    col = _Collector(cfg)
    fault_kw = {k: v for k, v in cfg.faults.items() if k != "tau_shift"}
    tau_shift = cfg.faults.get("tau_shift")
    with faults.inject(**fault_kw):
        for name, params in cfg.families:
            family = catalog_get(name, **params)
            if tau_shift:
                family = family.perturbed(mpmath.mpf(tau_shift) if not is_exact(tau_shift) else tau_shift)
            _family_cells(col, family, cfg)
    return VerificationReport(col.cells, _config_dict(cfg), _environment(cfg))
