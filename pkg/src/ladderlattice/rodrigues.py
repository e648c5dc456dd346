"""Rodrigues construction of ``y_n`` and of its difference-derivatives ``v_mn``.

``v_mn`` is the m-th difference-derivative of ``y_n`` and satisfies the
m-th shifted equation.  Two independent routes are computed and compared:

1. the Rodrigues formula for ``v_mn`` with weight ``rho_n`` and the
   nested backward divided differences on the lattices ``x_n .. x_{m+1}``;
2. ``m`` forward divided differences of ``y_n`` on ``x_0 .. x_{m-1}``.

Each result is stored as a :class:`PolyOnLattice`, which keeps the samples
together with the coefficients in powers of ``x_m(s)``.
"""
from dataclasses import dataclass
from functools import lru_cache

import mpmath

from . import faults
from .errors import ConstructionMismatchError, CoefficientMismatchError, WindowTooSmallError
from .field import is_exact, max_abs, relative_deviation, to_mpf
from .lattice import GridFunction, div_diff, div_diff_bwd
from .poly import fit, polyadd, polyder, polymul, polyscale, polyval, trim
from .spectral import lambda_ratio, mu_mn, tau_m

FLOAT_TOL = mpmath.mpf("1e-25")


@dataclass(frozen=True)
class RodriguesConstants:
    """``A_mn`` and ``B_n`` of the Rodrigues formula for ``v_mn``."""

    A_mn: object
    B_n: object


@dataclass(frozen=True, eq=False)
class PolyOnLattice:
    """``v_mn`` sampled on its sites, with its expansion in ``x_m(s)``.

    Attributes
    ----------
    family : FamilySpec
    m, n : int
    sites : tuple
    samples : tuple
    coeffs : tuple
        Ascending coefficients in powers of ``x_m(s)`` (of ``x`` when continuous).
    chain_deviation : scalar
        Relative disagreement between the two constructions.
    """

    family: object
    m: int
    n: int
    sites: tuple
    samples: tuple
    coeffs: tuple
    chain_deviation: object = 0

    @property
    def degree(self):
        return self.n - self.m

    def at(self, s):
        """Value at any site, from the coefficient expansion."""
        return polyval(self.coeffs, self.family.x_m(self.m, s))

    def grid(self):
        return GridFunction(self.sites[0], self.samples)


def rodrigues_constants(family, m, n):
    """``A_mn = [n]!/[n-m]! prod_{k<m} (-lambda_{n+k}/[n+k])`` and ``B_n``.

    The product form is cross-checked against ``(-1)**m prod_{k<m} mu_kn``.
    """
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    lat = family.lattice
    A = lat.bracket_factorial(n) / lat.bracket_factorial(n - m)
    for k in range(m):
        A = A * -lambda_ratio(family, n + k)
    alt = (-1) ** m
    for k in range(m):
        alt = alt * mu_mn(family, k, n)
    if is_exact(A) and is_exact(alt):
        same = A == alt
    else:
        same = abs(to_mpf(A) - to_mpf(alt)) <= FLOAT_TOL * max(1, abs(to_mpf(alt)))
    if not same:
        raise CoefficientMismatchError(f"A_{m}{n}: {A} vs {alt}")
    if faults.active().flip_rodrigues_sign and m > 0:
        A = -A
    return RodriguesConstants(A, family.normalization(n))


def leading_closed(family, n):
    """Leading coefficient of ``y_n``: ``B_n prod_{k<n} (-lambda_{n+k}/[n+k])``."""
    out = family.normalization(n)
    for k in range(n):
        out = out * -lambda_ratio(family, n + k)
    return out


def leading_coeffs(p):
    """Top two coefficients ``(a, b)`` of ``p`` in powers of ``x_m``."""
    c = p.coeffs
    return c[p.degree], (c[p.degree - 1] if p.degree >= 1 else 0)


def _deviation(u, v):
    return relative_deviation(u, v)


def _accept(dev, exact):
    return dev == 0 if exact else dev <= FLOAT_TOL


# -- continuous class ------------------------------------------------------

def _tau_poly(family, k):
    sp = family.sigma_poly
    dsig = polyder(sp) if len(sp) > 1 else (0,)
    return polyadd(family.tau_poly, polyscale(dsig, k))


def _continuous_chain(family, m, n):
    """Polynomial ``P`` with ``d^{n-m}/dx^{n-m} rho_n = P rho_m``."""
    p = (1,)
    for j in range(n - m):
        p = polyadd(polymul(polyder(p), family.sigma_poly), polymul(p, _tau_poly(family, n - j - 1)))
    return trim(p)


def _build_continuous(family, m, n):
    rc = rodrigues_constants(family, m, n)
    direct = polyscale(_continuous_chain(family, m, n), rc.A_mn * rc.B_n)
    rc0 = rodrigues_constants(family, 0, n)
    y = polyscale(_continuous_chain(family, 0, n), rc0.A_mn * rc0.B_n)
    chained = polyder(y, m)
    width = max(len(direct), len(chained))
    pad = lambda c: tuple(c) + (0,) * (width - len(c))
    dev = _deviation(pad(direct), pad(chained))
    if not _accept(dev, True):
        raise ConstructionMismatchError(f"{family.describe()} v_{m}{n}: Rodrigues and derivative chain differ by {dev}")
    coeffs = tuple(direct) + (0,) * (n - m + 1 - len(direct))
    sites = family.sites(m)
    return PolyOnLattice(family, m, n, sites, tuple(polyval(coeffs, s) for s in sites), coeffs[: n - m + 1], dev)


# -- discrete lattices -----------------------------------------------------

def _rodrigues_samples(family, m, n, rc):
    """``A_mn B_n / rho_m(s) * nabla/nabla x_{m+1} ... nabla/nabla x_n [rho_n]`` on ``sites(m)``."""
    sites = family.sites(m)
    start = family.a - (n - m)
    count = len(sites) + (n - m)
    f = GridFunction(start, [family.rho_m(n, start + i) for i in range(count)])
    for k in range(n, m, -1):
        f = div_diff_bwd(f, family.lattice, k, zero_before=family.a)
    scale = rc.A_mn * rc.B_n
    return tuple(scale * f.at(s) / family.rho_m(m, s) for s in sites)


def _build_discrete(family, m, n):
    sites = family.sites(m)
    if len(sites) < n - m + 1:
        raise WindowTooSmallError(f"{family.describe()}: {len(sites)} sites cannot hold v_{m}{n}")
    rc = rodrigues_constants(family, m, n)
    direct = _rodrigues_samples(family, m, n, rc)
    if m == 0:
        chained = direct
    else:
        y = build_vmn(family, 0, n)
        g = y.grid()
        for k in range(m):
            g = div_diff(g, family.lattice, k)
        chained = g.values
    dev = _deviation(direct, chained)
    if not _accept(dev, family.exact):
        raise ConstructionMismatchError(f"{family.describe()} v_{m}{n}: Rodrigues and difference chain differ by {dev}")
    xs = [family.x_m(m, s) for s in sites]
    coeffs, res = fit(xs, direct, n - m)
    scale = max(max_abs(direct), 1)
    if not (res == 0 if family.exact else res <= FLOAT_TOL * scale * 1e6):
        raise ConstructionMismatchError(f"{family.describe()} v_{m}{n}: samples are not a degree {n - m} polynomial in x_{m}")
    return PolyOnLattice(family, m, n, sites, tuple(direct), tuple(coeffs), dev)


@lru_cache(maxsize=None)
def _cached_build(family, m, n, fault_state):
    if family.continuous:
        return _build_continuous(family, m, n)
    return _build_discrete(family, m, n)


def build_vmn(family, m, n):
    """``v_mn`` as a :class:`PolyOnLattice`.

    Raises
    ------
    ConstructionMismatchError
        If the Rodrigues and difference-chain constructions disagree.
    WindowTooSmallError
        If the support has fewer than ``n - m + 1`` sites.
    """
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    return _cached_build(family, m, n, faults.active())


def build_yn(family, n):
    """The polynomial solution ``y_n`` of the hypergeometric equation."""
    return build_vmn(family, 0, n)


def clear_caches():
    _cached_build.cache_clear()


# -- equation residuals ----------------------------------------------------

def equation_residual(p):
    """Relative residual of the m-th shifted equation on ``p``'s sites.

    ``sigma Delta/Delta x_m(s-1/2)[nabla v/nabla x_m] + tau_m Delta v/Delta x_m + mu_mn v``
    in the discrete case, ``sigma v'' + tau_m v' + mu_mn v`` in the continuous one.
    """
    family, m, n = p.family, p.m, p.n
    mu = mu_mn(family, m, n)
    if family.continuous:
        c = p.coeffs
        terms = [polymul(family.sigma_poly, polyder(c, 2)), polymul(_tau_poly(family, m), polyder(c)),
                 polyscale(c, mu)]
        total = (0,)
        for t in terms:
            total = polyadd(total, t)
        scale = max(max_abs(t) for t in terms)
        top = max_abs(total)
        return (top / scale if scale else top) if not all(is_exact(v) for v in total) else \
            (max(abs(v) for v in total) / max(max(abs(v) for v in t) for t in terms) if scale else 0)
    worst = 0
    scale = 0
    for s in p.sites:
        v0, vp, vm = p.at(s), p.at(s + 1), p.at(s - 1)
        nab_hi = (vp - v0) / family.nabla_x(m, s + 1)
        nab_lo = (v0 - vm) / family.nabla_x(m, s)
        t1 = family.sigma(s) * (nab_hi - nab_lo) / family.dx_half(m, s)
        t2 = tau_m(family, m, s) * nab_hi
        t3 = mu * v0
        r = t1 + t2 + t3
        worst = max(worst, abs(r)) if is_exact(r) and is_exact(worst) else max(to_mpf(abs(r)), to_mpf(worst))
        sc = max(abs(to_mpf(t1)), abs(to_mpf(t2)), abs(to_mpf(t3)))
        scale = max(scale, sc)
    if is_exact(worst):
        if worst == 0:
            return 0
        return to_mpf(worst) / scale
    return worst / scale if scale else worst
