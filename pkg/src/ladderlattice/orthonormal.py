"""Orthonormal functions ``Omega_mn = d_mn**-1 sqrt(rho_m) v_mn`` and their ladder operators.

On a lattice write ``T(s) = tau_{m-1}(s) Delta x_{m-1}(s - 1/2)``, so that
``sigma + T`` is the weight ratio partner ``rho_m(s-1)/rho_m(s) = sigma/(sigma+T)``,
and ``P(s) = sqrt(sigma (sigma + T))``.  The operators are

``L+ = {lam(n+m) tau_n/tau'_n + sqrt(sigma) tau_{m-1}/(sqrt(sigma) + sqrt(sigma+T))} - P nabla/nabla x_m``

``L- = {-lam(n+m) tau_n/tau'_n + lam(2n)(X - beta) - sqrt(sigma) tau_{m-1}/(sqrt(sigma) + sqrt(sigma+T))} + P nabla/nabla x_m``

and in the continuous class the middle term is ``tau_{m-1}/2``, ``P = sigma`` and
the difference quotient is a derivative.  They map ``Omega_mn`` to multiples
of ``Omega_{m,n+1}`` and ``Omega_{m,n-1}``.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from . import faults
from .families import norm_sq_m
from .field import max_abs, relative_deviation, to_mpf
from .ladder import ladder_coeffs, recurrence_variable
from .rodrigues import build_vmn
from .spectral import lambda_ratio, mu_mn, tau_m, tau_m_prime

HALF = mpmath.mpf(1) / 2


@dataclass(frozen=True)
class Samples:
    """Values of a function on a list of sites."""

    sites: tuple
    values: tuple


@dataclass(frozen=True, eq=False)
class OrthoFunction:
    """``Omega_mn(s) = d_mn**-1 sqrt(rho_m(s)) v_mn(s)``, callable at any site."""

    family: object
    m: int
    n: int
    norm: object
    poly: object

    @property
    def sites(self):
        return self.poly.sites

    def weight_root(self, s):
        w = to_mpf(self.family.rho_m(self.m, s)) * to_mpf(self.family.rho_scale)
        return mpmath.sqrt(w) if w > 0 else mpmath.mpf(0)

    def at(self, s):
        r = self.weight_root(s)
        if r == 0:
            return r
        return r * to_mpf(self.poly.at(s)) / self.norm

    __call__ = at

    def samples(self):
        return Samples(self.sites, tuple(self.at(s) for s in self.sites))


@lru_cache(maxsize=None)
def _cached_ortho(family, m, n, fault_state):
    d = mpmath.sqrt(to_mpf(norm_sq_m(family, m, n)))
    return OrthoFunction(family, m, n, d, build_vmn(family, m, n))


def ortho_build(family, m, n):
    """The orthonormal function ``Omega_mn`` (``psi_mn`` in the continuous class)."""
    return _cached_ortho(family, m, n, faults.active())


def clear_caches():
    _cached_ortho.cache_clear()


# -- pointwise ingredients -----------------------------------------------------

def _sigma(family, s):
    return to_mpf(family.sigma(s))


def _partner(family, m, s):
    """``sigma + T`` with ``T = tau_{m-1}(s) Delta x_{m-1}(s - 1/2)``."""
    return to_mpf(family.sigma(s) + tau_m(family, m - 1, s) * family.dx_half(m - 1, s))


def _root(v):
    # tiny negative values at the support edge are rounding noise
    return mpmath.sqrt(v) if v > 0 else mpmath.mpf(0)


def _middle(family, m, s):
    sg = _sigma(family, s)
    rs = _root(sg)
    den = rs + _root(_partner(family, m, s))
    return rs * to_mpf(tau_m(family, m - 1, s)) / den if den else mpmath.mpf(0)


def _middle_printed(family, m, s, lower):
    # literal transcription of the printed lattice operators
    sg = _sigma(family, s)
    rs = _root(sg)
    inner = _root(to_mpf(family.sigma(s) + tau_m(family, m - 1, s) * family.dx_half(m, s)))
    den = inner if lower else rs + inner
    ratio = to_mpf(family.nabla_x(m, s + Fraction(1, 2))) / to_mpf(family.nabla_x(0, s))
    return rs * to_mpf(tau_m(family, m - 1, s)) / den * ratio if den else mpmath.mpf(0)


def _radical(family, m, s):
    return _root(_sigma(family, s) * _partner(family, m, s))


@dataclass(frozen=True, eq=False)
class LadderOperator:
    """``L+`` or ``L-`` for the orthonormal functions of index ``(m, n)``.

    Parameters
    ----------
    direction : {'raise', 'lower'}
    family : FamilySpec
    m, n : int
    variant : {'derived', 'printed'}
        ``printed`` keeps the step ratio and the mixed lattice shifts of the
        closed forms usually quoted for non-uniform lattices; it is kept for
        comparison only.
    """

    direction: str
    family: object
    m: int
    n: int
    variant: str = "derived"

    def __post_init__(self):
        if self.direction not in ("raise", "lower"):
            raise ValueError("direction must be 'raise' or 'lower'")
        if self.variant not in ("derived", "printed"):
            raise ValueError("variant must be 'derived' or 'printed'")

    @property
    def coeffs(self):
        return ladder_coeffs(self.family, self.m, self.n)

    def multiplier(self, s):
        """The curly-bracket coefficient of ``Omega(s)``."""
        fam, m, n, c = self.family, self.m, self.n, self.coeffs
        ratio = to_mpf(c.lam_nm) * to_mpf(tau_m(fam, n, s)) / to_mpf(c.tau_n_prime)
        if fam.continuous:
            mid = HALF * to_mpf(tau_m(fam, m - 1, s))
        elif self.variant == "printed":
            mid = _middle_printed(fam, m, s, self.direction == "lower")
        else:
            mid = _middle(fam, m, s)
        if self.direction == "raise":
            return ratio + mid
        return -ratio + to_mpf(c.lam_2n) * (to_mpf(recurrence_variable(fam, m, s)) - to_mpf(c.beta)) - mid

    def diff_coeff(self, s):
        """Coefficient of the difference quotient (or derivative)."""
        fam = self.family
        sign = -1 if self.direction == "raise" else 1
        if fam.continuous:
            return sign * _sigma(fam, s)
        return sign * _radical(fam, self.m, s)

    def _quotient(self, f, s):
        fam = self.family
        if fam.continuous:
            return mpmath.diff(f, to_mpf(s))
        den = fam.nabla_x(0, s) if self.variant == "printed" else fam.nabla_x(self.m, s)
        return (f(s) - f(s - 1)) / to_mpf(den)

    def __call__(self, f):
        """The function ``s -> (L f)(s)``."""
        def g(s):
            return self.multiplier(s) * f(s) + self.diff_coeff(s) * self._quotient(f, s)
        return g

    def image_scale(self):
        """``k`` with ``L Omega_mn = k Omega_{m,n+-1}``."""
        c = self.coeffs
        d = ortho_build(self.family, self.m, self.n).norm
        if self.direction == "raise":
            d2 = ortho_build(self.family, self.m, self.n + 1).norm
            return to_mpf(c.alpha) * to_mpf(c.lam_2n) * d2 / d
        d2 = ortho_build(self.family, self.m, self.n - 1).norm
        return to_mpf(c.gamma) * to_mpf(c.lam_2n) * d2 / d


def apply_L(op, f):
    """Samples of ``op`` applied to an orthonormal function on its sites."""
    g = op(f)
    return Samples(f.sites, tuple(g(s) for s in f.sites))


def ortho_ladder_defect(family, m, n, direction, variant="derived"):
    """Relative deviation of ``L Omega_mn`` from the scaled ``Omega_{m,n+-1}``."""
    op = LadderOperator(direction, family, m, n, variant)
    f = ortho_build(family, m, n)
    target = ortho_build(family, m, n + 1 if direction == "raise" else n - 1)
    k = op.image_scale()
    got = apply_L(op, f).values
    want = [k * target.at(s) for s in f.sites]
    return relative_deviation(got, want)


# -- adjointness ------------------------------------------------------------------

def inner(family, m, f, g):
    """Unit-weight scalar product ``sum f g Delta x_m(s - 1/2)`` (an integral when continuous)."""
    if family.continuous:
        lo = -mpmath.inf if family.a is None else to_mpf(family.a)
        hi = mpmath.inf if family.b is None else to_mpf(family.b)
        pts = [lo, 0, hi] if (family.a is None and family.b is None) else [lo, hi]
        return mpmath.quad(lambda x: f(x) * g(x), pts)
    if family.b is None:
        raise ValueError("unit-weight products are only summed on finite supports")
    total = mpmath.mpf(0)
    for s in family.sites(m):
        total += f(s) * g(s) * to_mpf(family.dx_half(m, s))
    return total


def adjointness_defect(family, m, n_max):
    """``max |<L+(l) Omega_l, Omega_{l+1}> - <Omega_l, L-(l+1) Omega_{l+1}>|`` over ``m <= l < n_max``."""
    worst = mpmath.mpf(0)
    for l in range(m, n_max):
        lo, hi = ortho_build(family, m, l), ortho_build(family, m, l + 1)
        up = LadderOperator("raise", family, m, l)(lo)
        down = LadderOperator("lower", family, m, l + 1)(hi)
        d = abs(inner(family, m, up, hi) - inner(family, m, lo, down))
        worst = max(worst, d)
    return worst


# -- factorization ------------------------------------------------------------------

def hyper_operator(family, m, n):
    """``H f = sqrt(rho_m) D[f / sqrt(rho_m)]`` with ``D`` the m-th shifted equation at index ``n``.

    ``H Omega_mk = (lambda_n - lambda_k) Omega_mk``.
    """
    mu = to_mpf(mu_mn(family, m, n))
    probe = ortho_build(family, m, m)

    if family.continuous:
        def H(f):
            def g(x):
                x = to_mpf(x)
                r = lambda t: probe.weight_root(t)
                G = lambda t: f(t) / r(t)
                val = (_sigma(family, x) * mpmath.diff(G, x, 2)
                       + to_mpf(tau_m(family, m, x)) * mpmath.diff(G, x) + mu * G(x))
                return r(x) * val
            return g
        return H

    def H(f):
        def g(s):
            r = probe.weight_root
            G = lambda t: f(t) / r(t)
            g0, gp, gm = G(s), G(s + 1), G(s - 1)
            hi = (gp - g0) / to_mpf(family.nabla_x(m, s + 1))
            lo = (g0 - gm) / to_mpf(family.nabla_x(m, s))
            val = (_sigma(family, s) * (hi - lo) / to_mpf(family.dx_half(m, s))
                   + to_mpf(tau_m(family, m, s)) * hi + mu * g0)
            return r(s) * val
        return g
    return H


def factorization_mu(family, m, n):
    """``mu(n) = lam(2n) lam(2n+2) alpha_n gamma_{n+1}``."""
    c0, c1 = ladder_coeffs(family, m, n), ladder_coeffs(family, m, n + 1)
    return (to_mpf(lambda_ratio(family, 2 * n)) * to_mpf(lambda_ratio(family, 2 * n + 2))
            * to_mpf(c0.alpha) * to_mpf(c1.gamma))


def factor_multiplier(family, m, s):
    """Pointwise factor ``c(s)`` of the lattice factorization.

    ``L-(n+1) L+(n) f(s) = mu(n) f(s) + c(s) (H_n f)(s - 1)`` with
    ``c(s) = -sqrt(sigma (sigma + T))(s) Delta x_m(s - 3/2) / nabla x_m(s)``;
    in the continuous class ``c = -sigma`` and ``H`` acts at ``x`` itself.
    """
    if family.continuous:
        return -_sigma(family, s)
    return (-_radical(family, m, s) * to_mpf(family.dx_half(m, s - 1))
            / to_mpf(family.nabla_x(m, s)))


def printed_multiplier(family, n, s):
    """``u(s, n) = lam(n) tau_n(s)/tau'_n - sigma(s)/nabla x(s)`` (``-sigma`` when continuous)."""
    if family.continuous:
        return -_sigma(family, s)
    lam = to_mpf(lambda_ratio(family, n))
    return (lam * to_mpf(tau_m(family, n, s)) / to_mpf(tau_m_prime(family, n))
            - _sigma(family, s) / to_mpf(family.nabla_x(0, s)))


@dataclass(frozen=True)
class FactorizationDefects:
    """Largest pointwise defects of the two factorization identities."""

    raise_then_lower: object
    lower_then_raise: object
    form: str
    sites: tuple


def _factor_sites(family, m, form):
    if family.continuous:
        return family.sites(m)
    sites = family.sites(m)
    if form == "derived":
        # (H f)(s-1) needs f at s-2 inside the support
        return tuple(s for s in sites if s >= family.a + 2)
    # (H f)(s) needs f at s-1 and s+1 inside the support
    return tuple(s for s in sites[:-1] if s >= family.a + 1)


def factorization_check(family, m, n, form="derived", k_values=None):
    """Evaluate both factorization identities on ``Omega_mk`` for ``k`` in ``{n-1, n, n+1}``.

    ``form='derived'`` uses :func:`factor_multiplier` with ``H`` one site back;
    ``form='printed'`` uses ``u(s+1, n) H(s, n)`` and ``u(s, n-1) H(s, n+1)``
    at the same site (``-sigma H`` in the continuous class, where both agree).
    """
    if form not in ("derived", "printed"):
        raise ValueError("form must be 'derived' or 'printed'")
    mu = factorization_mu(family, m, n)
    up_n = LadderOperator("raise", family, m, n)
    down_n1 = LadderOperator("lower", family, m, n + 1)
    H_n, H_n1 = hyper_operator(family, m, n), hyper_operator(family, m, n + 1)
    ks = [k for k in (k_values or (n - 1, n, n + 1)) if k >= m]
    sites = _factor_sites(family, m, form)
    worst_a = worst_b = mpmath.mpf(0)
    for k in ks:
        f = ortho_build(family, m, k)
        lr = down_n1(up_n(f))
        rl = up_n(down_n1(f))
        hn, hn1 = H_n(f), H_n1(f)
        scale = max(1, max_abs(f(s) for s in sites) * abs(mu))
        for s in sites:
            if form == "derived":
                if family.continuous:
                    ta = factor_multiplier(family, m, s) * hn(s)
                    tb = factor_multiplier(family, m, s) * hn1(s)
                else:
                    ta = factor_multiplier(family, m, s) * hn(s - 1)
                    tb = factor_multiplier(family, m, s) * hn1(s - 1)
            else:
                if family.continuous:
                    ta, tb = -_sigma(family, s) * hn(s), -_sigma(family, s) * hn1(s)
                else:
                    ta = printed_multiplier(family, n, s + 1) * hn(s)
                    tb = printed_multiplier(family, n - 1, s) * hn1(s)
            fs = f(s)
            worst_a = max(worst_a, abs(lr(s) - mu * fs - ta) / scale)
            worst_b = max(worst_b, abs(rl(s) - mu * fs - tb) / scale)
    return FactorizationDefects(worst_a, worst_b, form, sites)
