"""Eigenvalues and the coefficients of the shifted equations.

The m-th shifted equation is satisfied by ``v_mn`` and has coefficients
``sigma(s)`` and ``tau_m(s)``, with ``tau_m`` linear in ``x_m(s)`` of
slope ``tau'_m``.  Its eigenvalue is ``mu_mn = lambda_n - lambda_m``.
"""
from dataclasses import dataclass

import mpmath

from .errors import CoefficientMismatchError
from .field import is_exact, to_mpf

TOL = mpmath.mpf("1e-25")


def _tau_slope(family):
    return family.tau_poly[1] if len(family.tau_poly) > 1 else 0


def _sigma_curv(family):
    return 2 * family.sigma_poly[2] if len(family.sigma_poly) > 2 else 0


def lambda_ratio(family, k):
    """``lambda_k / [k]`` in closed form, analytic in ``k`` (finite at ``k = 0``).

    Equals ``-(cosh((k-1) w) tau' + [k-1] sigma_tilde'' / 2)``.
    """
    lat = family.lattice
    return -(lat.ch(k - 1) * _tau_slope(family) + lat.bracket(k - 1) * _sigma_curv(family) / 2)


def lambda_n(family, n):
    """Eigenvalue ``lambda_n`` of ``y_n`` from its closed form."""
    if n == 0:
        return 0
    return family.lattice.bracket(n) * lambda_ratio(family, n)


def tau_m(family, m, s):
    """``tau_m(s)``, the first-order coefficient of the m-th shifted equation.

    Discrete lattices use
    ``[sigma(s+m) - sigma(s) + tau(s+m) Delta x(s+m-1/2)] / Delta x_{m-1}(s)``;
    the continuous class uses ``tau(x) + m sigma'(x)``.  ``m = -1`` is allowed.
    """
    if family.continuous:
        sp = family.sigma_poly
        dsig = (sp[1] if len(sp) > 1 else 0) + (2 * sp[2] * s if len(sp) > 2 else 0)
        return family.tau(s) + m * dsig
    num = family.sigma(s + m) - family.sigma(s) + family.tau(s + m) * family.dx_half(0, s + m)
    return num / family.lattice.step(m - 1, s)


def tau_m_prime(family, m):
    """Slope of ``tau_m`` with respect to ``x_m``."""
    if family.continuous:
        return _tau_slope(family) + m * _sigma_curv(family)
    s0 = family.a
    return (tau_m(family, m, s0 + 1) - tau_m(family, m, s0)) / family.lattice.step(m, s0)


def lambda_n_accumulated(family, n):
    """``lambda_n = -(tau'_0 + tau'_1 + ... + tau'_{n-1})``."""
    total = 0
    for j in range(n):
        total = total - tau_m_prime(family, j)
    return total


def _agree(u, v):
    if is_exact(u) and is_exact(v):
        return u == v
    return abs(to_mpf(u) - to_mpf(v)) <= TOL * max(1, abs(to_mpf(v)))


def mu_mn(family, m, n):
    """``mu_mn = lambda_n - lambda_m``, cross-checked against the slope sum.

    Raises
    ------
    CoefficientMismatchError
        If the closed form and ``-(tau'_m + ... + tau'_{n-1})`` disagree.
    """
    closed = lambda_n(family, n) - lambda_n(family, m)
    summed = 0
    for j in range(m, n):
        summed = summed - tau_m_prime(family, j)
    if not _agree(closed, summed):
        raise CoefficientMismatchError(f"mu_{m}{n}: closed form {closed} vs slope sum {summed}")
    return closed


@dataclass(frozen=True)
class SpectralData:
    """Convenience bundle of the spectral quantities of one family."""

    family: object

    def lambda_(self, n):
        return lambda_n(self.family, n)

    def lambda_ratio(self, k):
        return lambda_ratio(self.family, k)

    def tau_m(self, m, s):
        return tau_m(self.family, m, s)

    def tau_m_prime(self, m):
        return tau_m_prime(self.family, m)

    def mu(self, m, n):
        return mu_mn(self.family, m, n)
