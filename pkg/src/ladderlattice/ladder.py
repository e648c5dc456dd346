"""Three-term recurrence coefficients and the raising/lowering operators on ``v_mn``.

The recurrence reads ``X(s) v_mn = alpha v_{m,n+1} + beta v_mn + gamma v_{m,n-1}``
with ``X = x`` in the continuous and uniform classes and ``X = x_m(s)`` on
non-uniform lattices.  The operators are

``alpha lam(2n) v_{m,n+1} = lam(n+m) tau_n/tau'_n v - sigma nabla v / nabla x_m``

``gamma lam(2n) v_{m,n-1} = {-lam(n+m) tau_n/tau'_n + lam(2n)(X - beta)} v + sigma nabla v / nabla x_m``

where ``lam(k) = lambda_k/[k]`` and ``nabla/nabla x_m`` becomes ``d/dx``
in the continuous class.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from . import faults
from .errors import CoefficientMismatchError, DegenerateCoefficientError, WindowTooSmallError
from .families import norm_sq_m
from .field import is_exact, max_abs, relative_deviation, to_mpf
from .poly import fit, polyadd, polyder, polymul, polyscale, polyval
from .rodrigues import PolyOnLattice, build_vmn, build_yn, leading_coeffs
from .spectral import lambda_ratio, tau_m, tau_m_prime

TOL = mpmath.mpf("1e-25")
BETA_GUARD = mpmath.mpf("1e-20")


@dataclass(frozen=True)
class LadderCoefficients:
    """Coefficients of the recurrence for ``v_mn`` and of its ladder operators.

    Attributes
    ----------
    alpha, beta, gamma : scalar
        Recurrence coefficients in use.
    alpha_leading : scalar
        ``alpha`` from the leading coefficients of ``y_n`` and ``y_{n+1}``.
        ``gamma`` is taken from coefficient matching, which is exact for
        rational families, after checking it against the ratio of norms.
    beta_printed : scalar or None
        ``beta`` from the closed form for the lattice class, when one exists.
    beta_source : str
        ``printed`` when the closed form passes the recurrence check,
        otherwise ``matched`` (top two coefficients of ``v_mn``, ``v_{m,n+1}``).
    lam_2n, lam_nm : scalar
        ``lambda_{2n}/[2n]`` and ``lambda_{n+m}/[n+m]``.
    tau_n_prime : scalar
    """

    m: int
    n: int
    alpha: object
    beta: object
    gamma: object
    alpha_leading: object
    beta_printed: object
    beta_source: str
    lam_2n: object
    lam_nm: object
    tau_n_prime: object


def _close(u, v, tol=TOL):
    if is_exact(u) and is_exact(v):
        return u == v
    return abs(to_mpf(u) - to_mpf(v)) <= tol * max(1, abs(to_mpf(v)))


def recurrence_variable(family, m, s):
    """``x`` (continuous, uniform) or ``x_m(s)`` (non-uniform)."""
    if family.lattice_class == "nonuniform":
        return family.x_m(m, s)
    return family.x(s)


def alpha_closed(family, m, n):
    """``alpha_n = -(B_n/B_{n+1}) lam(n) / (lam(2n) lam(2n+1)) [n-m+1]/[n+1]``."""
    lat = family.lattice
    B = family.normalization
    lam = _div(lambda_ratio(family, n), lambda_ratio(family, 2 * n) * lambda_ratio(family, 2 * n + 1))
    return -_div(B(n), B(n + 1)) * lam * _div(lat.bracket(n - m + 1), lat.bracket(n + 1))


def alpha_from_leading(family, m, n):
    """``alpha_n = (a_n/a_{n+1}) [n-m+1]/[n+1]`` from the built ``y_n``."""
    lat = family.lattice
    a_n = leading_coeffs(build_yn(family, n))[0]
    a_n1 = leading_coeffs(build_yn(family, n + 1))[0]
    return _div(a_n, a_n1) * _div(lat.bracket(n - m + 1), lat.bracket(n + 1))


def _ratio_or_zero(num, den, k_num, k_den):
    # b_n/a_n [n-m]/[n]; the factor vanishes at n = m, including n = 0
    if k_num == 0:
        return 0
    return _div(num, den) * _div(k_num, k_den)


def beta_printed(family, m, n):
    """Closed-form ``beta_n`` for the lattice class, or ``None`` if there is none.

    The quadratic form is tied to ``x(s) = s(s+1)``.
    """
    lat = family.lattice
    a_n, b_n = leading_coeffs(build_yn(family, n))
    a_n1, b_n1 = leading_coeffs(build_yn(family, n + 1))
    base = (_ratio_or_zero(b_n, a_n, lat.bracket(n - m), lat.bracket(n))
            - b_n1 / a_n1 * lat.bracket(n - m + 1) / lat.bracket(n + 1))
    kind = lat.kind
    if kind == "continuous":
        return base
    if kind == "linear":
        return base - Fraction(m, 2) if is_exact(base) else base - mpmath.mpf(m) / 2
    if kind == "quadratic":
        if (lat.c1, lat.c2, lat.c3) != (1, 1, 0):
            return None
        return base - Fraction(3, 12 ** m) if is_exact(base) else base - mpmath.mpf(3) / 12 ** m
    return base


def beta_matched(family, m, n):
    """``beta_n`` from the top two coefficients of ``v_mn`` and ``v_{m,n+1}``."""
    v0 = build_vmn(family, m, n)
    v1 = build_vmn(family, m, n + 1)
    A0, B0 = leading_coeffs(v0)
    A1, B1 = leading_coeffs(v1)
    beta = B0 / A0 - B1 / A1
    if family.uniform:
        # coefficients are in x_m = x + m/2 while the recurrence uses x
        beta = beta - Fraction(m, 2) if is_exact(beta) else beta - mpmath.mpf(m) / 2
    return beta


def gamma_coeff(family, m, n):
    """``gamma_n = alpha_{n-1} d_mn**2 / d_{m,n-1}**2``; zero when ``n = m``."""
    if n == m:
        return 0
    return alpha_closed(family, m, n - 1) * norm_sq_m(family, m, n) / norm_sq_m(family, m, n - 1)


def gamma_matched(family, m, n, alpha, beta):
    """``gamma_n`` from the top coefficient of ``x v_mn - alpha v_{m,n+1} - beta v_mn``.

    The polynomials are stored in the variable ``x_m``; on the uniform
    lattice the recurrence variable is ``x = x_m - m/2``.
    """
    if n == m:
        return 0
    shift = Fraction(m, 2) if family.uniform else 0
    v = build_vmn(family, m, n).coeffs
    rest = polyadd(polymul((-shift, 1), v), polyscale(build_vmn(family, m, n + 1).coeffs, -alpha))
    rest = polyadd(rest, polyscale(v, -beta))
    k = n - 1 - m
    return _div(rest[k], build_vmn(family, m, n - 1).coeffs[k])


def recurrence_residual(family, m, n, beta=None, coeffs=None):
    """Relative residual of the three-term recurrence on the sites of ``v_mn``."""
    c = coeffs if coeffs is not None else ladder_coeffs(family, m, n)
    beta = c.beta if beta is None else beta
    v = build_vmn(family, m, n)
    up = build_vmn(family, m, n + 1)
    down = build_vmn(family, m, n - 1) if n > m else None
    res, ref = [], []
    for s in v.sites:
        lhs = recurrence_variable(family, m, s) * v.at(s)
        rhs = c.alpha * up.at(s) + beta * v.at(s) + (c.gamma * down.at(s) if down is not None else 0)
        if not (is_exact(lhs) and is_exact(rhs)):
            lhs, rhs = to_mpf(lhs), to_mpf(rhs)
        res.append(lhs - rhs)
        ref.append(lhs)
    top = max_abs(res) if not all(is_exact(r) for r in res) else max(abs(r) for r in res)
    if is_exact(top) and top == 0:
        return 0
    scale = max_abs(ref)
    return to_mpf(top) / scale if scale else to_mpf(top)


@lru_cache(maxsize=None)
def _cached_coeffs(family, m, n, fault_state):
    a_c = alpha_closed(family, m, n)
    a_l = alpha_from_leading(family, m, n)
    if not _close(a_c, a_l):
        raise CoefficientMismatchError(f"{family.describe()} alpha_{n} (m={m}): closed {a_c} vs leading {a_l}")
    gamma = gamma_coeff(family, m, n)
    printed = beta_printed(family, m, n)
    base = LadderCoefficients(m, n, a_c, printed, gamma, a_l, printed, "printed",
                              lambda_ratio(family, 2 * n), lambda_ratio(family, n + m), tau_m_prime(family, n))
    source = "printed"
    beta = printed
    if printed is None:
        source, beta = "matched", beta_matched(family, m, n)
    else:
        r = recurrence_residual(family, m, n, beta=printed, coeffs=base)
        if not (r == 0 if is_exact(r) else r <= BETA_GUARD):
            source, beta = "matched", beta_matched(family, m, n)
    gamma = gamma_matched(family, m, n, a_c, beta)
    if not _close(gamma, base.gamma):
        raise CoefficientMismatchError(f"{family.describe()} gamma_{n} (m={m}): matched {gamma} vs norms {base.gamma}")
    alpha = a_c
    shift = fault_state.alpha_shift
    if shift:
        alpha = to_mpf(alpha) * (1 + mpmath.mpf(shift))
    if fault_state.beta_shift:
        beta = to_mpf(beta) + mpmath.mpf(fault_state.beta_shift)
    return LadderCoefficients(m, n, alpha, beta, gamma, a_l, printed, source,
                              base.lam_2n, base.lam_nm, base.tau_n_prime)


def ladder_coeffs(family, m, n):
    """Recurrence and ladder coefficients for ``v_mn`` (``0 <= m <= n``).

    Raises
    ------
    CoefficientMismatchError
        If the two forms of ``alpha`` disagree.
    """
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    return _cached_coeffs(family, m, n, faults.active())


def clear_caches():
    _cached_coeffs.cache_clear()


# -- operators ---------------------------------------------------------------

def _div(a, b):
    if is_exact(a) and is_exact(b):
        return Fraction(a) / b
    return to_mpf(a) / to_mpf(b)


def _sub(a, b):
    if is_exact(a) and is_exact(b):
        return a - b
    return to_mpf(a) - to_mpf(b)


def _nabla_den(family, m, s, nabla):
    if nabla == "x_m":
        return family.nabla_x(m, s)
    if nabla == "x":
        return family.nabla_x(0, s)
    raise ValueError("nabla must be 'x_m' or 'x'")


def _tau_ratio(family, n, s):
    return _div(tau_m(family, n, s), tau_m_prime(family, n))


def _continuous_tau_poly(family, k):
    sp = family.sigma_poly
    return polyadd(family.tau_poly, polyscale(polyder(sp), k))


def _finish(family, m, n_out, v, samples, coeffs=None):
    if coeffs is None:
        xs = [family.x_m(m, s) for s in v.sites]
        if len(xs) < n_out - m + 1:
            raise WindowTooSmallError(f"{family.describe()}: {len(xs)} sites cannot hold v_{m}{n_out}")
        coeffs, _ = fit(xs, samples, n_out - m)
    return PolyOnLattice(family, m, n_out, v.sites, tuple(samples), tuple(coeffs), 0)


def raising(family, m, n, v=None, nabla="x_m"):
    """Apply the raising operator to ``v_mn`` and return ``v_{m,n+1}``.

    ``nabla='x'`` selects the unshifted lattice step in the denominator;
    it agrees with the default only for ``m = 0``.
    """
    v = build_vmn(family, m, n) if v is None else v
    c = ladder_coeffs(family, m, n)
    k = c.alpha * c.lam_2n
    if k == 0:
        raise DegenerateCoefficientError(f"{family.describe()}: alpha lambda_2n/[2n] vanishes at n={n}")
    if family.continuous:
        tp = _continuous_tau_poly(family, n)
        part = polyscale(polymul(tp, v.coeffs), c.lam_nm / c.tau_n_prime)
        out = polyadd(part, polyscale(polymul(family.sigma_poly, polyder(v.coeffs)), -1))
        out = polyscale(out, _div(1, k))
        out = tuple(out) + (0,) * (n + 2 - m - len(out))
        out = out[: n + 2 - m]
        return _finish(family, m, n + 1, v, [polyval(out, s) for s in v.sites], out)
    samples = []
    for s in v.sites:
        val = (c.lam_nm * _tau_ratio(family, n, s) * v.at(s)
               - family.sigma(s) * (v.at(s) - v.at(s - 1)) / _nabla_den(family, m, s, nabla))
        samples.append(_div(val, k))
    return _finish(family, m, n + 1, v, samples)


def lowering(family, m, n, v=None, nabla="x_m"):
    """Apply the lowering operator to ``v_mn`` and return ``v_{m,n-1}``."""
    v = build_vmn(family, m, n) if v is None else v
    c = ladder_coeffs(family, m, n)
    k = c.gamma * c.lam_2n
    if k == 0:
        raise DegenerateCoefficientError(f"{family.describe()}: gamma lambda_2n/[2n] vanishes at n={n}, m={m}")
    if family.continuous:
        tp = _continuous_tau_poly(family, n)
        part = polyscale(polymul(tp, v.coeffs), -c.lam_nm / c.tau_n_prime)
        part = polyadd(part, polyscale(polymul((-c.beta, 1), v.coeffs), c.lam_2n))
        out = polyadd(part, polymul(family.sigma_poly, polyder(v.coeffs)))
        out = polyscale(out, _div(1, k))
        out = tuple(out) + (0,) * max(0, n - m - len(out))
        return _finish(family, m, n - 1, v, [polyval(out, s) for s in v.sites], out[: n - m])
    samples = []
    for s in v.sites:
        val = ((-c.lam_nm * _tau_ratio(family, n, s) + c.lam_2n * _sub(recurrence_variable(family, m, s), c.beta)) * v.at(s)
               + family.sigma(s) * (v.at(s) - v.at(s - 1)) / _nabla_den(family, m, s, nabla))
        samples.append(_div(val, k))
    return _finish(family, m, n - 1, v, samples)


def ladder_defect(family, m, n, direction, nabla="x_m"):
    """Relative deviation of the raised/lowered ``v_mn`` from the built target."""
    if direction == "raise":
        got, target = raising(family, m, n, nabla=nabla), build_vmn(family, m, n + 1)
    else:
        got, target = lowering(family, m, n, nabla=nabla), build_vmn(family, m, n - 1)
    return relative_deviation(got.samples, target.samples)
