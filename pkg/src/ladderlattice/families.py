"""Catalog of hypergeometric families and their weights.

A family is fixed by a lattice, the coefficient functions ``sigma(s)``
and ``tau(s)`` of the second-order difference (or differential)
equation, a weight ``rho`` obeying the Pearson relation
``Delta(sigma rho)(s) = tau(s) rho(s) Delta x(s - 1/2)`` and a
normalization ``B_n`` of the Rodrigues formula.

Discrete weights are stored as an exact rational part times a constant
``rho_scale`` (``exp(-mu)`` for Charlier, for instance) so that the
polynomials themselves stay exact.  Every catalog entry is checked on
construction: Pearson relation, boundary behaviour, positivity and the
polynomial degrees of ``sigma_tilde`` and ``tau`` in ``x``.
"""
import json
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from fractions import Fraction

import mpmath

from .errors import ParameterError, PearsonError, TruncationError, UnknownFamilyError
from .field import as_rational, is_exact, relative_deviation, to_mpf
from .lattice import Lattice
from .poly import fit, polyval

PEARSON_TOL = mpmath.mpf("1e-25")


@dataclass(frozen=True, eq=False)
class FamilySpec:
    """A hypergeometric family on a lattice.

    Attributes
    ----------
    name : str
        Catalog key.
    lattice : Lattice
    params : tuple of (str, value)
    a, b : Fraction or None
        Support.  Discrete supports are the sites ``a, a+1, ..., b-1``;
        ``b is None`` means unbounded.  Continuous supports are the open
        interval ``(a, b)`` with ``None`` for infinite ends.
    sigma, tau : callable
        Equation coefficients as functions of the site ``s`` (or of ``x``
        in the continuous class).
    rho : callable
        Weight without its constant factor; zero off the support.
    rho_scale : scalar
        Constant factor of the weight.
    normalization : callable
        ``n -> B_n``.
    sigma_poly, tau_poly : tuple
        Ascending coefficients in ``x`` of ``sigma`` (continuous) or of
        ``sigma_tilde = sigma + tau Delta x(s - 1/2) / 2`` (discrete),
        and of ``tau``.
    moments : callable or None
        ``k -> integral of x**k rho`` for continuous families.
    grid : tuple
        Sample sites for continuous families.
    window : int
        Number of sites sampled on unbounded discrete supports.
    """

    name: str
    lattice: Lattice
    params: tuple
    a: object
    b: object
    sigma: object
    tau: object
    rho: object
    rho_scale: object = 1
    normalization: object = None
    sigma_poly: tuple = ()
    tau_poly: tuple = ()
    moments: object = None
    grid: tuple = ()
    window: int = 24
    validated: bool = field(default=True)

    def __post_init__(self):
        conv = lambda c: Fraction(c) if isinstance(c, int) else c
        object.__setattr__(self, "sigma_poly", tuple(conv(c) for c in self.sigma_poly))
        object.__setattr__(self, "tau_poly", tuple(conv(c) for c in self.tau_poly))
        if self.lattice.kind != "continuous" and not hasattr(self.rho, "cache_info"):
            # exact weights are long products; sums and ladders revisit the same sites
            object.__setattr__(self, "rho", lru_cache(maxsize=4096)(self.rho))

    # -- classification ---------------------------------------------------
    @property
    def continuous(self):
        return self.lattice.kind == "continuous"

    @property
    def uniform(self):
        return self.lattice.kind == "linear"

    @property
    def lattice_class(self):
        """``continuous``, ``uniform`` or ``nonuniform``."""
        if self.continuous:
            return "continuous"
        return "uniform" if self.uniform else "nonuniform"

    @property
    def finite(self):
        return not self.continuous and self.b is not None

    @property
    def exact(self):
        """True when polynomial samples are exact rationals."""
        return self.lattice.exact

    @property
    def max_degree(self):
        """Largest admissible ``n`` on a finite support, ``None`` otherwise."""
        if self.continuous or self.b is None:
            return None
        return int(self.b - self.a) - 1

    def param(self, key):
        return dict(self.params)[key]

    def describe(self):
        ps = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({ps})"

    # -- lattice helpers --------------------------------------------------
    def x(self, s):
        return self.lattice.x(s)

    def x_m(self, m, s):
        return self.lattice.x_k(m, s)

    def dx_half(self, m, s):
        """``Delta x_m(s - 1/2) = x_m(s + 1/2) - x_m(s - 1/2)``; 1 when continuous."""
        if self.continuous:
            return 1
        h = Fraction(1, 2)
        return self.x_m(m, s + h) - self.x_m(m, s - h)

    def nabla_x(self, m, s):
        """``nabla x_m(s) = x_m(s) - x_m(s - 1)``; 1 when continuous."""
        if self.continuous:
            return 1
        return self.x_m(m, s) - self.x_m(m, s - 1)

    def sigma_tilde(self, s):
        """``sigma(s) + tau(s) Delta x(s - 1/2) / 2``, a quadratic in ``x(s)``."""
        if self.continuous:
            return self.sigma(s)
        return self.sigma(s) + self.tau(s) * self.dx_half(0, s) / 2

    def sites(self, m=0):
        """Sample sites for ``v_mn``.

        Finite supports use all of ``[a, b - m)``; unbounded ones use a
        window of ``window - m`` sites; continuous families use ``grid``.
        """
        if self.continuous:
            return tuple(self.grid)
        top = self.b if self.b is not None else self.a + self.window
        return tuple(self.a + i for i in range(int(top - m - self.a)))

    def in_support(self, s):
        if self.continuous:
            return (self.a is None or s > self.a) and (self.b is None or s < self.b)
        off = Fraction(s) - self.a
        return off.denominator == 1 and off >= 0 and (self.b is None or s < self.b)

    def rho_m(self, m, s):
        """Unscaled weight ``rho_m(s) = rho(s + m) prod_{i=1..m} sigma(s + i)``.

        In the continuous class ``rho_m(x) = rho(x) sigma(x)**m``.  Discrete
        weights vanish below ``a`` since ``sigma(a) = 0``.
        """
        if self.continuous:
            return self.rho(s) * self.sigma(s) ** m
        if s < self.a or (self.b is not None and s + m >= self.b):
            return 0
        out = self.rho(s + m)
        for i in range(1, m + 1):
            out = out * self.sigma(s + i)
        return out

    def perturbed(self, tau_shift):
        """Copy with ``tau`` shifted by a constant, skipping validation."""
        tau = self.tau
        shift = tau_shift
        return replace(self, tau=lambda s: tau(s) + shift, validated=False,
                       tau_poly=(self.tau_poly[0] + shift,) + tuple(self.tau_poly[1:]))


@dataclass(frozen=True)
class WeightTower:
    """The weights ``rho_m`` of the shifted equations, ``m = 0 .. m_max``."""

    family: FamilySpec
    m_max: int

    def __call__(self, m, s):
        return rho_m_eval(self, m, s)


def rho_m_eval(tower, m, s):
    """Evaluate ``rho_m(s)`` (without the constant factor)."""
    if not 0 <= m <= tower.m_max:
        raise ValueError(f"m={m} outside tower 0..{tower.m_max}")
    return tower.family.rho_m(m, s)


# ---------------------------------------------------------------------------
# validation

def pearson_defect(family, sites=None):
    """Largest relative defect of the Pearson relation on discrete sites.

    Continuous families are checked as ``(sigma rho)' = tau rho`` with
    numerical differentiation.
    """
    if family.continuous:
        lhs, rhs = [], []
        for x in family.grid:
            xf = to_mpf(x)
            lhs.append(mpmath.diff(lambda t: family.sigma(t) * family.rho(t), xf))
            rhs.append(family.tau(xf) * family.rho(xf))
        return relative_deviation(lhs, rhs)
    if sites is None:
        top = family.b if family.b is not None else family.a + family.window
        sites = [family.a + i for i in range(int(top - family.a))]
    lhs, rhs = [], []
    for s in sites:
        nxt = family.rho(s + 1) if family.in_support(s + 1) else 0
        lhs.append(family.sigma(s + 1) * nxt - family.sigma(s) * family.rho(s))
        rhs.append(family.tau(s) * family.rho(s) * family.dx_half(0, s))
    return relative_deviation(lhs, rhs)


def _fit_in_x(family, func, degree):
    sites = [family.a + i for i in range(degree + 3)]
    coeffs, res = fit([family.x(s) for s in sites], [func(s) for s in sites], degree)
    return coeffs, res


def _check(family):
    """Run construction checks; raises on failure."""
    if family.continuous:
        d = pearson_defect(family)
        if d > PEARSON_TOL:
            raise PearsonError(f"{family.describe()}: Pearson defect {mpmath.nstr(to_mpf(d), 3)}")
        return family
    if family.sigma(family.a) != 0:
        raise PearsonError(f"{family.describe()}: sigma(a) must vanish")
    d = pearson_defect(family)
    if (d != 0) if family.exact else (d > PEARSON_TOL):
        raise PearsonError(f"{family.describe()}: Pearson defect {d}")
    for s in family.sites():
        if not family.rho(s) > 0:
            raise ParameterError(f"{family.describe()}: weight not positive at s={s}")
        if s > family.a and not family.sigma(s) > 0:
            raise ParameterError(f"{family.describe()}: sigma not positive at s={s}")
    sig, r1 = _fit_in_x(family, family.sigma_tilde, 2)
    tau, r2 = _fit_in_x(family, family.tau, 1)
    tol = 0 if family.exact else PEARSON_TOL * (1 + max(abs(to_mpf(c)) for c in sig))
    if r1 > tol or r2 > tol:
        raise PearsonError(f"{family.describe()}: sigma_tilde or tau is not polynomial in x")
    if family.uniform:
        sig_u, r3 = _fit_in_x(family, family.sigma, 2)
        if r3 != 0:
            raise PearsonError(f"{family.describe()}: sigma is not quadratic in x")
    return replace(family, sigma_poly=tuple(sig), tau_poly=tuple(tau))


# ---------------------------------------------------------------------------
# catalog factories

def _poly_fn(coeffs):
    """``x -> P(x)`` that converts rational coefficients when ``x`` is a float."""
    fl = tuple(to_mpf(c) for c in coeffs)

    def f(x):
        return polyval(coeffs if is_exact(x) else fl, x)
    return f


def _poch(c, k):
    out = 1
    for j in range(k):
        out = out * (c + j)
    return out


def _signed_inverse_factorial(n):
    return Fraction((-1) ** n, math.factorial(n))


def _grid(lo, step, count):
    return tuple(lo + i * step for i in range(count))


def _require(cond, msg):
    if not cond:
        raise ParameterError(msg)


def _nonneg_int(value, name):
    value = as_rational(value)
    _require(value.denominator == 1 and value >= 0, f"{name} must be a non-negative integer")
    return int(value)


def hermite():
    """Hermite: ``sigma = 1``, ``tau = -2x``, ``rho = exp(-x**2)`` on the real line."""
    def moments(k):
        return mpmath.mpf(0) if k % 2 else mpmath.gamma(mpmath.mpf(k + 1) / 2)

    return _check(FamilySpec(
        "hermite", Lattice.continuous(), (), None, None,
        sigma=_poly_fn((1,)), tau=_poly_fn((0, -2)),
        rho=lambda x: mpmath.exp(-to_mpf(x) ** 2),
        normalization=lambda n: Fraction((-1) ** n),
        sigma_poly=(1,), tau_poly=(0, -2), moments=moments,
        grid=_grid(Fraction(-2), Fraction(1, 4), 17)))


def laguerre(alpha=0):
    """Laguerre: ``sigma = x``, ``tau = alpha + 1 - x``, ``rho = x**alpha exp(-x)`` on ``x > 0``."""
    alpha = as_rational(alpha)
    _require(alpha > -1, "laguerre needs alpha > -1")
    al = to_mpf(alpha)

    def moments(k):
        return mpmath.gamma(al + k + 1)

    return _check(FamilySpec(
        "laguerre", Lattice.continuous(), (("alpha", alpha),), Fraction(0), None,
        sigma=_poly_fn((0, 1)), tau=_poly_fn((alpha + 1, -1)),
        rho=lambda x: mpmath.power(to_mpf(x), al) * mpmath.exp(-to_mpf(x)),
        normalization=lambda n: Fraction(1, math.factorial(n)),
        sigma_poly=(0, 1), tau_poly=(alpha + 1, -1), moments=moments,
        grid=_grid(Fraction(1, 4), Fraction(1, 4), 17)))


def jacobi(alpha=0, beta=0):
    """Jacobi: ``sigma = 1 - x**2``, ``rho = (1-x)**alpha (1+x)**beta`` on ``(-1, 1)``."""
    alpha, beta = as_rational(alpha), as_rational(beta)
    _require(alpha > -1 and beta > -1, "jacobi needs alpha, beta > -1")
    al, be = to_mpf(alpha), to_mpf(beta)

    def moments(k):
        # x = 2t - 1 turns the integral into a sum of beta functions
        total = mpmath.mpf(0)
        for j in range(k + 1):
            total += math.comb(k, j) * 2 ** j * (-1) ** (k - j) * mpmath.beta(be + j + 1, al + 1)
        return 2 ** (al + be + 1) * total

    return _check(FamilySpec(
        "jacobi", Lattice.continuous(), (("alpha", alpha), ("beta", beta)), Fraction(-1), Fraction(1),
        sigma=_poly_fn((1, 0, -1)), tau=_poly_fn((beta - alpha, -(alpha + beta + 2))),
        rho=lambda x: mpmath.power(1 - to_mpf(x), al) * mpmath.power(1 + to_mpf(x), be),
        normalization=lambda n: Fraction((-1) ** n, 2 ** n * math.factorial(n)),
        sigma_poly=(1, 0, -1), tau_poly=(beta - alpha, -(alpha + beta + 2)), moments=moments,
        grid=_grid(Fraction(-4, 5), Fraction(1, 10), 17)))


def charlier(mu=1):
    """Charlier: ``sigma = x``, ``tau = mu - x``, ``rho = exp(-mu) mu**x / x!`` on ``x >= 0``."""
    mu = as_rational(mu)
    _require(mu > 0, "charlier needs mu > 0")

    def rho(s):
        if s < 0 or Fraction(s).denominator != 1:
            return 0
        return mu ** int(s) / math.factorial(int(s))

    return _check(FamilySpec(
        "charlier", Lattice.linear(), (("mu", mu),), Fraction(0), None,
        sigma=lambda s: Fraction(s), tau=lambda s: mu - s, rho=rho,
        rho_scale=mpmath.exp(-to_mpf(mu)),
        normalization=lambda n: mu ** (-n)))


def meixner(gamma=1, mu=Fraction(1, 2)):
    """Meixner: ``sigma = x``, ``tau = gamma mu - (1 - mu) x``, ``rho ~ mu**x (gamma)_x / x!``."""
    gamma, mu = as_rational(gamma), as_rational(mu)
    _require(gamma > 0 and 0 < mu < 1, "meixner needs gamma > 0 and 0 < mu < 1")

    def rho(s):
        if s < 0 or Fraction(s).denominator != 1:
            return 0
        k = int(s)
        return mu ** k * _poch(gamma, k) / math.factorial(k)

    return _check(FamilySpec(
        "meixner", Lattice.linear(), (("gamma", gamma), ("mu", mu)), Fraction(0), None,
        sigma=lambda s: Fraction(s), tau=lambda s: gamma * mu - (1 - mu) * s, rho=rho,
        rho_scale=mpmath.power(1 - to_mpf(mu), to_mpf(gamma)),
        normalization=lambda n: mu ** (-n)))


def kravchuk(p=Fraction(1, 2), N=12):
    """Kravchuk: ``sigma = x``, ``tau = (N p - x)/(1 - p)``, binomial weight on ``0..N``."""
    p = as_rational(p)
    N = _nonneg_int(N, "N")
    _require(0 < p < 1 and N >= 1, "kravchuk needs 0 < p < 1 and N >= 1")
    q = 1 - p

    def rho(s):
        if s < 0 or s > N or Fraction(s).denominator != 1:
            return 0
        k = int(s)
        return math.comb(N, k) * p ** k * q ** (N - k)

    return _check(FamilySpec(
        "kravchuk", Lattice.linear(), (("p", p), ("N", N)), Fraction(0), Fraction(N + 1),
        sigma=lambda s: Fraction(s), tau=lambda s: (N * p - s) / q, rho=rho,
        normalization=_signed_inverse_factorial))


def hahn(alpha=Fraction(1, 2), beta=Fraction(3, 2), N=13):
    """Hahn: ``sigma = x (N + alpha - x)`` on ``0..N-1``.

    ``rho(x) = (beta+1)_x (alpha+1)_{N-1-x} / (x! (N-1-x)!)``.
    """
    alpha, beta = as_rational(alpha), as_rational(beta)
    N = _nonneg_int(N, "N")
    _require(alpha > -1 and beta > -1 and N >= 2, "hahn needs alpha, beta > -1 and N >= 2")

    def rho(s):
        if s < 0 or s >= N or Fraction(s).denominator != 1:
            return 0
        k = int(s)
        return Fraction(_poch(beta + 1, k) * _poch(alpha + 1, N - 1 - k),
                        math.factorial(k) * math.factorial(N - 1 - k))

    return _check(FamilySpec(
        "hahn", Lattice.linear(), (("alpha", alpha), ("beta", beta), ("N", N)), Fraction(0), Fraction(N),
        sigma=lambda s: s * (N + alpha - s), tau=lambda s: (beta + 1) * (N - 1) - (alpha + beta + 2) * s,
        rho=rho, normalization=_signed_inverse_factorial))


def racah(alpha=1, beta=Fraction(1, 2), a=1, N=13):
    """Racah-type family on ``x(s) = s (s + 1)``, support ``a .. a+N-1``.

    ``sigma(s) = (s - a)(s + b)(s - a + beta)(s + alpha + b)`` with
    ``b = a + N``; the weight is built from the ratio
    ``rho(s+1)/rho(s) = sigma(-s-1)/sigma(s+1)``.
    """
    alpha, beta, a = as_rational(alpha), as_rational(beta), as_rational(a)
    N = _nonneg_int(N, "N")
    _require(a > 0, "racah needs a > 0 (a = 0 puts the lattice vertex on the support)")
    _require(alpha > -1 and -1 < beta < 2 * a + 1 and N >= 2,
             "racah needs alpha > -1, -1 < beta < 2a + 1 and N >= 2")
    b = a + N

    def sigma(s):
        return (s - a) * (s + b) * (s - a + beta) * (s + alpha + b)

    def phi(s):
        return sigma(-s - 1)

    def tau(s):
        return (phi(s) - sigma(s)) / (2 * s + 1)

    cache = {}

    def rho(s):
        off = Fraction(s) - a
        if off.denominator != 1 or off < 0 or off >= N:
            return 0
        k = int(off)
        if k not in cache:
            out = Fraction(1)
            for j in range(k):
                t = a + j
                out = out * phi(t) / sigma(t + 1)
            cache[k] = out
        return cache[k]

    return _check(FamilySpec(
        "racah", Lattice.quadratic(1, 1, 0), (("alpha", alpha), ("beta", beta), ("a", a), ("N", N)),
        a, b, sigma=sigma, tau=tau, rho=rho, normalization=_signed_inverse_factorial))


def qhahn(q=4, alpha=1, beta=1, N=13):
    """q-Hahn-type family on ``x(s) = (q**s - 1)/(q - 1)``, support ``0..N-1``.

    ``sigma(s) = x(s)(x(N + alpha) - x(s))`` and
    ``sigma + tau Delta x(s - 1/2) = q**(alpha+1) x(s + beta + 1)(x(N - 1) - x(s))``.
    As ``q -> 1`` it tends to the Hahn family with the same parameters.
    """
    q = as_rational(q)
    alpha, beta = _nonneg_int(alpha, "alpha"), _nonneg_int(beta, "beta")
    N = _nonneg_int(N, "N")
    _require(q > 0 and q != 1 and N >= 2, "qhahn needs q > 0, q != 1 and N >= 2")
    lat = Lattice.qexponential(1 / (q - 1), 0, -1 / (q - 1), q)
    x = lat.x
    top = x(N + alpha)
    qa = q ** (alpha + 1)

    def sigma(s):
        xs = x(s)
        return xs * (top - xs)

    def phi(s):
        return qa * x(s + beta + 1) * (x(N - 1) - x(s))

    def tau(s):
        h = Fraction(1, 2)
        return (phi(s) - sigma(s)) / (x(s + h) - x(s - h))

    cache = {}

    def rho(s):
        off = Fraction(s)
        if off.denominator != 1 or off < 0 or off >= N:
            return 0
        k = int(off)
        if k not in cache:
            out = 1
            for t in range(k):
                out = out * phi(t) / sigma(t + 1)
            cache[k] = out
        return cache[k]

    return _check(FamilySpec(
        "qhahn", lat, (("q", q), ("alpha", alpha), ("beta", beta), ("N", N)), Fraction(0), Fraction(N),
        sigma=sigma, tau=tau, rho=rho,
        normalization=lambda n: (-1) ** n / lat.bracket_factorial(n)))


CATALOG = {
    "hermite": hermite,
    "laguerre": laguerre,
    "jacobi": jacobi,
    "charlier": charlier,
    "meixner": meixner,
    "kravchuk": kravchuk,
    "hahn": hahn,
    "racah": racah,
    "qhahn": qhahn,
}

PARAMETER_RANGES = {
    "hermite": {},
    "laguerre": {"alpha": "> -1"},
    "jacobi": {"alpha": "> -1", "beta": "> -1"},
    "charlier": {"mu": "> 0"},
    "meixner": {"gamma": "> 0", "mu": "(0, 1)"},
    "kravchuk": {"p": "(0, 1)", "N": "integer >= 1"},
    "hahn": {"alpha": "> -1", "beta": "> -1", "N": "integer >= 2"},
    "racah": {"alpha": "> -1", "beta": "(-1, 2a + 1)", "a": "> 0", "N": "integer >= 2"},
    "qhahn": {"q": "> 0, != 1", "alpha": "integer >= 0", "beta": "integer >= 0", "N": "integer >= 2"},
}

_CUSTOM = {}


def catalog_names():
    return list(CATALOG) + list(_CUSTOM)


def catalog_get(name, **params):
    """Build a catalog family by name; unknown parameter names raise ``ParameterError``."""
    key = name.lower()
    factory = CATALOG.get(key) or _CUSTOM.get(key)
    if factory is None:
        raise UnknownFamilyError(f"unknown family {name!r}; known: {', '.join(catalog_names())}")
    try:
        return factory(**params)
    except TypeError as exc:
        raise ParameterError(f"{name}: {exc}") from exc


def _defaults(factory):
    import inspect

    out = {}
    for p in inspect.signature(factory).parameters.values():
        if p.default is not inspect.Parameter.empty:
            out[p.name] = p.default
    return out


def catalog_entries():
    """Serializable description of every registered family with its default instance."""
    from .field import format_scalar

    entries = []
    for name in catalog_names():
        fam = catalog_get(name)
        lat = fam.lattice
        entry = {
            "name": name,
            "lattice": {"kind": lat.kind},
            "params": {k: format_scalar(v) for k, v in fam.params},
            "ranges": PARAMETER_RANGES.get(name, {}),
            "support": [None if fam.a is None else format_scalar(fam.a),
                        None if fam.b is None else format_scalar(fam.b)],
            "sigma_tilde" if not fam.continuous else "sigma": [format_scalar(c) for c in fam.sigma_poly],
            "tau": [format_scalar(c) for c in fam.tau_poly],
        }
        if lat.kind in ("quadratic", "qexponential"):
            entry["lattice"].update(c1=format_scalar(lat.c1), c2=format_scalar(lat.c2), c3=format_scalar(lat.c3))
        if lat.kind == "qexponential":
            entry["lattice"]["q"] = format_scalar(lat.q)
        entries.append(entry)
    return entries


# ---------------------------------------------------------------------------
# custom families from JSON

FAMILY_SCHEMA = {
    "type": "object",
    "required": ["families"],
    "properties": {
        "families": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "lattice", "tau", "support"],
                "properties": {
                    "name": {"type": "string"},
                    "lattice": {"type": "object", "required": ["kind"],
                                "properties": {"kind": {"enum": ["linear", "quadratic", "qexponential"]},
                                               "c1": {}, "c2": {}, "c3": {}, "q": {}}},
                    "sigma": {"type": "array", "description": "sigma in powers of x (linear lattice)"},
                    "sigma_tilde": {"type": "array", "description": "sigma_tilde in powers of x"},
                    "tau": {"type": "array", "maxItems": 2},
                    "support": {"type": "array", "minItems": 2, "maxItems": 2},
                    "normalization_base": {},
                    "window": {"type": "integer"},
                },
            },
        }
    },
}


def family_from_dict(entry):
    """Build a discrete family from a JSON entry.

    The weight is generated from ``rho(a) = 1`` through the Pearson ratio,
    so the entry only needs the lattice, ``tau`` and either ``sigma``
    (linear lattice) or ``sigma_tilde`` as coefficient lists in ``x``.
    ``B_n = normalization_base**n``.
    """
    try:
        name = str(entry["name"]).lower()
        lat_d = entry["lattice"]
        kind = lat_d["kind"]
        if kind == "linear":
            lat = Lattice.linear()
        elif kind == "quadratic":
            lat = Lattice.quadratic(lat_d.get("c1", 1), lat_d.get("c2", 0), lat_d.get("c3", 0))
        elif kind == "qexponential":
            lat = Lattice.qexponential(lat_d.get("c1", 1), lat_d.get("c2", 0), lat_d.get("c3", 0), lat_d["q"])
        else:
            raise ParameterError(f"custom family {name!r}: lattice kind {kind!r} is not supported")
        tau_c = tuple(as_rational(c) for c in entry["tau"])
        a_raw, b_raw = entry["support"]
        a = as_rational(a_raw)
        b = None if b_raw is None else as_rational(b_raw)
        base = as_rational(entry.get("normalization_base", 1))
        window = int(entry.get("window", 24))
        if "sigma" in entry:
            sig_c = tuple(as_rational(c) for c in entry["sigma"])
            if kind != "linear":
                raise ParameterError(f"custom family {name!r}: give sigma_tilde on non-linear lattices")
        else:
            sig_c = tuple(as_rational(c) for c in entry["sigma_tilde"])
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"malformed family entry: {exc}") from exc

    def tau(s):
        return polyval(tau_c, lat.x(s))

    h = Fraction(1, 2)

    if "sigma" in entry:
        def sigma_fn(s):
            return polyval(sig_c, lat.x(s))
    else:
        def sigma_fn(s):
            return polyval(sig_c, lat.x(s)) - tau(s) * (lat.x(s + h) - lat.x(s - h)) / 2

    cache = {}

    def rho(s):
        off = Fraction(s) - a
        if off.denominator != 1 or off < 0 or (b is not None and s >= b):
            return 0
        k = int(off)
        if k not in cache:
            out = Fraction(1)
            for j in range(k):
                t = a + j
                out = out * (sigma_fn(t) + tau(t) * (lat.x(t + h) - lat.x(t - h))) / sigma_fn(t + 1)
            cache[k] = out
        return cache[k]

    def factory():
        return _check(FamilySpec(name, lat, (), a, b, sigma=sigma_fn, tau=tau, rho=rho,
                                 normalization=lambda n: base ** n, window=window))

    return name, factory


def load_catalog(path):
    """Register the custom families of a JSON file and return their names."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParameterError(f"cannot read family catalog {path}: {exc}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("families"), list):
        raise ParameterError("family catalog must be an object with a 'families' list")
    names = []
    for entry in data["families"]:
        name, factory = family_from_dict(entry)
        factory()
        _CUSTOM[name] = factory
        names.append(name)
    return names


# ---------------------------------------------------------------------------
# norms

SUM_CAP = 20000


def lattice_sum(family, m, func):
    """``sum_s func(s) rho_m(s) Delta x_m(s - 1/2)`` over the support, times ``rho_scale``.

    Finite supports are summed exactly.  Unbounded supports are summed
    until the terms fall below the working precision relative to the sum
    of absolute values, and the result is an ``mpf``.
    """
    if family.continuous:
        raise ValueError("lattice_sum is for discrete families")
    if family.b is not None:
        total = 0
        for s in family.sites(m):
            total += func(s) * family.rho_m(m, s) * family.dx_half(m, s)
        return total * family.rho_scale
    with mpmath.workdps(mpmath.mp.dps + 15):
        eps = mpmath.mpf(10) ** (-(mpmath.mp.dps + 5))
        total = mass = mpmath.mpf(0)
        small = 0
        s = family.a
        for _ in range(SUM_CAP):
            term = to_mpf(func(s)) * to_mpf(family.rho_m(m, s)) * to_mpf(family.dx_half(m, s))
            total += term
            # compare with the absolute mass: orthogonal products sum to ~0
            mass += abs(term)
            small = small + 1 if abs(term) <= eps * mass else 0
            if small >= 8 and s - family.a > 2 * family.window:
                return +(total * family.rho_scale)
            s += 1
    raise TruncationError(f"{family.describe()}: lattice sum did not converge within {SUM_CAP} sites")


def integrate_poly(family, m, coeffs):
    """``integral of P(x) rho_m(x) dx`` for a polynomial ``P`` by exact moments."""
    from .poly import polymul

    weight = (1,)
    for _ in range(m):
        weight = polymul(weight, family.sigma_poly)
    full = polymul(tuple(coeffs), weight)
    with mpmath.workdps(mpmath.mp.dps + 25):
        total = mpmath.mpf(0)
        for k, c in enumerate(full):
            if c != 0:
                total += to_mpf(c) * family.moments(k)
        return +total


def norm_sq(family, n):
    """Squared norm ``d_n**2`` of ``y_n``."""
    return _norm_sq_cached(family, n, mpmath.mp.dps)


@lru_cache(maxsize=None)
def _norm_sq_cached(family, n, dps):
    return norm_sq_direct(family, 0, n)


def norm_sq_direct(family, m, n):
    """``d_mn**2`` summed (or integrated) directly from ``v_mn`` and ``rho_m``."""
    from .poly import polymul
    from .rodrigues import build_vmn

    v = build_vmn(family, m, n)
    if family.continuous:
        return integrate_poly(family, m, polymul(v.coeffs, v.coeffs))
    return lattice_sum(family, m, lambda s: v.at(s) ** 2)


def norm_sq_m(family, m, n):
    """``d_mn**2 = d_n**2 prod_{k<m} (lambda_n - lambda_k)``."""
    from .spectral import lambda_n

    out = norm_sq(family, n)
    ln = lambda_n(family, n)
    for k in range(m):
        out = out * (ln - lambda_n(family, k))
    return out
