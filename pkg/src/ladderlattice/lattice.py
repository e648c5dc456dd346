"""Lattices, q-brackets and finite-difference operators on grid functions.

A lattice is a rule ``s -> x(s)``.  Four kinds are supported:

``continuous``
    No grid; the variable is ``x`` itself.
``linear``
    ``x(s) = s``.
``quadratic``
    ``x(s) = c1 s**2 + c2 s + c3``.
``qexponential``
    ``x(s) = c1 q**s + c2 q**(-s) + c3``.

The shifted lattice is ``x_k(s) = x(s + k/2)``.  The bracket ``[n]``
equals ``sinh(n w)/sinh(w)`` with ``w = log(q)/2`` on q-lattices and
``n`` otherwise.  Whenever ``sqrt(q)`` is rational every lattice value
at a half-integer site is an exact ``Fraction``.
"""
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import DegenerateLatticeSiteError, WindowTooSmallError
from .field import as_rational, exact_sqrt, is_exact, to_mpf

KINDS = ("continuous", "linear", "quadratic", "qexponential")


@dataclass(frozen=True)
class Lattice:
    """Lattice law ``x(s)``.

    Parameters
    ----------
    kind : str
        One of ``continuous``, ``linear``, ``quadratic``, ``qexponential``.
    c1, c2, c3 : Fraction
        Coefficients of the quadratic or q-exponential law.
    q : Fraction or None
        Base of the q-exponential law, ``q > 0`` and ``q != 1``.
    """

    kind: str
    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)
    c3: Fraction = Fraction(0)
    q: Fraction = None
    _root: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown lattice kind {self.kind!r}")
        if self.kind == "quadratic" and self.c1 == 0:
            raise ValueError("quadratic lattice needs c1 != 0")
        if self.kind == "qexponential":
            if self.q is None or self.q <= 0 or self.q == 1:
                raise ValueError("q-exponential lattice needs q > 0, q != 1")
            if self.c1 == 0 and self.c2 == 0:
                raise ValueError("q-exponential lattice needs c1 or c2 non-zero")
            root = exact_sqrt(self.q)
            object.__setattr__(self, "_root", root if root is not None else mpmath.sqrt(to_mpf(self.q)))

    # -- constructors -----------------------------------------------------
    @classmethod
    def continuous(cls):
        return cls("continuous")

    @classmethod
    def linear(cls):
        return cls("linear", Fraction(0), Fraction(1), Fraction(0))

    @classmethod
    def quadratic(cls, c1, c2=0, c3=0):
        return cls("quadratic", as_rational(c1), as_rational(c2), as_rational(c3))

    @classmethod
    def qexponential(cls, c1, c2, c3, q):
        return cls("qexponential", as_rational(c1), as_rational(c2), as_rational(c3), as_rational(q))

    # -- properties -------------------------------------------------------
    @property
    def exact(self):
        """True when lattice values at half-integer sites are rational."""
        return self.kind != "qexponential" or is_exact(self._root)

    @property
    def uniform(self):
        return self.kind == "linear"

    @property
    def omega(self):
        """``log(q)/2`` for q-lattices, 0 otherwise."""
        if self.kind != "qexponential":
            return mpmath.mpf(0)
        return mpmath.log(to_mpf(self.q)) / 2

    def q_power(self, s):
        """``q**s``; exact when ``2s`` is an integer and ``sqrt(q)`` is rational."""
        if is_exact(s) and (2 * Fraction(s)).denominator == 1:
            return self._root ** int(2 * Fraction(s))
        return mpmath.power(to_mpf(self.q), to_mpf(s))

    # -- lattice law ------------------------------------------------------
    def x(self, s):
        """Lattice value ``x(s)``."""
        if self.kind in ("continuous", "linear"):
            return s
        if self.kind == "quadratic":
            return (self.c1 * s + self.c2) * s + self.c3
        p = self.q_power(s)
        if is_exact(p):
            return self.c1 * p + self.c2 / p + self.c3
        return to_mpf(self.c1) * p + to_mpf(self.c2) / p + to_mpf(self.c3)

    def x_k(self, k, s):
        """Shifted lattice value ``x(s + k/2)``."""
        if self.kind == "continuous":
            return s
        return self.x(s + Fraction(k, 2))

    def step(self, k, s):
        """Forward step ``x_k(s+1) - x_k(s)``; 1 on continuous lattices."""
        if self.kind == "continuous":
            return 1
        return self.x_k(k, s + 1) - self.x_k(k, s)

    def bracket(self, n):
        """``[n]``: ``sinh(n w)/sinh(w)`` on q-lattices, ``n`` otherwise."""
        if self.kind != "qexponential":
            return Fraction(n)
        r = self._root
        return (r ** n - r ** (-n)) / (r - 1 / r)

    def bracket_factorial(self, n):
        """``[n]! = [1][2]...[n]`` with ``[0]! = 1``."""
        out = Fraction(1)
        for k in range(1, n + 1):
            out = out * self.bracket(k)
        return out

    def ch(self, n):
        """``cosh(n w)``; exactly 1 on non-q lattices."""
        if self.kind != "qexponential":
            return Fraction(1)
        r = self._root
        return (r ** n + r ** (-n)) / 2


def x_eval(lattice, s):
    """Evaluate ``x(s)`` on a lattice."""
    return lattice.x(s)


def x_k(lattice, k, s):
    """Evaluate the shifted lattice ``x(s + k/2)``."""
    return lattice.x_k(k, s)


def q_bracket(lattice, n):
    """The bracket ``[n]`` of a lattice."""
    return lattice.bracket(n)


@dataclass(frozen=True)
class GridFunction:
    """Samples ``values[i]`` of a function at consecutive sites ``origin + i``.

    ``origin`` may be a half-integer, which is how staggered grids produced
    by central differences are represented.
    """

    origin: Fraction
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "origin", Fraction(self.origin))
        object.__setattr__(self, "values", tuple(self.values))

    def __len__(self):
        return len(self.values)

    @property
    def sites(self):
        return tuple(self.origin + i for i in range(len(self.values)))

    def at(self, s):
        i = Fraction(s) - self.origin
        if i.denominator != 1 or not 0 <= i < len(self.values):
            raise KeyError(f"site {s} not on grid starting at {self.origin} with {len(self.values)} points")
        return self.values[int(i)]

    def restrict(self, start, stop):
        """Sub-grid on sites ``start <= s < stop``."""
        i0 = int(Fraction(start) - self.origin)
        i1 = int(Fraction(stop) - self.origin)
        if i0 < 0 or i1 > len(self.values) or i0 > i1:
            raise WindowTooSmallError(f"cannot restrict grid to [{start}, {stop})")
        return GridFunction(Fraction(start), self.values[i0:i1])


def _need(f, count, what):
    if len(f) < count:
        raise WindowTooSmallError(f"{what} needs at least {count} sites, got {len(f)}")


def delta_fwd(f):
    """Forward difference ``f(s+1) - f(s)`` on sites ``origin .. end-1``."""
    _need(f, 2, "forward difference")
    v = f.values
    return GridFunction(f.origin, [v[i + 1] - v[i] for i in range(len(v) - 1)])


def delta_bwd(f):
    """Backward difference ``f(s) - f(s-1)`` on sites ``origin+1 .. end``."""
    _need(f, 2, "backward difference")
    v = f.values
    return GridFunction(f.origin + 1, [v[i + 1] - v[i] for i in range(len(v) - 1)])


def delta_mean(f):
    """Central difference ``f(s+1/2) - f(s-1/2)`` on the staggered grid."""
    _need(f, 2, "central difference")
    v = f.values
    return GridFunction(f.origin + Fraction(1, 2), [v[i + 1] - v[i] for i in range(len(v) - 1)])


def _divide(num, den, site):
    if den == 0:
        raise DegenerateLatticeSiteError(f"lattice step vanishes at s={site}")
    return num / den


def div_diff(f, lattice, k=0):
    """Forward divided difference ``Delta f(s) / Delta x_k(s)``."""
    _need(f, 2, "divided difference")
    out = []
    for i, s in enumerate(f.sites[:-1]):
        out.append(_divide(f.values[i + 1] - f.values[i], lattice.step(k, s), s))
    return GridFunction(f.origin, out)


def div_diff_bwd(f, lattice, k=0, zero_before=None):
    """Backward divided difference ``nabla f(s) / nabla x_k(s)``.

    Sites ``s < zero_before`` where both samples vanish are returned as
    exact zeros without dividing, which skips the vertex of a quadratic
    lattice when ``f`` is known to vanish there.
    """
    _need(f, 2, "divided difference")
    out = []
    for i, s in enumerate(f.sites[1:]):
        a, b = f.values[i + 1], f.values[i]
        if zero_before is not None and s < zero_before and a == 0 and b == 0:
            out.append(a - b)
            continue
        out.append(_divide(a - b, lattice.step(k, s - 1), s))
    return GridFunction(f.origin + 1, out)


def mean_div(f, lattice):
    """Central divided difference ``(f(t+1/2) - f(t-1/2)) / (x(t+1/2) - x(t-1/2))``."""
    _need(f, 2, "central divided difference")
    out = []
    for i, s in enumerate(f.sites[:-1]):
        t = s + Fraction(1, 2)
        out.append(_divide(f.values[i + 1] - f.values[i], lattice.x(t + Fraction(1, 2)) - lattice.x(t - Fraction(1, 2)), t))
    return GridFunction(f.origin + Fraction(1, 2), out)
