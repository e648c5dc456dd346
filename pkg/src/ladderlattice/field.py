"""Scalar field helpers.

Two kinds of scalars flow through the package: exact rationals
(:class:`fractions.Fraction` or ``int``) and multiprecision floats
(:class:`mpmath.mpf`).  Arithmetic between them works natively in mpmath,
but constructing an ``mpf`` from a ``Fraction`` does not, hence
:func:`to_mpf`.

The working precision defaults to 34 significant digits and can be set
with the ``LADDERLATTICE_PRECISION`` environment variable or
:func:`set_precision`.
"""
import os
from fractions import Fraction

import mpmath
from mpmath.libmp import repr_dps

DEFAULT_PRECISION = 34


def _env_precision():
    raw = os.environ.get("LADDERLATTICE_PRECISION", "")
    try:
        digits = int(raw)
    except ValueError:
        return DEFAULT_PRECISION
    return digits if digits >= 15 else DEFAULT_PRECISION


def set_precision(digits):
    """Set the mpmath working precision in significant decimal digits."""
    mpmath.mp.dps = int(digits)


def precision():
    """Current working precision in decimal digits."""
    return mpmath.mp.dps


set_precision(_env_precision())


def is_exact(value):
    """True for ``int`` and ``Fraction`` scalars."""
    return isinstance(value, (int, Fraction))


def to_mpf(value):
    """Convert an exact or float scalar to ``mpmath.mpf``."""
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def as_rational(value):
    """Parse a user-supplied parameter as an exact rational.

    Integers, fractions and decimal strings or floats are read exactly,
    so ``0.3`` becomes ``3/10``.
    """
    if isinstance(value, bool):
        raise TypeError("boolean is not a numeric parameter")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, mpmath.mpf):
        return Fraction(mpmath.nstr(value, mpmath.mp.dps, strip_zeros=True))
    raise TypeError(f"cannot read {value!r} as a rational number")


def exact_sqrt(value):
    """Square root of a non-negative rational if it is rational, else ``None``."""
    value = Fraction(value)
    if value < 0:
        return None
    from math import isqrt

    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def sqrt(value):
    """Square root in the float field."""
    return mpmath.sqrt(to_mpf(value))


def magnitude(value):
    """Absolute value as ``mpf``."""
    return abs(to_mpf(value))


def max_abs(values):
    """Largest absolute value in an iterable, ``mpf(0)`` when empty."""
    best = mpmath.mpf(0)
    for v in values:
        a = magnitude(v)
        if a > best:
            best = a
    return best


def relative_deviation(values, reference):
    """Max absolute difference scaled by the largest reference magnitude.

    Exact inputs give an exact ``Fraction``; zero references fall back
    to the absolute difference.
    """
    values, reference = list(values), list(reference)
    if len(values) != len(reference):
        raise ValueError("length mismatch")
    if not all(is_exact(v) for v in values + reference):
        values, reference = [to_mpf(v) for v in values], [to_mpf(r) for r in reference]
    diffs = [v - r for v, r in zip(values, reference)]
    if all(is_exact(d) for d in diffs) and all(is_exact(r) for r in reference):
        top = max((abs(Fraction(d)) for d in diffs), default=Fraction(0))
        scale = max((abs(Fraction(r)) for r in reference), default=Fraction(0))
        return top / scale if scale else top
    top = max_abs(diffs)
    scale = max_abs(reference)
    return top / scale if scale else top


def format_scalar(value):
    """Round-trip-safe text form: ``p/q`` for rationals, shortest digits for floats."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, mpmath.mpf):
        # fewest digits that parse back to the same binary value
        for digits in range(max(1, mpmath.mp.dps - 2), repr_dps(mpmath.mp.prec) + 1):
            text = mpmath.nstr(value, digits, strip_zeros=True, min_fixed=-6, max_fixed=12)
            if mpmath.mpf(text) == value:
                return text
        return text
    return repr(value)
