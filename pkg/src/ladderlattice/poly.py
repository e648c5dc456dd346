"""Dense polynomials as ascending coefficient tuples, generic over the scalar field."""
from fractions import Fraction

import mpmath

from .field import is_exact, to_mpf


def trim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c) if c else (0,)


def polyval(c, x):
    """Horner evaluation of ``sum c[i] x**i``.

    Stays exact for rational input; any float coefficient or argument
    switches the whole evaluation to ``mpf``.
    """
    if not (is_exact(x) and all(is_exact(a) for a in c)):
        x = to_mpf(x)
        c = [to_mpf(a) for a in c]
    out = 0
    for a in reversed(c):
        out = out * x + a
    return out


def polyadd(a, b):
    n = max(len(a), len(b))
    return tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def polyscale(a, k):
    return tuple(k * v for v in a)


def polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return tuple(out)


def polyder(a, times=1):
    for _ in range(times):
        a = tuple(i * a[i] for i in range(1, len(a))) or (0,)
    return a


def solve(matrix, rhs):
    """Solve a square linear system by Gauss elimination with pivoting.

    Exact for ``Fraction`` entries; float entries use the largest pivot.
    """
    n = len(matrix)
    a = [list(row) + [r] for row, r in zip(matrix, rhs)]
    exact = all(is_exact(v) for row in a for v in row)
    a = [[Fraction(v) if exact else to_mpf(v) for v in row] for row in a]
    for col in range(n):
        if exact:
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        else:
            piv = max(range(col, n), key=lambda r: abs(a[r][col]))
            if a[piv][col] == 0:
                piv = None
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / p
                a[r] = [u - f * v for u, v in zip(a[r], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def fit(xs, ys, degree):
    """Interpolate ``degree + 1`` leading samples and report the residual on the rest.

    Returns
    -------
    coeffs : tuple
        Ascending coefficients.
    residual : scalar
        Largest absolute misfit over all samples, exact for rational data.
    """
    xs, ys = list(xs), list(ys)
    if len(xs) < degree + 1:
        raise ValueError(f"need {degree + 1} samples for degree {degree}, got {len(xs)}")
    exact = all(is_exact(v) for v in xs + ys)
    if exact:
        xs = [Fraction(v) for v in xs]
        ys = [Fraction(v) for v in ys]
        coeffs = _newton_to_monomial(xs[: degree + 1], ys[: degree + 1])
        res = max((abs(polyval(coeffs, x) - y) for x, y in zip(xs, ys)), default=Fraction(0))
        return coeffs, res
    with mpmath.workdps(mpmath.mp.dps + 20):
        coeffs = _newton_to_monomial([to_mpf(v) if is_exact(v) else v for v in xs[: degree + 1]],
                                     ys[: degree + 1])
        res = max((abs(polyval(coeffs, x) - y) for x, y in zip(xs, ys)), default=mpmath.mpf(0))
    return tuple(+c for c in coeffs), +res


def _newton_to_monomial(xs, ys):
    n = len(xs)
    dd = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    coeffs = (dd[-1],)
    for i in range(n - 2, -1, -1):
        coeffs = polyadd(polymul(coeffs, (-xs[i], 1)), (dd[i],))
    return tuple(coeffs)
