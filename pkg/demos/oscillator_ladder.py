"""Harmonic-oscillator ladder built from the Hermite family.

The orthonormal Hermite functions are the oscillator eigenstates. The
raising operator moves psi_n to psi_{n+1} with the factor sqrt(2(n+1)),
and composing lowering after raising gives back the state times an exact
constant.
"""
import mpmath

from ladderlattice import LadderOperator, catalog_get, factorization_check, ortho_build

hermite = catalog_get("hermite")

print("n   max |L+ psi_n - scale * psi_{n+1}|   scale")
for n in range(6):
    up = LadderOperator("raise", hermite, 0, n)
    psi, nxt = ortho_build(hermite, 0, n), ortho_build(hermite, 0, n + 1)
    image = up(psi)
    scale = up.image_scale()
    err = max(abs(image(s) - scale * nxt.at(s)) for s in psi.sites)
    print(f"{n}   {mpmath.nstr(err, 3):>10}                        {mpmath.nstr(scale, 12)}")

d = factorization_check(hermite, 0, 3)
print("\nfactorization defects at n = 3:", mpmath.nstr(d.raise_then_lower, 3), mpmath.nstr(d.lower_then_raise, 3))
