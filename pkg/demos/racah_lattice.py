"""Polynomials on the quadratic lattice x(s) = s(s+1).

Builds the Racah-type polynomials, checks the three-term recurrence in
exact rational arithmetic and shows that the difference-derivatives obey
their own equation of the same type.
"""
from ladderlattice import build_vmn, catalog_get, equation_residual, ladder_coeffs, recurrence_residual

racah = catalog_get("racah")
print(racah.describe())

for n in range(4):
    c = ladder_coeffs(racah, 0, n)
    print(f"n={n}  alpha={c.alpha}  beta={c.beta} ({c.beta_source})  gamma={c.gamma}  "
          f"recurrence residual={recurrence_residual(racah, 0, n)}")

print("\nequation residuals of v_mn (exact rationals):")
for m in range(3):
    print(f"m={m}:", [equation_residual(build_vmn(racah, m, n)) for n in range(m, 7)])
