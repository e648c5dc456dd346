"""q-Hahn polynomials approaching the Hahn polynomials as q -> 1.

Close to q = 1 every q-difference cancels about -log10(q - 1) digits, so
the working precision is raised first.
"""
from fractions import Fraction

import mpmath

from ladderlattice import build_vmn, catalog_get, lambda_n, q_bracket, set_precision
from ladderlattice.field import relative_deviation

set_precision(60)
hahn = catalog_get("hahn", alpha=1, beta=1, N=13)

print("q - 1      [5]_q            lambda_5          rel. gap of y_4 on 10 sites")
for k in range(2, 10, 2):
    q = 1 + Fraction(1, 10 ** k)
    qhahn = catalog_get("qhahn", q=q, alpha=1, beta=1, N=13)
    a, b = build_vmn(qhahn, 0, 4), build_vmn(hahn, 0, 4)
    sites = b.sites[:10]
    gap = relative_deviation([a.at(s) for s in sites], [b.at(s) for s in sites])
    print(f"1e-{k:<7} {mpmath.nstr(q_bracket(qhahn.lattice, 5), 12):<16} "
          f"{mpmath.nstr(lambda_n(qhahn, 5), 12):<17} {mpmath.nstr(gap, 3)}")
print(f"limit      5                {lambda_n(hahn, 5)}")
