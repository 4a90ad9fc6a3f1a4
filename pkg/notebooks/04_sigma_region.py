"""
Where is W_{p,r} a probability density?
=======================================

Scan a rational (p, r) lattice, take the minimum of W over the support and
compare the sign with the rule r <= p.  The last part follows the right edge
of the support of the free powers, divided by n, toward e.
"""

import math
from fractions import Fraction

from raney.verify import kargin_check, positivity_scan, rational_lattice

ps = rational_lattice(Fraction(6, 5), 3, 2)
rs = [Fraction(j, 2) for j in range(1, 9)]
pmap = positivity_scan(ps, rs)

print("      r: " + " ".join(f"{str(r):>4}" for r in rs))
for p in ps:
    marks = ["   +" if c.is_nonnegative else "   -" for c in pmap.cells if c.p == p]
    print(f"p = {str(p):>4}: " + " ".join(marks))
print("mismatches with r <= p:", len(pmap.mismatches()))

ratios = kargin_check(1000)
for n in (1, 2, 10, 100, 1000):
    print(f"n={n:>4}: c(n+1)/n = {ratios[n - 1]:.6f}   (e = {math.e:.6f})")
