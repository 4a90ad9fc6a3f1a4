"""
Densities W_{p,r}
=================

For 0 < r <= p the Raney numbers are the moments of a probability measure on
[0, c(p)].  Its density is a finite sum of hypergeometric functions, with
elementary closed forms for p in {2, 3/2, 3}.  Outside that region the same
formula still defines a function, but it takes negative values.
"""

from fractions import Fraction

import numpy as np

from raney import RaneyParams, build_density, eval_density

# Marchenko-Pastur law, support [0, 4]
mp = build_density(RaneyParams(2, 1, 1))
x = np.linspace(0.0, 4.0, 9)
print("W_{2,1}:", np.round(eval_density(mp, x), 6))
print("closed form tag:", mp.closed_form_tag)

# the general expansion reproduces the closed form
d = build_density(RaneyParams(3, 2, 1))
grid = np.linspace(0, d.support_hi, 1002)[1:-1]
gap = np.max(np.abs(eval_density(d, grid) - eval_density(d, grid, force_general=True)))
print(f"p=3/2, r=1: closed form vs general expansion, max gap {gap:.1e}")

# no closed form here: five hypergeometric terms
d = build_density(RaneyParams(5, 2, 2))
xs = np.linspace(0, d.support_hi, 1002)[1:-1]
print(f"p=5/2, r=2: {len(d.terms)} terms, peak value {eval_density(d, xs).max():.4f}")

# above the diagonal r = p the function dips below zero
for r in [Fraction(3, 2), 2, Fraction(23, 10), 3]:
    d = build_density(RaneyParams(3, 2, r))
    xs = np.linspace(0, d.support_hi, 2002)[1:-1]
    print(f"p=3/2, r={str(r):>5}: min W = {eval_density(d, xs).min(): .4f}")
