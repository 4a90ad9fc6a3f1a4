"""
Sampling through the Mellin factorization
=========================================

mu(p, r) is the law of c(p) times a product of independent powers of beta
variables.  Sampling is therefore a handful of gamma draws per variate.
"""

from fractions import Fraction

import numpy as np

from raney import RaneyParams, SamplerState, factorize, raney_number, sample_mu
from raney.rmt import ks_sample

params = RaneyParams(3, 2, 1)
factors = factorize(params)
print(f"dilation c(3/2) = {factors.dilation:.6f}")
for f in factors.describe():
    print("  ", f)

# empirical moments against A_m
x = sample_mu(SamplerState.for_params(params, seed=1), 1_000_000)
for m in range(1, 5):
    est = np.mean(x ** m)
    se = np.std(x ** m) / 1000
    print(f"m={m}: sample {est:.5f} +- {se:.5f}   exact {float(raney_number(params, m)):.5f}")

# KS distance to the cdf obtained by integrating the density
print("KS, 1e5 draws:", round(ks_sample(x[:100_000], params), 5))

# the diagonal case has a point mass among its factors
print(factorize(RaneyParams(3, 1, 3)).describe()[0])

# independent substreams for parallel work
state = SamplerState.for_params(RaneyParams(2, 1, Fraction(1, 2)), seed=5)
print([sample_mu(s, 3).round(4).tolist() for s in state.split(2)])
