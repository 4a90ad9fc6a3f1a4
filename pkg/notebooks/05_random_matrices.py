"""
Squared singular values of Ginibre powers
=========================================

For a complex Ginibre matrix G with entry variance 1/N, the squared singular
values of G^n follow mu(n+1, 1) as N grows.  Eigenvalues come from a cyclic
Jacobi solver.
"""

import numpy as np

from raney.rmt import ks_against_mu, spectrum_sample

for power in (1, 2):
    for size in (25, 50, 100):
        sample = spectrum_sample(size, power, trials=10, seed=0)
        ks = ks_against_mu(sample)
        print(f"n={power}, N={size:>3}: KS vs mu({power + 1},1) = {ks:.4f}, "
              f"largest eigenvalue {sample.eigenvalues.max():.3f}")

# the histogram of the pooled spectrum, as the `raney rmt` command reports it
sample = spectrum_sample(100, 1, trials=10, seed=0)
counts, edges = np.histogram(sample.eigenvalues, bins=8, range=(0, 4))
for lo, hi, c in zip(edges, edges[1:], counts):
    print(f"[{lo:.1f}, {hi:.1f}) {'#' * (c // 10)}")
