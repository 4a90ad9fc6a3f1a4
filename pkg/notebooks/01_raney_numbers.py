"""
Raney numbers and their generating functions
============================================

A_m(p, r) generalizes the Catalan numbers. With exact rational p and r
everything below is computed without rounding.
"""

from fractions import Fraction

from raney import RaneyParams, fuss_power_series, raney_number, raney_sequence

# p = 2, r = 1 gives the Catalan numbers
catalan = RaneyParams(2, 1, 1)
print("Catalan:", [int(a) for a in raney_sequence(catalan, 10)])

# the second parameter shifts the sequence: A_m(p, p) = A_{m+1}(p, 1)
p = Fraction(5, 2)
diag, fuss = RaneyParams(5, 2, p), RaneyParams(5, 2, 1)
print("A_m(5/2, 5/2):  ", [str(raney_number(diag, m)) for m in range(5)])
print("A_m+1(5/2, 1):  ", [str(raney_number(fuss, m + 1)) for m in range(5)])

# 4^m A_m(3/2, 1/2) is always an integer
bures = RaneyParams(3, 2, Fraction(1, 2))
print("4^m A_m(3/2,1/2):", [int(4 ** m * raney_number(bures, m)) for m in range(10)])

# the numbers are the Taylor coefficients of B_p(z)^r, B = 1 + z B^p
series = fuss_power_series(RaneyParams(3, 1, Fraction(1, 2)), 8)
exact = [float(a) for a in raney_sequence(RaneyParams(3, 1, Fraction(1, 2)), 8)]
for m, (s, e) in enumerate(zip(series, exact)):
    print(f"m={m}: series {s:.12f}  product formula {e:.12f}")
