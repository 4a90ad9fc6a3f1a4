import math
from fractions import Fraction

import pytest

from oracles import beta_moment
from raney.core import RaneyParams
from raney.mellin import (BetaFactor, FactorizationUnavailable, PointMass, build_factors,
                          cut_points, derive_parameters, factorize, moment_product_check)


def P(p, r):
    p = Fraction(p)
    return RaneyParams(p.numerator, p.denominator, r)


def grid():
    for k in range(2, 25):
        for l in range(1, k):
            if math.gcd(k, l) != 1:
                continue
            p = Fraction(k, l)
            for frac in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
                yield P(p, p * frac)


def test_mp_example():
    ab = derive_parameters(P(2, 1))
    assert ab.alpha == (1, 2) and ab.beta == (Fraction(1, 2), 1) and ab.alpha_tilde == (1, 2)
    assert ab.c_p == pytest.approx(4)
    fl = build_factors(ab)
    assert fl.factors == (BetaFactor(0.5, 0.5, 1), BetaFactor(1.0, 1.0, 1))
    assert fl.dilation == pytest.approx(4)


def test_three_halves():
    ab = derive_parameters(P(Fraction(3, 2), 1))
    assert (ab.k, ab.l) == (3, 2)
    assert ab.alpha_tilde == (Fraction(1, 2), 1, 2)
    assert ab.beta == (Fraction(1, 3), Fraction(2, 3), 1)
    assert ab.c_p == pytest.approx(3 * math.sqrt(3) / 2)
    fl = factorize(P(Fraction(3, 2), 1))
    assert len(fl) == 3 and all(f.l == 2 for f in fl.factors)


def test_point_mass_cases():
    fl = factorize(P(3, 3))
    assert fl.factors[0] == PointMass(1.0)
    fl = factorize(P(2, 2))
    assert fl.factors == (PointMass(1.0), BetaFactor(1.5, 1.5, 1))
    assert fl.dilation == pytest.approx(4)


def test_cut_points():
    for k in range(2, 25):
        for l in range(1, k):
            js = cut_points(k, l)
            assert js[0] == 1 and js[-1] == k + 1
            assert all(a < b for a, b in zip(js, js[1:]))


def test_permutation_and_domination_grid():
    for q in grid():
        ab = derive_parameters(q)
        assert sorted(ab.alpha) == sorted(ab.alpha_tilde)
        assert all(b2 - b1 == Fraction(1, ab.k) for b1, b2 in zip(ab.beta, ab.beta[1:]))
        assert ab.dominated


def test_domination_fails_outside():
    for p, r in [(2, Fraction(5, 2)), (Fraction(3, 2), Fraction(23, 10)), (3, 4), (Fraction(7, 3), 3)]:
        ab = derive_parameters(P(p, r))
        assert not ab.dominated
        with pytest.raises(FactorizationUnavailable):
            build_factors(ab)


def test_factor_normalization_and_positivity():
    for q in grid():
        for f in factorize(q).factors:
            assert f.moment(0) == 1.0
            if isinstance(f, BetaFactor):
                assert f.u > 0 and f.v > 0 and f.l >= 1


def test_beta_factor_moment_oracle():
    for u, v, l in [(1 / 3, 1 / 6, 2), (0.5, 0.5, 1), (2.5, 0.25, 3)]:
        for m in range(6):
            assert BetaFactor(u, v, l).moment(m) == pytest.approx(beta_moment(u, v, l, m), rel=1e-13)


def test_moment_product():
    assert moment_product_check(P(2, 1), 10) < 1e-10
    assert moment_product_check(P(Fraction(3, 2), Fraction(1, 2)), 10) < 1e-10
    worst = max(moment_product_check(q, 12) for q in grid() if q.k <= 12)
    assert worst < 1e-10


def test_needs_p_above_one():
    with pytest.raises(ValueError):
        derive_parameters(RaneyParams(1, 1, Fraction(1, 2)))
    with pytest.raises(ValueError):
        derive_parameters(P(2, 0))


def test_describe():
    rows = factorize(P(2, 2)).describe()
    assert rows[0] == {"kind": "point_mass", "at": 1.0}
    assert rows[1]["kind"] == "beta"
