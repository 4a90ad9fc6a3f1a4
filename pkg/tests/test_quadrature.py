import math

import numpy as np
import pytest

from raney.core import RaneyParams
from raney.density import build_density
from raney.quadrature import QuadResult, integrate, tanh_sinh_rule
from raney.special import AccuracyError


def test_constant():
    assert integrate(lambda x: np.ones_like(x), 0.0, 1.0) == pytest.approx(1.0, abs=1e-14)


def test_inverse_sqrt():
    assert integrate(lambda x: x ** -0.5, 0.0, 1.0, singular_exponent_lo=-0.5) == pytest.approx(2.0, abs=1e-10)


@pytest.mark.parametrize("s", [-0.9, -0.75, -1 / 3, 0.5, 2.0])
def test_power_singularities(s):
    assert integrate(lambda x: x ** s, 0.0, 1.0) == pytest.approx(1 / (s + 1), rel=1e-9)


def test_both_ends_singular():
    # int_0^1 x^{-1/2} (1-x)^{-1/4} = B(1/2, 3/4)
    f = lambda x: x ** -0.5 * (1 - x) ** -0.25
    exact = math.gamma(0.5) * math.gamma(0.75) / math.gamma(1.25)
    assert integrate(f, 0.0, 1.0) == pytest.approx(exact, abs=1e-10)


def test_mp_normalization():
    d = build_density(RaneyParams(2, 1, 1))
    assert integrate(d, 0.0, 4.0) == pytest.approx(1.0, abs=1e-8)


def test_full_output():
    res = integrate(np.exp, 0.0, 1.0, full_output=True)
    assert isinstance(res, QuadResult)
    assert res.value == pytest.approx(math.e - 1, abs=1e-14)
    assert res.level >= 3 and res.n_evals > 0 and res.error <= 1e-10


def test_degenerate_interval():
    assert integrate(np.exp, 2.0, 2.0) == 0.0
    with pytest.raises(ValueError):
        integrate(np.exp, 2.0, 1.0)
    with pytest.raises(ValueError):
        integrate(np.exp, 0.0, 1.0, singular_exponent_lo=-1.0)


def test_nonconvergence_reports_estimate():
    with pytest.raises(AccuracyError) as info:
        integrate(lambda x: np.sin(200 * x), 0.0, 10.0, tol=1e-14, max_level=4)
    assert info.value.partial is not None and info.value.error > 0


def test_nested_rule():
    t4, _, _ = tanh_sinh_rule(4)
    t5_new, _, _ = tanh_sinh_rule(5, new_only=True)
    assert not np.intersect1d(t4, t5_new).size
