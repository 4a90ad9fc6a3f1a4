import numpy as np
import pytest

from raney.core import RaneyParams
from raney.rmt import (JacobiError, ginibre, jacobi_eigvalsh, ks_against_mu, ks_statistic,
                       spectrum_sample, squared_singular_values)


def random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return g + g.conj().T


@pytest.mark.parametrize("n", [2, 3, 7, 20, 51])
def test_jacobi_against_eigvalsh(n):
    h = random_hermitian(n, n)
    ref = np.linalg.eigvalsh(h)
    got = jacobi_eigvalsh(h)
    assert np.max(np.abs(got - ref)) < 1e-10 * np.abs(ref).max()


def test_jacobi_real_symmetric_and_trivial():
    assert np.allclose(jacobi_eigvalsh(np.diag([4.0, 9.0])), [4, 9])
    assert np.allclose(jacobi_eigvalsh(np.array([[2.0, 1.0], [1.0, 2.0]])), [1, 3])
    assert np.array_equal(jacobi_eigvalsh(np.zeros((3, 3))), np.zeros(3))
    assert np.array_equal(jacobi_eigvalsh(np.array([[5.0]])), [5.0])


def test_jacobi_nonconvergence():
    with pytest.raises(JacobiError):
        jacobi_eigvalsh(random_hermitian(30, 1), max_sweeps=1)


def test_ginibre_normalization():
    rng = np.random.default_rng(0)
    g = ginibre(64, rng)
    assert abs(np.mean(np.abs(g) ** 2) - 1 / 64) < 3 * np.std(np.abs(g) ** 2) / 64
    traces = [np.trace(h.conj().T @ h).real / 64 for h in (ginibre(64, rng) for _ in range(20))]
    assert np.mean(traces) == pytest.approx(1.0, abs=0.05)
    with pytest.raises(ValueError):
        ginibre(1, rng)


def test_ginibre_reproducible():
    a = ginibre(2, np.random.default_rng(5))
    b = ginibre(2, np.random.default_rng(5))
    assert np.array_equal(a, b)


def test_squared_singular_values_simple():
    assert np.allclose(squared_singular_values(np.eye(4, dtype=complex), 3), 1.0)
    assert np.allclose(squared_singular_values(np.diag([2.0, 3.0]).astype(complex), 2), [16, 81])
    with pytest.raises(ValueError):
        squared_singular_values(np.eye(2), 0)


def test_trace_conservation():
    g = ginibre(40, np.random.default_rng(3))
    for n in (1, 2, 3):
        m = np.linalg.matrix_power(g, n)
        ev = squared_singular_values(g, n)
        assert ev.sum() == pytest.approx(np.trace(m.conj().T @ m).real, rel=1e-8)
        assert np.all(ev >= 0) and np.all(np.diff(ev) >= 0)


def test_marchenko_pastur_mean_and_edge():
    ev = squared_singular_values(ginibre(64, np.random.default_rng(4)), 1)
    assert ev.mean() == pytest.approx(1.0, abs=0.05)
    s = spectrum_sample(200, 1, 1, seed=2)
    assert s.eigenvalues.max() < 4.5


def test_spectrum_sample_determinism():
    a = spectrum_sample(6, 2, 4, seed=1, threads=1)
    b = spectrum_sample(6, 2, 4, seed=1, threads=3)
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert a.eigenvalues.size == 24 and a.ensemble == "complex Ginibre"


def test_ks_statistic():
    x = np.array([0.2, 0.4, 0.6, 0.8])
    assert ks_statistic(x, x) == pytest.approx(0.2)


def test_ks_decreases_with_size():
    small = np.median([ks_against_mu(spectrum_sample(30, 1, 1, seed=s)) for s in range(7)])
    large = np.median([ks_against_mu(spectrum_sample(120, 1, 1, seed=s)) for s in range(7)])
    assert large < small


def test_ks_params_must_match():
    s = spectrum_sample(10, 2, 1, seed=0)
    assert ks_against_mu(s, RaneyParams(3, 1, 1)) < 1
    with pytest.raises(ValueError):
        ks_against_mu(s, RaneyParams(2, 1, 1))
