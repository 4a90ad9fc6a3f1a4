"""Squared singular values of Ginibre powers versus mu(n+1, 1).

For an N x N complex Ginibre matrix ``G`` with entry variance ``1/N`` the
spectrum of ``(G^n)^H G^n`` converges to ``mu(2,1)^{boxtimes n} = mu(n+1, 1)``
as ``N -> inf``.  Eigenvalues are computed with a cyclic Jacobi method in
round-robin ordering, so each sweep rotates ``N/2`` disjoint pairs at once.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import RaneyParams
from .density import build_density, cdf_table

MAX_SWEEPS = 100


class JacobiError(ArithmeticError):
    pass


def ginibre(n: int, rng: np.random.Generator) -> np.ndarray:
    """N x N complex Gaussian matrix, iid entries with mean 0 and ``E|g|^2 = 1/N``."""
    if n < 2:
        raise ValueError("N must be at least 2")
    scale = np.sqrt(0.5 / n)
    return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


def _round_robin(n: int):
    """Pairings for a cyclic sweep: n-1 rounds of n/2 disjoint pairs (n even)."""
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        half = n // 2
        top, bottom = players[:half], players[half:][::-1]
        p = np.array([min(a, b) for a, b in zip(top, bottom)])
        q = np.array([max(a, b) for a, b in zip(top, bottom)])
        rounds.append((p, q))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def jacobi_eigvalsh(a: np.ndarray, tol: float = 1e-10, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending.

    Iterates sweeps until the off-diagonal Frobenius norm falls below
    ``tol * ||A||_F``; raises JacobiError after ``max_sweeps``.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n == 1:
        return a.real.diagonal().copy()
    if n % 2:
        a = np.pad(a, ((0, 1), (0, 1)))
    size = a.shape[0]
    rounds = _round_robin(size)
    norm = np.linalg.norm(a)
    if norm == 0:
        return np.zeros(n)

    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(a.diagonal()))
        if off < tol * norm:
            break
        for p, q in rounds:
            apq = a[p, q]
            mag = np.abs(apq)
            active = mag > 0
            if not np.any(active):
                continue
            phase = np.where(active, apq / np.where(active, mag, 1.0), 1.0)
            app, aqq = a[p, p].real, a[q, q].real
            with np.errstate(divide="ignore", invalid="ignore"):
                tau = (aqq - app) / (2.0 * mag)
                t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            # columns: A <- A G with G[p,p]=c, G[p,q]=s, G[q,p]=-s e^{-i phi}, G[q,q]=c e^{-i phi}
            cp, cq = a[:, p].copy(), a[:, q].copy()
            conj_phase = np.conj(phase)
            a[:, p] = cp * c - cq * (s * conj_phase)
            a[:, q] = cp * s + cq * (c * conj_phase)
            # rows: A <- G^H A
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - (s * phase)[:, None] * rq
            a[q, :] = s[:, None] * rp + (c * phase)[:, None] * rq
            a[p, q] = 0.0
            a[q, p] = 0.0
    else:
        off = np.linalg.norm(a - np.diag(a.diagonal()))
        if off >= tol * norm:
            raise JacobiError(f"Jacobi did not converge in {max_sweeps} sweeps")
    # a padded row/column is never rotated (its couplings stay 0), so drop it
    return np.sort(a.real.diagonal()[:n])


def squared_singular_values(g: np.ndarray, n: int) -> np.ndarray:
    """Eigenvalues of ``(G^n)^H G^n``, ascending and clipped at 0."""
    if n < 1:
        raise ValueError("power must be at least 1")
    m = np.linalg.matrix_power(g, n)
    return np.maximum(jacobi_eigvalsh(m.conj().T @ m), 0.0)


@dataclass
class SpectrumSample:
    size: int
    power: int
    trials: int
    eigenvalues: np.ndarray = field(repr=False)
    seed: Optional[int] = None
    ensemble: str = "complex Ginibre"


def spectrum_sample(size: int, power: int, trials: int, seed: int = 0,
                    threads: Optional[int] = None) -> SpectrumSample:
    """Pooled squared singular values over ``trials`` independent matrices.

    Trial ``i`` uses child ``i`` of ``SeedSequence(seed)``, so results do not
    depend on the thread count.
    """
    children = np.random.SeedSequence(seed).spawn(trials)

    def one(child):
        rng = np.random.Generator(np.random.PCG64(child))
        return squared_singular_values(ginibre(size, rng), power)

    workers = threads or int(os.environ.get("RANEY_THREADS", 0)) or (os.cpu_count() or 1)
    if workers == 1 or trials == 1:
        parts = [one(c) for c in children]
    else:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(one, children))
    return SpectrumSample(size, power, trials, np.concatenate(parts), seed)


def ks_statistic(sorted_sample: np.ndarray, cdf_values: np.ndarray) -> float:
    n = len(sorted_sample)
    upper = np.arange(1, n + 1) / n - cdf_values
    lower = cdf_values - np.arange(n) / n
    return float(max(upper.max(), lower.max()))


def ks_against_mu(sample: SpectrumSample, params: Optional[RaneyParams] = None) -> float:
    """KS distance between the pooled spectrum and the cdf of ``mu(power+1, 1)``."""
    if params is None:
        params = RaneyParams(sample.power + 1, 1, 1)
    if params.p != sample.power + 1 or params.r != 1:
        raise ValueError("the limit law of G^n is mu(n+1, 1)")
    return ks_sample(sample.eigenvalues, params)


def ks_sample(values: np.ndarray, params: RaneyParams) -> float:
    """KS distance between any sample and mu(p, r)."""
    table = cdf_table(build_density(params))
    x = np.sort(np.asarray(values, dtype=float))
    return ks_statistic(x, table(x))
