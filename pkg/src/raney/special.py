"""Real-line special functions used by the density and factorization code."""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np
from scipy.special import rgamma

POLE_TOL = 1e-9
MAX_TERMS = 100_000
Z_MAX = 1.0 - 1e-6


class AccuracyError(ArithmeticError):
    """A series or quadrature did not reach its tolerance.

    ``partial`` holds the best available estimate.
    """

    def __init__(self, message, partial=None, error=None):
        super().__init__(message)
        self.partial = partial
        self.error = error


class ParameterError(ValueError):
    pass


class PoleError(ArithmeticError):
    """An uncancelled Gamma pole in a numerator."""


class LogGammaValue(NamedTuple):
    log_abs: float
    sign: int
    is_pole: bool

    @property
    def value(self) -> float:
        if self.is_pole:
            return math.inf
        return self.sign * math.exp(self.log_abs)


class GammaRatio(NamedTuple):
    value: float
    is_zero: bool


def pole_index(x: float) -> int | None:
    """``n`` if ``x`` is within POLE_TOL of ``-n`` (n >= 0), else None."""
    if x > POLE_TOL:
        return None
    n = round(-x)
    if abs(x + n) <= POLE_TOL:
        return int(n)
    return None


def log_gamma(x: float) -> LogGammaValue:
    """``log|Gamma(x)|`` with the sign of ``Gamma(x)`` and a pole flag."""
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    if pole_index(x) is not None:
        return LogGammaValue(math.inf, 1, True)
    if -170.0 < x < 171.0:
        # log of the directly computed value keeps exp(log_abs) within
        # rounding of Gamma(x), which lgamma alone misses for log_abs ~ 700
        g = math.gamma(x)
        if g != 0.0 and math.isfinite(g):
            return LogGammaValue(math.log(abs(g)), 1 if g > 0 else -1, False)
    if x > 0:
        return LogGammaValue(math.lgamma(x), 1, False)
    # Gamma(x) Gamma(1-x) = pi / sin(pi x); Gamma(1-x) > 0 here
    sign = 1 if math.floor(x) % 2 == 0 else -1
    return LogGammaValue(math.lgamma(x), sign, False)


def gamma_ratio(numer: Sequence[float], denom: Sequence[float]) -> GammaRatio:
    """``prod Gamma(numer) / prod Gamma(denom)`` evaluated in log space.

    Poles are handled by their residues ``(-1)^n / n!``: equal numbers of
    numerator and denominator poles cancel to a finite limit, extra
    denominator poles give an exact zero, extra numerator poles raise
    PoleError.
    """
    log_abs = 0.0
    sign = 1
    poles = 0
    for group, direction in ((numer, 1), (denom, -1)):
        for x in group:
            n = pole_index(float(x))
            if n is not None:
                poles += direction
                log_abs -= direction * math.lgamma(n + 1)
                sign *= -1 if n % 2 else 1
                continue
            lg = log_gamma(float(x))
            log_abs += direction * lg.log_abs
            sign *= lg.sign
    if poles > 0:
        raise PoleError(f"uncancelled Gamma pole in numerator {list(numer)}")
    if poles < 0:
        return GammaRatio(0.0, True)
    return GammaRatio(sign * math.exp(log_abs), False)


def _check_lower(a: Sequence[float], b: Sequence[float]) -> None:
    terminate_at = [n for n in (pole_index(float(x)) for x in a) if n is not None]
    first_zero = min(terminate_at) if terminate_at else None
    for bj in b:
        n = pole_index(float(bj))
        if n is not None and (first_zero is None or first_zero >= n):
            raise ParameterError(f"lower parameter {bj} is a non-positive integer")


def pfq(a: Sequence[float], b: Sequence[float], z, max_terms: int = MAX_TERMS):
    """Generalized hypergeometric series ``pFq(a; b; z)`` for ``|z| <= 1 - 1e-6``.

    Terms follow ``t_{n+1} = t_n z prod(a_i + n) / prod(b_j + n) / (n + 1)``
    and the sum stops once ``|t_n| <= 1e-16 |S|`` holds for three
    consecutive terms.  ``z`` may be a scalar or an array; arrays are summed
    together and stop when every element has converged.

    Raises
    ------
    ParameterError
        a lower parameter is a pole that no upper parameter cuts off first.
    AccuracyError
        the series needs more than ``max_terms`` terms; ``partial`` holds the
        truncated sum.
    """
    a = [float(x) for x in a]
    b = [float(x) for x in b]
    _check_lower(a, b)
    scalar = np.ndim(z) == 0
    zz = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(np.abs(zz) > Z_MAX):
        raise ValueError(f"|z| must not exceed {Z_MAX}")
    total = np.ones_like(zz)
    term = np.ones_like(zz)
    small = np.zeros(zz.shape, dtype=int)
    for n in range(max_terms):
        num = 1.0
        for ai in a:
            num *= ai + n
        if num == 0.0:
            break
        den = float(n + 1)
        for bj in b:
            den *= bj + n
        term = term * zz * (num / den)
        total = total + term
        small = np.where(np.abs(term) <= 1e-16 * np.abs(total), small + 1, 0)
        if np.all(small >= 3):
            break
    else:
        partial = total[0] if scalar else total
        raise AccuracyError(
            f"pFq did not converge in {max_terms} terms", partial=partial
        )
    return float(total[0]) if scalar else total


def norlund_coefficients(a: Sequence[float], b: Sequence[float], n_terms: int):
    """Coefficients of ``G^{k,0}_{k,k}`` expanded around unit argument.

    For paired parameters ``(a_j, b_j)`` with ``psi = sum(a_j - b_j)``::

        G(z) = z^{b_1} (1-z)^{psi-1} sum_n g_n / Gamma(psi + n) (1-z)^n,

    convergent for ``|1 - z| < 1``.  The ``g_n`` come from matching Mellin
    transforms: adding a pair ``(a', b')`` to a function whose transform is an
    inverse factorial series in ``u = s + b_1 + psi`` multiplies it by
    ``Gamma(u+d)Gamma(v)/(Gamma(u)Gamma(v+d))``, and Gauss's sum turns each
    basis element into a series in the shifted basis, so

        g'_N = sum_n g_n (d)_{N-n} (n + t)_{N-n} / (N-n)!,

    with ``d = a' - b'`` and ``t = b_1 + psi - b'``.

    Returns ``(coeffs, psi)`` where ``coeffs[n] = g_n / Gamma(psi + n)``.
    """
    if len(a) != len(b) or not a:
        raise ValueError("need equally many upper and lower parameters")
    a = [float(x) for x in a]
    b = [float(x) for x in b]
    n = np.arange(n_terms)
    g = np.zeros(n_terms)
    g[0] = 1.0
    psi = a[0] - b[0]
    # D[N, n] = N - n, lower triangle only
    gap = n[:, None] - n[None, :]
    mask = gap >= 0
    gap = np.where(mask, gap, 0)
    for aj, bj in zip(a[1:], b[1:]):
        d = aj - bj
        t = b[0] + psi - bj
        if d != 0.0:
            # (d)_j / j! and (n + t)_j, both by running products
            steps = np.arange(n_terms - 1, dtype=float)
            dj = np.concatenate(([1.0], np.cumprod((d + steps) / (steps + 1.0))))
            rising = np.ones((n_terms, n_terms))
            rising[:, 1:] = np.cumprod(
                (n[:, None] + t) + steps[None, :], axis=1
            )
            weights = np.where(mask, dj[gap] * rising[n[None, :], gap], 0.0)
            g = weights @ g
        psi += d
    return g * rgamma(psi + n), psi
