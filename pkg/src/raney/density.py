"""Densities ``W_{p,r}`` of the Raney measures.

For ``p = k/l`` and ``z = (x / c(p))^l`` the density is

    W_{p,r}(x) = gamma(k,l,r) z^(-1/l) G^{k,0}_{k,k}(alpha; beta | z),

and Slater's theorem turns the Meijer G function into ``k`` series
``kF_{k-1}``, one per lower parameter ``beta_h``.  Those series converge
slowly as ``z -> 1``, so above ``z = 1/2`` the same G function is summed from
its expansion in powers of ``1 - z`` instead (see
``special.norlund_coefficients``).  Elementary closed forms are used for
``p = 2`` and for the listed ``p = 3/2`` and ``p = 3`` cases.

Nothing here requires ``r <= p``: outside that range the function is a signed
density whose moments are still the Raney numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .core import RaneyParams
from .mellin import FactorizationUnavailable, derive_parameters
from .quadrature import integrate, map_nodes, tanh_sinh_rule
from .special import Z_MAX, gamma_ratio, norlund_coefficients, pfq

SLATER_Z_MAX = 0.5
N_UNIT_TERMS = 96

CLOSED_FORM_TAGS = (
    "none", "p2_family", "p32_r12", "p32_r1", "p32_r32",
    "p3_r1", "p3_r2", "p3_r3", "semicircle",
)

_TAGS = {
    (Fraction(3, 2), Fraction(1, 2)): "p32_r12",
    (Fraction(3, 2), Fraction(1)): "p32_r1",
    (Fraction(3, 2), Fraction(3, 2)): "p32_r32",
    (Fraction(3), Fraction(1)): "p3_r1",
    (Fraction(3), Fraction(2)): "p3_r2",
    (Fraction(3), Fraction(3)): "p3_r3",
}


@dataclass(frozen=True)
class HypTerm:
    """One Slater term ``coeff * kF_{k-1}(a_vec; b_vec | z) * z^z_exponent``."""

    h: int
    coeff: float
    a_vec: Tuple[float, ...]
    b_vec: Tuple[float, ...]
    z_exponent: float
    vanishes: bool


@dataclass(frozen=True)
class SignedDensity:
    params: RaneyParams
    terms: Tuple[HypTerm, ...]
    support_hi: float
    closed_form_tag: str
    prefactor: float
    unit_coeffs: np.ndarray
    unit_psi: float
    unit_b1: float

    @property
    def is_probability(self) -> bool:
        return self.params.proper_measure

    def __call__(self, x, force_general: bool = False):
        return eval_density(self, x, force_general=force_general)


def _log_prefactor(params: RaneyParams) -> float:
    # gamma(k,l,r) = r (p-1)^(p-r-3/2) / (p^(p-r) sqrt(2 pi k))
    p, r, k = float(params.p), float(params.r), params.k
    return (math.log(r) + (p - r - 1.5) * math.log(p - 1.0)
            - (p - r) * math.log(p) - 0.5 * math.log(2.0 * math.pi * k))


def _closed_form_tag(params: RaneyParams) -> str:
    r = Fraction(params.r)
    if params.p == 2:
        return "semicircle" if r == 2 else "p2_family"
    return _TAGS.get((params.p, r), "none")


def build_density(params: RaneyParams) -> SignedDensity:
    """Precompute Slater terms and unit-argument coefficients for ``W_{p,r}``."""
    ab = derive_parameters(params)
    k, l = ab.k, ab.l
    gamma0 = math.exp(_log_prefactor(params))
    terms = []
    for h in range(1, k + 1):
        bh = ab.beta[h - 1]
        numer = [float(Fraction(j - h, k)) for j in range(1, k + 1) if j != h]
        denom = [float(a - bh) for a in ab.alpha]
        ratio = gamma_ratio(numer, denom)
        a_vec = tuple(float(1 + bh - a) for a in ab.alpha)
        b_vec = tuple(float(1 + bh - b) for j, b in enumerate(ab.beta, 1) if j != h)
        terms.append(HypTerm(
            h=h,
            coeff=gamma0 * ratio.value,
            a_vec=a_vec,
            b_vec=b_vec,
            z_exponent=float(bh - Fraction(1, l)),
            vanishes=ratio.is_zero,
        ))
    coeffs, psi = norlund_coefficients(
        [float(a) for a in ab.alpha_tilde], [float(b) for b in ab.beta], N_UNIT_TERMS
    )
    return SignedDensity(
        params=params,
        terms=tuple(terms),
        support_hi=ab.c_p,
        closed_form_tag=_closed_form_tag(params),
        prefactor=gamma0,
        unit_coeffs=coeffs,
        unit_psi=psi,
        unit_b1=float(ab.beta[0]),
    )


def _slater(d: SignedDensity, log_z: np.ndarray) -> np.ndarray:
    z = np.exp(log_z)
    out = np.zeros_like(log_z)
    for term in d.terms:
        if term.vanishes:
            continue
        series = pfq(term.a_vec, term.b_vec, z)
        out += term.coeff * series * np.exp(term.z_exponent * log_z)
    return out


def _unit(d: SignedDensity, log_z: np.ndarray) -> np.ndarray:
    w = -np.expm1(log_z)
    series = np.polynomial.polynomial.polyval(w, d.unit_coeffs)
    l = d.params.l
    return (d.prefactor * np.exp((d.unit_b1 - 1.0 / l) * log_z)
            * w ** (d.unit_psi - 1.0) * series)


def _general(d: SignedDensity, x: np.ndarray) -> np.ndarray:
    log_z = d.params.l * np.log(x / d.support_hi)
    out = np.empty_like(x)
    low = log_z <= math.log(SLATER_Z_MAX)
    if np.any(low):
        out[low] = _slater(d, log_z[low])
    if np.any(~low):
        out[~low] = _unit(d, log_z[~low])
    return out


def slater_sum(d: SignedDensity, x):
    """``W_{p,r}(x)`` from the Slater series alone, ``z`` clipped to ``1 - 1e-6``.

    Slow near the right edge and may raise AccuracyError there; meant for
    cross-checking the other evaluation paths.
    """
    x = np.asarray(x, dtype=float)
    log_z = np.minimum(d.params.l * np.log(x / d.support_hi), math.log(Z_MAX))
    return _slater(d, np.atleast_1d(log_z)).reshape(x.shape)


def _closed(d: SignedDensity, x: np.ndarray) -> np.ndarray:
    tag = d.closed_form_tag
    r = Fraction(d.params.r)
    if tag in ("p2_family", "semicircle"):
        return eval_closed_p2(float(r), x)
    if tag.startswith("p32"):
        return eval_closed_p32(r, x)
    return eval_closed_p3(r, x)


def eval_density(d: SignedDensity, x, force_general: bool = False):
    """``W_{p,r}(x)``; exactly 0 outside the open support ``(0, c(p))``.

    Tagged parameter pairs use their elementary closed form unless
    ``force_general`` is set.
    """
    xa = np.asarray(x, dtype=float)
    flat = np.atleast_1d(xa).ravel()
    out = np.zeros_like(flat)
    inside = (flat > 0) & (flat < d.support_hi)
    if np.any(inside):
        xi = flat[inside]
        if d.closed_form_tag != "none" and not force_general:
            out[inside] = _closed(d, xi)
        else:
            out[inside] = _general(d, xi)
    if xa.ndim == 0:
        return float(out[0])
    return out.reshape(xa.shape)


def _sqrt_one_minus(z):
    # s = sqrt(1 - z) and 1 - s computed without cancellation
    s = np.sqrt(np.maximum(1.0 - z, 0.0))
    return s, z / (1.0 + s)


def eval_closed_p2(r: float, x):
    """``sin(r arccos sqrt(x/4)) / (pi x^(1 - r/2))`` on ``(0, 4)``."""
    x = np.asarray(x, dtype=float)
    return np.sin(r * np.arccos(np.sqrt(x / 4.0))) / (np.pi * x ** (1.0 - r / 2.0))


def eval_closed_p32(r, x):
    """Elementary ``W_{3/2,r}`` for ``r`` in {1/2, 1, 3/2}, ``0 < x < 3 sqrt(3)/2``."""
    r = Fraction(r)
    x = np.asarray(x, dtype=float)
    if r == Fraction(3, 2):
        return x * eval_closed_p32(1, x)
    s, one_minus = _sqrt_one_minus(4.0 * x ** 2 / 27.0)
    plus = 1.0 + s
    if r == Fraction(1, 2):
        num = plus ** (2 / 3) - one_minus ** (2 / 3)
        return num / (2 ** (5 / 3) * 3 ** -0.5 * np.pi * x ** (2 / 3))
    if r == 1:
        first = (plus ** (1 / 3) - one_minus ** (1 / 3)) / (2 ** (4 / 3) * np.pi * x ** (1 / 3))
        second = x ** (1 / 3) * (plus ** (2 / 3) - one_minus ** (2 / 3)) / (2 ** (5 / 3) * np.pi)
        return math.sqrt(3.0) * (first + second)
    raise ValueError(f"no closed form for p=3/2, r={r}")


def eval_closed_p3(r, x):
    """Elementary ``W_{3,r}`` for ``r`` in {1, 2, 3}, ``0 < x < 27/4``."""
    r = Fraction(r)
    x = np.asarray(x, dtype=float)
    if r == 3:
        return x * eval_closed_p3(1, x)
    s, _ = _sqrt_one_minus(4.0 * x / 27.0)
    plus = 1.0 + s
    if r == 1:
        num = 3.0 * plus ** (2 / 3) - 2 ** (2 / 3) * x ** (1 / 3)
        den = 2 ** (4 / 3) * 3 ** 0.5 * np.pi * x ** (2 / 3) * plus ** (1 / 3)
        return num / den
    if r == 2:
        num = 9.0 * plus ** (4 / 3) - 2 ** (4 / 3) * x ** (2 / 3)
        den = 2 ** (5 / 3) * 3 ** 1.5 * np.pi * x ** (1 / 3) * plus ** (2 / 3)
        return num / den
    raise ValueError(f"no closed form for p=3, r={r}")


def mellin_transform(params: RaneyParams, sigma: float) -> float:
    """``r Gamma(sigma p - p + r) / (Gamma(sigma) Gamma(sigma p - sigma - p + r + 2))``.

    At ``sigma = m + 1`` this is ``A_m(p, r)``.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    p, r = float(params.p), float(params.r)
    ratio = gamma_ratio([sigma * p - p + r], [sigma, sigma * p - sigma - p + r + 2.0])
    return r * ratio.value


def cdf(d: SignedDensity, x, tol: float = 1e-12):
    """``int_0^x W_{p,r}``, clamped to [0, 1] and nondecreasing in ``x``."""
    if not d.is_probability:
        raise FactorizationUnavailable("cdf needs a probability measure (r <= p)")
    xa = np.asarray(x, dtype=float)
    flat = np.clip(np.atleast_1d(xa).ravel(), 0.0, d.support_hi)
    order = np.argsort(flat)
    values = np.empty_like(flat)
    acc, left = 0.0, 0.0
    for idx in order:
        right = flat[idx]
        if right > left:
            acc += integrate(d, left, right, tol=tol)
            left = right
        values[idx] = acc
    values = np.clip(values, 0.0, 1.0)
    values[order] = np.maximum.accumulate(values[order])
    if xa.ndim == 0:
        return float(values[0])
    return values.reshape(xa.shape)


@dataclass(frozen=True)
class CdfTable:
    """Piecewise cubic Hermite cdf in the variable ``u = x^a``, ``a = r/p``.

    Near 0 the cdf grows like ``x^a``, so in ``u`` it starts linearly and
    a cubic fits it.  Slopes ``dF/du = W(x) x^(1-a) / a`` come from the
    density itself.
    """

    knots: np.ndarray
    values: np.ndarray
    slopes: np.ndarray
    lead_exponent: float

    def __call__(self, x):
        x = np.clip(np.asarray(x, dtype=float), self.knots[0], self.knots[-1])
        u_knots = self.knots ** self.lead_exponent
        spline = CubicHermiteSpline(u_knots, self.values, self.slopes)
        return np.clip(spline(x ** self.lead_exponent), 0.0, 1.0)


def cdf_table(d: SignedDensity, n_knots: int = 4000, level: int = 4) -> CdfTable:
    """Tabulated cdf for bulk lookups (KS statistics).

    Knots follow ``s^3 / (s^3 + (1-s)^3)``, clustering cubically at both
    support ends where the density is singular or has a square-root edge.
    Each panel is integrated with one fixed tanh-sinh rule, all panels in a
    single vectorized density call.
    """
    if not d.is_probability:
        raise FactorizationUnavailable("cdf needs a probability measure (r <= p)")
    s = np.linspace(0.0, 1.0, n_knots + 1)
    knots = d.support_hi * s ** 3 / (s ** 3 + (1.0 - s) ** 3)
    t, gap, w = tanh_sinh_rule(level)
    lo, hi = knots[:-1, None], knots[1:, None]
    x = map_nodes(t[None, :], gap[None, :], lo, hi)
    half = 0.5 * (hi - lo)[:, 0]
    vals = eval_density(d, x)
    panels = half * (vals * w[None, :]).sum(axis=1) * 2.0 ** -level
    values = np.concatenate(([0.0], np.cumsum(panels)))
    values = np.maximum.accumulate(np.clip(values, 0.0, 1.0))
    lead = float(d.params.r / d.params.p)
    slopes = np.empty_like(knots)
    slopes[1:] = eval_density(d, knots[1:]) * knots[1:] ** (1.0 - lead) / lead
    slopes[0] = values[1] / knots[1] ** lead
    return CdfTable(knots, values, slopes, lead)
