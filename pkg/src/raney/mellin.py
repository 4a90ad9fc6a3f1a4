"""Mellin factorization of mu(p, r) into modified beta measures.

For ``p = k/l`` the Raney numbers split into Gamma ratios,

    A_m(p, r) = prod_j Gamma(beta_j + m/l) Gamma(at_j)
                       / (Gamma(at_j + m/l) Gamma(beta_j)) * c(p)^m,

where ``at`` is a rearrangement of the upper parameters ``alpha`` chosen so
that ``beta_j <= at_j`` whenever ``r <= p``.  Each factor is then the moment
sequence of ``b(at_j, beta_j, l)``, the law of ``B^(1/l)`` for a
``Beta(beta_j, at_j - beta_j)`` variate, or of ``delta_1`` when the two
parameters coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .core import RaneyParams, raney_number
from .special import gamma_ratio


class FactorizationUnavailable(ValueError):
    """Raised for r > p, where mu(p, r) is not a probability measure."""


@dataclass(frozen=True)
class AlphaBeta:
    k: int
    l: int
    r: Fraction
    alpha: Tuple[Fraction, ...]
    alpha_tilde: Tuple[Fraction, ...]
    beta: Tuple[Fraction, ...]
    j_indices: Tuple[int, ...]
    c_p: float

    @property
    def dominated(self) -> bool:
        """True when ``beta_j <= alpha_tilde_j`` for every j."""
        return all(b <= a for a, b in zip(self.alpha_tilde, self.beta))


@dataclass(frozen=True)
class BetaFactor:
    """``b(u + v, u, l)``: density ``l/B(u,v) x^(lu-1) (1-x^l)^(v-1)`` on [0, 1]."""

    u: float
    v: float
    l: int

    def moment(self, m: float) -> float:
        if m == 0:
            return 1.0
        return gamma_ratio([self.u + m / self.l, self.u + self.v],
                           [self.u + self.v + m / self.l, self.u]).value


@dataclass(frozen=True)
class PointMass:
    at: float = 1.0

    def moment(self, m: float) -> float:
        return self.at ** m


Factor = Union[BetaFactor, PointMass]


@dataclass(frozen=True)
class FactorList:
    factors: Tuple[Factor, ...]
    dilation: float

    def moment(self, m: float) -> float:
        out = self.dilation ** m
        for f in self.factors:
            out *= f.moment(m)
        return out

    def __len__(self):
        return len(self.factors)

    def describe(self) -> List[dict]:
        rows = []
        for f in self.factors:
            if isinstance(f, PointMass):
                rows.append({"kind": "point_mass", "at": f.at})
            else:
                rows.append({"kind": "beta", "u": f.u, "v": f.v, "l": f.l})
        return rows


def cut_points(k: int, l: int) -> Tuple[int, ...]:
    """``j_i = floor((i-1) k / l) + 1`` for ``i = 1..l+1``, in integer arithmetic."""
    return tuple((i - 1) * k // l + 1 for i in range(1, l + 2))


def derive_parameters(params: RaneyParams) -> AlphaBeta:
    """Exact alpha, rearranged alpha, beta and cut points for ``p = k/l``.

    Works for any ``r > 0``; when ``r > p`` the domination
    ``beta_j <= alpha_tilde_j`` can fail, which ``AlphaBeta.dominated``
    reports.
    """
    k, l = params.k, params.l
    if k <= l:
        raise ValueError("the factorization needs p = k/l > 1")
    r = Fraction(params.r)
    if r <= 0:
        raise ValueError("r must be positive")
    alpha = tuple(
        Fraction(j, l) if j <= l else (r + j - l) / (k - l) for j in range(1, k + 1)
    )
    beta = tuple((r + j - 1) / k for j in range(1, k + 1))
    js = cut_points(k, l)
    alpha_tilde = []
    for i in range(1, l + 1):
        alpha_tilde.append(Fraction(i, l))
        for j in range(js[i - 1] + 1, js[i]):
            alpha_tilde.append((r + j - i) / (k - l))
    return AlphaBeta(k, l, r, alpha, tuple(alpha_tilde), beta, js, params.c_p)


def build_factors(ab: AlphaBeta) -> FactorList:
    """Modified beta factors realizing mu(p, r); needs r <= p."""
    if not ab.dominated:
        raise FactorizationUnavailable(
            f"no probability measure for r > p (p={Fraction(ab.k, ab.l)}, r={ab.r})"
        )
    factors: List[Factor] = []
    for at, b in zip(ab.alpha_tilde, ab.beta):
        if at == b:
            factors.append(PointMass(1.0))
        else:
            factors.append(BetaFactor(float(b), float(at - b), ab.l))
    return FactorList(tuple(factors), ab.c_p)


def factorize(params: RaneyParams) -> FactorList:
    return build_factors(derive_parameters(params))


def moment_product_check(params: RaneyParams, m_max: int) -> float:
    """Largest relative gap between the factor-moment product and ``A_m``, m <= m_max."""
    fl = factorize(params)
    worst = 0.0
    for m in range(m_max + 1):
        exact = float(raney_number(params, m))
        worst = max(worst, abs(fl.moment(m) - exact) / abs(exact))
    return worst
