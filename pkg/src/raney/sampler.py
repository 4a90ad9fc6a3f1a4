"""Random variates from mu(p, r) via its Mellin factorization.

A draw is ``c(p) * prod_j B_j^(1/l)`` with independent ``B_j ~ Beta(u_j, v_j)``;
point-mass factors contribute 1.  Beta variates are ratios of gamma variates
``G1 / (G1 + G2)``; numpy's gamma generator covers shapes below 1, which
occur here (e.g. ``u = 1/3``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import RaneyParams
from .mellin import BetaFactor, FactorList, factorize

RNG_ALGORITHM = "numpy.PCG64"


def sample_beta_factor(u: float, v: float, l: int, rng: np.random.Generator,
                       size=None):
    """Draws from ``b(u+v, u, l)``: ``B^(1/l)`` with ``B ~ Beta(u, v)``."""
    if u <= 0 or v <= 0 or l < 1:
        raise ValueError("need u > 0, v > 0, l >= 1")
    g1 = rng.standard_gamma(u, size)
    g2 = rng.standard_gamma(v, size)
    total = g1 + g2
    # both gammas can underflow when u and v are tiny
    if np.any(total == 0):
        b = np.where(total == 0, rng.beta(u, v, size), g1 / np.where(total == 0, 1.0, total))
    else:
        b = g1 / total
    return b if l == 1 else b ** (1.0 / l)


@dataclass
class SamplerState:
    """Seeded stream of mu(p, r) variates.

    ``stream`` selects an independent substream: the generator is seeded with
    ``SeedSequence(seed, spawn_key=(stream,))``, the same child that
    ``SeedSequence(seed).spawn`` hands out at position ``stream``.  Give each
    thread its own state.
    """

    seed: int
    factors: FactorList
    stream: int = 0
    rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        self.rng = np.random.Generator(np.random.PCG64(seq))

    @classmethod
    def for_params(cls, params: RaneyParams, seed: int, stream: int = 0) -> "SamplerState":
        return cls(seed, factorize(params), stream)

    def split(self, n: int):
        """``n`` fresh states on streams ``stream+1 .. stream+n``."""
        return [SamplerState(self.seed, self.factors, self.stream + i + 1)
                for i in range(n)]

    def metadata(self) -> dict:
        return {
            "seed": self.seed,
            "stream": self.stream,
            "rng": RNG_ALGORITHM,
            "factors": self.factors.describe(),
            "dilation": self.factors.dilation,
        }


def sample_mu(state: SamplerState, n: int) -> np.ndarray:
    """``n`` variates of mu(p, r) in ``[0, c(p)]``; advances ``state``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out = np.ones(n)
    for f in state.factors.factors:
        if isinstance(f, BetaFactor):
            out *= sample_beta_factor(f.u, f.v, f.l, state.rng, n)
    return out * state.factors.dilation
