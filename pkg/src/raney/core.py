"""Raney numbers and their generating-function identities.

The Raney (two-parameter Fuss-Catalan) numbers are

    A_m(p, r) = r / m! * prod_{i=1}^{m-1} (m p + r - i),    A_0 = 1,

and they are the moments of the measure mu(p, r) whenever p >= 1 and
0 <= r <= p.  Exact arithmetic is used whenever p and r are rational, so the
integrality and shift identities can be checked without tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import List, Sequence, Union

Number = Union[Fraction, float]


def as_fraction(value) -> Fraction:
    """Convert ``"3/2"``, ``"1.5"``, ints and Fractions to an exact Fraction.

    Decimal strings are taken at face value ("2.3" is 23/10), never rounded
    through a binary float.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


@dataclass(frozen=True)
class RaneyParams:
    """A validated pair ``p = k/l`` and ``r``.

    ``p`` is always stored reduced.  ``r`` is a Fraction unless it was given as
    a Python float, in which case Raney numbers are computed in floating point.
    """

    p_num: int
    p_den: int
    r: Number
    proper_measure: bool = field(init=False)

    def __post_init__(self):
        k, l = int(self.p_num), int(self.p_den)
        if k <= 0 or l <= 0:
            raise ValueError("p must be a positive fraction k/l")
        g = math.gcd(k, l)
        k, l = k // g, l // g
        if k < l:
            raise ValueError(f"p = {k}/{l} < 1 is not supported")
        r = self.r if isinstance(self.r, float) else as_fraction(self.r)
        if isinstance(r, float) and not math.isfinite(r):
            raise ValueError("r must be finite")
        if r < 0:
            raise ValueError("r must be nonnegative")
        object.__setattr__(self, "p_num", k)
        object.__setattr__(self, "p_den", l)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "proper_measure", r <= Fraction(k, l))

    @classmethod
    def from_values(cls, p, r, max_denominator: int = 1000) -> "RaneyParams":
        """Build from loose inputs such as ``("3/2", "1/2")`` or ``(2, 1)``.

        A float ``p`` is replaced by its best rational approximation with
        denominator at most ``max_denominator``; the density machinery needs
        ``p = k/l`` exactly.
        """
        if isinstance(p, float):
            pf = Fraction(p).limit_denominator(max_denominator)
        else:
            pf = as_fraction(p)
        return cls(pf.numerator, pf.denominator, r)

    @property
    def k(self) -> int:
        return self.p_num

    @property
    def l(self) -> int:  # noqa: E743
        return self.p_den

    @property
    def p(self) -> Fraction:
        return Fraction(self.p_num, self.p_den)

    @property
    def exact(self) -> bool:
        return isinstance(self.r, Fraction)

    @property
    def c_p(self) -> float:
        """Right end of the support, ``p^p (p-1)^(1-p)``."""
        return support_end(self.p)

    def __str__(self):
        return f"p={self.p}, r={self.r}"


def support_end(p) -> float:
    """``c(p) = p^p (p-1)^(1-p)``, with ``c(1) = 1``."""
    p = float(p)
    if p == 1.0:
        return 1.0
    return p ** p * (p - 1.0) ** (1.0 - p)


def raney_number(params: RaneyParams, m: int) -> Number:
    """``A_m(p, r)`` from the product formula.

    Returns a Fraction when ``r`` is exact, otherwise a float.  Raises
    OverflowError if the float result is not finite.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return Fraction(1) if params.exact else 1.0
    p, r = params.p, params.r
    if params.exact:
        a = m * p + r
        num = r
        for i in range(1, m):
            num *= a - i
        return num / math.factorial(m)
    a = m * float(p) + r
    # log-space product keeps large m from overflowing intermediates
    sign = 1.0 if r >= 0 else -1.0
    log_abs = math.log(abs(r)) if r != 0 else -math.inf
    for i in range(1, m):
        f = a - i
        if f == 0:
            return 0.0
        if f < 0:
            sign = -sign
        log_abs += math.log(abs(f))
    if r == 0:
        return 0.0
    log_abs -= math.lgamma(m + 1)
    if log_abs > 709.78:
        raise OverflowError(f"A_{m}{params} overflows double precision")
    return sign * math.exp(log_abs)


def raney_binomial(params: RaneyParams, m: int) -> Number:
    """``binom(mp + r, m) * r / (mp + r)``; undefined when ``mp + r == 0``."""
    a = m * params.p + params.r
    if not params.exact:
        a = float(a)
    if a == 0:
        raise ZeroDivisionError("binomial form undefined for mp + r = 0")
    binom = Fraction(1) if params.exact else 1.0
    for i in range(m):
        binom *= a - i
    binom /= math.factorial(m)
    return binom * params.r / a


def raney_sequence(params: RaneyParams, m_max: int) -> List[Number]:
    """``[A_0, ..., A_{m_max}]``."""
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    return [raney_number(params, m) for m in range(m_max + 1)]


def _series_log(b: Sequence[float]) -> List[float]:
    # log of a truncated series with b[0] == 1
    n_terms = len(b)
    g = [0.0] * n_terms
    for n in range(1, n_terms):
        acc = n * b[n]
        for j in range(1, n):
            acc -= j * g[j] * b[n - j]
        g[n] = acc / n
    return g


def _series_exp(g: Sequence[float]) -> List[float]:
    # exp of a truncated series with g[0] == 0
    n_terms = len(g)
    f = [0.0] * n_terms
    f[0] = 1.0
    for n in range(1, n_terms):
        acc = 0.0
        for j in range(1, n + 1):
            acc += j * g[j] * f[n - j]
        f[n] = acc / n
    return f


def _series_power(b: Sequence[float], exponent: float) -> List[float]:
    return _series_exp([exponent * c for c in _series_log(b)])


def fuss_power_series(params: RaneyParams, order: int) -> List[float]:
    """Coefficients of ``B_p(z)^r`` up to ``z^order``.

    ``B_p`` is built from the Fuss numbers ``A_m(p, 1)`` and raised to the
    r-th power as ``exp(r log B_p)`` on truncated series, so non-integer
    ``r`` is handled.  By Lambert's identity the result reproduces
    ``A_m(p, r)``.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    fuss = RaneyParams(params.p_num, params.p_den, Fraction(1))
    b = [float(raney_number(fuss, m)) for m in range(order + 1)]
    return _series_power(b, float(params.r))


def functional_equation_residual(params: RaneyParams, order: int) -> float:
    """Largest coefficient mismatch in ``B_p = 1 + z B_p^p`` through ``z^order``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    fuss = RaneyParams(params.p_num, params.p_den, Fraction(1))
    b = [float(raney_number(fuss, m)) for m in range(order + 1)]
    bp = _series_power(b, float(params.p))
    rhs = [1.0] + bp[:order]
    return max(abs(x - y) for x, y in zip(b, rhs))
