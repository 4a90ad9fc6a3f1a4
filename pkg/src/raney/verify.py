"""Numerical checks of the Raney measures against their exact moments."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional

import numpy as np

from .core import RaneyParams, raney_number
from .density import build_density, eval_density
from .mellin import FactorizationUnavailable
from .quadrature import QuadResult, integrate
from .special import AccuracyError

__all__ = [
    "integrate", "QuadResult", "MomentRecord", "MomentReport", "verify_moments",
    "normalization", "PRECISION_FLOOR", "PositivityCell", "PositivityMap", "scan_grid",
    "positivity_scan", "rational_lattice", "kargin_ratio", "kargin_check",
]

NEGATIVITY_TOL = -1e-9
# relative tolerance handed to the quadrature; agreement below this level is
# luck, not something the check can certify
PRECISION_FLOOR = 1e-12


@dataclass(frozen=True)
class MomentRecord:
    m: int
    exact: object
    quadrature: float
    abs_err: float
    rel_err: float


@dataclass
class MomentReport:
    params: RaneyParams
    records: List[MomentRecord] = field(default_factory=list)
    failures: List[int] = field(default_factory=list)

    @property
    def max_rel_err(self) -> float:
        if self.failures:
            return math.inf
        return max((rec.rel_err for rec in self.records), default=0.0)

    @property
    def certified_rel_err(self) -> float:
        """``max_rel_err`` raised to the quadrature's precision floor."""
        return max(self.max_rel_err, PRECISION_FLOOR)

    def passes(self, tol: float) -> bool:
        return self.certified_rel_err < tol

    def to_dict(self) -> dict:
        return {
            "p": str(self.params.p),
            "r": str(self.params.r),
            "max_rel_err": self.max_rel_err,
            "certified_rel_err": self.certified_rel_err,
            "quadrature_failures": self.failures,
            "moments": [
                {"m": rec.m, "exact": str(rec.exact), "quadrature": rec.quadrature,
                 "abs_err": rec.abs_err, "rel_err": rec.rel_err}
                for rec in self.records
            ],
        }


def verify_moments(params: RaneyParams, m_max: int, force_general: bool = False) -> MomentReport:
    """Quadrature moments ``int x^m W_{p,r}`` against exact ``A_m`` for m <= m_max.

    A moment whose quadrature does not converge is listed in
    ``report.failures`` and makes ``max_rel_err`` infinite.
    """
    if not params.proper_measure:
        raise FactorizationUnavailable("moment check needs r <= p")
    d = build_density(params)
    report = MomentReport(params)
    for m in range(m_max + 1):
        def f(x, m=m):
            return x ** m * eval_density(d, x, force_general=force_general)
        try:
            value = integrate(f, 0.0, d.support_hi, tol=1e-10, rel_tol=1e-12)
        except AccuracyError:
            report.failures.append(m)
            continue
        exact = raney_number(params, m)
        ex = float(exact)
        abs_err = abs(value - ex)
        report.records.append(MomentRecord(m, exact, value, abs_err, abs_err / abs(ex)))
    return report


def normalization(params: RaneyParams, force_general: bool = False) -> float:
    d = build_density(params)
    return integrate(lambda x: eval_density(d, x, force_general=force_general),
                     0.0, d.support_hi, tol=1e-12)


@dataclass(frozen=True)
class PositivityCell:
    p: Fraction
    r: Fraction
    min_density: float
    is_nonnegative: bool
    in_sigma: bool
    degenerate: bool = False
    failed: bool = False


@dataclass
class PositivityMap:
    cells: List[PositivityCell]

    def mismatches(self) -> List[PositivityCell]:
        """Cells where the numerical sign disagrees with ``r <= p``."""
        return [c for c in self.cells
                if not c.degenerate and c.is_nonnegative != c.in_sigma]

    def min_inside(self) -> float:
        inside = [c.min_density for c in self.cells if c.in_sigma and not c.degenerate]
        return min(inside, default=math.inf)


def scan_grid(c_p: float, n_points: int = 2000) -> np.ndarray:
    """Half log-spaced in ``x/c`` over [1e-12, 1e-2], half uniform in (0, c).

    Just above ``r = p`` the negative part of ``W_{p,r}`` is confined to a
    thin layer at ``x = 0``, which a uniform grid alone does not see.
    """
    n_log = n_points // 2
    n_lin = n_points - n_log
    log_part = np.logspace(-12, -2, n_log)
    lin_part = np.linspace(0.0, 1.0, n_lin + 2)[1:-1]
    return c_p * np.unique(np.concatenate((log_part, lin_part)))


def _scan_cell(p: Fraction, r: Fraction, n_points: int) -> PositivityCell:
    in_sigma = r <= p
    if p == 1:
        # mu(1, r) is degenerate (no density); classified by definition only
        return PositivityCell(p, r, math.nan, in_sigma, in_sigma, degenerate=True)
    params = RaneyParams(p.numerator, p.denominator, r)
    try:
        d = build_density(params)
        values = eval_density(d, scan_grid(d.support_hi, n_points))
        min_density = float(np.min(values))
    except (AccuracyError, FloatingPointError):
        return PositivityCell(p, r, math.nan, False, in_sigma, failed=True)
    return PositivityCell(p, r, min_density, min_density >= NEGATIVITY_TOL, in_sigma)


def rational_lattice(lo, hi, max_den: int) -> List[Fraction]:
    """All fractions in ``[lo, hi]`` with denominator at most ``max_den``."""
    lo, hi = Fraction(lo), Fraction(hi)
    out = set()
    for den in range(1, max_den + 1):
        first = math.ceil(lo * den)
        last = math.floor(hi * den)
        out.update(Fraction(n, den) for n in range(first, last + 1))
    return sorted(out)


def _thread_count() -> int:
    env = os.environ.get("RANEY_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def positivity_scan(p_values: Iterable, r_values: Iterable, n_points: int = 2000,
                    threads: Optional[int] = None) -> PositivityMap:
    """Minimum of ``W_{p,r}`` over a support grid for every ``(p, r)`` cell.

    ``p`` values must be rational; cells are independent and run on up to
    ``threads`` workers (default: ``RANEY_THREADS`` or the core count).
    """
    ps = [Fraction(p) for p in p_values]
    rs = [Fraction(r) for r in r_values]
    pairs = [(p, r) for p in ps for r in rs]
    workers = threads or _thread_count()
    if workers == 1:
        cells = [_scan_cell(p, r, n_points) for p, r in pairs]
    else:
        with ThreadPoolExecutor(workers) as pool:
            cells = list(pool.map(lambda pr: _scan_cell(*pr, n_points), pairs))
    return PositivityMap(cells)


def kargin_ratio(n: int) -> float:
    """``L_n / n = c(n+1) / n = (1 + 1/n)^(n+1)``."""
    return math.exp((n + 1) * math.log1p(1.0 / n))


def kargin_check(n_max: int) -> List[float]:
    """Support-edge ratios for the free powers ``mu(2,1)^{boxtimes n} = mu(n+1, 1)``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    return [kargin_ratio(n) for n in range(1, n_max + 1)]
