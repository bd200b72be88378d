"""Minimal speed with an admissible exponential front.

At fixed speed c the road curve psi1 (a concave parabola in lam) and the
field response psi2 (convex in lam) either stay apart or intersect; the
spreading speed is the smallest c at which they touch. The gap

    G(c) = max over admissible lam of  psi1(lam, c) - psi2(lam, c)

is nondecreasing in c, so its sign change locates the speed. The maximized
function is concave (concave minus convex), which makes a coarse Chebyshev
scan followed by golden-section refinement reliable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .bvp import GridConfig, psi2
from .dispersion import c_kpp, lambda1_pm, lambda2_pm, psi1, upper_bound_speed
from .errors import BracketFailureError
from .model import ExchangeSpec, ModelParams

__all__ = ["SpeedRegime", "SpeedResult", "intersection_gap", "find_cstar"]

ENDPOINT_MARGIN = 1e-6  # fraction of the lambda2 window kept away from each endpoint
SCAN_POINTS = 129
REFINE_TOL = 1e-10  # golden-section width in lam
INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class SpeedRegime(str, enum.Enum):
    SUBCRITICAL = "subcritical_D_le_2d"
    COMPUTED = "computed"


@dataclass(frozen=True)
class SpeedResult:
    """Speed finder output with bisection diagnostics.

    bracket is the final enclosing speed interval; gap_at_cstar is the scan
    maximum evaluated at the returned speed (tiny and nonnegative when the
    regime is computed, 0.0 for the subcritical shortcut).
    """

    c_star: float
    lambda_star: float | None
    regime: SpeedRegime
    gap_at_cstar: float
    iterations: int
    bracket: tuple[float, float]


def _scan_window(c: float, p: ModelParams) -> tuple[float, float]:
    lam2_lo, lam2_hi = lambda2_pm(c, p)
    lam1_hi = lambda1_pm(c, p)[1]
    margin = ENDPOINT_MARGIN * (lam2_hi - lam2_lo)
    return lam2_lo + margin, min(lam1_hi, lam2_hi) - margin


def _gap_and_argmax(
    c: float,
    p: ModelParams,
    mu: ExchangeSpec,
    nu: ExchangeSpec,
    cfg: GridConfig,
) -> tuple[float, float | None]:
    lo, hi = _scan_window(c, p)
    if not hi > lo:
        return -10.0 * p.mu_bar, None

    def gap(lam: float) -> float:
        return psi1(lam, c, p) - psi2(lam, c, p, mu, nu, cfg)

    # Chebyshev points cluster near the window endpoints where psi2 steepens.
    k = np.arange(SCAN_POINTS)
    lams = 0.5 * (lo + hi) + 0.5 * (hi - lo) * np.cos(np.pi * k / (SCAN_POINTS - 1))
    lams = lams[::-1]
    vals = np.array([gap(float(lam)) for lam in lams])
    j = int(np.argmax(vals))
    best_lam, best_val = float(lams[j]), float(vals[j])

    # Golden-section refinement of the concave gap around the scan maximum.
    a = float(lams[max(j - 1, 0)])
    b = float(lams[min(j + 1, SCAN_POINTS - 1)])
    x1 = b - INVPHI * (b - a)
    x2 = a + INVPHI * (b - a)
    f1, f2 = gap(x1), gap(x2)
    while b - a > REFINE_TOL:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + INVPHI * (b - a)
            f2 = gap(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - INVPHI * (b - a)
            f1 = gap(x1)
    for lam, val in ((x1, f1), (x2, f2)):
        if val > best_val:
            best_lam, best_val = lam, val
    return best_val, best_lam


def intersection_gap(
    c: float,
    p: ModelParams,
    mu: ExchangeSpec,
    nu: ExchangeSpec,
    cfg: GridConfig = GridConfig(),
) -> float:
    """Largest value of psi1 - psi2 over the admissible lam window at speed c.

    Returns the sentinel -10 * mu_bar when the window is empty (the road root
    lambda1_plus does not exceed lambda2_minus at this speed).
    """
    return _gap_and_argmax(c, p, mu, nu, cfg)[0]


def find_cstar(
    p: ModelParams,
    mu: ExchangeSpec,
    nu: ExchangeSpec,
    cfg: GridConfig = GridConfig(),
    c_tol: float = 1e-8,
) -> SpeedResult:
    """Smallest speed with a tangent (or crossing) pair of dispersion curves.

    For D <= 2 d the enhanced speed equals c_kpp identically and no numerics
    run. Otherwise G is bisected between just above c_kpp and 5% above the
    kernel-independent upper bound; the returned speed is the low end of the
    G >= 0 side, so gap_at_cstar is a tiny nonnegative number.
    """
    ck = c_kpp(p)
    if p.D <= 2.0 * p.d:
        return SpeedResult(ck, None, SpeedRegime.SUBCRITICAL, 0.0, 0, (ck, ck))

    lo = ck * (1.0 + 1e-9)
    hi = 1.05 * upper_bound_speed(p)
    g_lo, _ = _gap_and_argmax(lo, p, mu, nu, cfg)
    if g_lo >= 0.0:
        raise BracketFailureError(
            f"find_cstar: gap already nonnegative ({g_lo}) at the lower bracket c = {lo}"
        )
    g_hi, lam_hi = _gap_and_argmax(hi, p, mu, nu, cfg)
    if g_hi < 0.0:
        raise BracketFailureError(
            f"find_cstar: gap still negative ({g_hi}) at the upper bracket c = {hi}"
        )
    bracket_lo, bracket_hi = lo, hi
    iterations = 0
    while bracket_hi - bracket_lo > c_tol:
        mid = 0.5 * (bracket_lo + bracket_hi)
        g_mid, lam_mid = _gap_and_argmax(mid, p, mu, nu, cfg)
        if g_mid >= 0.0:
            bracket_hi, g_hi, lam_hi = mid, g_mid, lam_mid
        else:
            bracket_lo = mid
        iterations += 1
    return SpeedResult(
        c_star=bracket_hi,
        lambda_star=lam_hi,
        regime=SpeedRegime.COMPUTED,
        gap_at_cstar=g_hi,
        iterations=iterations,
        bracket=(bracket_lo, bracket_hi),
    )
