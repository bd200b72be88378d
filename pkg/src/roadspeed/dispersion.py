"""Closed-form dispersion quantities for exponential front profiles.

Plugging u ~ exp(-lam (x - c t)) on the road and v ~ exp(-lam (x - c t)) phi(y)
in the field into the linearized system leaves two curves of the decay rate
lam at fixed speed c: the road parabola psi1 and the field response psi2 (the
latter needs the BVP solver, see bvp.py). Everything here is algebraic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BelowThresholdError, BracketFailureError, ParameterError, SubcriticalSpeedError
from .model import ModelParams

__all__ = [
    "DispersionPoint",
    "c_kpp",
    "psi1",
    "lambda1_pm",
    "lambda2_pm",
    "p_coeff",
    "threshold_D",
    "c_min_crossing",
    "upper_bound_speed",
]


@dataclass(frozen=True)
class DispersionPoint:
    """An admissible (speed, decay rate) pair; both strictly positive."""

    c: float
    lam: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.c) and self.c > 0):
            raise ParameterError(f"DispersionPoint: c must be > 0, got {self.c!r}")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ParameterError(f"DispersionPoint: lam must be > 0, got {self.lam!r}")


def c_kpp(p: ModelParams) -> float:
    """Spreading speed 2*sqrt(d*a) of the field alone."""
    return p.c_kpp


def psi1(lam, c, p: ModelParams):
    """Road curve: -D lam^2 + lam c + mu_bar. Accepts scalars or arrays."""
    return -p.D * lam * lam + lam * c + p.mu_bar


def lambda1_pm(c: float, p: ModelParams) -> tuple[float, float]:
    """Roots of psi1 in ascending order (lambda1_minus < 0 < lambda1_plus).

    The plus root is computed directly; the minus root through the product
    lambda1_minus * lambda1_plus = -mu_bar / D, which avoids cancellation.
    """
    disc = math.sqrt(c * c + 4.0 * p.D * p.mu_bar)
    plus = (c + disc) / (2.0 * p.D)
    minus = -p.mu_bar / (p.D * plus)
    return (minus, plus)


def lambda2_pm(c: float, p: ModelParams) -> tuple[float, float]:
    """Endpoints of the window where the field problem decays, ascending.

    Defined for c >= c_kpp; at equality both endpoints collapse to c / (2 d).
    """
    ck = p.c_kpp
    if c < ck:
        raise SubcriticalSpeedError(f"lambda2_pm: c = {c} is below c_kpp = {ck}")
    disc = math.sqrt(max(c * c - ck * ck, 0.0))
    plus = (c + disc) / (2.0 * p.d)
    minus = (p.a / p.d) / plus
    return (minus, plus)


def p_coeff(lam, c, p: ModelParams):
    """Zeroth-order coefficient lam c - d lam^2 - a of the field equation.

    Positive exactly on the open interval between the lambda2_pm endpoints.
    """
    return lam * c - p.d * lam * lam - p.a


def threshold_D(p: ModelParams) -> float:
    """Road diffusivity d (2 + mu_bar / a) separating the two long-range regimes."""
    return p.d * (2.0 + p.mu_bar / p.a)


def upper_bound_speed(p: ModelParams) -> float:
    """Kernel-independent upper bound D sqrt(a / (D - d)); requires D > d."""
    if p.D <= p.d:
        raise ParameterError(f"upper_bound_speed: requires D > d, got D = {p.D}, d = {p.d}")
    return p.D * math.sqrt(p.a / (p.D - p.d))


def c_min_crossing(p: ModelParams, tol: float = 1e-12) -> float:
    """Unique speed where lambda1_plus(c) = lambda2_minus(c), for D above threshold.

    lambda1_plus increases with c while lambda2_minus decreases, so the
    difference has a single sign change; it is located by bisection to an
    absolute width of `tol` in c.
    """
    thr = threshold_D(p)
    if p.D <= thr:
        raise BelowThresholdError(f"c_min_crossing: D = {p.D} is not above the threshold {thr}")

    def gap(c: float) -> float:
        return lambda1_pm(c, p)[1] - lambda2_pm(c, p)[0]

    lo = p.c_kpp
    hi = upper_bound_speed(p) + 1.0
    g_lo, g_hi = gap(lo), gap(hi)
    if not (g_lo < 0.0 <= g_hi):
        raise BracketFailureError(
            f"c_min_crossing: no sign change on [{lo}, {hi}] (gap {g_lo} .. {g_hi})"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if gap(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
