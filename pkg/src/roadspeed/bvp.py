"""Transverse profile solver for the linearized field equation.

For a speed c > c_kpp and a decay rate lam strictly inside the
(lambda2_minus, lambda2_plus) window, the profile phi solves

    -d phi'' + (P(lam) + nu(y)) phi = mu(y),   P(lam) = lam c - d lam^2 - a,

on the line, decaying at both ends. Outside the kernel supports the equation
is exactly -d phi'' + P phi = 0, so the decaying branch satisfies
phi' = -sqrt(P/d) phi pointwise there; imposing that Robin condition at the
truncation points makes the truncation itself exact and only leaves the
O(h^2) error of the three-point scheme.

Discretization notes:
  * second-order centered differences; the Robin rows are folded in through
    ghost-node elimination and halved so the matrix stays symmetric positive
    definite (solved with a banded Cholesky),
  * kernels enter through exact cell averages rather than pointwise samples,
    which keeps second-order accuracy when a box edge falls between nodes,
  * the solution is symmetrized across y = 0 (the kernels are even, so the
    exact profile is too).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solveh_banded

from .dispersion import lambda2_pm, p_coeff
from .errors import DomainError, DomainTooSmallError, NumericalError, ResolutionError
from .model import ExchangeSpec, GridFunction, ModelParams, symmetric_grid

__all__ = [
    "GridConfig",
    "BvpSolution",
    "default_domain",
    "solve_phi",
    "psi2",
    "box_oracle_phi",
    "psi2_endpoint_check",
]

_MIN_NODES = 64


@dataclass(frozen=True)
class GridConfig:
    """Resolution policy for automatically chosen BVP grids.

    nodes_per_scale: nodes across the smallest solution feature (the inner
    decay length 1/kappa1 or a kernel support radius). decay_lengths: how many
    outer e-folding lengths to keep beyond the kernel support; because the
    Robin closure is exact for any truncation beyond the support, this only
    pads the far field, and max_nodes caps the padding near the window
    endpoints where 1/kappa0 degenerates.
    """

    nodes_per_scale: int = 64
    decay_lengths: float = 12.0
    max_nodes: int = 400_000

    def __post_init__(self) -> None:
        if self.nodes_per_scale < 4:
            raise ResolutionError(f"GridConfig: nodes_per_scale must be >= 4, got {self.nodes_per_scale}")
        if self.decay_lengths <= 0:
            raise ResolutionError(f"GridConfig: decay_lengths must be > 0, got {self.decay_lengths}")
        if self.max_nodes < _MIN_NODES:
            raise ResolutionError(f"GridConfig: max_nodes must be >= {_MIN_NODES}, got {self.max_nodes}")


@dataclass(frozen=True)
class BvpSolution:
    """Solved profile with its exchange integral and far-field decay rate."""

    phi: GridFunction
    psi2: float
    lam: float
    c: float
    decay_rate: float


def _require_coercive(lam: float, c: float, p: ModelParams, op: str) -> float:
    P = p_coeff(lam, c, p)
    if not (math.isfinite(P) and P > 0.0):
        raise DomainError(
            f"{op}: lam = {lam} gives nonpositive P = {P}; lam must lie strictly "
            f"inside the lambda2 window at c = {c}"
        )
    return P


def default_domain(
    lam: float,
    c: float,
    p: ModelParams,
    mu: ExchangeSpec,
    nu: ExchangeSpec,
    cfg: GridConfig = GridConfig(),
) -> tuple[float, int]:
    """Pick a truncation half-length and node count for solve_phi.

    L = support + decay_lengths / kappa0 per the far-field decay rate
    kappa0 = sqrt(P/d); h resolves the smallest of the inner decay length and
    the (positive-mass) kernel supports. When the target node count exceeds
    max_nodes the far-field padding is shrunk at fixed h, which is harmless
    because the Robin closure is exact beyond the support.
    """
    P = _require_coercive(lam, c, p, "default_domain")
    kappa0 = math.sqrt(P / p.d)
    nu_peak = nu.peak if nu.mass > 0 else 0.0
    kappa1 = math.sqrt((P + nu_peak) / p.d)
    features = [1.0 / kappa1]
    support = 0.0
    for spec in (mu, nu):
        if spec.mass > 0:
            features.append(spec.support_radius)
            support = max(support, spec.support_radius)
    h = min(features) / cfg.nodes_per_scale
    L = support + cfg.decay_lengths / kappa0
    n = int(math.ceil(2.0 * L / h)) + 1
    if n > cfg.max_nodes:
        n = cfg.max_nodes
        L = 0.5 * (n - 1) * h  # keep h, shrink the far-field padding
        floor = support + 16.0 * h
        if L < floor:
            # Even the support does not fit at the target h; keep the node
            # budget and let the implied spacing coarsen instead.
            L = floor
    n = max(n, _MIN_NODES)
    return L, n


def solve_phi(
    lam: float,
    c: float,
    p: ModelParams,
    mu: ExchangeSpec,
    nu: ExchangeSpec,
    L: float,
    n: int,
) -> BvpSolution:
    """Solve the transverse profile on [-L, L] with n nodes.

    Raises DomainError when P(lam) <= 0 (no decaying solution),
    ResolutionError when n is below the floor of 64, and DomainTooSmallError
    when [-L, L] does not contain both kernel supports.
    """
    P = _require_coercive(lam, c, p, "solve_phi")
    if n < _MIN_NODES:
        raise ResolutionError(f"solve_phi: n = {n} is below the resolution floor {_MIN_NODES}")
    support = max(mu.support_radius if mu.mass > 0 else 0.0, nu.support_radius if nu.mass > 0 else 0.0)
    if L < support:
        raise DomainTooSmallError(f"solve_phi: L = {L} does not cover the kernel support radius {support}")

    d = p.d
    h = 2.0 * L / (n - 1)
    ys = symmetric_grid(L, n)
    mu_cells = mu.cell_average(ys, h)
    nu_cells = nu.cell_average(ys, h)
    kappa0 = math.sqrt(P / d)

    diag = np.full(n, 2.0 * d / (h * h) + P)
    diag += nu_cells
    rhs = mu_cells.copy()
    # Robin rows (ghost elimination, halved to keep the matrix symmetric).
    robin = d * (1.0 + h * kappa0) / (h * h)
    diag[0] = robin + 0.5 * (P + nu_cells[0])
    diag[-1] = robin + 0.5 * (P + nu_cells[-1])
    rhs[0] *= 0.5
    rhs[-1] *= 0.5

    ab = np.zeros((2, n))
    ab[0, 1:] = -d / (h * h)
    ab[1, :] = diag
    phi = solveh_banded(ab, rhs, lower=False)
    phi = 0.5 * (phi + phi[::-1])

    peak = float(np.max(phi)) if n else 0.0
    if not np.all(np.isfinite(phi)) or float(np.min(phi)) < -1e-10 * max(peak, 1.0):
        raise NumericalError("solve_phi: solution lost positivity, the discrete system is ill-conditioned")

    integrand = nu_cells * phi
    psi2_value = h * float(np.sum(integrand) - 0.5 * (integrand[0] + integrand[-1]))
    return BvpSolution(GridFunction(L, n, phi), psi2_value, lam, c, kappa0)


def psi2(
    lam: float,
    c: float,
    p: ModelParams,
    mu: ExchangeSpec,
    nu: ExchangeSpec,
    cfg: GridConfig = GridConfig(),
) -> float:
    """Field response at (lam, c) on an automatically chosen grid."""
    L, n = default_domain(lam, c, p, mu, nu, cfg)
    return solve_phi(lam, c, p, mu, nu, L, n).psi2


def box_oracle_phi(
    lam: float,
    c: float,
    p: ModelParams,
    m: float,
    n_h: float,
    a_w: float,
    L: float | None = None,
    n: int | None = None,
) -> BvpSolution:
    """Closed-form solution for box kernels of heights m (mu) and n_h (nu)
    sharing the half width a_w.

    Inside the boxes phi = m / (P + n_h) + A cosh(kappa1 y); outside it decays
    as B exp(-kappa0 (|y| - a_w)). A and B follow from continuity of phi and
    phi' at the box edge, and the exchange integral is integrated in closed
    form. Defaults to a grid chosen like default_domain's policy when L, n are
    not supplied.
    """
    P = _require_coercive(lam, c, p, "box_oracle_phi")
    if a_w <= 0:
        raise DomainError(f"box_oracle_phi: a_w must be > 0, got {a_w}")
    if m < 0 or n_h < 0:
        raise DomainError("box_oracle_phi: kernel heights must be >= 0")
    d = p.d
    kappa0 = math.sqrt(P / d)
    kappa1 = math.sqrt((P + n_h) / d)
    base = m / (P + n_h)
    ch = math.cosh(kappa1 * a_w)
    sh = math.sinh(kappa1 * a_w)
    A = -base / (ch + (kappa1 / kappa0) * sh)
    B = base + A * ch
    psi2_value = n_h * (2.0 * a_w * base + 2.0 * A * sh / kappa1)

    if L is None:
        L = a_w + 12.0 / kappa0
    if L < a_w:
        raise DomainTooSmallError(f"box_oracle_phi: L = {L} does not cover the box half width {a_w}")
    if n is None:
        h = min(1.0 / kappa1, a_w) / 64.0
        n = min(max(int(math.ceil(2.0 * L / h)) + 1, _MIN_NODES), 400_000)
    if n < 3:
        raise ResolutionError(f"box_oracle_phi: need at least 3 nodes, got {n}")

    ys = symmetric_grid(L, n)
    ay = np.abs(ys)
    inner = ay <= a_w
    vals = np.where(inner, base + A * np.cosh(kappa1 * np.minimum(ay, a_w)), B * np.exp(-kappa0 * np.maximum(ay - a_w, 0.0)))
    return BvpSolution(GridFunction(L, n, vals), psi2_value, lam, c, kappa0)


def psi2_endpoint_check(
    c: float,
    p: ModelParams,
    mu: ExchangeSpec,
    nu: ExchangeSpec,
    L: float,
    n: int,
    deltas: tuple[float, ...] = (1e-2, 1e-3, 1e-4),
) -> tuple[float, float]:
    """Extrapolate psi2 to the two window endpoints from a ladder of offsets.

    The offsets are fractions of the window width; psi2 approaches the total
    mu mass like mu_bar - K sqrt(delta) near either endpoint (vertical
    tangent), so a square-root fit of the last two ladder points extrapolates
    the limit. Returns (left endpoint value, right endpoint value).
    """
    if len(deltas) < 2:
        raise DomainError("psi2_endpoint_check: need at least two ladder offsets")
    if any((not math.isfinite(f)) or f <= 0.0 or f >= 0.5 for f in deltas):
        raise DomainError(f"psi2_endpoint_check: offsets must lie strictly in (0, 0.5), got {deltas}")
    lam_lo, lam_hi = lambda2_pm(c, p)
    span = lam_hi - lam_lo
    if span <= 0.0:
        raise DomainError(f"psi2_endpoint_check: the window is empty at c = {c}")
    ladder = sorted(deltas, reverse=True)

    def extrapolate(values: list[float], offsets: list[float]) -> float:
        y1, y2 = values[-2], values[-1]
        r = math.sqrt(offsets[-2] / offsets[-1])
        return y2 + (y2 - y1) / (r - 1.0)

    left_vals = [solve_phi(lam_lo + f * span, c, p, mu, nu, L, n).psi2 for f in ladder]
    right_vals = [solve_phi(lam_hi - f * span, c, p, mu, nu, L, n).psi2 for f in ladder]
    return extrapolate(left_vals, ladder), extrapolate(right_vals, ladder)
