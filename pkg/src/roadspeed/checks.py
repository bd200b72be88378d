"""Self-contained invariant suite behind the `validate` CLI command.

Each check returns a CheckResult; the suite is deterministic for a fixed
seed and sized to finish in about a minute. It exercises every layer once:
kernels, dispersion algebra, the BVP against its closed-form oracle, the gap
scan, and two short simulations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bvp import GridConfig, box_oracle_phi, psi2, psi2_endpoint_check, solve_phi
from .dispersion import c_kpp, c_min_crossing, lambda1_pm, lambda2_pm, p_coeff, threshold_D
from .model import ExchangeSpec, KernelShape, ModelParams, rescale_long_range, sample, trapezoid_mass
from .pdesim import InitialBump, SimConfig, initial_state, step, total_mass
from .speedfinder import find_cstar, intersection_gap

__all__ = ["CheckResult", "run_validation"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _kernel_sampling(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for shape in KernelShape:
        for R in (0.5, 1.0, 2.0, 10.0):
            spec = rescale_long_range(ExchangeSpec(shape, half_width=1.3, mass=2.0), R)
            g = sample(spec, spec.support_radius + 1.0, 4001)
            worst = max(worst, abs(trapezoid_mass(g) - spec.mass))
            even = np.max(np.abs(g.values - g.values[::-1]))
            if even != 0.0:
                return CheckResult("kernel-sampling", False, f"evenness broken for {shape.value}, R={R}")
    return CheckResult("kernel-sampling", worst < 1e-3, f"worst trapezoid mass error {worst:.2e}")


def _dispersion_roots(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(20):
        d, D, a, mub = (float(v) for v in rng.uniform(0.2, 5.0, size=4))
        p = ModelParams(d=d, D=D, a=a, mu_bar=mub, nu_bar=1.0)
        c = p.c_kpp * (1.0 + float(rng.uniform(0.01, 2.0)))
        for lam in lambda1_pm(c, p):
            worst = max(worst, abs(-D * lam * lam + lam * c + mub) / mub)
        for lam in lambda2_pm(c, p):
            worst = max(worst, abs(p_coeff(lam, c, p)) / a)
    return CheckResult("dispersion-roots", worst < 1e-12, f"worst scaled root residual {worst:.2e}")


def _threshold_identity(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(10):
        d, a, mub = (float(v) for v in rng.uniform(0.2, 5.0, size=3))
        p = ModelParams(d=d, D=1.0, a=a, mu_bar=mub, nu_bar=1.0)
        ck = c_kpp(p)
        target = ck / (2.0 * d)

        def gap(D: float) -> float:
            return lambda1_pm(ck, ModelParams(d=d, D=D, a=a, mu_bar=mub, nu_bar=1.0))[1] - target

        lo, hi = 1e-3 * d, 1e3 * d * (2.0 + mub / a)
        while hi - lo > 1e-13 * hi:
            mid = 0.5 * (lo + hi)
            if gap(mid) <= 0.0:
                hi = mid
            else:
                lo = mid
        formula = threshold_D(p)
        worst = max(worst, abs(0.5 * (lo + hi) - formula) / formula)
    return CheckResult("threshold-identity", worst < 1e-9, f"worst relative gap {worst:.2e}")


def _crossing_oracles(rng: np.random.Generator) -> CheckResult:
    c1 = c_min_crossing(ModelParams(d=1.0, D=4.0, a=1.0, mu_bar=1.0, nu_bar=1.0))
    c2 = c_min_crossing(ModelParams(d=1.0, D=6.0, a=1.0, mu_bar=1.0, nu_bar=1.0))
    err = max(abs(c1 - 5.0 / math.sqrt(6.0)), abs(c2 - math.sqrt(4.9)))
    return CheckResult("crossing-speeds", err < 1e-9, f"worst deviation {err:.2e}")


def _bvp_oracle(rng: np.random.Generator) -> CheckResult:
    p = ModelParams(d=1.0, D=4.0, a=1.0, mu_bar=1.0, nu_bar=1.0)
    worst_phi = worst_psi = 0.0
    for _ in range(3):
        c = float(rng.uniform(2.3, 3.0))
        lam_lo, lam_hi = lambda2_pm(c, p)
        lam = float(lam_lo + (0.3 + 0.4 * rng.uniform()) * (lam_hi - lam_lo))
        m, n_h = float(rng.uniform(0.2, 1.0)), float(rng.uniform(0.1, 0.8))
        a_w = float(rng.uniform(0.5, 1.5))
        P = p_coeff(lam, c, p)
        L = a_w + 12.0 / math.sqrt(P)
        n = int(round(2 * L / 5e-3)) + 1
        mu = ExchangeSpec(KernelShape.BOX, half_width=a_w, mass=2.0 * a_w * m)
        nu = ExchangeSpec(KernelShape.BOX, half_width=a_w, mass=2.0 * a_w * n_h)
        num = solve_phi(lam, c, p, mu, nu, L, n)
        ora = box_oracle_phi(lam, c, p, m, n_h, a_w, L=L, n=n)
        scale = float(np.max(ora.phi.values))
        worst_phi = max(worst_phi, float(np.max(np.abs(num.phi.values - ora.phi.values))) / scale)
        worst_psi = max(worst_psi, abs(num.psi2 - ora.psi2) / abs(ora.psi2))
    ok = worst_phi < 1e-4 and worst_psi < 1e-4
    return CheckResult("bvp-oracle", ok, f"worst rel errors: phi {worst_phi:.2e}, psi2 {worst_psi:.2e}")


def _endpoint_limits(rng: np.random.Generator) -> CheckResult:
    p = ModelParams(d=1.0, D=4.0, a=1.0, mu_bar=1.0, nu_bar=1.0)
    mu = ExchangeSpec(KernelShape.TRIANGLE, half_width=1.0, mass=1.0)
    nu = ExchangeSpec(KernelShape.BOX, half_width=1.0, mass=1.0)
    left, right = psi2_endpoint_check(2.5, p, mu, nu, L=31.0, n=40001)
    err = max(abs(left - p.mu_bar), abs(right - p.mu_bar)) / p.mu_bar
    return CheckResult("psi2-endpoints", err < 0.02, f"worst endpoint deviation {err:.2%}")


def _gap_scan(rng: np.random.Generator) -> CheckResult:
    p = ModelParams(d=1.0, D=4.0, a=1.0, mu_bar=1.0, nu_bar=1.0)
    mu = ExchangeSpec(KernelShape.BOX, half_width=1.0, mass=1.0)
    nu = ExchangeSpec(KernelShape.BOX, half_width=1.0, mass=1.0)
    cfg = GridConfig(nodes_per_scale=32, max_nodes=100_000)
    cs = (2.1, 2.2, 2.3)
    gaps = [intersection_gap(c, p, mu, nu, cfg) for c in cs]
    repeat = intersection_gap(cs[1], p, mu, nu, cfg)
    if repeat != gaps[1]:
        return CheckResult("gap-scan", False, "gap evaluation is not deterministic")
    monotone = all(b >= a for a, b in zip(gaps, gaps[1:]))
    return CheckResult("gap-scan", monotone, f"gaps {[f'{g:.4f}' for g in gaps]}")


def _subcritical_shortcut(rng: np.random.Generator) -> CheckResult:
    mu = ExchangeSpec(KernelShape.BOX, half_width=1.0, mass=1.0)
    nu = ExchangeSpec(KernelShape.BOX, half_width=1.0, mass=1.0)
    for D in (0.5, 1.0, 1.7, 2.0):
        p = ModelParams(d=1.0, D=D, a=1.0, mu_bar=1.0, nu_bar=1.0)
        if find_cstar(p, mu, nu).c_star != c_kpp(p):
            return CheckResult("subcritical-shortcut", False, f"D={D} did not return c_kpp exactly")
    return CheckResult("subcritical-shortcut", True, "c_star == c_kpp for D <= 2d")


def _conservation(rng: np.random.Generator) -> CheckResult:
    p = ModelParams(d=1.0, D=2.0, a=1.0, mu_bar=1.0, nu_bar=1.0)
    mu = ExchangeSpec(KernelShape.BOX, half_width=1.0, mass=1.0)
    nu = ExchangeSpec(KernelShape.TRIANGLE, half_width=1.0, mass=1.0)
    cfg = SimConfig(Lx=8.0, Ly=11.5, nx=81, ny=81, t_end=1.0)
    state = initial_state(cfg, InitialBump())
    m0 = total_mass(state, cfg)
    for _ in range(500):
        state = step(state, cfg, p, mu, nu, growth=False)
    drift = abs(total_mass(state, cfg) - m0) / m0
    return CheckResult("mass-conservation", drift < 1e-10, f"relative drift {drift:.2e} over 500 steps")


def _sim_symmetry(rng: np.random.Generator) -> CheckResult:
    p = ModelParams(d=1.0, D=4.0, a=1.0, mu_bar=1.0, nu_bar=1.0)
    mu = ExchangeSpec(KernelShape.RAISED_COSINE, half_width=1.0, mass=1.0)
    nu = ExchangeSpec(KernelShape.BOX, half_width=1.0, mass=1.0)
    cfg = SimConfig(Lx=8.0, Ly=11.5, nx=81, ny=81, t_end=1.0)
    state = initial_state(cfg, InitialBump())
    for _ in range(200):
        state = step(state, cfg, p, mu, nu)
    asym = max(
        float(np.max(np.abs(state.u - state.u[::-1]))),
        float(np.max(np.abs(state.v - state.v[::-1, :]))),
        float(np.max(np.abs(state.v - state.v[:, ::-1]))),
    )
    return CheckResult("sim-symmetry", asym <= 1e-10, f"max asymmetry {asym:.2e}")


def run_validation(seed: int = 0) -> list[CheckResult]:
    """Run every check with a deterministic RNG; returns one result per check."""
    checks = (
        _kernel_sampling,
        _dispersion_roots,
        _threshold_identity,
        _crossing_oracles,
        _bvp_oracle,
        _endpoint_limits,
        _gap_scan,
        _subcritical_shortcut,
        _conservation,
        _sim_symmetry,
    )
    rng = np.random.default_rng(seed)
    return [check(rng) for check in checks]
