"""Spreading speeds for KPP growth in a field coupled to a fast-diffusion road.

The public surface mirrors the pipeline: model data (parameters, exchange
kernels), closed-form dispersion quantities, the transverse BVP for the field
response, the speed finder, long-range sweeps, and a direct simulator used
for cross-validation.
"""

from .asymptotics import RegimeInfo, SweepResult, ThresholdRegime, classify_regime, extrapolate_limit, sweep_R
from .bvp import BvpSolution, GridConfig, box_oracle_phi, default_domain, psi2, psi2_endpoint_check, solve_phi
from .dispersion import (
    DispersionPoint,
    c_kpp,
    c_min_crossing,
    lambda1_pm,
    lambda2_pm,
    p_coeff,
    psi1,
    threshold_D,
    upper_bound_speed,
)
from .errors import (
    BelowThresholdError,
    BracketFailureError,
    DomainError,
    DomainTooSmallError,
    FrontReachedBoundaryError,
    InstabilityError,
    InvalidGridError,
    NumericalError,
    ParameterError,
    ResolutionError,
    RoadspeedError,
    SubcriticalSpeedError,
)
from .model import (
    ExchangeSpec,
    GridFunction,
    KernelShape,
    ModelParams,
    reaction,
    rescale_long_range,
    sample,
    symmetric_grid,
    trapezoid_mass,
)
from .pdesim import FrontTrace, InitialBump, SimConfig, SimState, run_front_speed, stable_dt, step
from .speedfinder import SpeedRegime, SpeedResult, find_cstar, intersection_gap

__version__ = "0.1.0"

__all__ = [
    "BelowThresholdError",
    "BracketFailureError",
    "BvpSolution",
    "DispersionPoint",
    "DomainError",
    "DomainTooSmallError",
    "ExchangeSpec",
    "FrontReachedBoundaryError",
    "FrontTrace",
    "GridConfig",
    "GridFunction",
    "InitialBump",
    "InstabilityError",
    "InvalidGridError",
    "KernelShape",
    "ModelParams",
    "NumericalError",
    "ParameterError",
    "RegimeInfo",
    "ResolutionError",
    "RoadspeedError",
    "SimConfig",
    "SimState",
    "SpeedRegime",
    "SpeedResult",
    "SubcriticalSpeedError",
    "SweepResult",
    "ThresholdRegime",
    "box_oracle_phi",
    "c_kpp",
    "c_min_crossing",
    "classify_regime",
    "default_domain",
    "extrapolate_limit",
    "find_cstar",
    "intersection_gap",
    "lambda1_pm",
    "lambda2_pm",
    "p_coeff",
    "psi1",
    "psi2",
    "psi2_endpoint_check",
    "reaction",
    "rescale_long_range",
    "run_front_speed",
    "sample",
    "solve_phi",
    "stable_dt",
    "step",
    "sweep_R",
    "symmetric_grid",
    "threshold_D",
    "trapezoid_mass",
]
