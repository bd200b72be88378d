"""Long-range behaviour of the spreading speed under kernel rescaling.

Stretching a kernel by R at fixed mass lowers the field response everywhere,
so the speed decreases toward a limit that depends only on where the road
diffusivity sits relative to the threshold d (2 + mu_bar / a): at or below it
the limit is the open-field speed, above it the limit is the crossing speed
where lambda1_plus meets lambda2_minus.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .bvp import GridConfig
from .dispersion import c_kpp, c_min_crossing, threshold_D
from .errors import ParameterError
from .model import ExchangeSpec, ModelParams, rescale_long_range
from .speedfinder import find_cstar

__all__ = ["ThresholdRegime", "RegimeInfo", "SweepResult", "classify_regime", "sweep_R", "extrapolate_limit"]

THREADS_ENV = "ROADSPEED_THREADS"


class ThresholdRegime(str, enum.Enum):
    SUBCRITICAL = "subcritical"
    BELOW_THRESHOLD = "below_threshold"
    ABOVE_THRESHOLD = "above_threshold"


@dataclass(frozen=True)
class RegimeInfo:
    regime: ThresholdRegime
    predicted_infimum: float


def classify_regime(p: ModelParams) -> RegimeInfo:
    """Regime of the long-range limit together with the predicted infimum.

    D < 2d: the speed is pinned at c_kpp for every kernel (subcritical).
    2d <= D <= threshold: the infimum over rescales is still c_kpp.
    D > threshold: the infimum is the strictly larger crossing speed.
    """
    if p.D < 2.0 * p.d:
        return RegimeInfo(ThresholdRegime.SUBCRITICAL, c_kpp(p))
    if p.D <= threshold_D(p):
        return RegimeInfo(ThresholdRegime.BELOW_THRESHOLD, c_kpp(p))
    return RegimeInfo(ThresholdRegime.ABOVE_THRESHOLD, c_min_crossing(p))


@dataclass(frozen=True)
class SweepResult:
    """Speeds along a ladder of range scales.

    converged records whether the last speed is within limit_tol of the
    predicted limit.
    """

    scales: tuple[float, ...]
    speeds: tuple[float, ...]
    predicted_limit: float
    regime: ThresholdRegime
    converged: bool


def _workers(n_jobs: int) -> int:
    cap = os.environ.get(THREADS_ENV)
    limit = os.cpu_count() or 1
    if cap is not None:
        try:
            limit = max(1, int(cap))
        except ValueError:
            raise ParameterError(f"sweep_R: {THREADS_ENV} must be an integer, got {cap!r}")
    return max(1, min(n_jobs, limit))


def sweep_R(
    p: ModelParams,
    mu: ExchangeSpec,
    nu: ExchangeSpec,
    which: str,
    scales: tuple[float, ...],
    cfg: GridConfig = GridConfig(),
    limit_tol: float = 0.05,
) -> SweepResult:
    """Spreading speed along increasing range scales.

    which selects the kernel(s) to rescale: "mu", "nu" or "both". Scales must
    be strictly increasing and >= 1. Entries are independent; they run on a
    small thread pool capped by the ROADSPEED_THREADS environment variable.
    """
    if which not in ("mu", "nu", "both"):
        raise ParameterError(f'sweep_R: which must be "mu", "nu" or "both", got {which!r}')
    scales = tuple(float(R) for R in scales)
    if not scales:
        raise ParameterError("sweep_R: scales must be nonempty")
    if any(R < 1.0 for R in scales) or any(b <= a for a, b in zip(scales, scales[1:])):
        raise ParameterError(f"sweep_R: scales must be strictly increasing and >= 1, got {scales}")

    def speed_at(R: float) -> float:
        mu_R = rescale_long_range(mu, R) if which in ("mu", "both") else mu
        nu_R = rescale_long_range(nu, R) if which in ("nu", "both") else nu
        return find_cstar(p, mu_R, nu_R, cfg).c_star

    workers = _workers(len(scales))
    if workers == 1:
        speeds = tuple(speed_at(R) for R in scales)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            speeds = tuple(pool.map(speed_at, scales))

    info = classify_regime(p)
    converged = abs(speeds[-1] - info.predicted_infimum) <= limit_tol
    return SweepResult(scales, speeds, info.predicted_infimum, info.regime, converged)


def extrapolate_limit(result: SweepResult) -> float:
    """Aitken extrapolation of the sweep tail (geometric scales assumed).

    Falls back to the last speed when the differences degenerate.
    """
    if len(result.speeds) < 3:
        return result.speeds[-1]
    s1, s2, s3 = result.speeds[-3:]
    denom = (s3 - s2) - (s2 - s1)
    if denom == 0.0:
        return result.speeds[-1]
    return s3 - (s3 - s2) ** 2 / denom
