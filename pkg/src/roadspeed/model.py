"""Model data: bulk/road parameters, exchange kernels, sampled grid functions.

The model couples a 1D road with diffusivity D to a 2D field with diffusivity
d and logistic growth of rate a. Exchange between road and field happens
through two even, nonnegative, compactly supported kernels (road to field and
field to road). Kernels come from a small family of closed-form shapes so that
masses, peaks and antiderivatives are exact.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainTooSmallError, InvalidGridError, ParameterError

__all__ = [
    "KernelShape",
    "ModelParams",
    "ExchangeSpec",
    "GridFunction",
    "sample",
    "rescale_long_range",
    "reaction",
    "trapezoid_mass",
    "symmetric_grid",
]


class KernelShape(str, enum.Enum):
    """Closed-form kernel families (all even, nonnegative, compact support)."""

    BOX = "box"
    TRIANGLE = "triangle"
    RAISED_COSINE = "raised-cosine"


@dataclass(frozen=True)
class ModelParams:
    """Scalar model parameters.

    d: field diffusivity, D: road diffusivity, a: linear growth rate f'(0),
    mu_bar: total mass of the road-to-field kernel, nu_bar: total mass of the
    field-to-road kernel. All strictly positive.
    """

    d: float
    D: float
    a: float
    mu_bar: float
    nu_bar: float

    def __post_init__(self) -> None:
        for name in ("d", "D", "a", "mu_bar", "nu_bar"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ParameterError(f"ModelParams: {name} must be finite and > 0, got {value!r}")

    @property
    def c_kpp(self) -> float:
        """Open-field spreading speed 2*sqrt(d*a)."""
        return 2.0 * math.sqrt(self.d * self.a)


@dataclass(frozen=True)
class ExchangeSpec:
    """Closed-form description of one exchange kernel.

    The represented kernel is (1/R) * g(y / R) where g is the base shape with
    the given half width and mass, and R = range_scale. Its support is
    [-half_width * R, half_width * R] and its mass is independent of R.
    A mass of zero gives the identically-zero kernel (used for decoupled
    control runs); negative masses are rejected.
    """

    shape: KernelShape
    half_width: float
    mass: float
    range_scale: float = 1.0

    def __post_init__(self) -> None:
        if isinstance(self.shape, str) and not isinstance(self.shape, KernelShape):
            object.__setattr__(self, "shape", KernelShape(self.shape))
        if not (math.isfinite(self.half_width) and self.half_width > 0):
            raise ParameterError(f"ExchangeSpec: half_width must be > 0, got {self.half_width!r}")
        if not (math.isfinite(self.mass) and self.mass >= 0):
            raise ParameterError(f"ExchangeSpec: mass must be >= 0, got {self.mass!r}")
        if not (math.isfinite(self.range_scale) and self.range_scale > 0):
            raise ParameterError(f"ExchangeSpec: range_scale must be > 0, got {self.range_scale!r}")

    @property
    def support_radius(self) -> float:
        """Half width of the represented (rescaled) kernel."""
        return self.half_width * self.range_scale

    @property
    def peak(self) -> float:
        """Supremum of the represented kernel (attained at y = 0)."""
        base = {
            KernelShape.BOX: self.mass / (2.0 * self.half_width),
            KernelShape.TRIANGLE: self.mass / self.half_width,
            KernelShape.RAISED_COSINE: self.mass / self.half_width,
        }[self.shape]
        return base / self.range_scale

    def evaluate(self, y):
        """Pointwise values of the represented kernel.

        The support is closed: a box kernel takes its full height at
        |y| == support_radius.
        """
        t = np.abs(np.asarray(y, dtype=float)) / self.range_scale
        w = self.half_width
        inside = t <= w
        if self.shape is KernelShape.BOX:
            vals = np.where(inside, self.mass / (2.0 * w), 0.0)
        elif self.shape is KernelShape.TRIANGLE:
            vals = np.where(inside, self.mass / w * (1.0 - t / w), 0.0)
        else:
            vals = np.where(inside, self.mass / (2.0 * w) * (1.0 + np.cos(np.pi * np.minimum(t, w) / w)), 0.0)
        vals = vals / self.range_scale
        if np.ndim(y) == 0:
            return float(vals)
        return vals

    def cumulative(self, y):
        """Exact antiderivative: integral of the kernel over (-inf, y]."""
        t = np.clip(np.asarray(y, dtype=float) / self.range_scale, -self.half_width, self.half_width)
        w = self.half_width
        m = self.mass
        if self.shape is KernelShape.BOX:
            vals = m * (t + w) / (2.0 * w)
        elif self.shape is KernelShape.TRIANGLE:
            vals = np.where(t <= 0.0, m * (t + w) ** 2 / (2.0 * w * w), m - m * (w - t) ** 2 / (2.0 * w * w))
        else:
            vals = m / (2.0 * w) * ((t + w) + (w / np.pi) * np.sin(np.pi * t / w))
        if np.ndim(y) == 0:
            return float(vals)
        return vals

    def cell_average(self, centers, h: float):
        """Average of the kernel over cells [y - h/2, y + h/2].

        Exact for every shape (built from the antiderivative), which keeps
        discretizations second order even when a box edge falls between nodes.
        """
        if h <= 0:
            raise InvalidGridError(f"cell_average: cell width must be > 0, got {h!r}")
        centers = np.asarray(centers, dtype=float)
        return (self.cumulative(centers + 0.5 * h) - self.cumulative(centers - 0.5 * h)) / h


@dataclass(frozen=True)
class GridFunction:
    """Values sampled on the uniform symmetric grid of n nodes over [-L, L]."""

    L: float
    n: int
    values: np.ndarray
    mass_tol: float | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.L) and self.L > 0):
            raise InvalidGridError(f"GridFunction: L must be finite and > 0, got {self.L!r}")
        if self.n < 3:
            raise InvalidGridError(f"GridFunction: need at least 3 nodes, got {self.n}")
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.n,):
            raise InvalidGridError(f"GridFunction: expected {self.n} values, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise InvalidGridError("GridFunction: values must be finite")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def h(self) -> float:
        return 2.0 * self.L / (self.n - 1)

    def grid(self) -> np.ndarray:
        return symmetric_grid(self.L, self.n)


def symmetric_grid(L: float, n: int) -> np.ndarray:
    """Uniform nodes over [-L, L], exactly antisymmetric: ys[i] == -ys[n-1-i]."""
    ys = np.linspace(-L, L, n)
    return 0.5 * (ys - ys[::-1])


def sample(spec: ExchangeSpec, L: float, n: int) -> GridFunction:
    """Sample a kernel pointwise on the symmetric grid over [-L, L].

    Raises DomainTooSmallError when [-L, L] does not contain the kernel
    support, and InvalidGridError for fewer than 3 nodes. The returned
    GridFunction carries a shape-aware bound on |trapezoid mass - mass|,
    checked here as a postcondition.
    """
    if n < 3:
        raise InvalidGridError(f"sample: need at least 3 nodes, got {n}")
    if not (math.isfinite(L) and L > 0):
        raise InvalidGridError(f"sample: L must be finite and > 0, got {L!r}")
    if L < spec.support_radius:
        raise DomainTooSmallError(
            f"sample: domain half-length {L} is smaller than the kernel support radius {spec.support_radius}"
        )
    ys = symmetric_grid(L, n)
    values = spec.evaluate(ys)
    h = 2.0 * L / (n - 1)
    r = spec.support_radius
    slack = 1e-12 * max(1.0, spec.mass)
    if spec.shape is KernelShape.BOX:
        # The jump contributes at most one cell of height `peak` per side.
        tol = spec.peak * h + slack
    elif spec.shape is KernelShape.TRIANGLE:
        # Kinks at 0 and +-r; each contributes O(h^2) * |slope jump|.
        tol = spec.mass * h * h / (r * r) + slack
    else:
        tol = spec.mass * math.pi**2 * h * h / (12.0 * r * r) + slack
    out = GridFunction(L, n, values, mass_tol=tol)
    if abs(trapezoid_mass(out) - spec.mass) > tol:
        raise InvalidGridError(
            f"sample: trapezoid mass deviates from {spec.mass} by more than the declared tolerance {tol}"
        )
    return out


def rescale_long_range(spec: ExchangeSpec, R: float) -> ExchangeSpec:
    """Mass-preserving long-range rescale: kernel(y) -> kernel(y / R) / R."""
    if not (math.isfinite(R) and R > 0):
        raise ParameterError(f"rescale_long_range: R must be finite and > 0, got {R!r}")
    return replace(spec, range_scale=spec.range_scale * R)


def reaction(v, a: float):
    """Logistic growth a * v * (1 - v); a equals the linearization slope at 0."""
    return a * v * (1.0 - v)


def trapezoid_mass(g: GridFunction) -> float:
    """Trapezoid-rule integral of a GridFunction over [-L, L].

    Summation is folded symmetrically (pairing i with n-1-i) so that exactly
    antisymmetric samples integrate to exactly zero and constants are exact.
    """
    v = g.values
    n = g.n
    m = n // 2
    s = 0.5 * (v[0] + v[n - 1])
    if m > 1:
        s += float(np.sum(v[1:m] + v[n - 2 : n - 1 - m : -1]))
    if n % 2 == 1:
        s += v[m]
    return float(2.0 * g.L * (s / (n - 1)))
