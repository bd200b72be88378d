"""Kernels, grids, rescaling, and the reaction term."""

import math

import numpy as np
import pytest

from roadspeed import (
    DomainTooSmallError,
    ExchangeSpec,
    GridFunction,
    InvalidGridError,
    KernelShape,
    ModelParams,
    ParameterError,
    reaction,
    rescale_long_range,
    sample,
    symmetric_grid,
    trapezoid_mass,
)


def test_box_sample_is_piecewise_constant():
    spec = ExchangeSpec(KernelShape.BOX, half_width=1.0, mass=1.0)
    g = sample(spec, L=4.0, n=9)
    # Nodes land on integers; the box takes its full height on |y| <= 1.
    expected = np.array([0.0, 0.0, 0.0, 0.5, 0.5, 0.5, 0.0, 0.0, 0.0])
    np.testing.assert_array_equal(g.values, expected)
    # Coarse trapezoid overshoots by half a cell per edge; the declared
    # tolerance (one cell of peak height) covers it.
    assert abs(trapezoid_mass(g) - 1.0) <= g.mass_tol


@pytest.mark.parametrize("shape", list(KernelShape))
def test_sample_boundary_legal_minimum_grid(shape):
    spec = ExchangeSpec(shape, half_width=1.5, mass=2.0)
    g = sample(spec, L=spec.support_radius, n=3)
    assert g.n == 3 and g.values.shape == (3,)


def test_triangle_trapezoid_mass_fine_grid():
    spec = ExchangeSpec(KernelShape.TRIANGLE, half_width=1.0, mass=1.0)
    g = sample(spec, L=2.0, n=4001)
    assert abs(trapezoid_mass(g) - 1.0) <= 1e-6


def test_box_trapezoid_mass_with_edges_between_nodes():
    # With the jump exactly halfway between nodes the trapezoid cell mass
    # equals the true cell mass, so the quadrature error collapses to
    # rounding noise even though the integrand is discontinuous.
    spec = ExchangeSpec(KernelShape.BOX, half_width=1.0, mass=1.0)
    g = sample(spec, L=1.5005, n=3002)
    assert abs(g.h - 1e-3) < 1e-15
    assert abs(trapezoid_mass(g) - 1.0) <= 1e-6


@pytest.mark.parametrize("shape", list(KernelShape))
@pytest.mark.parametrize("R", [0.5, 1.0, 2.0, 10.0, 100.0])
def test_rescale_keeps_mass(shape, R):
    spec = ExchangeSpec(shape, half_width=0.8, mass=1.7)
    scaled = rescale_long_range(spec, R)
    assert scaled.mass == spec.mass
    assert scaled.support_radius == pytest.approx(R * spec.support_radius)
    g = sample(scaled, L=scaled.support_radius + 1.0, n=6001)
    assert abs(trapezoid_mass(g) - spec.mass) <= g.mass_tol


def test_rescale_box_height():
    spec = ExchangeSpec(KernelShape.BOX, half_width=1.0, mass=1.0)
    scaled = rescale_long_range(spec, 2.0)
    assert scaled.peak == pytest.approx(0.25)
    assert scaled.evaluate(1.9) == pytest.approx(0.25)
    assert scaled.evaluate(2.1) == 0.0


def test_rescale_identity():
    spec = ExchangeSpec(KernelShape.RAISED_COSINE, half_width=1.2, mass=0.7)
    assert rescale_long_range(spec, 1.0) == spec


def test_rescale_triangle_peak():
    spec = ExchangeSpec(KernelShape.TRIANGLE, half_width=1.0, mass=1.0)
    scaled = rescale_long_range(spec, 3.0)
    assert scaled.support_radius == pytest.approx(3.0)
    assert scaled.peak == pytest.approx(1.0 / 3.0)
    assert scaled.evaluate(0.0) == pytest.approx(1.0 / 3.0)


def test_rescale_composes():
    spec = ExchangeSpec(KernelShape.TRIANGLE, half_width=0.9, mass=1.3)
    a = rescale_long_range(rescale_long_range(spec, 2.0), 5.0)
    b = rescale_long_range(spec, 10.0)
    assert a.shape == b.shape
    assert a.half_width == b.half_width
    assert a.mass == b.mass
    assert a.range_scale == pytest.approx(b.range_scale, rel=1e-15)


def test_reaction_values():
    assert reaction(0.0, 1.0) == 0.0
    assert reaction(1.0, 1.0) == 0.0
    assert reaction(0.5, 1.0) == 0.25
    assert reaction(0.5, 3.0) == 0.75


def test_reaction_below_linearization():
    a = 1.7
    v = np.linspace(0.0, 2.0, 201)
    assert np.all(reaction(v, a) <= a * v)


def test_trapezoid_exact_for_constants():
    for n in (3, 10, 101):
        g = GridFunction(L=1.0, n=n, values=np.ones(n))
        assert trapezoid_mass(g) == 2.0


def test_trapezoid_exact_zero_for_odd_samples():
    ys = symmetric_grid(3.0, 257)
    g = GridFunction(L=3.0, n=257, values=ys**3 + 0.5 * ys)
    assert trapezoid_mass(g) == 0.0


@pytest.mark.parametrize("shape", list(KernelShape))
def test_sampled_kernels_exactly_even(shape):
    rng = np.random.default_rng(7)
    for _ in range(5):
        hw = float(rng.uniform(0.2, 3.0))
        mass = float(rng.uniform(0.1, 5.0))
        L = hw + float(rng.uniform(0.0, 2.0))
        n = int(rng.integers(3, 500))
        g = sample(ExchangeSpec(shape, half_width=hw, mass=mass), L, n)
        np.testing.assert_array_equal(g.values, g.values[::-1])


def test_symmetric_grid_antisymmetry():
    ys = symmetric_grid(2.7, 84)
    np.testing.assert_array_equal(ys, -ys[::-1])


def test_sample_domain_too_small():
    spec = ExchangeSpec(KernelShape.BOX, half_width=2.0, mass=1.0)
    with pytest.raises(DomainTooSmallError):
        sample(spec, L=1.9, n=101)


def test_sample_needs_three_nodes():
    spec = ExchangeSpec(KernelShape.BOX, half_width=1.0, mass=1.0)
    with pytest.raises(InvalidGridError):
        sample(spec, L=2.0, n=2)


def test_rescale_rejects_nonpositive_scale():
    spec = ExchangeSpec(KernelShape.BOX, half_width=1.0, mass=1.0)
    for R in (0.0, -1.0, float("nan")):
        with pytest.raises(ParameterError):
            rescale_long_range(spec, R)


def test_exchange_spec_validation():
    with pytest.raises(ParameterError):
        ExchangeSpec(KernelShape.BOX, half_width=0.0, mass=1.0)
    with pytest.raises(ParameterError):
        ExchangeSpec(KernelShape.BOX, half_width=1.0, mass=-0.5)
    with pytest.raises(ParameterError):
        ExchangeSpec(KernelShape.BOX, half_width=1.0, mass=1.0, range_scale=0.0)
    # Zero mass is the degenerate decoupled kernel and is allowed.
    zero = ExchangeSpec(KernelShape.BOX, half_width=1.0, mass=0.0)
    assert zero.peak == 0.0


def test_model_params_validation():
    with pytest.raises(ParameterError):
        ModelParams(d=0.0, D=1.0, a=1.0, mu_bar=1.0, nu_bar=1.0)
    with pytest.raises(ParameterError):
        ModelParams(d=1.0, D=1.0, a=1.0, mu_bar=-1.0, nu_bar=1.0)
    p = ModelParams(d=1.0, D=1.0, a=1.0, mu_bar=1.0, nu_bar=1.0)
    assert p.c_kpp == 2.0


def test_c_kpp_values():
    assert ModelParams(d=1.0, D=2.0, a=1.0, mu_bar=1.0, nu_bar=1.0).c_kpp == 2.0
    assert ModelParams(d=4.0, D=2.0, a=1.0, mu_bar=1.0, nu_bar=1.0).c_kpp == 4.0
    assert ModelParams(d=1.0, D=2.0, a=0.25, mu_bar=1.0, nu_bar=1.0).c_kpp == 1.0


def test_grid_function_validation_and_immutability():
    with pytest.raises(InvalidGridError):
        GridFunction(L=1.0, n=2, values=np.zeros(2))
    with pytest.raises(InvalidGridError):
        GridFunction(L=1.0, n=4, values=np.zeros(3))
    with pytest.raises(InvalidGridError):
        GridFunction(L=1.0, n=3, values=np.array([0.0, np.inf, 0.0]))
    g = GridFunction(L=1.0, n=3, values=np.zeros(3))
    with pytest.raises(ValueError):
        g.values[0] = 1.0
    assert g.h == 1.0


def test_cell_average_matches_pointwise_for_smooth_kernel():
    spec = ExchangeSpec(KernelShape.RAISED_COSINE, half_width=1.0, mass=1.0)
    ys = symmetric_grid(1.5, 3001)
    h = 3.0 / 3000
    averaged = spec.cell_average(ys, h)
    pointwise = spec.evaluate(ys)
    assert float(np.max(np.abs(averaged - pointwise))) < 1e-6
