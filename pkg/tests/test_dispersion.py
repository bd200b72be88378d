"""Closed-form dispersion quantities: roots, thresholds, and the crossing speed.

Frozen values below were derived by hand from the defining quadratics:
the road roots solve -D*l^2 + c*l + mu_bar = 0, the field window solves
d*l^2 - c*l + a = 0, and eliminating lambda from lambda1_plus = lambda2_minus
gives 24 c^2 = 100 for (d, a, mu_bar, D) = (1, 1, 1, 4) and 40 c^2 = 196 for
D = 6.
"""

import math

import numpy as np
import pytest

from roadspeed import (
    BelowThresholdError,
    DispersionPoint,
    ModelParams,
    ParameterError,
    SubcriticalSpeedError,
    c_kpp,
    c_min_crossing,
    lambda1_pm,
    lambda2_pm,
    p_coeff,
    psi1,
    threshold_D,
    upper_bound_speed,
)


def params(d=1.0, D=4.0, a=1.0, mu_bar=1.0, nu_bar=1.0):
    return ModelParams(d=d, D=D, a=a, mu_bar=mu_bar, nu_bar=nu_bar)


def test_c_kpp_formula():
    assert c_kpp(params(d=1.0, a=1.0)) == 2.0
    assert c_kpp(params(d=4.0, a=1.0)) == 4.0
    assert c_kpp(params(d=1.0, a=0.25)) == 1.0


def test_psi1_values():
    p = params(D=4.0, mu_bar=1.0)
    assert psi1(0.0, 2.0, p) == 1.0
    assert psi1(2.0 / 4.0, 2.0, p) == pytest.approx(1.0, abs=1e-15)
    assert psi1(0.25, 2.0, p) == 1.25


def test_psi1_accepts_arrays():
    p = params()
    lams = np.array([0.0, 0.5, 1.0])
    np.testing.assert_allclose(
        psi1(lams, 2.0, p), [-4 * l * l + 2.0 * l + 1.0 for l in lams], rtol=1e-15
    )


def test_lambda1_roots_frozen():
    p = params(D=4.0, mu_bar=1.0)
    lo, hi = lambda1_pm(2.0, p)
    assert hi == pytest.approx((2.0 + math.sqrt(20.0)) / 8.0, rel=1e-15)
    assert lo == pytest.approx((2.0 - math.sqrt(20.0)) / 8.0, rel=1e-12)
    assert hi == pytest.approx(0.8090169943749475, rel=1e-14)
    lo0, hi0 = lambda1_pm(0.0, params(D=1.0, mu_bar=1.0))
    assert (lo0, hi0) == (pytest.approx(-1.0), pytest.approx(1.0))


def test_lambda1_root_identity_random():
    rng = np.random.default_rng(11)
    for _ in range(100):
        d, D, a, mub = (float(v) for v in rng.uniform(0.05, 10.0, size=4))
        p = params(d=d, D=D, a=a, mu_bar=mub)
        c = float(rng.uniform(0.0, 10.0))
        lo, hi = lambda1_pm(c, p)
        assert lo < 0.0 < hi
        for lam in (lo, hi):
            assert abs(psi1(lam, c, p)) <= 1e-12 * max(1.0, mub)


def test_lambda2_window_frozen():
    p = params(d=1.0, a=1.0)
    lo, hi = lambda2_pm(2.5, p)
    assert (lo, hi) == (0.5, 2.0)
    lo, hi = lambda2_pm(p.c_kpp, p)
    assert lo == hi == 1.0


def test_lambda2_subcritical_raises():
    with pytest.raises(SubcriticalSpeedError):
        lambda2_pm(1.9, params(d=1.0, a=1.0))


def test_lambda2_monotone_in_c():
    p = params(d=1.3, a=0.7)
    cs = np.linspace(p.c_kpp * 1.01, p.c_kpp * 4.0, 40)
    los, his = zip(*(lambda2_pm(float(c), p) for c in cs))
    assert all(b < a for a, b in zip(los, los[1:]))
    assert all(b > a for a, b in zip(his, his[1:]))


def test_p_coeff_values_and_sign():
    p = params(d=1.0, a=1.0)
    assert p_coeff(1.25, 2.5, p) == 0.5625
    lo, hi = lambda2_pm(2.5, p)
    assert abs(p_coeff(lo, 2.5, p)) <= 1e-12
    assert abs(p_coeff(hi, 2.5, p)) <= 1e-12
    # Vertex value: c^2/(4d) - a.
    assert p_coeff(2.5 / 2.0, 2.5, p) == pytest.approx(2.5**2 / 4.0 - 1.0, rel=1e-15)


def test_p_coeff_sign_pattern_random():
    rng = np.random.default_rng(23)
    for _ in range(20):
        d, a = (float(v) for v in rng.uniform(0.1, 5.0, size=2))
        p = params(d=d, a=a)
        c = p.c_kpp * float(rng.uniform(1.05, 3.0))
        lo, hi = lambda2_pm(c, p)
        inside = rng.uniform(lo + 1e-9 * (hi - lo), hi - 1e-9 * (hi - lo), size=100)
        assert np.all(p_coeff(inside, c, p) > 0.0)
        outside = np.concatenate([rng.uniform(-1.0, lo - 1e-6, 50), rng.uniform(hi + 1e-6, hi + 3.0, 50)])
        assert np.all(p_coeff(outside, c, p) < 0.0)


def test_threshold_values():
    assert threshold_D(params(d=1.0, a=1.0, mu_bar=1.0)) == 3.0
    assert threshold_D(params(d=2.0, a=0.5, mu_bar=1.0)) == 8.0
    assert threshold_D(params(d=2.0, a=4.0, mu_bar=2.0)) == 5.0
    assert threshold_D(params(d=1.0, a=1.0, mu_bar=1e-12)) == 2.0 + 1e-12


def test_threshold_is_the_root_overlap_boundary():
    # At D = threshold the road root at c_kpp coincides with the left end of
    # the field window; nudging D by one part in 1e6 flips the sign.
    rng = np.random.default_rng(3)
    for _ in range(10):
        d, a, mub = (float(v) for v in rng.uniform(0.2, 4.0, size=3))
        p = params(d=d, a=a, mu_bar=mub)
        ck = c_kpp(p)
        target = ck / (2.0 * d)
        thr = threshold_D(p)
        gap_at = lambda D: lambda1_pm(ck, params(d=d, D=D, a=a, mu_bar=mub))[1] - target
        assert abs(gap_at(thr)) <= 1e-12 * target
        assert gap_at(thr * (1.0 - 1e-6)) > 0.0
        assert gap_at(thr * (1.0 + 1e-6)) < 0.0


def test_crossing_speed_oracles():
    assert c_min_crossing(params(D=4.0)) == pytest.approx(5.0 / math.sqrt(6.0), abs=1e-9)
    assert c_min_crossing(params(D=6.0)) == pytest.approx(math.sqrt(4.9), abs=1e-9)


def test_crossing_speed_residual():
    p = params(D=4.0)
    c = c_min_crossing(p)
    assert abs(lambda1_pm(c, p)[1] - lambda2_pm(c, p)[0]) <= 1e-10


def test_crossing_below_threshold_raises():
    with pytest.raises(BelowThresholdError):
        c_min_crossing(params(D=3.0))  # exactly at threshold
    with pytest.raises(BelowThresholdError):
        c_min_crossing(params(D=2.5))


def test_upper_bound_values():
    assert upper_bound_speed(params(D=4.0, d=1.0, a=1.0)) == pytest.approx(4.0 / math.sqrt(3.0), rel=1e-15)
    assert upper_bound_speed(params(D=2.0, d=1.0, a=1.0)) == pytest.approx(2.0, rel=1e-15)
    with pytest.raises(ParameterError):
        upper_bound_speed(params(D=1.0, d=1.0))
    with pytest.raises(ParameterError):
        upper_bound_speed(params(D=0.5, d=1.0))


def test_lambda1_monotone_in_c_and_D():
    p = params(D=3.0, mu_bar=0.8)
    cs = np.linspace(0.0, 6.0, 30)
    roots = [lambda1_pm(float(c), p)[1] for c in cs]
    assert all(b > a for a, b in zip(roots, roots[1:]))
    c = 2.2
    for D1, D2 in ((0.5, 1.0), (1.0, 4.0), (4.0, 9.0)):
        r1 = lambda1_pm(c, params(D=D1, mu_bar=0.8))[1]
        r2 = lambda1_pm(c, params(D=D2, mu_bar=0.8))[1]
        assert r1 > r2


def test_ordering_between_crossing_and_bounds():
    rng = np.random.default_rng(41)
    for _ in range(20):
        d, a, mub = (float(v) for v in rng.uniform(0.2, 3.0, size=3))
        thr = d * (2.0 + mub / a)
        D = thr * float(rng.uniform(1.05, 3.0))
        p = params(d=d, D=D, a=a, mu_bar=mub)
        cm = c_min_crossing(p)
        assert cm > c_kpp(p)
        assert cm <= upper_bound_speed(p) + 1e-12


def test_dispersion_point_validation():
    pt = DispersionPoint(c=2.5, lam=0.8)
    assert (pt.c, pt.lam) == (2.5, 0.8)
    with pytest.raises(ParameterError):
        DispersionPoint(c=0.0, lam=0.8)
    with pytest.raises(ParameterError):
        DispersionPoint(c=2.5, lam=-0.1)
