"""Tests for the certified-monotone map algebra."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcext.errors import DomainError
from qcext.realmap import (Affine, BUMP_SLOPE_MAX, BumpProfile,
                           IdentityPlusBump, bump_map, compose, identity,
                           inverse_map, invert_at, map_from_dict,
                           power_integral_map, sampled_monotone, taper)
from conftest import make_bump_map


def sample_maps(rng):
    """A handful of maps covering every constructor."""
    g = bump_map(0.0, 1.0, 0.3)
    return [
        Affine(2.0, 1.0),
        g,
        IdentityPlusBump([BumpProfile(-2.0, 0.8, 0.1), BumpProfile(2.0, 1.2, -0.2)]),
        compose(Affine(1.5, -0.5), g),
        power_integral_map(g, 0.7),
        taper(compose(Affine(1.05, 0.1), bump_map(0.0, 1.0, 0.15)), 3.0),
        inverse_map(compose(Affine(1.5, -0.5), g)),
        sampled_monotone(np.linspace(-3, 3, 25),
                         np.linspace(-3, 3, 25) + 0.3 * np.sin(np.linspace(-3, 3, 25))),
        make_bump_map(rng),
    ]


# -- evaluation ---------------------------------------------------------------

def test_eval_affine():
    assert Affine(2.0, 1.0)(3.0) == 7.0


def test_eval_zero_bump_is_identity():
    f = bump_map(0.0, 1.0, 0.0)
    assert f(5.0) == 5.0
    assert f.deriv_bounds() == (1.0, 1.0)


def test_eval_composed_affines():
    f = compose(Affine(2.0, 0.0), Affine(1.0, 1.0))
    assert f(0.0) == 2.0


def test_eval_accepts_arrays():
    f = bump_map(0.0, 1.0, 0.3)
    xs = np.linspace(-2, 2, 7)
    vals = f(xs)
    assert vals.shape == xs.shape
    assert vals[0] == f(float(xs[0]))


# -- derivatives --------------------------------------------------------------

def test_deriv_affine_constant():
    f = Affine(3.5, -1.0)
    for x in (-10.0, 0.0, 4.2):
        assert f.deriv(x) == 3.5


def test_deriv_bump_outside_support():
    f = bump_map(0.0, 1.0, 0.3)
    assert f.deriv(2.0) == 1.0
    assert f.deriv(-1.5) == 1.0


def test_deriv_matches_centered_differences(rng):
    f = compose(Affine(1.3, 0.2), bump_map(0.0, 1.0, 0.3))
    h = 1e-5
    for x in rng.uniform(-2, 2, 10):
        fd = (f(x + h) - f(x - h)) / (2 * h)
        assert abs(fd - f.deriv(x)) <= 10 * h * h


def test_deriv_second_order_convergence():
    f = bump_map(0.0, 1.0, 0.3)
    x = 0.37  # inside the support, away from flat spots
    def err(h):
        return abs((f(x + h) - f(x - h)) / (2 * h) - f.deriv(x))
    ratio = err(1e-3) / err(5e-4)
    assert 3.5 <= ratio <= 4.5


# -- certified bounds ----------------------------------------------------------

def test_bounds_affine():
    assert Affine(2.0, 3.0).deriv_bounds() == (2.0, 2.0)


def test_bounds_bump_closed_form():
    eps = 0.21
    f = bump_map(0.0, 1.0, eps)
    # maximize |p'(t)| = |-6 t (1-t^2)^2| at the closed-form critical point
    t_star = 1.0 / math.sqrt(5.0)
    m_p = abs(-6.0 * t_star * (1.0 - t_star * t_star) ** 2)
    assert m_p == pytest.approx(BUMP_SLOPE_MAX, rel=1e-15)
    lo, hi = f.deriv_bounds()
    assert lo == pytest.approx(1.0 - eps * m_p, rel=1e-14)
    assert hi == pytest.approx(1.0 + eps * m_p, rel=1e-14)


def test_bounds_compose_interval_product():
    f = compose(Affine(2.0, 0.0), Affine(3.0, 1.0))
    assert f.deriv_bounds() == (6.0, 6.0)
    g = bump_map(0.0, 1.0, 0.2)
    h = compose(Affine(2.0, 0.0), g)
    blo, bhi = g.deriv_bounds()
    assert h.deriv_bounds() == (2.0 * blo, 2.0 * bhi)


def test_bounds_certified_by_dense_sampling(rng):
    xs = np.linspace(-100, 100, 4001)
    for f in sample_maps(rng):
        lo, hi = f.deriv_bounds()
        d = f.deriv(xs)
        assert d.min() >= lo - 1e-12
        assert d.max() <= hi + 1e-12


def test_monotone_on_dense_samples(rng):
    xs = np.linspace(-50, 50, 2001)
    for f in sample_maps(rng):
        assert np.all(np.diff(f(xs)) > 0)


def test_rejects_nonpositive_lower_bound():
    with pytest.raises(DomainError):
        bump_map(0.0, 1.0, 0.7)  # slope sup 0.7 * BUMP_SLOPE_MAX > 1
    with pytest.raises(DomainError):
        Affine(-1.0, 0.0)
    with pytest.raises(DomainError):
        Affine(0.0, 0.0)


# -- inversion ------------------------------------------------------------------

def test_invert_affine():
    assert invert_at(Affine(2.0, 1.0), 7.0, 1e-12) == pytest.approx(3.0, abs=1e-12)


def test_invert_identity():
    assert invert_at(identity(), math.pi, 1e-12) == pytest.approx(math.pi, abs=1e-12)


def test_invert_against_bisection_oracle():
    f = bump_map(0.0, 1.0, 0.3)
    y = f(0.4)
    # independent oracle: plain bisection on the monotone function
    lo, hi = -5.0, 5.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if f(mid) < y:
            lo = mid
        else:
            hi = mid
    oracle = 0.5 * (lo + hi)
    assert invert_at(f, y, 1e-10) == pytest.approx(oracle, abs=1e-8)
    assert invert_at(f, y, 1e-10) == pytest.approx(0.4, abs=1e-9)


def test_invert_roundtrip_random(rng):
    tol = 1e-10
    for f in sample_maps(rng):
        if f.deriv_lo < 0.5:
            continue
        for x in rng.uniform(-8, 8, 5):
            x_hat = invert_at(f, f(float(x)), tol)
            assert abs(x_hat - x) <= 2 * tol


def test_inverse_map_bounds_and_values():
    f = compose(Affine(2.0, 1.0), bump_map(0.0, 1.0, 0.2))
    inv = inverse_map(f)
    assert inv.deriv_bounds() == (1.0 / f.deriv_hi, 1.0 / f.deriv_lo)
    x = 0.7
    assert inv(f(x)) == pytest.approx(x, abs=1e-9)
    assert inv.deriv(f(x)) == pytest.approx(1.0 / f.deriv(x), rel=1e-8)


def test_invert_requires_positive_tol():
    with pytest.raises(DomainError):
        invert_at(identity(), 1.0, 0.0)


# -- power integrals -------------------------------------------------------------

def test_power_integral_scaling():
    f = Affine(3.0, 0.0)
    for alpha in (-1.0, 0.5, 2.0):
        g = power_integral_map(f, alpha)
        for x in (-2.0, 0.0, 1.7):
            assert g(x) == pytest.approx(3.0 ** alpha * x, rel=1e-12, abs=1e-12)


def test_power_integral_alpha_zero_is_identity():
    g = power_integral_map(bump_map(0.0, 1.0, 0.3), 0.0)
    assert g.kind == "affine"
    assert g(1.23) == 1.23


def test_power_integral_alpha_one_is_fundamental_theorem():
    f = compose(Affine(1.4, 0.8), bump_map(0.2, 1.0, 0.25))
    g = power_integral_map(f, 1.0)
    for x in (-3.0, 0.5, 2.0):
        assert g(x) == pytest.approx(f(x) - f(0.0), rel=1e-10, abs=1e-10)


def test_power_integral_against_scipy_oracle():
    from scipy.integrate import quad
    f = compose(Affine(1.3, -0.4), bump_map(0.2, 1.1, 0.3))
    for alpha in (0.37, -0.8, 1.6):
        g = power_integral_map(f, alpha)
        for x in (-2.3, 0.7, 3.1):
            ref, err = quad(lambda t: f.deriv(t) ** alpha, 0.0, x,
                            epsabs=1e-12, limit=200)
            assert g(x) == pytest.approx(ref, abs=1e-9 + 10 * err)


def test_power_integral_bounds():
    f = bump_map(0.0, 1.0, 0.3)
    blo, bhi = f.deriv_bounds()
    g = power_integral_map(f, 0.5)
    assert g.deriv_bounds() == (blo ** 0.5, bhi ** 0.5)
    h = power_integral_map(f, -2.0)
    assert h.deriv_bounds() == (bhi ** -2.0, blo ** -2.0)


# -- taper -----------------------------------------------------------------------

def test_taper_identity_is_identity():
    t = taper(identity(), 1.0)
    xs = np.linspace(-5, 5, 41)
    assert np.max(np.abs(t(xs) - xs)) == 0.0


def test_taper_agrees_on_plateau_and_tail():
    f = compose(Affine(1.2, 0.1), bump_map(0.0, 1.0, 0.2))
    t = taper(f, 2.0)
    for x in np.linspace(-2, 2, 9):
        assert t(float(x)) == pytest.approx(f(float(x)), abs=1e-15)
    for x in (4.0, -4.0, 17.0):
        assert t(x) == x


def test_taper_rejects_untamable_map():
    # slope-5 affine displaced far from the identity cannot be tapered at T=1
    with pytest.raises(DomainError):
        taper(Affine(5.0, 40.0), 1.0)


# -- sampled monotone --------------------------------------------------------------

def test_sampled_monotone_interpolates_and_extends():
    xs = np.linspace(-2, 2, 17)
    ys = xs + 0.2 * np.tanh(xs)
    f = sampled_monotone(xs, ys)
    for xi, yi in zip(xs, ys):
        assert f(float(xi)) == pytest.approx(yi, abs=1e-14)
    # affine continuation outside the window
    slope_r = f.deriv(10.0)
    assert f(10.0) == pytest.approx(ys[-1] + slope_r * (10.0 - xs[-1]), rel=1e-12)
    lo, hi = f.deriv_bounds()
    d = f.deriv(np.linspace(-6, 6, 2001))
    assert d.min() >= lo - 1e-12 and d.max() <= hi + 1e-12


def test_sampled_monotone_rejects_bad_data():
    with pytest.raises(DomainError):
        sampled_monotone([0.0, 1.0, 1.0], [0.0, 1.0, 2.0])
    with pytest.raises(DomainError):
        sampled_monotone([0.0, 1.0, 2.0], [0.0, 2.0, 1.0])


def test_power_integral_cache_is_thread_safe():
    from concurrent.futures import ThreadPoolExecutor
    f = power_integral_map(bump_map(0.0, 1.0, 0.3), 0.6)
    xs = np.linspace(-20.0, 20.0, 400)
    serial = f(xs)
    fresh = power_integral_map(bump_map(0.0, 1.0, 0.3), 0.6)
    chunks = np.array_split(xs, 8)
    with ThreadPoolExecutor(max_workers=8) as pool:
        parts = list(pool.map(fresh, chunks))
    assert np.max(np.abs(np.concatenate(parts) - serial)) <= 1e-12


# -- serialization -----------------------------------------------------------------

def test_description_roundtrip(rng):
    xs = np.linspace(-4, 4, 33)
    for f in sample_maps(rng):
        g = map_from_dict(f.to_dict())
        assert np.allclose(g(xs), f(xs), rtol=1e-12, atol=1e-10)
        assert g.deriv_bounds() == pytest.approx(f.deriv_bounds())


def test_description_rejects_unknown_kind():
    with pytest.raises(DomainError):
        map_from_dict({"kind": "sorcery"})
    with pytest.raises(DomainError):
        map_from_dict({"no": "kind"})


# -- properties ---------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(slope=st.floats(0.1, 10.0), intercept=st.floats(-5.0, 5.0),
       amp=st.floats(-0.5, 0.5), x=st.floats(-20.0, 20.0), dx=st.floats(1e-6, 5.0))
def test_property_strictly_increasing(slope, intercept, amp, x, dx):
    f = compose(Affine(slope, intercept), bump_map(0.0, 1.0, amp))
    assert f(x) < f(x + dx)


@settings(max_examples=40, deadline=None)
@given(a1=st.floats(0.2, 5.0), a2=st.floats(0.2, 5.0), amp=st.floats(-0.4, 0.4))
def test_property_compose_bounds_contain_product(a1, a2, amp):
    f = compose(Affine(a1, 0.0), bump_map(0.0, 1.0, amp))
    g = Affine(a2, 1.0)
    c = compose(f, g)
    assert c.deriv_lo >= f.deriv_lo * g.deriv_lo - 1e-12
    assert c.deriv_hi <= f.deriv_hi * g.deriv_hi + 1e-12
