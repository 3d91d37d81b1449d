"""Tests for the near-identity factorization of bi-Lipschitz maps."""

import math

import numpy as np
import pytest

from qcext.analysis import cubic_map
from qcext.decompose import Factorization, chosen_eps, decompose_bilip, recompose
from qcext.errors import DomainError
from qcext.realmap import Affine, bump_map, compose, map_from_dict
from conftest import make_bump_map


def certified_gap(m):
    lo, hi = m.deriv_bounds()
    return max(hi - 1.0, 1.0 - lo)


def test_eps_choice_satisfies_the_constraints():
    for eps0 in (0.05, 0.1, 0.25, 0.5, 0.9):
        eps = chosen_eps(eps0)
        assert 0 < eps < eps0
        assert eps0 > eps / (1.0 - eps)


def test_near_identity_map_is_a_single_factor():
    f = bump_map(0.0, 1.0, 0.05)  # slope gap ~ 0.086 < 0.2
    fac = decompose_bilip(f, 0.2)
    assert len(fac) == 1
    assert fac.factors[0] is f
    assert fac.recomposition_error == 0.0


def test_pure_scaling_closed_form():
    # L = 2, eps0 = 0.25 -> eps = 1/6; four rounds of slope-(7/6) scalings
    # plus the terminal remainder: five factors in total, no translation
    fac = decompose_bilip(Affine(2.0, 0.0), 0.25)
    assert math.isclose(fac.eps, 1.0 / 6.0)
    assert len(fac) == 5
    scalings = fac.factors[1:]
    for m in scalings:
        lo, hi = m.deriv_bounds()
        assert lo == pytest.approx(7.0 / 6.0, rel=1e-12)
        assert hi == pytest.approx(7.0 / 6.0, rel=1e-12)
    lo, hi = fac.factors[0].deriv_bounds()
    assert lo == pytest.approx(2.0 / (7.0 / 6.0) ** 4, rel=1e-12)
    # every factor is a scaling strictly within the eps budget
    for m in fac.factors:
        assert certified_gap(m) < 0.25
        assert 1.0 / (7.0 / 6.0) - 1e-12 <= m.deriv_lo <= 7.0 / 6.0 + 1e-12
    # recomposition has slope 2 again
    r = recompose(fac)
    assert (r(1.0) - r(0.0)) == pytest.approx(2.0, abs=1e-8)
    assert fac.recomposition_error <= 1e-8


def test_translation_emitted_as_affine_factor():
    f = compose(Affine(1.0, 3.0), Affine(2.0, 0.0))  # 2x + 3
    fac = decompose_bilip(f, 0.25)
    t = fac.factors[0]
    assert t.kind == "affine"
    assert t.slope == 1.0 and t.intercept == pytest.approx(3.0)
    assert fac.recomposition_error <= 1e-8


def test_bump_map_roundtrip_and_certification():
    f = bump_map(0.0, 1.0, 0.4)
    fac = decompose_bilip(f, 0.2, tol=1e-6)
    for m in fac.factors:
        assert certified_gap(m) < 0.2
    r = recompose(fac)
    xs = np.linspace(-10.0, 10.0, 1000)
    assert np.max(np.abs(r(xs) - f(xs))) <= 1e-6


def test_factor_count_bound(rng):
    for _ in range(5):
        f = make_bump_map(rng)
        for eps0 in (0.1, 0.25):
            fac = decompose_bilip(f, eps0)
            b, B = f.deriv_bounds()
            L = max(B, 1.0 / b)
            if max(B - 1.0, 1.0 - b) < eps0:
                assert len(fac) == 1
                continue
            n_max = math.ceil(math.log(L) / math.log(1.0 + fac.eps)) + 2
            assert len(fac) <= n_max


def test_round_reduction_is_geometric():
    # the certified constant of the power factors drops by (1 + eps) a round:
    # the k-th inner factor always certifies within (1/(1+eps), 1+eps)
    f = bump_map(0.0, 1.5, 0.45)
    fac = decompose_bilip(f, 0.15)
    eps = fac.eps
    for m in fac.factors[1:][::-1]:  # inner factors, inside out
        lo, hi = m.deriv_bounds()
        assert hi <= 1.0 + eps + 1e-12
        assert lo >= 1.0 / (1.0 + eps) - 1e-12


def test_contracting_map():
    fac = decompose_bilip(Affine(0.3, 0.0), 0.25)
    assert len(fac) >= 3
    for m in fac.factors:
        assert certified_gap(m) < 0.25
    r = recompose(fac)
    assert (r(1.0) - r(0.0)) == pytest.approx(0.3, abs=1e-8)


def test_serialization_roundtrip():
    f = bump_map(0.3, 1.0, 0.35)
    fac = decompose_bilip(f, 0.25)
    payload = fac.to_dict()
    assert payload["eps0"] == 0.25
    rebuilt = [map_from_dict(d) for d in payload["factors"]]
    xs = np.linspace(-5.0, 5.0, 200)
    out = xs.copy()
    for m in reversed(rebuilt):  # innermost first
        out = m(out)
    assert np.max(np.abs(out - f(xs))) <= 1e-6


def test_recompose_validates():
    with pytest.raises(DomainError):
        recompose(Factorization(factors=(), eps0=0.1, eps=0.05,
                                recomposition_error=0.0))
    single = Factorization(factors=(Affine(1.1, 0.0),), eps0=0.2,
                           eps=chosen_eps(0.2), recomposition_error=0.0)
    assert recompose(single) is single.factors[0]


def test_rejects_bad_inputs():
    with pytest.raises(DomainError):
        decompose_bilip(Affine(2.0, 0.0), 0.0)
    with pytest.raises(DomainError):
        decompose_bilip(Affine(2.0, 0.0), 1.0)
    with pytest.raises(DomainError):
        decompose_bilip(cubic_map(), 0.2)
