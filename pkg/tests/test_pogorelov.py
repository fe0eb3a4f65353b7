from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hessian_cones import pogorelov as pg
from hessian_cones.calculus import fd_hessian, levi_hessian
from hessian_cones.polynomials import ma_k


def point(params, rng):
    z = rng.normal(size=params.n) + 1j * rng.normal(size=params.n)
    z[params.m :] *= 0.5
    return z


def test_parameter_validation():
    with pytest.raises(ValueError):
        pg.PogorelovParams(2, 2, 1.0)
    with pytest.raises(ValueError):
        pg.PogorelovParams(1, 3, 0.0)


def test_u_value_by_hand():
    params = pg.PogorelovParams(1, 2, 1.0)
    assert pg.u_value(params, np.array([1.0, 2.0])) == pytest.approx(8.0)
    assert pg.u_value(params, np.array([1j, 0.0])) == 0.0


def test_singular_set_guard():
    params = pg.PogorelovParams(1, 3, 0.7)
    with pytest.raises(pg.SingularSetError):
        pg.analytic_hessian(params, np.array([1.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        pg.split(params, np.zeros(2))


def test_small_case_determinant():
    params = pg.PogorelovParams(1, 2, 0.5)
    z = np.array([0.3 - 0.2j, 0.7 + 0.1j])
    assert pg.det_closed_form(params, z) == pytest.approx(0.25)
    assert np.linalg.det(pg.analytic_hessian(params, z)).real == pytest.approx(0.25)


@pytest.mark.parametrize("m,n,beta", [(1, 2, 0.5), (1, 3, 1.5), (2, 4, 0.75), (3, 5, 2.2)])
def test_analytic_hessian_against_both_fd_routes(m, n, beta, rng):
    params = pg.PogorelovParams(m, n, beta)
    for _ in range(3):
        z = point(params, rng)
        h = pg.analytic_hessian(params, z)
        u = lambda w: pg.u_value(params, w)
        scale = 1 + np.abs(h).max()
        assert np.abs(fd_hessian(u, z, richardson=True) - h).max() <= 1e-6 * scale
        assert np.abs(levi_hessian(u, z) - h).max() <= 1e-5 * scale


def test_trace_closed_form(rng):
    params = pg.PogorelovParams(2, 5, 1.3)
    z = point(params, rng)
    assert pg.trace_closed_form(params, z) == pytest.approx(np.trace(pg.analytic_hessian(params, z)).real)


@given(st.integers(2, 6), st.data())
def test_closed_spectrum_matches_lapack(n, data):
    m = data.draw(st.integers(1, n - 1))
    beta = data.draw(st.floats(0.2, 3.0))
    params = pg.PogorelovParams(m, n, beta)
    z = point(params, np.random.default_rng(data.draw(st.integers(0, 2**32 - 1))))
    ref = np.linalg.eigvalsh(pg.analytic_hessian(params, z))
    got = pg.closed_form_spectrum(params, z)
    assert np.allclose(got, ref, rtol=1e-9, atol=1e-12 * np.abs(ref).max())
    assert pg.det_closed_form(params, z) == pytest.approx(np.prod(ref), rel=1e-8)


def test_exponent_and_critical_beta():
    # m=2, n=3, k=2: C(2,2)=1, C(3,2)=3 -> 2b + 2(2b-2) = 6b - 4
    assert pg.mak_closed_form_exponent(2, 3, 2, 1.0) == pytest.approx(2.0)
    assert pg.critical_beta(2, 3, 2) == pytest.approx(2.0 / 3.0)
    assert pg.mak_closed_form_exponent(2, 3, 2, 2.0 / 3.0) == pytest.approx(0.0)
    # k > m: critical beta is 1
    assert pg.critical_beta(1, 4, 3) == 1.0
    with pytest.raises(ValueError):
        pg.critical_beta(1, 3, 4)


@pytest.mark.parametrize("m,n,k,beta", [(1, 3, 2, 1.6), (2, 4, 2, 0.9), (2, 5, 3, 1.4), (1, 2, 1, 0.4)])
def test_fitted_exponent(m, n, k, beta):
    params = pg.PogorelovParams(m, n, beta)
    expected = pg.mak_closed_form_exponent(m, n, k, beta)
    assert pg.fit_mak_exponent(params, k) == pytest.approx(expected, rel=1e-3, abs=1e-3)
    assert pg.fit_mak_exponent(params, k, method="closed_form") == pytest.approx(expected, rel=1e-3, abs=1e-3)


def test_numeric_and_closed_form_rays_agree():
    params = pg.PogorelovParams(2, 4, 1.2)
    radii = np.logspace(-3, 0, 5)
    a = pg.mak_along_ray(params, 3, radii)
    b = pg.mak_along_ray(params, 3, radii, method="closed_form")
    assert np.allclose(a, b, rtol=1e-9)
    with pytest.raises(ValueError):
        pg.mak_along_ray(params, 3, radii, method="bogus")


def test_critical_probe_settles():
    params = pg.PogorelovParams(2, 3, pg.critical_beta(2, 3, 2))
    out = pg.mak_smoothness_probe(params, 2)
    assert out["positive"] and out["bounded"]
    assert out["expected_exponent"] == pytest.approx(0.0, abs=1e-12)
    assert out["last_relative_change"] < 1e-3


def test_w2p_and_holder():
    # threshold (n-m)/(1-beta) = 2 / 0.5 = 4
    assert pg.w2p_admissible(3.9, 1, 3, 0.5)
    assert not pg.w2p_admissible(4.0, 1, 3, 0.5)
    assert pg.w2p_admissible(1e6, 1, 3, 1.0)
    with pytest.raises(ValueError):
        pg.w2p_admissible(0.5, 1, 3, 0.5)
    assert pg.holder_admissible(0.5, 0.75)
    assert not pg.holder_admissible(0.6, 0.75)


@given(st.integers(2, 8), st.data())
def test_radial_exponent_sign_matches_w2p(n, data):
    m = data.draw(st.integers(1, n - 1))
    beta = data.draw(st.floats(0.05, 0.99))
    p = data.draw(st.floats(1.0, 50.0))
    # integrable iff radial exponent > -1, away from the boundary
    e = pg.radial_exponent(p, m, n, beta)
    if abs(e + 1) > 1e-9:
        assert pg.w2p_admissible(p, m, n, beta) == (e > -1)


def test_p_star():
    assert pg.p_star(3, 2) == 3
    assert pg.p_star(4, 1) == 12
    assert pg.p_star(5, 2) == 30
    with pytest.raises(ValueError):
        pg.p_star(3, 3)


def test_mak_matches_direct_spectrum(rng):
    params = pg.PogorelovParams(2, 4, 0.8)
    z = point(params, rng)
    lam = np.linalg.eigvalsh(pg.analytic_hessian(params, z))
    for k in range(1, 5):
        assert ma_k(pg.closed_form_spectrum(params, z), k) == pytest.approx(ma_k(lam, k), rel=1e-9)
    assert comb(4, 2) == 6
