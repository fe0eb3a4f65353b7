import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hessian_cones import mollifier as mo
from hessian_cones.fields import get_field


def test_ball_samples_radius_law(rng):
    # |y|^{2n} is uniform on [0, 1] for uniform points of the 2n-ball
    y = mo.unit_ball_samples(3, 200_000, rng)
    r = np.linalg.norm(np.concatenate([y.real, y.imag], axis=1), axis=1)
    assert r.max() <= 1.0
    u = np.sort(r**6)
    grid = (np.arange(len(u)) + 0.5) / len(u)
    assert np.abs(u - grid).max() < 0.01
    assert np.abs(y.mean(axis=0)).max() < 0.01


def test_ball_samples_scaled():
    y = mo.ball_samples(2, 0.25, 1000, seed=3)
    assert np.abs(y).max() <= 0.25
    with pytest.raises(ValueError):
        mo.ball_samples(2, 0.0, 10)


def test_ball_average_of_quadratic():
    # mean of |z|^2 over B_eps(0) in R^{2n} is eps^2 * 2n / (2n + 2)
    n, eps = 2, 0.7
    est = mo.ball_average(get_field("quad", n), np.zeros(n), eps, 100_000, seed=1)
    assert abs(est.value - eps**2 * n / (n + 1)) <= 4 * est.stderr


@pytest.mark.parametrize("n", [1, 2, 4])
def test_t_eps_exact_on_quad(n):
    est = mo.t_eps(get_field("quad", n), np.full(n, 0.3 - 0.1j), 0.5, 40_000, seed=7)
    assert abs(est.value - n) <= 3 * est.stderr


def test_pluriharmonic_cancels_exactly():
    est = mo.t_eps(get_field("pluriharmonic", 3), np.array([0.5, 1j, 0.0]), 0.4, 4_000, seed=2)
    assert abs(est.value) <= 3 * est.stderr
    assert abs(est.value) < 1e-12


def test_small_sample_counts():
    field = get_field("quad", 2)
    est = mo.t_eps(field, np.zeros(2), 0.5, 3, seed=0)
    assert np.isfinite(est.value) and np.isfinite(est.stderr)
    assert np.isnan(mo.ball_average(field, np.zeros(2), 0.5, 1, seed=0).stderr)
    with pytest.raises(ValueError):
        mo.ball_average(field, np.zeros(2), 0.5, 0)


def test_seed_reproducible():
    field = get_field("quartic", 2)
    a = mo.t_eps(field, np.ones(2), 0.3, 2_000, seed=11)
    b = mo.t_eps(field, np.ones(2), 0.3, 2_000, seed=11)
    assert a == b


@settings(max_examples=20)
@given(st.floats(-3, 3), st.floats(-3, 3), st.integers(0, 2**32 - 1))
def test_linear_in_field_with_shared_samples(a, b, seed):
    f, g = get_field("quartic", 2), get_field("cubic_plus_quad", 2)
    h = lambda z: a * f(z) + b * g(z)
    z = np.array([0.2 + 0.1j, -0.4j])
    tf = mo.t_eps(f, z, 0.3, 400, seed).value
    tg = mo.t_eps(g, z, 0.3, 400, seed).value
    th = mo.t_eps(h, z, 0.3, 400, seed).value
    assert th == pytest.approx(a * tf + b * tg, rel=1e-9, abs=1e-9)


def test_positivity_probe_on_subharmonic(rng):
    grid = rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))
    out = mo.positivity_probe(get_field("max_pluriharmonic", 2), grid, 0.3, 8_000, seed=5)
    assert out["passed"] and out["worst_value"] > 0
    assert len(out["witness"]) == 2


def test_positivity_probe_flags_superharmonic():
    neg = lambda z: -np.sum(np.abs(z) ** 2, axis=-1)
    out = mo.positivity_probe(neg, np.zeros((2, 2)), 0.5, 4_000, seed=5)
    assert not out["passed"]
    assert out["worst_value"] == pytest.approx(-2.0, rel=0.05)


def test_convergence_to_laplacian():
    field = get_field("quartic", 2)
    z = np.ones(2, dtype=complex)
    out = mo.convergence_probe(field, z, np.geomspace(0.5, 2.0, 5), 200_000, seed=9)
    assert out["limit"] == pytest.approx(field.laplacian(z), rel=1e-6)
    assert out["order"] is not None and 1.7 < out["order"] < 2.3
    with pytest.raises(ValueError):
        mo.convergence_probe(field, z, [0.1, 0.2])


def test_convergence_exact_for_quad():
    out = mo.convergence_probe(get_field("quad", 2), np.zeros(2), [0.1, 0.2, 0.4], 4_000, seed=1, limit=2.0)
    assert out["order"] is None
