import numpy as np
import pytest
from hypothesis import given, strategies as st

from hessian_cones import operators as ops
from hessian_cones.certify import PROPERTIES, certify, spot_check_operator
from hessian_cones.sampling import random_unitary, sample_cone_matrices


def test_catalog_contents():
    names = [op.name for op in ops.catalog(3)]
    assert "det(n=2)" in names and "MA_2(n=3)" in names and "interp2d(s=0.5)" in names
    assert len(set(names)) == len(names)


def test_eval_F_unitarily_invariant(rng):
    op = ops.ma_k_operator(3, 2)
    lam = np.array([0.5, 1.0, 2.0])
    u = random_unitary(3, rng)
    a = (u * lam) @ u.conj().T
    assert ops.eval_F(op, a) == pytest.approx(1.5 * 2.5 * 3.0)
    assert ops.eval_G(op, a) == pytest.approx((1.5 * 2.5 * 3.0) ** (1 / 3))


def test_cone_violation():
    op = ops.determinant_operator(2)
    with pytest.raises(ops.ConeViolationError):
        ops.eval_F(op, np.diag([1.0, -1.0]))
    with pytest.warns(UserWarning):
        assert ops.eval_F(op, np.diag([1.0, -1.0]), strict=False) == pytest.approx(-1.0)
    with pytest.raises(ValueError):
        ops.eval_F(op, np.eye(3))


def test_interp2d_limits():
    det = ops.interpolated2d_operator(0.0)
    lam = np.array([2.0, 3.0])
    assert det.evaluate(lam) == pytest.approx(6.0)
    with pytest.raises(ValueError):
        ops.interpolated2d_operator(1.0)
    op = ops.interpolated2d_operator(0.5)
    # sharp comparison constant: equality at the identity
    assert ops.garding_comparison_margin(op, np.eye(2)) == pytest.approx(0.0, abs=1e-14)


def test_garding_margin_known_value():
    op = ops.sigma_k_operator(3, 2)
    assert ops.garding_comparison_margin(op, np.diag([1.0, 2.0, 3.0])) == pytest.approx(0.169279600090455, abs=1e-12)


@pytest.mark.parametrize("op", ops.catalog(4), ids=lambda op: op.name)
def test_grad_G_against_finite_differences(op, rng):
    a, _ = sample_cone_matrices(op, 1, rng)
    a = a[0]
    g = ops.grad_G(op, a)
    b = rng.normal(size=a.shape) + 1j * rng.normal(size=a.shape)
    b = 0.5 * (b + b.conj().T)
    h = 1e-6
    fd = (ops.eval_G(op, a + h * b) - ops.eval_G(op, a - h * b)) / (2 * h)
    assert np.trace(g @ b).real == pytest.approx(fd, rel=1e-5, abs=1e-7)


def test_majorization():
    assert ops.majorizes([3.0, 0.0], [1.5, 1.5])
    assert not ops.majorizes([1.5, 1.5], [3.0, 0.0])
    op = ops.sigma_k_operator(2, 2)
    assert ops.schur_concavity_probe(op, [1.5, 1.5], [2.0, 1.0]) > 0
    with pytest.raises(ValueError):
        ops.schur_concavity_probe(op, [2.0, 1.0], [1.5, 1.5])


def test_concavity_probe_sign(rng):
    op = ops.ma_k_operator(3, 2)
    (a, b), _ = sample_cone_matrices(op, 2, rng)
    for t in (0.0, 0.3, 1.0):
        assert ops.concavity_probe(op, a, b, t) >= -1e-12
    with pytest.raises(ValueError):
        ops.concavity_probe(op, a, b, 1.5)


def test_jensen_gap_nonnegative(rng):
    op = ops.sigma_k_operator(4, 3)
    mats, _ = sample_cone_matrices(op, 5, rng)
    assert ops.jensen_gap(op, mats) >= -1e-12


def test_hyperbolic_roots_of_det():
    roots = ops.hyperbolic_roots(lambda lam: np.prod(lam), 3, np.ones(3), np.array([1.0, 1.0, 2.0]))
    assert np.allclose(np.sort(roots.real), [1.0, 1.0, 2.0], atol=1e-8)
    assert np.abs(roots.imag).max() <= 1e-8


def test_hyperbolic_roots_of_ma_k(rng):
    from itertools import combinations

    op = ops.ma_k_operator(4, 2)
    lam = rng.uniform(-1, 3, 4)
    roots = ops.hyperbolic_roots(op.evaluate, int(op.degree), np.ones(4), lam)
    expected = sorted((lam[i] + lam[j]) / 2 for i, j in combinations(range(4), 2))
    assert np.allclose(np.sort(roots.real), expected, atol=1e-8)


def test_non_hyperbolic_control():
    def fhat(lam):
        return lam[0] ** 2 + lam[1] ** 2

    assert not ops.hyperbolicity_check(fhat, 2, np.array([1.0, 0.0]), np.array([0.5, 0.5]))


def test_uniform_ellipticity_bounds(rng):
    op = ops.ma_k_operator(3, 2)
    est = ops.uniform_ellipticity_estimate(op, 5.0, 400, rng)
    assert est.bounded and 0 < est.m <= est.M
    assert est.increment_ratio_min >= 0
    assert op.in_cone(est.witness_min)
    assert ops.in_C_R(op, np.eye(3), 5.0)
    assert not ops.in_C_R(op, 10 * np.eye(3), 5.0)


def test_p_threshold():
    assert ops.p_threshold(3, 2) == 4
    assert ops.p_threshold(1, 5) == 5
    with pytest.raises(ValueError):
        ops.p_threshold(0, 2)


@pytest.mark.parametrize("op", ops.catalog(3), ids=lambda op: op.name)
def test_spot_check(op, rng):
    out = spot_check_operator(op, rng, samples=100)
    assert out["symmetry"] <= 1e-12
    assert out["homogeneity"] <= 1e-10
    assert out["min_value"] > 0


@pytest.mark.parametrize("prop", sorted(PROPERTIES))
def test_every_property_passes_on_small_operators(prop, rng):
    for op in ops.catalog(3, interp_s=(0.5,)):
        cert = certify(op, prop, 200, rng)
        assert cert.passed, cert.to_json()
        assert cert.to_json()["passed"]


def test_certify_rejects_unknown(rng):
    with pytest.raises(ValueError):
        certify(ops.determinant_operator(2), "nonsense", 10, rng)


@given(st.integers(2, 5), st.data())
def test_G_is_degree_one(n, data):
    k = data.draw(st.integers(1, n))
    op = data.draw(st.sampled_from([ops.sigma_k_operator(n, k), ops.ma_k_operator(n, k), ops.determinant_operator(n)]))
    lam = np.array(data.draw(st.lists(st.floats(0.1, 4.0), min_size=n, max_size=n)))
    t = data.draw(st.floats(0.1, 10.0))
    assert op.G(t * lam) == pytest.approx(t * op.G(lam), rel=1e-10)
