import numpy as np
import pytest
from hypothesis import given, strategies as st

from hessian_cones import linalg
from hessian_cones.sampling import random_hermitian, random_unitary


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_jacobi_matches_lapack(n, rng):
    for a in random_hermitian(n, rng, size=20):
        ours = linalg.eigvalsh(a)
        ref = np.linalg.eigvalsh(a)
        assert np.max(np.abs(ours - ref)) <= 1e-12 * (1 + np.abs(ref).max())


def test_eigh_reconstructs(rng):
    a = random_hermitian(6, rng)
    lam, u = linalg.eigh(a)
    assert np.all(np.diff(lam) >= 0)
    assert np.allclose(u.conj().T @ u, np.eye(6), atol=1e-12)
    assert np.allclose((u * lam) @ u.conj().T, a, atol=1e-12)


def test_batch_agrees_with_single(rng):
    stack = random_hermitian(4, rng, size=7)
    batch = linalg.eigvalsh_batch(stack)
    for a, row in zip(stack, batch):
        assert np.allclose(row, linalg.eigvalsh(a), atol=1e-13)


def test_det_lu_against_eigen_product(rng):
    for n in range(1, 7):
        a = random_hermitian(n, rng)
        assert abs(linalg.det(a) - np.prod(np.linalg.eigvalsh(a))) <= 1e-10 * (1 + np.abs(a).max() ** n)


def test_det_sign_from_pivots():
    p = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert linalg.det(p) == pytest.approx(-1.0)
    assert linalg.det(np.diag([2.0, 3.0, -1.0])) == pytest.approx(-6.0)


def test_hermitian_rejects_asymmetric():
    with pytest.raises(linalg.NotHermitianError):
        linalg.hermitian(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        linalg.hermitian(np.ones((2, 3)))


def test_frobenius_inner_real_and_symmetric(rng):
    a, b = random_hermitian(4, rng, size=2)
    assert linalg.frobenius_inner(a, b) == pytest.approx(np.trace(a @ b).real)
    assert linalg.frobenius_inner(a, b) == pytest.approx(linalg.frobenius_inner(b, a))


def test_matrix_cones():
    assert linalg.in_matrix_cone(np.diag([1.0, 2.0]))
    assert not linalg.in_matrix_cone(np.diag([-1.0, 3.0]))
    assert linalg.in_matrix_cone(np.diag([-1.0, 3.0]), "C_1")
    with pytest.raises(ValueError):
        linalg.in_matrix_cone(np.eye(2), "C_2")


def test_json_roundtrip(tmp_path, rng):
    a = random_hermitian(3, rng)
    path = tmp_path / "a.json"
    linalg.save_matrix(path, a)
    assert np.array_equal(linalg.load_matrix(path), a)
    with pytest.raises(ValueError):
        linalg.matrix_from_json({"n": 3, "re": [[1.0]]})


@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_spectrum_unitarily_invariant(n, seed):
    rng = np.random.default_rng(seed)
    a = random_hermitian(n, rng)
    u = random_unitary(n, rng)
    b = u @ a @ u.conj().T
    b = 0.5 * (b + b.conj().T)
    assert np.allclose(linalg.eigvalsh(a), linalg.eigvalsh(b), atol=1e-10 * (1 + np.abs(a).max()))
