from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hessian_cones import build_compound, compound_spectrum_residual, mak_via_determinant
from hessian_cones.compound import in_C_k_prime, mak_via_spectrum
from hessian_cones.polynomials import ma_k
from hessian_cones.sampling import random_hermitian


def exterior_power(m, k):
    n = len(m)
    basis = list(combinations(range(n), k))
    return np.array([[np.linalg.det(m[np.ix_(i, j)]) for j in basis] for i in basis])


def derivation_oracle(a, k, t=1e-5):
    # D_A = d/dt Λ^k(I + tA) at t = 0; central difference, error O(t^2)
    eye = np.eye(len(a))
    return (exterior_power(eye + t * a, k) - exterior_power(eye - t * a, k)) / (2 * t)


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (4, 3), (5, 3), (5, 4)])
def test_against_exterior_power_derivative(n, k, rng):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    assert np.allclose(build_compound(a, k), derivation_oracle(a, k), atol=1e-8)


def test_edge_cases(rng):
    a = random_hermitian(4, rng)
    assert np.array_equal(build_compound(a, 1), a)
    assert build_compound(a, 4) == pytest.approx(np.trace(a))
    with pytest.raises(ValueError):
        build_compound(a, 0)
    with pytest.raises(ValueError):
        build_compound(np.ones((2, 3)), 1)


def test_hermitian_preserved(rng):
    a = random_hermitian(5, rng)
    d = build_compound(a, 3)
    assert d.shape == (comb(5, 3),) * 2
    assert np.allclose(d, d.conj().T)


def test_spectrum_and_determinant(rng):
    for n in range(2, 7):
        a = random_hermitian(n, rng)
        for k in range(1, n + 1):
            assert compound_spectrum_residual(a, k) <= 1e-10 * (1 + np.abs(a).max())
            ref = ma_k(np.linalg.eigvalsh(a), k)
            assert mak_via_determinant(a, k) == pytest.approx(ref, rel=1e-8, abs=1e-10)
            assert mak_via_spectrum(a, k) == pytest.approx(ref, rel=1e-8, abs=1e-10)


def test_c_k_prime_membership():
    a = np.diag([3.0, 1.0, -1.0])
    assert in_C_k_prime(a, 3)
    assert not in_C_k_prime(a, 2)


@given(st.integers(2, 5), st.data())
def test_linear_in_a(n, data):
    seed = data.draw(st.integers(0, 2**32 - 1))
    k = data.draw(st.integers(1, n))
    s, t = data.draw(st.floats(-2, 2)), data.draw(st.floats(-2, 2))
    rng = np.random.default_rng(seed)
    a, b = random_hermitian(n, rng, size=2)
    lhs = build_compound(s * a + t * b, k)
    rhs = s * build_compound(a, k) + t * build_compound(b, k)
    assert np.allclose(lhs, rhs, atol=1e-12)


@given(st.integers(2, 5), st.data())
def test_commutator_is_lie_homomorphism(n, data):
    # D_{[A,B]} = [D_A, D_B] for a derivation
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    k = data.draw(st.integers(1, n))
    a = rng.normal(size=(n, n))
    b = rng.normal(size=(n, n))
    da, db = build_compound(a, k), build_compound(b, k)
    assert np.allclose(build_compound(a @ b - b @ a, k), da @ db - db @ da, atol=1e-10)
