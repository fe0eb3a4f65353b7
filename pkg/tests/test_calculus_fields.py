import numpy as np
import pytest

from hessian_cones import calculus
from hessian_cones.fields import FIELD_NAMES, field_catalog, get_field


def test_real_complex_roundtrip(rng):
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    x = calculus.to_real(z)
    assert x.shape == (8,)
    assert np.array_equal(calculus.to_complex(x), z)


def test_real_hessian_of_quadratic_form(rng):
    q = rng.normal(size=(4, 4))
    q = q + q.T
    f = lambda z: np.einsum("...i,ij,...j->...", calculus.to_real(z), q, calculus.to_real(z)) / 2
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    assert np.allclose(calculus.fd_real_hessian(f, z), q, atol=1e-6)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_routes_agree_on_catalog(n, rng):
    for name, field in field_catalog(n).items():
        if field.hessian is None:
            continue
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        if name == "pogorelov":
            z[1:] += 0.5
        if name == "log_distance":
            z = 0.3 * z - 0.5
        exact = field.hessian(z)
        scale = 1 + np.abs(exact).max()
        assert np.abs(calculus.fd_hessian(field, z) - exact).max() <= 1e-5 * scale, name
        assert np.abs(calculus.levi_hessian(field, z) - exact).max() <= 1e-5 * scale, name


def test_levi_form_is_laplacian_on_line(rng):
    field = get_field("quartic", 2)
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    # entry (i, j) is u_{z_i zbar_j}, so L(v) = sum u_{i jbar} v_i conj(v_j)
    exact = (v @ field.hessian(z) @ v.conj()).real
    assert calculus.levi_form(field, z, v) == pytest.approx(exact, rel=1e-6)


def test_richardson_improves(rng):
    field = get_field("pogorelov", 2)
    z = np.array([0.4 + 0.1j, 0.6 - 0.3j])
    exact = field.hessian(z)
    plain = np.abs(calculus.fd_hessian(field, z, h=1e-3) - exact).max()
    extra = np.abs(calculus.fd_hessian(field, z, h=1e-3, richardson=True) - exact).max()
    assert extra < plain


def test_field_registry():
    assert set(FIELD_NAMES) >= {"quad", "quartic", "pluriharmonic", "pogorelov"}
    with pytest.raises(KeyError):
        get_field("nope", 2)
    with pytest.raises(ValueError):
        get_field("pogorelov", 1)
    with pytest.raises(ValueError):
        get_field("log_distance", 2)
    assert "log_distance" in field_catalog(1) and "log_distance" not in field_catalog(2)
    assert "pogorelov" not in field_catalog(1)


def test_field_metadata():
    f = get_field("max_pluriharmonic", 2)
    assert not f.smooth
    with pytest.raises(ValueError):
        f.laplacian(np.zeros(2))
    assert get_field("quad", 3).laplacian(np.zeros(3)) == pytest.approx(3.0)
    assert get_field("pluriharmonic", 2).pluriharmonic


def test_fields_are_batched(rng):
    z = rng.normal(size=(5, 3)) + 1j * rng.normal(size=(5, 3))
    for field in field_catalog(3).values():
        vals = field(z)
        assert vals.shape == (5,)
        assert np.allclose(vals, [field(w[None])[0] for w in z])
