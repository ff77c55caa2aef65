import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modspace.field import constant, dilate, gaussian, gaussian_window, modulate, tensor, translate
from modspace.tf import (TFCoefficients, TFGrid, check_fundamental_identity,
                         check_partial_fundamental_identity, stft, stft_dilation_identity_check, stft_points)

from oracles import gauss_stft_modulus, quad_complex, stft_quad

G1 = TFGrid.centered(1, 4.0, 0.125)


def _scalar(model):
    return lambda t: complex(model(np.array([[t]]))[0])


def test_grid_invariants():
    g = TFGrid.centered(2, 4.0, 0.25)
    assert g.shape == (32, 32, 32, 32)
    assert g.x_step == (0.25, 0.25) and g.cell_xi == 0.0625
    with pytest.raises(ValueError):
        TFGrid(1, 1.0, 1.0, 12, 16)
    with pytest.raises(ValueError):
        TFGrid(1, -1.0, 1.0, 16, 16)


def test_grid_default_lattice():
    g = TFGrid.default(1)
    assert g.x_extent == (16.0,) and g.x_step == (0.125,)
    ax = g.x_axes()[0]
    assert ax[0] == -16.0 and ax[128] == 0.0


def test_coefficients_shape_checked():
    with pytest.raises(ValueError):
        TFCoefficients(G1, np.zeros((64, 32)))
    with pytest.raises(ValueError):
        TFCoefficients(G1, np.full((64, 64), np.nan))


def test_stft_origin_is_inner_product():
    f = modulate(translate(gaussian(1, 1.3), 0.4), 0.3)
    g = gaussian_window(1)
    V = stft(f, g, G1).values
    ref = quad_complex(lambda t: _scalar(f)(t) * np.conj(_scalar(g)(t)), -12, 12)
    assert abs(V[32, 32] - ref) < 1e-8


def test_gaussian_pair_modulus():
    phi = gaussian(1)
    V = stft(phi, phi, G1).values
    x, = G1.x_axes()
    xi, = G1.xi_axes()
    ref = gauss_stft_modulus(x[:, None], xi[None, :])
    assert np.max(np.abs(np.abs(V) - ref)) < 1e-6


def test_stft_against_quadrature_oracle():
    f = translate(modulate(gaussian(1, 0.8), -0.6), 0.3)
    g = gaussian_window(1)
    V = stft(f, g, G1).values
    x, = G1.x_axes()
    xi, = G1.xi_axes()
    for i, j in [(32, 32), (20, 40), (45, 10), (33, 27)]:
        ref = stft_quad(_scalar(f), _scalar(g), x[i], xi[j])
        assert abs(V[i, j] - ref) < 1e-9


def test_stft_points_matches_lattice(rng):
    f = tensor(translate(gaussian(1, 1.2), 0.5), modulate(gaussian(1, 0.9), 0.4))
    g = gaussian_window(2)
    grid = TFGrid.centered(2, 4.0, 0.25)
    V = stft(f, g, grid).values
    ax = grid.x_axes()[0]
    for _ in range(5):
        i = rng.integers(4, 28, size=4)
        x = np.array([ax[i[0]], ax[i[1]]])
        xi = np.array([ax[i[2]], ax[i[3]]])
        assert abs(stft_points(f, g, x, xi)[0] - V[i[0], i[1], i[2], i[3]]) < 1e-9


def test_fundamental_identity_1d():
    f = translate(modulate(gaussian(1, 1.2), 0.5), -0.3)
    assert check_fundamental_identity(f, gaussian_window(1), G1).max_error < 1e-6


def test_partial_identity_empty_set():
    f = tensor(gaussian(1, 1.2), gaussian(1, 0.7))
    grid = TFGrid.centered(2, 2.0, 0.25)
    assert check_partial_fundamental_identity(f, gaussian_window(2), [], grid).max_error < 1e-12


@pytest.mark.parametrize("J", [[1], [2], [1, 2]])
def test_partial_identity_2d(J):
    f = tensor(translate(gaussian(1, 1.2), 0.25), modulate(gaussian(1, 0.8), -0.5))
    grid = TFGrid.centered(2, 4.0, 0.25)
    assert check_partial_fundamental_identity(f, gaussian_window(2), J, grid).max_error < 1e-6


def test_partial_identity_detects_corruption():
    f = tensor(gaussian(1, 1.2), gaussian(1, 0.7))
    grid = TFGrid.centered(2, 2.0, 0.25)
    rep = check_partial_fundamental_identity(f, gaussian_window(2), [1], grid, perturb=np.exp(0.01j))
    assert rep.max_error > 1e-3


def test_dilation_identity_examples():
    phi = gaussian(1)
    f = translate(gaussian(1, 1.1), 0.2)
    assert stft_dilation_identity_check(f, phi, 1.0, G1).max_error < 1e-12
    assert stft_dilation_identity_check(f, phi, 2.0, G1).max_error < 1e-6
    f2 = tensor(gaussian(1, 1.1), translate(gaussian(1), 0.3))
    grid = TFGrid.centered(2, 4.0, 0.25)
    rep = stft_dilation_identity_check(f2, gaussian(2), np.diag([2.0, 0.5]), grid)
    assert rep.max_error < 1e-5


def test_dilation_identity_rejects_non_diagonal():
    with pytest.raises(ValueError):
        stft_dilation_identity_check(gaussian(2), gaussian(2), np.array([[1.0, 1.0], [0.0, 1.0]]),
                                     TFGrid.centered(2, 2.0, 0.25))
    with pytest.raises(ValueError):
        stft_dilation_identity_check(gaussian(1), gaussian(1), -1.0, G1)


@settings(max_examples=10)
@given(st.integers(-8, 8), st.integers(-8, 8))
def test_covariance_modulus(iu, ie):
    u, eta = 0.125 * iu, 0.125 * ie
    f = modulate(gaussian(1, 0.9), 0.3)
    g = gaussian_window(1)
    a = stft(translate(modulate(f, eta), u), g, G1).values
    shifted = TFGrid(1, 4.0, 4.0, 64, 64, -u, -eta)
    b = stft(f, g, shifted).values
    assert np.max(np.abs(np.abs(a) - np.abs(b))) < 1e-8


def test_rotation_covariance(rng):
    th = np.pi / 6
    P = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    f = tensor(translate(gaussian(1, 1.3), 0.5), gaussian(1, 0.7))
    phi = gaussian_window(2)
    grid = TFGrid.centered(2, 4.0, 0.25)
    V = stft(dilate(f, P), phi, grid).values
    ax = grid.x_axes()[0]
    for _ in range(8):
        i = rng.integers(8, 24, size=4)
        x = np.array([ax[i[0]], ax[i[1]]])
        xi = np.array([ax[i[2]], ax[i[3]]])
        ref = stft_points(f, phi, P @ x, P @ xi)[0]
        assert abs(V[tuple(i)] - ref) < 1e-6


def test_conjugate_symmetry():
    f = translate(gaussian(1, 1.4), 0.7)
    V = stft(f, gaussian_window(1), G1).values[:, 1:]
    assert np.max(np.abs(V[:, ::-1] - np.conj(V))) < 1e-10


def test_unknown_band_rejected():
    with pytest.raises(ValueError):
        stft(constant(1), gaussian_window(1), G1)
    with pytest.raises(ValueError):
        stft(gaussian(2), gaussian_window(1), G1)


def test_lattice_size_cap():
    huge = TFGrid.centered(2, 64.0, 1 / 16)
    with pytest.raises(MemoryError):
        stft(gaussian(2), gaussian_window(2), huge)
