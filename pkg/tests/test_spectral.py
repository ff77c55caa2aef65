import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modspace.extremal import make_g1
from modspace.field import dilate, gaussian, modulate, sample, tensor, translate
from modspace.spectral import (box_lp_norms, box_op, build_partition, grid_fourier, normalize_axes,
                               partial_fourier, plateau)

from oracles import fft_transform_2d, quad_complex


def _narrow(a=0.2):
    # spectrum inside [-a, a]
    return dilate(make_g1(1), a)


def test_normalize_axes():
    assert normalize_axes(None, 3) == (0, 1, 2)
    assert normalize_axes([], 3) == ()
    assert normalize_axes([3, 1, 1], 3) == (0, 2)
    with pytest.raises(ValueError):
        normalize_axes([0], 2)
    with pytest.raises(ValueError):
        normalize_axes([3], 2)


def test_partial_fourier_empty_is_identity():
    g = sample(gaussian(2), 4.0, 32)
    assert partial_fourier(g, []) is g
    f = gaussian(2)
    assert partial_fourier(f, ()) is f


def test_full_partial_equals_fft_oracle():
    f = tensor(translate(gaussian(1, 1.3), 0.5), modulate(gaussian(1), 0.25))
    T, N = 8.0, 128
    g = sample(f, T, N)
    _, ref = fft_transform_2d(g.values, T, N)
    ref = np.fft.fftshift(ref)
    out = partial_fourier(g, [1, 2]).values
    assert np.max(np.abs(out - ref)) < 1e-12


def test_axis_order_independence(rng):
    g = sample(tensor(gaussian(1, 1.3), modulate(gaussian(1), 0.7)), 6.0, 64)
    vals = g.values + 0.1 * rng.normal(size=g.values.shape)
    g = type(g)(2, g.extent, g.points_per_axis, vals)
    a = partial_fourier(partial_fourier(g, [1]), [2]).values
    b = partial_fourier(partial_fourier(g, [2]), [1]).values
    assert np.max(np.abs(a - b)) < 1e-12


def test_partial_fourier_model_against_quadrature():
    f = tensor(translate(gaussian(1, 1.3), 0.5), gaussian(1, 0.8))
    Ff = partial_fourier(f, [1])
    for x, y in [(0.3, -0.4), (1.1, 0.2)]:
        ref = quad_complex(lambda t: complex(translate(gaussian(1, 1.3), 0.5)(np.array([[t]]))[0])
                           * np.exp(-2j * np.pi * t * x), -12, 12)
        ref *= float(gaussian(1, 0.8)(np.array([[y]]))[0].real)
        assert abs(Ff(np.array([[x, y]]))[0] - ref) < 1e-10


def test_partial_fourier_model_needs_tensor():
    f = dilate(gaussian(2), np.array([[1.0, 0.5], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        partial_fourier(f, [1])
    with pytest.raises(ValueError):
        partial_fourier(gaussian(2), [3])


def test_parseval_on_grid(rng):
    g = sample(modulate(gaussian(1, 0.7), 1.5), 8.0, 256)
    F = grid_fourier(g)
    a = np.sum(np.abs(g.values) ** 2) * g.cell
    b = np.sum(np.abs(F.values) ** 2) * F.cell
    assert abs(a - b) < 1e-10


@pytest.mark.parametrize("J", [[1], [2], [1, 2]])
def test_partial_involution(J, rng):
    g = sample(tensor(gaussian(1), translate(gaussian(1, 0.6), 1.0)), 6.0, 64)
    back = partial_fourier(partial_fourier(g, J), J, inverse=True)
    assert np.max(np.abs(back.values - g.values)) < 1e-12


def test_grid_fourier_roundtrip_2d():
    g = sample(tensor(gaussian(1, 0.9), modulate(gaussian(1), -0.5)), 6.0, 64)
    back = grid_fourier(grid_fourier(g), inverse=True)
    assert back.extent == g.extent
    assert np.max(np.abs(back.values - g.values)) < 1e-12


def test_plateau_shape():
    t = np.linspace(-1, 1, 401)
    p = plateau(t)
    assert np.all(p[np.abs(t) <= 0.5] == 1)
    assert np.all(p[np.abs(t) >= 0.75] == 0)
    assert np.all((p >= 0) & (p <= 1))


@pytest.mark.parametrize("d,K", [(1, 6), (2, 4), (3, 2)])
def test_partition_of_unity(d, K, rng):
    P = build_partition(d, K)
    xi = rng.uniform(-(K - 1), K - 1, size=(1000, d))
    total = sum(P.sigma(k, xi) for k in P.indices())
    assert np.max(np.abs(total - 1)) < 1e-12


def test_sigma0_flat_near_origin(rng):
    P = build_partition(2, 3)
    xi = rng.uniform(-0.25, 0.25, size=(500, 2))
    assert np.max(np.abs(P.sigma([0, 0], xi) - 1)) < 1e-15


def test_sigma_translation(rng):
    P = build_partition(2, 4)
    xi = rng.uniform(-3, 3, size=(500, 2))
    for k in ([1, 0], [-2, 3], [3, -1]):
        assert np.max(np.abs(P.sigma(k, xi) - P.sigma([0, 0], xi - np.array(k)))) < 1e-12


def test_sigma_support(rng):
    P = build_partition(2, 4)
    k = np.array([1, -2])
    xi = rng.uniform(-4, 4, size=(4000, 2))
    out = np.max(np.abs(xi - k), axis=1) >= 0.75
    assert np.all(P.sigma(k, xi[out]) == 0)


def test_build_partition_errors():
    with pytest.raises(ValueError):
        build_partition(1, 0)
    with pytest.raises(ValueError):
        build_partition(0, 2)


def test_box_op_band_limited():
    g = sample(_narrow(), 128.0, 4096)
    P = build_partition(1, 3)
    assert np.max(np.abs(box_op(g, 0, P).values - g.values)) < 1e-8
    for k in (-3, -2, 2, 3):
        assert np.max(np.abs(box_op(g, k, P).values)) < 1e-8


def test_box_op_matches_direct_filtering():
    g = sample(modulate(gaussian(1, 0.5), 0.6), 32.0, 512)
    P = build_partition(1, 3)
    # direct: centered FFT, multiply by sigma_1, inverse FFT
    n = g.points_per_axis[0]
    s = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    V = np.fft.fft(s * g.values)
    xi = -n / (4 * 32.0) + np.arange(n) / 64.0
    ref = s * np.fft.ifft(V * P.sigma_axis(1, xi))
    assert np.max(np.abs(box_op(g, 1, P).values - ref)) < 1e-12


def test_box_pieces_telescope():
    g = sample(modulate(gaussian(1, 0.8), 0.9), 32.0, 1024)
    P = build_partition(1, 6)
    total = sum(box_op(g, k, P).values for k in range(-5, 6))
    assert np.max(np.abs(total - g.values)) < 1e-8


def test_box_pieces_telescope_2d():
    f = tensor(modulate(gaussian(1, 0.8), 0.9), modulate(gaussian(1, 1.2), -1.3))
    g = sample(f, 16.0, 512)
    P = build_partition(2, 5)
    total = np.zeros_like(g.values)
    for k in P.indices():
        if np.max(np.abs(k)) <= 4:
            total = total + box_op(g, k, P).values
    assert np.max(np.abs(total - g.values)) < 1e-8


@given(st.integers(-3, 3), st.sampled_from([4.0, 6.0, 8.0]))
def test_box_op_picks_translated_modulated_piece(k, L):
    h = _narrow()
    f = translate(modulate(h, float(k)), L * k)
    g = sample(f, 128.0, 4096)
    P = build_partition(1, 4)
    assert np.max(np.abs(box_op(g, k, P).values - g.values)) < 1e-8


def test_box_op_errors():
    g = sample(gaussian(1), 4.0, 64)          # Nyquist 4
    P = build_partition(1, 5)
    with pytest.raises(ValueError):
        box_op(g, 6, P)
    with pytest.raises(ValueError):
        box_op(g, 3, P)
    with pytest.raises(ValueError):
        box_op(g, [0, 0], P)


def test_box_lp_norms_match_box_op():
    g = sample(modulate(gaussian(1, 0.8), 0.9), 32.0, 1024)
    P = build_partition(1, 6)
    ks, norms, leak = box_lp_norms(g, P, [1.0, 2.0, np.inf], oversample=16)
    assert leak < 1e-20
    for j, k in enumerate(ks[:, 0]):
        v = np.abs(box_op(g, int(k), P).values)
        ref = [np.sum(v) * g.cell, np.sqrt(np.sum(v**2) * g.cell), v.max()]
        np.testing.assert_allclose(norms[:, j], ref, rtol=1e-3, atol=1e-12)
