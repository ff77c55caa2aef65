import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from modspace.field import add, gaussian, modulate, scale, tensor, translate
from modspace.hausdorff import (HausdorffKernel, KernelParseError, adjoint_kernel, adjoint_pairing_check, apply,
                                boundedness_condition, bump_kernel, domination_check, fourier_commutation_check,
                                fourier_kernel, hardy_kernel, minkowski_bound_check, parse_kernel_file,
                                parse_kernel_text, power_kernel, well_definedness_check, zero_kernel)

INF = np.inf
PAIRS = [(2, 2), (4, 2), (2, 4), (1, INF), (INF, 1)]


def _diag2(y):
    out = np.zeros((len(y), 2, 2))
    out[:, 0, 0] = y[:, 0]
    out[:, 1, 1] = y[:, 0] ** 2
    return out


def _chi_half_one():
    return HausdorffKernel(lambda y: np.ones(len(y)), _diag2, ((0.5, 1.0),), d=2, name="chi")


# -- apply ------------------------------------------------------------------

def test_zero_kernel_gives_zero():
    x = np.linspace(-3, 3, 11)[:, None]
    assert np.all(apply(zero_kernel(), gaussian(1))(x) == 0)


def test_value_at_origin():
    f = modulate(translate(gaussian(1, 1.3), 0.4), 0.7)
    K = power_kernel(0.5, (0.2, 2.0))
    mass = integrate.quad(lambda y: y**0.5, 0.2, 2.0)[0]
    f0 = f(np.zeros((1, 1)))[0]
    assert abs(apply(K, f)(np.zeros((1, 1)))[0] - f0 * mass) < 1e-12


def test_hardy_against_direct_quadrature():
    Hf = apply(hardy_kernel(), gaussian(1))
    xs = np.linspace(-4, 4, 20)
    got = Hf(xs[:, None])
    ref = [integrate.quad(lambda y: np.exp(-np.pi * (y * x) ** 2), 0, 1, epsabs=1e-13)[0] for x in xs]
    assert np.max(np.abs(got - ref)) < 1e-6


def test_apply_refuses_divergent_kernel():
    with pytest.raises(ValueError):
        apply(power_kernel(-1.0), gaussian(1))


def test_apply_dimension_mismatch():
    with pytest.raises(ValueError):
        apply(hardy_kernel(2), gaussian(1))


def test_apply_linear_in_f_and_phi(rng):
    f, g = gaussian(1, 0.8), modulate(gaussian(1, 1.2), 0.5)
    a, b = 0.7 - 0.2j, -1.3
    K1, K2 = power_kernel(0.5, (0.25, 2.0)), power_kernel(-0.5, (0.25, 2.0))
    x = rng.uniform(-3, 3, size=(40, 1))
    lhs = apply(K1, add(scale(f, a), scale(g, b)))(x)
    assert np.max(np.abs(lhs - (a * apply(K1, f)(x) + b * apply(K1, g)(x)))) < 1e-12
    # Phi-linearity on a shared node set
    K12 = power_kernel(0.5, (0.25, 2.0))
    K12 = HausdorffKernel(lambda y: a * y[:, 0] ** 0.5 + b * y[:, 0] ** -0.5, K12.amap, K12.domain, name="mix")
    rhs = a * apply(K1, f)(x) + b * apply(K2, f)(x)
    assert np.max(np.abs(apply(K12, f)(x) - rhs)) < 1e-12


def test_kernel_invariants():
    with pytest.raises(ValueError):
        HausdorffKernel(lambda y: np.ones(len(y)), lambda y: np.zeros((len(y), 1, 1)), ((0.5, 1.0),))
    with pytest.raises(ValueError):
        HausdorffKernel(lambda y: np.ones(len(y)), lambda y: y[:, :, None], ((0.5, 1.0), (0.5, 1.0)))
    K = hardy_kernel()
    assert np.all(K.weights > 0) and K.domain == ((0.0, 1.0),) and K.diagonal
    # dyadic shells stop at 2^-levels, so the mass below that is missing
    assert abs(np.sum(K.weights) - 1) <= 1.01 * 2.0 ** -K.levels


# -- condition integrals ----------------------------------------------------

def test_well_definedness_examples():
    wd = well_definedness_check(hardy_kernel())
    assert wd.finite and abs(wd.value - 1) < 1e-6
    assert not well_definedness_check(power_kernel(-1.0)).finite
    assert well_definedness_check(zero_kernel()).value == 0.0


def test_boundedness_examples():
    c = boundedness_condition(hardy_kernel(), (2, 2))
    assert c.finite and abs(c.value - 2) < 1e-4
    assert boundedness_condition(zero_kernel(), (4, 2)).value == 0.0
    K = HausdorffKernel(lambda y: -1 - y[:, 0] ** 2, lambda y: np.ones((len(y), 1, 1)), ((0.0, 2.0),))
    ref = 2 + 8 / 3
    for e in PAIRS:
        assert boundedness_condition(K, e).value == pytest.approx(np.sum(K.weights * np.abs(K.phi_values)), rel=1e-15)
    assert abs(boundedness_condition(K, (2, 2)).value - ref) < 1e-8


def test_boundedness_power_kernel_closed_form():
    # Gamma_{1,inf}(y) = y^-2 for y < 1 (mu2 = min(-1, -1, -2)), so int_0^1 y^a y^-2 dy = 1/(a-1)
    for a in (1.5, 2.0, 3.0):
        assert abs(boundedness_condition(power_kernel(a), (1, INF)).value - 1 / (a - 1)) < 1e-4
    assert not boundedness_condition(power_kernel(1.0), (1, INF)).finite


@settings(max_examples=60)
@given(st.lists(st.floats(1e-4, 1e4), min_size=1, max_size=4), st.sampled_from(PAIRS + [(1, 1), (3, 1.5)]))
def test_domination_chain(lam, e):
    assert domination_check([lam], e) <= 1e-12


# -- adjoint ----------------------------------------------------------------

def test_hardy_adjoint_is_adjoint_hardy():
    K = hardy_kernel()
    A = adjoint_kernel(K)
    y = K.nodes[:, 0]
    np.testing.assert_allclose(A.phi_values.real, 1 / y, rtol=1e-14)
    np.testing.assert_allclose(A.matrices[:, 0, 0], 1 / y, rtol=1e-14)


def test_adjoint_involution():
    for K in (hardy_kernel(), _chi_half_one(), power_kernel(0.5, (0.25, 3.0), exponents=2.0)):
        KK = adjoint_kernel(adjoint_kernel(K))
        assert np.max(np.abs(KK.phi_values - K.phi_values)) <= 1e-12 * np.max(np.abs(K.phi_values))
        assert np.max(np.abs(KK.matrices - K.matrices)) <= 1e-12 * np.max(np.abs(K.matrices))


def test_adjoint_pairing_hardy():
    f, g = gaussian(1), translate(gaussian(1, 1.2), 0.3)
    assert adjoint_pairing_check(hardy_kernel(), f, g) < 1e-6


def test_adjoint_pairing_2d():
    f = tensor(gaussian(1), gaussian(1, 0.8))
    g = tensor(translate(gaussian(1, 1.1), 0.2), gaussian(1))
    assert adjoint_pairing_check(_chi_half_one(), f, g) < 1e-6


def _verdict_suite():
    return [hardy_kernel(), power_kernel(-1.0), power_kernel(-0.5), power_kernel(-1.5), power_kernel(1.0),
            power_kernel(0.0, (1.0, INF)), power_kernel(-0.5, (1.0, INF)), power_kernel(-2.0, (1.0, INF)),
            _chi_half_one(), power_kernel(-2.0, (0.5, 4.0), exponents=2.0)]


def test_adjoint_preserves_verdict():
    verdicts = []
    for K in _verdict_suite():
        a, b = well_definedness_check(K).finite, well_definedness_check(adjoint_kernel(K)).finite
        assert a == b, K.name
        verdicts.append(a)
    assert any(verdicts) and not all(verdicts)


# -- Fourier commutation ----------------------------------------------------

def test_commutation_empty_set():
    assert fourier_commutation_check(hardy_kernel(), [], gaussian(1)) < 1e-12


def test_commutation_full_hardy():
    assert fourier_commutation_check(hardy_kernel(), None, gaussian(1)) < 1e-5


def test_commutation_partial_diagonal():
    f = tensor(gaussian(1), translate(gaussian(1, 0.9), 0.25))
    assert fourier_commutation_check(_chi_half_one(), [1], f) < 1e-5


def test_fourier_kernel_diagonal_entries():
    K = _chi_half_one()
    KJ = fourier_kernel(K, [1])
    y = K.nodes[:, 0]
    np.testing.assert_allclose(KJ.matrices[:, 0, 0], 1 / y, rtol=1e-15)
    np.testing.assert_allclose(KJ.matrices[:, 1, 1], y**2, rtol=1e-15)
    np.testing.assert_allclose(KJ.phi_values.real, 1 / y, rtol=1e-15)


def test_commutation_rejects_non_diagonal_partial():
    def shear(y):
        out = np.repeat(np.eye(2)[None], len(y), axis=0)
        out[:, 0, 1] = y[:, 0]
        return out
    K = HausdorffKernel(lambda y: np.ones(len(y)), shear, ((0.5, 1.0),), d=2)
    with pytest.raises(ValueError):
        fourier_commutation_check(K, [1], gaussian(2))
    with pytest.raises(ValueError):
        fourier_commutation_check(hardy_kernel(), [1], gaussian(1), mode="bogus")


# -- Minkowski bound --------------------------------------------------------

def test_minkowski_bump_near_identity():
    f = gaussian(1, 1.2)
    r = minkowski_bound_check(bump_kernel(1.0, 0.01), f, (2, 2), spacing=0.25)
    assert abs(r["ratio"] - 1) < 1e-2


# computed once for the Hardy kernel and a Gaussian, then frozen
MINKOWSKI_HARDY_C = 1.5


def test_minkowski_hardy_regression():
    r = minkowski_bound_check(hardy_kernel(), gaussian(1), (2, 2), spacing=0.25)
    assert 0 < r["ratio"] <= MINKOWSKI_HARDY_C


def test_minkowski_zero_and_divergent():
    assert minkowski_bound_check(zero_kernel(), gaussian(1), (2, 2))["numerator"] == 0.0
    with pytest.raises(ValueError):
        minkowski_bound_check(power_kernel(-1.0), gaussian(1), (2, 2))


# -- kernel files -----------------------------------------------------------

def test_parse_hardy_file_matches_builtin():
    K = parse_kernel_text("# Hardy\nd = 1\nphi = hardy\nA = scalar 1\n")
    H = hardy_kernel()
    np.testing.assert_array_equal(K.nodes, H.nodes)
    assert well_definedness_check(K).value == well_definedness_check(H).value


def test_parse_diag_and_table(tmp_path):
    K = parse_kernel_text("d = 2\nphi = const 1\nA = diag 1 2\ndomain = 0.5 1")
    y = K.nodes[:, 0]
    np.testing.assert_allclose(K.matrices[:, 1, 1], y**2)
    (tmp_path / "w.txt").write_text("0.5 1.0\n1.0 3.0\n")
    T = parse_kernel_file(_write(tmp_path / "k.kernel", "phi = table:w.txt\n"))
    assert T.domain == ((0.5, 1.0),)
    np.testing.assert_allclose(T.phi_values.real, 1 + 4 * (T.nodes[:, 0] - 0.5), rtol=1e-12)


def _write(path, text):
    path.write_text(text)
    return path


@pytest.mark.parametrize("text,line", [
    ("phi = hardy\nbogus = 1\n", 2),
    ("phi = hardy\nphi = zero\n", 2),
    ("phi hardy\n", 1),
    ("d = 1\nphi = wiggle\n", 2),
    ("phi = const 1\nA = diag 1 2\n", 2),
    ("phi = const 1\n", 0),
    ("phi = hardy\nA = scalar 1\ndomain = 1\n", 3),
    ("d = x\nphi = hardy\n", 1),
])
def test_parse_errors(text, line):
    with pytest.raises(KernelParseError, match=f"line {line}:"):
        parse_kernel_text(text)


def test_demo_kernel_files():
    from pathlib import Path
    root = Path(__file__).resolve().parent.parent / "demos" / "kernels"
    files = sorted(root.glob("*.kernel"))
    assert files
    for p in files:
        assert isinstance(parse_kernel_file(p), HausdorffKernel)
