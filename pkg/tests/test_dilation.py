import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import ortho_group

from modspace.dilation import (DilationSpec, branches, classify_region, empirical_ratio, empirical_ratios,
                               gamma, jacobi_svd, mu1, mu2, predicted_bound, singular_values)
from modspace.extremal import make_FlamL, make_g1, make_g2
from modspace.field import gaussian, modulate, tensor, translate
from modspace.norms import ExponentPair, modulation_norms

from oracles import slope

INF = np.inf
PAIRS = [(2, 2), (4, 2), (2, 4), (1, INF), (INF, 1)]
GRID21 = [(i / 20, j / 20) for i in range(21) for j in range(21)]
LAMS = [2.0**k for k in range(-6, 7)]


def _piecewise(ip, iq, tol=1e-12):
    """Region membership written out from the defining inequalities (with tie slack)."""
    A = [iq <= min(1 - ip, ip) + tol, ip >= max(1 - iq, 0.5) - tol, ip <= min(iq, 0.5) + tol]
    B = [iq >= max(1 - ip, ip) - tol, ip <= min(1 - iq, 0.5) + tol, ip >= max(iq, 0.5) - tol]
    vals = [-ip, iq - 1, -2 * ip + iq]
    return A, B, vals


# -- exponent calculus ------------------------------------------------------

def test_mu_examples():
    assert mu1((2, 2)) == mu2((2, 2)) == -0.5
    assert mu1((4, 2)) == 0.0
    assert mu2((4, 2)) == -0.5
    np.testing.assert_array_equal(branches((2, INF)), [-0.5, -1.0, -1.0])


def test_region_examples():
    r = classify_region(ExponentPair.from_inverse(0.5, 0.25))
    assert r.mu1_region == "A1" and not r.mu1_boundary
    assert mu1(ExponentPair.from_inverse(0.5, 0.25)) == -0.5
    r = classify_region(ExponentPair.from_inverse(0.25, 0.5))
    assert r.mu2_region == "B2" and mu2(ExponentPair.from_inverse(0.25, 0.5)) == -0.5
    r = classify_region((2, 2))
    assert set(r.mu1_ties) == {"A1", "A2", "A3"} and r.boundary


@pytest.mark.parametrize("ip,iq", GRID21)
def test_regions_agree_with_piecewise(ip, iq):
    e = ExponentPair.from_inverse(ip, iq)
    A, B, vals = _piecewise(ip, iq)
    r = classify_region(e)
    if not r.mu1_boundary:
        assert [f"A{i + 1}" for i in range(3) if A[i]] == [r.mu1_region]
    for lab in r.mu1_ties:
        assert A[int(lab[1]) - 1]
        assert abs(vals[int(lab[1]) - 1] - mu1(e)) < 1e-12
    if not r.mu2_boundary:
        assert [f"B{i + 1}" for i in range(3) if B[i]] == [r.mu2_region]
    for lab in r.mu2_ties:
        assert B[int(lab[1]) - 1]
        assert abs(vals[int(lab[1]) - 1] - mu2(e)) < 1e-12


def test_gamma_examples():
    for e in PAIRS:
        assert gamma(e, 1.0) == 1.0
    for lam in LAMS:
        ref = 1.0 if lam >= 1 else 1 / lam
        assert gamma((1, 1), lam) == pytest.approx(ref, rel=1e-15)
    assert gamma((2, 2), 4.0) == 0.5
    with pytest.raises(ValueError):
        gamma((2, 2), 0.0)


def test_gamma_piecewise_grid():
    worst = 0.0
    for ip, iq in GRID21:
        e = ExponentPair.from_inverse(ip, iq)
        for lam in LAMS:
            ref = lam ** mu1(e) if lam >= 1 else lam ** mu2(e)
            worst = max(worst, abs(gamma(e, lam) / ref - 1))
    assert worst < 1e-12


def test_gamma_vectorized():
    lam = np.array(LAMS)
    np.testing.assert_array_equal(gamma((4, 2), lam), [gamma((4, 2), v) for v in LAMS])


# -- SVD --------------------------------------------------------------------

def _check_svd(A, spec):
    P, lam, Q = spec.P, spec.lam, spec.Q
    assert np.max(np.abs((P * lam) @ Q - A)) < 1e-10 * np.max(np.abs(A))
    for M in (P, Q):
        assert np.max(np.abs(M @ M.T - np.eye(len(lam)))) < 1e-10
    assert np.all(lam > 0) and np.all(np.diff(lam) <= 0)
    assert abs(np.prod(lam) / abs(np.linalg.det(A)) - 1) < 1e-8


def test_svd_examples():
    s = singular_values(np.eye(3))
    np.testing.assert_array_equal(s.lam, [1, 1, 1])
    np.testing.assert_allclose(singular_values(np.diag([2, 1 / 3])).lam, [2, 1 / 3], rtol=1e-15)
    np.testing.assert_allclose(singular_values([[0, 2], [1, 0]]).lam, [2, 1], rtol=1e-15)


@settings(max_examples=40)
@given(st.integers(1, 8), st.integers(0, 2**31 - 1))
def test_svd_invariants_vs_numpy(d, seed):
    r = np.random.default_rng(seed)
    A = r.normal(size=(d, d)) + 0.5 * np.eye(d)
    if abs(np.linalg.det(A)) < 1e-6:
        return
    spec = singular_values(A)
    _check_svd(A, spec)
    np.testing.assert_allclose(spec.lam, np.linalg.svd(A, compute_uv=False), rtol=1e-10)


def test_jacobi_ill_conditioned():
    A = np.diag([1e4, 1.0, 1e-4]) @ ortho_group.rvs(3, random_state=3)
    P, s, Q = jacobi_svd(A)
    np.testing.assert_allclose(s, [1e4, 1.0, 1e-4], rtol=1e-9)


def test_svd_errors():
    with pytest.raises(ValueError):
        singular_values([[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(ValueError):
        singular_values(np.eye(9))
    with pytest.raises(ValueError):
        singular_values(np.ones((2, 3)))
    with pytest.raises(ValueError):
        DilationSpec.diagonal([1.0, -1.0])


def test_from_factors_keeps_lambda():
    P, Q = ortho_group.rvs(2, random_state=1), ortho_group.rvs(2, random_state=2)
    spec = DilationSpec.from_factors(P, [0.25, 4.0], Q)
    assert list(spec.lam) == [4.0, 0.25]
    _check_svd(spec.matrix, spec)
    with pytest.raises(ValueError):
        DilationSpec.from_factors(np.ones((2, 2)), [1.0, 1.0], Q)


# -- predicted bound --------------------------------------------------------

def test_predicted_bound_examples(rng):
    for e in PAIRS:
        assert predicted_bound(np.eye(2), e) == 1.0
    for _ in range(10):
        A = rng.normal(size=(3, 3))
        assert predicted_bound(A, (2, 2)) == pytest.approx(abs(np.linalg.det(A)) ** -0.5, rel=1e-10)
    assert predicted_bound(np.diag([2.0, 0.5]), (1, 1)) == 2.0


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4), st.sampled_from(PAIRS), st.integers(0, 1000))
def test_predicted_bound_svd_invariance(ks, e, seed):
    lam = [2.0**k for k in ks]
    d = len(lam)
    P = ortho_group.rvs(d, random_state=seed) if d > 1 else np.eye(1)
    Q = ortho_group.rvs(d, random_state=seed + 1) if d > 1 else np.eye(1)
    assert predicted_bound(DilationSpec.from_factors(P, lam, Q), e) == predicted_bound(np.diag(lam), e)


@given(st.lists(st.floats(1 / 64, 64), min_size=1, max_size=4), st.sampled_from(PAIRS))
def test_bound_split_into_expanding_and_shrinking(lam, e):
    lam = np.array(lam)
    big, small = np.maximum(lam, 1), np.minimum(lam, 1)
    lhs = np.prod(gamma(e, big)) * np.prod(gamma(e, small))
    assert lhs == pytest.approx(np.prod(gamma(e, lam)), rel=1e-14)


# -- empirical ratios -------------------------------------------------------

def test_empirical_ratio_identity():
    f = modulate(gaussian(1, 1.2), 0.3)
    for e in PAIRS:
        assert empirical_ratio(1.0, f, e) == 1.0


def test_empirical_ratio_rotation():
    th = 0.4
    P = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    f = tensor(translate(gaussian(1, 1.3), 0.4), gaussian(1, 0.8))
    for r in empirical_ratios(P, f, [(2, 2), (1, 2)], spacing=0.25, reduce=False):
        assert abs(r - 1) < 1e-3


def test_empirical_ratio_reduction_matches_full():
    A = np.array([[1.2, 0.5], [-0.3, 0.9]])
    f = tensor(gaussian(1, 1.1), translate(gaussian(1, 0.9), 0.3))
    a = empirical_ratios(A, f, [(2, 1), (4, 2)], spacing=0.25, reduce=True)
    b = empirical_ratios(A, f, [(2, 1), (4, 2)], spacing=0.25, reduce=False)
    np.testing.assert_allclose(a, b, rtol=1e-3)


def test_empirical_ratio_g1_slope():
    g1 = make_g1(1)
    lams = [2.0**-k for k in range(0, 7)]
    for p in (2.0, 4.0, 1.0):
        r = [empirical_ratio(l, g1, (p, 2)) for l in lams]
        assert abs(slope(lams, r) + 1 / p) < 0.05


def test_empirical_ratio_reference_and_guard():
    f = gaussian(1)
    ref = modulation_norms(f, PAIRS)
    a = empirical_ratios(0.5, f, PAIRS)
    b = empirical_ratios(0.5, f, PAIRS, reference=ref)
    assert a == b
    with pytest.raises(ValueError):
        empirical_ratios(0.5, f, PAIRS, reference=ref[:2])
    with pytest.raises(ZeroDivisionError):
        empirical_ratios(0.5, f, PAIRS, reference=[0.0] * 5)


# largest ratio / predicted bound over the corpus below, fitted once and frozen
REGRESSION_C = 1.0


def test_upper_bound_regression_corpus():
    corpus = [gaussian(1), gaussian(1, 0.5), gaussian(1, 2.0), modulate(gaussian(1), 1.5),
              translate(gaussian(1, 0.8), 2.0), make_g1(1), make_g2(1), modulate(make_g1(1), -2.0),
              translate(make_g2(1), 1.0), make_FlamL(0.25, 16)]
    lams = np.geomspace(1 / 16, 16, 15)
    worst = 0.0
    for f in corpus:
        ref = modulation_norms(f, PAIRS, spacing=0.25)
        for lam in lams:
            r = empirical_ratios(lam, f, PAIRS, spacing=0.25, reference=ref)
            worst = max(worst, max(v / predicted_bound(lam, e) for v, e in zip(r, PAIRS)))
    assert worst <= 1.1 * REGRESSION_C
