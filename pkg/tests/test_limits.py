import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import stieltjeskit as sk

from genutil import psd, random_pair, random_s0, random_t0, random_tpair

I2 = np.eye(2)


def delta_pair(alpha, gamma, t, W):
    return sk.StieltjesPair(alpha, gamma, sk.MatrixMeasure(gamma.shape[0], sk.right_ray(alpha), [(t, W)]))


def test_constant_function_converges_at_depth_one():
    gamma = psd(np.random.default_rng(0), 2)
    p = sk.StieltjesPair(0.0, gamma, sk.MatrixMeasure(2, sk.right_ray(0.0), []))
    est = sk.limit_at_infinity(sk.evaluator(p), "plain_iy")
    assert est.ladder_depth == 1
    np.testing.assert_array_equal(est.value, gamma)
    assert est.error_bound == 0.0


def test_one_atom_pair_plain_limit_recovers_constant():
    rng = np.random.default_rng(1)
    A, B = psd(rng, 2), psd(rng, 2)
    p = delta_pair(0.0, A, 0.0, B)
    est = sk.limit_at_infinity(sk.evaluator(p), "plain_iy")
    np.testing.assert_allclose(est.value, A, atol=1e-8)


def test_resolvent_y_scaled_limit_recovers_mass():
    B = psd(np.random.default_rng(2), 2)
    s = sk.S0Measure(0.5, sk.MatrixMeasure(2, sk.right_ray(0.5), [(0.5, B)]))
    est = sk.limit_at_infinity(sk.evaluator(s), "y_scaled")
    np.testing.assert_allclose(est.value, B, atol=1e-8)


def test_radial_limit_matches_vertical():
    rng = np.random.default_rng(3)
    p = random_pair(rng, q=2, alpha=-0.5)
    F = sk.evaluator(p)
    v = sk.limit_at_infinity(F, "plain_iy")
    r = sk.limit_at_infinity(F, "radial", alpha=p.alpha)
    gap = np.linalg.norm(v.value - r.value)
    assert gap <= 2 * (v.error_bound + r.error_bound) + 1e-9


def test_ladder_start_invariance():
    rng = np.random.default_rng(4)
    p = random_pair(rng, q=3)
    F = sk.evaluator(p)
    e1 = sk.limit_at_infinity(F, "plain_iy", y0=1.0)
    e2 = sk.limit_at_infinity(F, "plain_iy", y0=2.0)
    assert np.linalg.norm(e1.value - e2.value) <= 2 * (e1.error_bound + e2.error_bound) + 1e-12


def test_radial_phi_validated():
    p = random_pair(np.random.default_rng(5))
    with pytest.raises(ValueError):
        sk.limit_at_infinity(sk.evaluator(p), "radial", phi=0.1)


def test_no_convergence_for_growing_function():
    F = sk.Evaluator(1, None, lambda z: np.sqrt(abs(z)) * np.eye(1))
    with pytest.raises(sk.NoConvergence) as exc:
        sk.limit_at_infinity(F, "plain_iy", k_max=20)
    assert exc.value.last_estimates is not None


def test_neg_modes_on_left_ray_pair():
    rng = np.random.default_rng(6)
    t = random_tpair(rng, q=2)
    est = sk.limit_at_infinity(sk.evaluator(t), "neg_plain")
    np.testing.assert_allclose(est.value, t.gamma, atol=1e-7)
    t0 = random_t0(rng, q=2)
    est = sk.limit_at_infinity(sk.evaluator(t0), "neg_y_scaled")
    np.testing.assert_allclose(est.value, sk.total_mass(t0.sigma), atol=1e-7)


# --- extract_params ---


def test_extract_constant_class_s():
    gamma = psd(np.random.default_rng(7), 2)
    p = sk.StieltjesPair(0.0, gamma, sk.MatrixMeasure(2, sk.right_ray(0.0), []))
    rec = sk.extract_params(sk.evaluator(p), 0.0, "s")
    np.testing.assert_allclose(rec["gamma"].value, gamma, atol=1e-8)


def test_extract_mass_class_s0():
    B = psd(np.random.default_rng(8), 2)
    p = delta_pair(0.0, np.zeros((2, 2)), 0.0, B)
    rec = sk.extract_params(sk.evaluator(p), 0.0, "s0")
    np.testing.assert_allclose(rec["mass"].value, B, atol=1e-8)


def test_extract_rank_deficient_constant():
    p = delta_pair(0.0, np.diag([1.0, 0.0]), 1.0, I2)
    rec = sk.extract_params(sk.evaluator(p), 0.0, "s")
    np.testing.assert_allclose(rec["gamma"].value, np.diag([1.0, 0.0]), atol=1e-8)


def test_class_mismatch_raised():
    gamma = np.diag([1.0, 2.0])
    p = sk.StieltjesPair(0.0, gamma, sk.MatrixMeasure(2, sk.right_ray(0.0), []))
    with pytest.raises(sk.ClassMismatch):
        sk.extract_params(sk.evaluator(p), 0.0, "sdot")
    with pytest.raises(sk.ClassMismatch):
        sk.extract_params(sk.evaluator(p), 0.0, "s0")


@given(seed=st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_plain_limit_matches_stored_gamma(seed):
    rng = np.random.default_rng(seed)
    p = random_pair(rng)
    est = sk.limit_at_infinity(sk.evaluator(p), "plain_iy")
    assert np.linalg.norm(est.value - p.gamma) <= 1e-7 * (1 + np.linalg.norm(p.gamma))


@given(seed=st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_scaled_limit_matches_total_mass(seed):
    rng = np.random.default_rng(seed)
    s = random_s0(rng)
    est = sk.limit_at_infinity(sk.evaluator(s), "y_scaled")
    mass = sk.total_mass(s.sigma)
    assert np.linalg.norm(est.value - mass) <= 1e-7 * (1 + np.linalg.norm(mass))
