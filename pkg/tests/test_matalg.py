"""Weighted conjugation, pseudo-inverses, induced norms, and decay bookkeeping."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framelift import matalg
from framelift.fock import fock_gram_exact
from framelift.weights import IndexSet, Weight


def cmat(rng, n, m=None):
    m = n if m is None else m
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


class TestConjugate:
    def test_entrywise_formula(self):
        A = np.arange(4.0).reshape(2, 2) + 1.0
        mu = np.array([2.0, 3.0])
        got = matalg.conjugate(A, mu)
        want = np.diag(mu) @ A @ np.diag(1.0 / mu)
        np.testing.assert_allclose(got, want)

    def test_trivial_weight_is_identity(self, rng):
        A = cmat(rng, 5)
        np.testing.assert_allclose(matalg.conjugate(A, np.ones(5)), A)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=2, max_value=8), st.integers(min_value=0, max_value=2**32 - 1))
    def test_homomorphism_property(self, n, seed):
        """Conjugation respects products: (AB)^mu = A^mu B^mu."""
        r = np.random.default_rng(seed)
        A = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
        B = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
        mu = np.exp(r.uniform(-1, 1, n))
        lhs = matalg.conjugate(A @ B, mu)
        rhs = matalg.conjugate(A, mu) @ matalg.conjugate(B, mu)
        np.testing.assert_allclose(lhs, rhs, atol=1e-10)

    def test_adjoint_interchanges_weight_and_reciprocal(self, rng):
        A = cmat(rng, 6)
        mu = np.exp(rng.uniform(-1, 1, 6))
        lhs = matalg.conjugate(A, 1.0 / mu)
        rhs = matalg.conjugate(A.conj().T, mu).conj().T
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)


class TestPseudoInverse:
    def test_penrose_conditions(self, rng):
        A = cmat(rng, 6, 4)
        P = matalg.pseudo_inverse(A)
        np.testing.assert_allclose(A @ P @ A, A, atol=1e-10)
        np.testing.assert_allclose(P @ A @ P, P, atol=1e-10)
        np.testing.assert_allclose((A @ P).conj().T, A @ P, atol=1e-10)
        np.testing.assert_allclose((P @ A).conj().T, P @ A, atol=1e-10)

    def test_plain_pinv_does_not_commute_with_conjugation(self):
        """The unweighted pseudo-inverse is the wrong object on weighted spaces."""
        A = np.array([[1.0, 1.0], [1.0, 1.0]]) / 2.0  # rank-1 projection
        mu = np.array([2.0, 1.0])
        pinv_of_conj = matalg.pseudo_inverse(matalg.conjugate(A, mu))
        conj_of_pinv = matalg.conjugate(matalg.pseudo_inverse(A), mu)
        assert np.abs(pinv_of_conj - conj_of_pinv).max() > 0.1

    def test_plain_pinv_commutes_for_invertible_matrices(self, rng):
        A = cmat(rng, 5) + 5.0 * np.eye(5)
        mu = np.exp(rng.uniform(-1, 1, 5))
        lhs = matalg.pseudo_inverse(matalg.conjugate(A, mu))
        rhs = matalg.conjugate(matalg.pseudo_inverse(A), mu)
        np.testing.assert_allclose(lhs, rhs, atol=1e-8)

    def test_weighted_pinv_satisfies_weighted_penrose(self, rng):
        A = np.outer(cmat(rng, 4, 1), cmat(rng, 1, 4))  # rank 1, 4x4
        mu = np.exp(rng.uniform(-1, 1, 4))
        P = matalg.weighted_pseudo_inverse(A, mu)
        np.testing.assert_allclose(A @ P @ A, A, atol=1e-10)
        np.testing.assert_allclose(P @ A @ P, P, atol=1e-10)
        # symmetry holds in the mu-weighted inner product, not the plain one
        np.testing.assert_allclose(matalg.weighted_adjoint(A @ P, mu), A @ P, atol=1e-10)
        np.testing.assert_allclose(matalg.weighted_adjoint(P @ A, mu), P @ A, atol=1e-10)

    def test_weighted_pinv_commutes_by_construction(self, rng):
        A = cmat(rng, 5, 3) @ cmat(rng, 3, 5)
        mu = np.exp(rng.uniform(-1, 1, 5))
        lhs = matalg.conjugate(matalg.weighted_pseudo_inverse(A, mu), mu)
        rhs = matalg.pseudo_inverse(matalg.conjugate(A, mu))
        np.testing.assert_allclose(lhs, rhs, atol=1e-10)


class TestInvertibility:
    def test_detects_rank_deficiency(self, rng):
        A = cmat(rng, 5, 3) @ cmat(rng, 3, 5)
        assert not matalg.is_invertible(A)
        assert matalg.is_invertible(A + 2.0 * np.eye(5))


class TestOperatorNorm:
    def test_exact_values_small_matrix(self):
        A = np.array([[1.0, -2.0], [3.0, 4.0]])
        assert matalg.operator_norm(A, 1) == 6.0  # max column abs sum
        assert matalg.operator_norm(A, np.inf) == 7.0  # max row abs sum
        assert matalg.operator_norm(A, 2) == pytest.approx(np.linalg.svd(A, compute_uv=False)[0])

    def test_weighted_norm_is_conjugated_norm(self, rng):
        A = cmat(rng, 6)
        w = np.exp(rng.uniform(-1, 1, 6))
        got = matalg.operator_norm(A, 1, w=w)
        want = matalg.operator_norm(matalg.conjugate(A, w), 1)
        assert got == pytest.approx(want)

    def test_intermediate_p_returns_valid_bracket(self, rng):
        A = cmat(rng, 8)
        lo, hi = matalg.operator_norm(A, 1.5)
        assert 0 < lo <= hi
        # the bracket must contain a densely sampled lower estimate
        dense = matalg._sampled_norm_lower(A, 1.5, 512, seed=5)
        assert dense <= hi * (1 + 1e-12)

    def test_diagonal_matrix_all_p_agree(self):
        D = np.diag([3.0, -1.0, 2.0])
        for p in (1, 2, np.inf):
            assert matalg.operator_norm(D, p) == pytest.approx(3.0)
        lo, hi = matalg.operator_norm(D, 1.7)
        assert lo <= 3.0 <= hi


class TestDecayConstant:
    def test_all_ones_matrix_on_a_line(self):
        idx = IndexSet(np.arange(3.0))
        prof = matalg.decay_constant(np.ones((3, 3)), 1.0, idx)
        assert prof.constant == pytest.approx(3.0)
        assert prof.s == 1.0

    def test_gaussian_gram_patch_value(self):
        # five collinear unit-spaced kernels: the s = 4 constant sits at
        # the nearest-neighbor pair, 2^4 * e^{-pi/2}
        lam = np.arange(5.0) + 0j
        idx = IndexSet(np.column_stack([lam.real, lam.imag]))
        prof = matalg.decay_constant(fock_gram_exact(lam), 4.0, idx)
        assert prof.constant == pytest.approx(16.0 * np.exp(-np.pi / 2), rel=1e-12)


class TestSchurConstants:
    def test_kappa_two_points(self):
        idx = IndexSet(np.array([0.0, 1.0]))
        assert matalg.schur_constant(idx, 1.0) == pytest.approx(1.5)

    def test_kappa2_two_points(self):
        idx = IndexSet(np.array([0.0, 1.0]))
        assert matalg.schur_product_constant(idx, 1.0) == pytest.approx(2.0)

    def test_kappa_form_of_submultiplicativity_fails(self):
        """kappa * C(A) * C(B) does not dominate C(AB); the kappa2 form does."""
        idx = IndexSet(np.array([0.0, 1.0]))
        A = np.array([[1.0, 0.5], [0.5, 1.0]])
        cA = matalg.decay_constant(A, 1.0, idx).constant
        cAB = matalg.decay_constant(A @ A, 1.0, idx).constant
        kappa = matalg.schur_constant(idx, 1.0)
        kappa2 = matalg.schur_product_constant(idx, 1.0)
        assert cAB > kappa * cA * cA  # 2.0 vs 1.5
        assert cAB <= kappa2 * cA * cA * (1 + 1e-12)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=2, max_value=10), st.integers(min_value=0, max_value=2**32 - 1))
    def test_kappa2_bound_holds_generically(self, n, seed):
        r = np.random.default_rng(seed)
        pts = np.sort(r.uniform(0, 10, n))
        pts += np.arange(n) * 1e-6  # keep points distinct
        idx = IndexSet(pts)
        A = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
        B = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
        s = 2.0
        bound = (
            matalg.schur_product_constant(idx, s)
            * matalg.decay_constant(A, s, idx).constant
            * matalg.decay_constant(B, s, idx).constant
        )
        assert matalg.decay_constant(A @ B, s, idx).constant <= bound * (1 + 1e-10)


class TestVerifyWeightedInvertibility:
    def test_happy_path_reports_inverse_and_norms(self, rng):
        B = cmat(rng, 6) + 4.0 * np.eye(6)
        idx = IndexSet(np.arange(6.0))
        mu = Weight.polynomial(idx, 2.0)
        m = Weight.constant(idx)
        rep = matalg.verify_weighted_invertibility(B, mu, 4.0, [m], [1, 2, np.inf])
        assert rep["ok"] and rep["invertible_on_l2_mu"]
        assert rep["inverse_residual"] < 1e-10
        assert rep["decay_constant_Bmu"] > 0
        assert set(rep["norms"]) == {"w0_p1", "w0_p2", "w0_pinf"}

    def test_singular_matrix_reported_not_raised(self, rng):
        B = np.outer(cmat(rng, 5, 1), cmat(rng, 1, 5))
        rep = matalg.verify_weighted_invertibility(B, np.ones(5), 4.0, [np.ones(5)], [2])
        assert not rep["ok"]
        assert rep["failure"] == "B is not invertible on l^2_mu"


class TestSerialization:
    def test_json_round_trip_exact(self, rng, tmp_path):
        A = cmat(rng, 4, 7)
        path = tmp_path / "m.json"
        matalg.save_matrix_json(A, path)
        np.testing.assert_array_equal(matalg.load_matrix_json(path), A)

    def test_csv_round_trip_exact(self, rng, tmp_path):
        A = cmat(rng, 5, 3)
        pr, pi = tmp_path / "re.csv", tmp_path / "im.csv"
        matalg.save_matrix_csv(A, pr, pi)
        np.testing.assert_array_equal(matalg.load_matrix_csv(pr, pi), A)
