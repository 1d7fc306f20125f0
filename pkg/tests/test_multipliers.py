"""Frame multipliers and Galerkin matrices against closed-form references."""

import numpy as np
import pytest

from framelift.frames import onb, random_frame
from framelift.multipliers import (
    Slots,
    galerkin,
    galerkin_pinv_crosscheck,
    invertibility_matrix,
    invertibility_verdicts,
    multiplier,
    op_from_matrix,
    spectral_invariance_suite,
)
from framelift.weights import Weight
from tests.conftest import random_vector


def _random_symbol(rng, n):
    return rng.uniform(0.5, 2.0, size=n)


def _random_operator(rng, d):
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


class TestMultiplier:
    def test_onb_multiplier_is_diagonal(self, rng):
        fr = onb(6)
        mu = _random_symbol(rng, 6)
        np.testing.assert_allclose(multiplier(mu, fr).matrix, np.diag(mu), atol=1e-14)

    def test_unit_symbol_gives_frame_operator(self, small_frame):
        M = multiplier(np.ones(small_frame.n), small_frame).matrix
        np.testing.assert_allclose(M, small_frame.frame_operator, atol=1e-13)

    def test_matches_synthesis_diag_analysis(self, rng):
        psi = random_frame(rng, 10, 5)
        phi = random_frame(rng, 10, 5)
        mu = _random_symbol(rng, 10)
        M = multiplier(mu, psi, phi).matrix
        want = phi.synthesis_matrix @ np.diag(mu) @ psi.analysis_matrix
        np.testing.assert_allclose(M, want, atol=1e-13)

    def test_apply_agrees_with_matrix(self, rng, small_frame):
        mu = _random_symbol(rng, small_frame.n)
        mult = multiplier(mu, small_frame)
        f = random_vector(rng, small_frame.d)
        np.testing.assert_allclose(mult.apply(f), mult.matrix @ f, atol=1e-13)

    def test_weight_object_accepted_as_symbol(self, small_frame):
        w = Weight.polynomial(small_frame.index_set, 2.0)
        np.testing.assert_allclose(
            multiplier(w, small_frame).matrix,
            multiplier(w.values, small_frame).matrix,
        )

    def test_symbol_length_mismatch_rejected(self, small_frame):
        with pytest.raises(ValueError):
            multiplier(np.ones(small_frame.n + 1), small_frame)

    def test_mismatched_frame_pair_rejected(self, rng, small_frame):
        wrong_d = random_frame(rng, small_frame.n, small_frame.d - 1)
        with pytest.raises(ValueError):
            multiplier(np.ones(small_frame.n), small_frame, wrong_d)


class TestGalerkin:
    def test_entries_are_sandwich(self, rng):
        psi = random_frame(rng, 8, 4)
        phi = random_frame(rng, 8, 4)
        O = _random_operator(rng, 4)
        rec = galerkin(O, phi, psi)
        want = phi.analysis_matrix @ O @ psi.synthesis_matrix
        np.testing.assert_allclose(rec.entries, want, atol=1e-13)

    def test_dual_slots_invert_the_matrix_map(self, rng, small_frame):
        dual = small_frame.canonical_dual()
        O = _random_operator(rng, small_frame.d)
        back = op_from_matrix(galerkin(O, dual, dual).entries, small_frame, small_frame)
        np.testing.assert_allclose(back, O, atol=1e-10)

    def test_composition_collapses_through_gram(self, rng, small_frame):
        mu = _random_symbol(rng, small_frame.n)
        G = small_frame.gram_matrix
        comp = multiplier(1.0 / mu, small_frame).matrix @ multiplier(mu, small_frame).matrix
        rec = galerkin(comp, small_frame, small_frame)
        want = G @ np.diag(1.0 / mu) @ G @ np.diag(mu) @ G
        np.testing.assert_allclose(rec.entries, want, atol=1e-11)

    def test_operator_shape_checked(self, rng, small_frame):
        with pytest.raises(ValueError):
            galerkin(np.eye(small_frame.d + 1), small_frame, small_frame)
        with pytest.raises(ValueError):
            op_from_matrix(np.eye(small_frame.n + 2), small_frame, small_frame)

    def test_pinv_crosscheck_both_dual_orderings_hold(self, rng):
        psi = random_frame(rng, 12, 6)
        phi = random_frame(rng, 12, 6)
        res = galerkin_pinv_crosscheck(_random_operator(rng, 6), psi, phi)
        assert res["ordering_A"] < 1e-10
        assert res["ordering_B"] < 1e-10
        assert res["passing"] == ["ordering_A", "ordering_B"]

    def test_pinv_crosscheck_needs_dual_slots(self, rng):
        # swapping a dual for the frame itself breaks the identity unless the
        # frame is tight, so a generic frame distinguishes the two
        psi = random_frame(rng, 12, 6)
        phi = random_frame(rng, 12, 6)
        O = _random_operator(rng, 6)
        from framelift.matalg import pseudo_inverse

        wrong = pseudo_inverse(galerkin(O, psi, phi).entries)
        right = galerkin(np.linalg.inv(O), phi, psi).entries
        assert np.abs(wrong - right).max() > 1e-6


class TestInvertibility:
    def test_verdicts_agree_across_slots_invertible(self, rng, small_frame):
        mu = _random_symbol(rng, small_frame.n)
        M = multiplier(mu, small_frame).matrix
        v = invertibility_verdicts(M, small_frame)
        assert v["operator"] is True
        assert set(v) == {"operator", "PSI_PSI", "PSI_DUAL", "DUAL_PSI", "DUAL_DUAL"}
        assert all(v.values())

    def test_verdicts_agree_across_slots_singular(self, rng, small_frame):
        f = random_vector(rng, small_frame.d)
        M = np.outer(f, f.conj())  # rank one, singular for d > 1
        v = invertibility_verdicts(M, small_frame)
        assert not any(v.values())

    def test_matrix_has_identity_on_coefficient_kernel(self, rng, small_frame):
        # directions killed by synthesis must pass through B_O untouched
        B = invertibility_matrix(np.zeros((small_frame.d, small_frame.d)), small_frame)
        ns = np.linalg.svd(small_frame.synthesis_matrix)[2][small_frame.d :].conj().T
        kvec = ns @ random_vector(rng, ns.shape[1])
        np.testing.assert_allclose(B @ kvec, kvec, atol=1e-10)

    def test_slot_variants_all_encode_the_same_verdict(self, rng, small_frame):
        O = _random_operator(rng, small_frame.d)
        for slots in Slots:
            B = invertibility_matrix(O, small_frame, slots)
            assert np.linalg.matrix_rank(B) == small_frame.n


class TestSpectralInvariance:
    def test_suite_reports_constants_per_weight_and_p(self, rng, small_frame):
        mu = _random_symbol(rng, small_frame.n)
        M = multiplier(mu, small_frame).matrix
        w = Weight.polynomial(small_frame.index_set, 2.0)
        rep = spectral_invariance_suite(M, small_frame, weights=[w], ps=[1, 2, np.inf], s=4.0)
        assert rep["operator_invertible"] is True
        assert np.isfinite(rep["galerkin_decay_constant"])
        assert rep["galerkin_decay_constant"] > 0
        assert set(rep["constants"]) == {"w0_p1", "w0_p2", "w0_pinf"}
        for entry in rep["constants"].values():
            lo, hi = entry["norm"]
            assert 0 < lo <= hi
            assert entry["invertible"] is True
            ilo, ihi = entry["inverse_norm"]
            assert 0 < ilo <= ihi

    def test_suite_flags_singular_operator(self, rng, small_frame):
        f = random_vector(rng, small_frame.d)
        w = Weight.constant(small_frame.index_set, 1.0)
        rep = spectral_invariance_suite(
            np.outer(f, f.conj()), small_frame, weights=[w], ps=[2], s=4.0
        )
        assert rep["operator_invertible"] is False
        assert "inverse_norm" not in rep["constants"]["w0_p2"]
