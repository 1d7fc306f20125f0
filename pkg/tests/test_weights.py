"""Index sets, weights, weighted norms, and the diagonal isometry."""

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framelift.weights import (
    EUCLIDEAN,
    TORUS,
    IndexSet,
    Weight,
    diag_lift,
    holder_conjugate,
    moderateness_constant,
    weighted_norm,
)


def line(n: int) -> IndexSet:
    return IndexSet(np.arange(n, dtype=float))


class TestIndexSet:
    def test_promotes_one_dim_points(self):
        idx = line(5)
        assert idx.points.shape == (5, 1)
        assert idx.metric == EUCLIDEAN

    def test_distance_matrix_line(self):
        d = line(4).distance_matrix()
        np.testing.assert_allclose(d[0], [0, 1, 2, 3])

    def test_torus_requires_period_and_wraps(self):
        idx = IndexSet(np.array([[0.0], [7.0]]), metric=TORUS, period=8.0)
        assert idx.distance_matrix()[0, 1] == pytest.approx(1.0)
        with pytest.raises(ValueError):
            IndexSet(np.array([[0.0], [1.0]]), metric=TORUS)

    def test_rejects_duplicate_points(self):
        with pytest.raises(ValueError):
            IndexSet(np.array([[1.0], [1.0]]))

    def test_distance_to_defaults_to_origin(self):
        idx = IndexSet(np.array([[3.0, 4.0], [0.0, 1.0]]))
        np.testing.assert_allclose(idx.distance_to(), [5.0, 1.0])

    def test_dict_round_trip(self):
        idx = IndexSet(np.array([[0.0, 1.0], [2.0, 3.0]]), metric=TORUS, period=5.0)
        back = IndexSet.from_dict(idx.to_dict())
        np.testing.assert_array_equal(back.points, idx.points)
        assert back.metric == TORUS and back.period == 5.0


class TestWeight:
    def test_positivity_required(self):
        with pytest.raises(ValueError):
            Weight(np.array([1.0, 0.0, 2.0]), line(3))

    def test_polynomial_weight_values(self):
        w = Weight.polynomial(line(4), 2.0)
        np.testing.assert_allclose(w.values, [1.0, 4.0, 9.0, 16.0])

    def test_algebra_product_reciprocal_sqrt(self):
        idx = line(5)
        w = Weight.polynomial(idx, 1.0)
        np.testing.assert_allclose((w * w.reciprocal()).values, 1.0)
        np.testing.assert_allclose((w.sqrt() * w.sqrt()).values, w.values)

    def test_json_round_trip(self, tmp_path):
        w = Weight.polynomial(line(6), 1.5)
        path = tmp_path / "w.json"
        w.save_json(path)
        back = Weight.load_json(path)
        np.testing.assert_array_equal(back.values, w.values)
        assert json.loads(path.read_text())["values"] == list(w.values)


class TestWeightedNorm:
    def test_p2_matches_direct_sum(self, rng):
        c = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        m = 1.0 + rng.random(8)
        want = np.sqrt(((m * np.abs(c)) ** 2).sum())
        assert weighted_norm(c, 2, m) == pytest.approx(want)

    def test_p_inf_is_weighted_sup(self):
        c = np.array([1.0, -3.0, 2.0])
        m = np.array([1.0, 1.0, 4.0])
        assert weighted_norm(c, np.inf, m) == 8.0
        assert weighted_norm(c, "inf", m) == 8.0

    def test_rejects_p_below_one(self):
        with pytest.raises(ValueError):
            weighted_norm(np.ones(3), 0.5, np.ones(3))

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            weighted_norm(np.ones(3), 2, np.ones(4))


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=2, max_value=12),
    st.sampled_from([1, 1.5, 2, 3, np.inf]),
    st.integers(min_value=0, max_value=2**32 - 1),
)
def test_diag_lift_isometry(n, p, seed):
    """||diag(mu) c||_{p, m/mu} recovers ||c||_{p, m} for every p and weight pair."""
    r = np.random.default_rng(seed)
    c = r.standard_normal(n) + 1j * r.standard_normal(n)
    m = np.exp(r.uniform(-1, 1, n))
    mu = np.exp(r.uniform(-1, 1, n))
    lifted = diag_lift(c, mu)
    assert weighted_norm(lifted, p, m / mu) == pytest.approx(weighted_norm(c, p, m), rel=1e-12)


def test_holder_conjugates():
    assert holder_conjugate(1) == np.inf
    assert holder_conjugate(np.inf) == 1.0
    assert holder_conjugate(2) == 2.0
    assert holder_conjugate(4) == pytest.approx(4 / 3)


class TestModerateness:
    def test_polynomial_weight_is_exactly_t_moderate(self):
        idx = line(12)
        w = Weight.polynomial(idx, 3.0)
        assert moderateness_constant(w, 3.0) == pytest.approx(1.0)

    def test_exponential_weight_constant_on_a_line(self):
        idx = line(11)
        w = Weight(np.exp(np.arange(11.0)), idx)
        # worst pair is the two endpoints: e^10 / (1 + 10)
        assert moderateness_constant(w, 1.0) == pytest.approx(np.exp(10.0) / 11.0)

    def test_subexponential_profile_tames_exponential_weight(self):
        idx = line(11)
        w = Weight(np.exp(np.arange(11.0)), idx)
        assert moderateness_constant(w, 1.0, profile="subexponential") == pytest.approx(1.0)

    def test_unknown_profile_rejected(self):
        with pytest.raises(ValueError):
            moderateness_constant(Weight.constant(line(3)), 1.0, profile="gaussian")
