"""
Unit Tests for Sequential Regressors
"""

import numpy as np
import pytest

from src.models.test_config import RegressorConfig, RegressorKind
from src.services.regression.factory import GroundTruth, build_regressor
from src.services.regression.knn import KnnRegressor, knn_predict
from src.services.regression.mlp import (
    AdamState,
    MlpRegressor,
    init_mlp,
    mlp_forward,
    mlp_gradients,
    mlp_loss,
    mlp_update,
    zero_mlp,
)
from src.services.regression.oracle import ConstantRegressor, OracleRegressor, oracle_regressor
from src.services.regression.ridge import RidgeSgdRegressor, ridge_sgd_update
from src.services.regression.variance import ClippedVarianceRegressor, clipped_variance_predict
from src.utils.errors import ConfigError, DimensionMismatch, InvalidInput


class TestKnn:
    """Test suite for inverse-distance k-NN"""

    def test_inverse_distance_weights(self):
        """Test weights 1/0.25 and 1/0.75 at query 0.25"""
        hx = np.array([[0.0], [1.0]])
        hy = np.array([0.0, 1.0])
        assert knn_predict(hx, hy, np.array([0.25]), 2, 0.5) == pytest.approx(0.25)

    def test_zero_distance_returns_stored_target(self):
        hx = np.array([[0.0], [0.3], [1.0]])
        hy = np.array([0.0, 0.8, 1.0])
        assert knn_predict(hx, hy, np.array([0.3]), 2, 0.5) == 0.8

    def test_duplicate_zero_distance_points_average(self):
        hx = np.array([[0.3], [0.3], [1.0]])
        hy = np.array([0.2, 0.6, 1.0])
        assert knn_predict(hx, hy, np.array([0.3]), 3, 0.5) == pytest.approx(0.4)

    def test_empty_history_returns_default(self):
        assert knn_predict(np.empty((0, 1)), np.empty(0), np.array([0.3]), 5, 0.5) == 0.5

    def test_uses_only_k_nearest(self):
        hx = np.array([[0.0], [0.1], [5.0]])
        hy = np.array([1.0, 1.0, -100.0])
        assert knn_predict(hx, hy, np.array([0.05]), 2, 0.0) == pytest.approx(1.0)

    def test_invalid_k(self):
        with pytest.raises(InvalidInput):
            knn_predict(np.zeros((1, 1)), np.zeros(1), np.zeros(1), 0, 0.0)

    def test_regressor_dimension_checked(self):
        reg = KnnRegressor(2, 3, 0.0, 1.0, 0.5)
        with pytest.raises(DimensionMismatch):
            reg.update(np.zeros(3), 0.1)

    def test_buffer_grows_past_capacity(self):
        reg = KnnRegressor(1, 1, -10.0, 10.0, 0.0, capacity=2)
        for i in range(10):
            reg.update(np.array([float(i)]), float(i))
        assert reg.predict(np.array([7.0])) == 7.0
        assert reg.n_updates == 10

    def test_improves_on_constant_predictor(self):
        """Test that on a smooth 1-d signal, late-stage MSE beats the outcome variance"""
        data_rng = np.random.default_rng(5)
        reg = KnnRegressor(1, 50, -5.0, 5.0, 0.0)
        errors, targets = [], []
        for t in range(5000):
            x = data_rng.uniform(0.0, 1.0, size=1)
            y = np.sin(2 * np.pi * x[0]) + 0.3 * data_rng.standard_normal()
            prediction = reg.predict(x)
            if t >= 4500:
                errors.append((prediction - y) ** 2)
                targets.append(y)
            reg.update(x, y)
        assert np.mean(errors) < np.var(targets)


class TestRidge:
    def test_zero_target_keeps_zero(self):
        coef = ridge_sgd_update(np.zeros(3), np.array([0.4, 0.2]), 0.0, 0.01, 0.0)
        np.testing.assert_array_equal(coef, np.zeros(3))

    def test_single_intercept_step(self):
        """Test beta=0, intercept-only context, target=1, lr=0.01 gives 0.01"""
        coef = ridge_sgd_update(np.zeros(1), np.array([]), 1.0, 0.01, 0.0)
        np.testing.assert_allclose(coef, [0.01])

    def test_pure_shrinkage_at_zero_residual(self):
        coef = np.array([0.5, -0.2, 0.1])
        x = np.array([0.3, 0.7])
        target = float(np.dot(coef, np.append(x, 1.0)))
        new = ridge_sgd_update(coef, x, target, 0.1, 0.5)
        np.testing.assert_allclose(new, (1 - 0.1 * 0.5) * coef, rtol=1e-12)

    def test_gradient_is_clipped(self):
        new = ridge_sgd_update(np.zeros(2), np.array([1e12]), 1e12, 1.0, 0.0)
        assert np.all(np.abs(new) <= 1e6)

    def test_regressor_clamps_output(self):
        reg = RidgeSgdRegressor(1, 0.5, 0.0, 0.0, 1.0, 0.5)
        assert reg.predict(np.array([0.2])) == 0.5
        for _ in range(50):
            reg.update(np.array([1.0]), 10.0)
        assert reg.predict(np.array([1.0])) == 1.0


class TestMlp:
    """Test suite for the numpy network"""

    def test_zero_network_outputs_half(self):
        params = zero_mlp([3, 4, 1])
        assert mlp_forward(params, np.array([0.3, -2.0, 5.0])) == 0.5

    def test_gradients_match_finite_differences(self):
        """Test analytic gradients against central differences on a 2-4-1 network"""
        params = init_mlp([2, 4, 1], np.random.default_rng(3))
        for b in params.biases:
            b += np.random.default_rng(4).normal(0.0, 0.3, size=b.shape)
        x, target, h = np.array([0.4, -0.7]), 0.8, 1e-5
        grad_w, grad_b = mlp_gradients(params, x, target)

        for analytic, tensors in ((grad_w, params.weights), (grad_b, params.biases)):
            for layer, tensor in enumerate(tensors):
                for idx in np.ndindex(tensor.shape):
                    original = tensor[idx]
                    tensor[idx] = original + h
                    up = mlp_loss(params, x, target)
                    tensor[idx] = original - h
                    down = mlp_loss(params, x, target)
                    tensor[idx] = original
                    numeric = (up - down) / (2 * h)
                    assert analytic[layer][idx] == pytest.approx(numeric, rel=1e-5, abs=1e-10)

    def test_adam_step_moves_toward_target(self):
        params = zero_mlp([2, 3, 1])
        x = np.array([0.5, 0.5])
        before = mlp_forward(params, x)
        new, adam = mlp_update(params, x, 1.0, AdamState.zeros_like(params), 1e-2)
        assert mlp_forward(new, x) > before
        assert adam.step == 1
        assert mlp_forward(params, x) == before

    def test_regressor_maps_into_range(self):
        reg = MlpRegressor(2, (8,), 1e-2, -1.0, 1.0, 0.0, np.random.default_rng(0))
        assert reg.predict(np.array([0.1, 0.2])) == 0.0
        for _ in range(200):
            reg.update(np.array([0.1, 0.2]), 0.9)
        value = reg.predict(np.array([0.1, 0.2]))
        assert -1.0 <= value <= 1.0
        assert value > 0.5


class TestFixedRegressors:
    def test_oracle_is_exact_and_ignores_updates(self):
        reg = oracle_regressor(lambda x: float(np.sum(x)))
        x = np.array([0.1, 0.2])
        assert reg.predict(x) == pytest.approx(0.3)
        reg.update(x, 100.0)
        assert reg.predict(x) == pytest.approx(0.3)

    def test_constant_running_mean(self):
        reg = ConstantRegressor(0.0, 1.0, 0.5)
        assert reg.predict(np.zeros(1)) == 0.5
        reg.update(np.zeros(1), 0.2)
        reg.update(np.zeros(1), 0.4)
        assert reg.predict(np.zeros(1)) == pytest.approx(0.3)

    def test_constant_pinned_value(self):
        reg = ConstantRegressor(0.0, 1.0, 0.5, value=0.6)
        reg.update(np.zeros(1), 0.0)
        assert reg.predict(np.zeros(1)) == 0.6


class TestClippedVariance:
    @pytest.mark.parametrize("inner_value, expected", [(0.004, 0.01), (0.2, 0.2), (5.0, 1.0)])
    def test_clipping(self, inner_value, expected):
        cvr = ClippedVarianceRegressor(OracleRegressor(lambda x: inner_value), 0.01, 1.0)
        assert clipped_variance_predict(cvr, np.zeros(1)) == expected
        assert cvr.predict(np.zeros(1)) == expected

    def test_updates_reach_inner_model(self):
        inner = ConstantRegressor(0.0, 1.0, 1.0)
        cvr = ClippedVarianceRegressor(inner, 0.01, 1.0)
        cvr.update(np.zeros(1), 0.04)
        assert inner.n_updates == 1
        assert cvr.predict(np.zeros(1)) == pytest.approx(0.04)


class TestClampInvariant:
    """No regressor emits outside its declared range"""

    @pytest.mark.parametrize("kind", [RegressorKind.KNN, RegressorKind.RIDGE, RegressorKind.MLP, RegressorKind.CONSTANT])
    def test_predictions_stay_in_range(self, kind):
        reg = build_regressor(RegressorConfig(kind=kind, knn_k=5, mlp_hidden=(4,)), 2, 0.0, 1.0, 0.5, np.random.SeedSequence(1))
        data_rng = np.random.default_rng(11)
        for _ in range(300):
            x = data_rng.uniform(-3, 3, size=2)
            value = reg.predict(x)
            assert 0.0 <= value <= 1.0
            reg.update(x, data_rng.normal(0.0, 5.0))


class TestFactory:
    def test_oracle_needs_truth(self):
        with pytest.raises(ConfigError):
            build_regressor(RegressorConfig(kind="oracle"), 1, 0.0, 1.0, 0.5, np.random.SeedSequence(0))

    def test_oracle_uses_truth(self):
        truth = GroundTruth(tau=lambda x: 0.6)
        reg = build_regressor(RegressorConfig(kind="oracle"), 1, 0.0, 1.0, 0.5, np.random.SeedSequence(0), truth.tau)
        assert reg.predict(np.zeros(1)) == 0.6

    def test_mlp_seeding_is_deterministic(self):
        cfg = RegressorConfig(kind="mlp", mlp_hidden=(4,))
        a = build_regressor(cfg, 2, 0.0, 1.0, 0.5, np.random.SeedSequence(9))
        b = build_regressor(cfg, 2, 0.0, 1.0, 0.5, np.random.SeedSequence(9))
        for wa, wb in zip(a.params.weights, b.params.weights):
            np.testing.assert_array_equal(wa, wb)
