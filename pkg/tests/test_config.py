"""
Unit Tests for Configuration, Null Specifications and Observations
"""

import json
import logging

import numpy as np
import pytest
from pydantic import ValidationError

from src.config.loader import build_test_config, load_config_file, merge_overrides
from src.config.settings import Settings
from src.models.null_spec import NullSpec, eval_null
from src.models.observation import ObservationCate, ObservationCmf, StreamKind
from src.models.test_config import (
    GAMMA_GUARANTEE_LIMIT,
    RegressorConfig,
    RegressorKind,
    TestConfig,
    default_burn_in,
    validate_config,
)
from src.utils.errors import BoundViolated, ConfigError, DimensionMismatch, InvalidInput, OutOfRange


class TestTestConfig:
    """Test suite for TestConfig validation"""

    def test_defaults_match_synthetic_setup(self):
        """Test that defaults are alpha=0.1, rho=0.06, t0=250, eps=t^-0.24/10, l=0.01"""
        cfg = TestConfig()
        assert cfg.alpha == 0.1
        assert cfg.rho == 0.06
        assert cfg.t0 == 250
        assert cfg.eps_scale == 0.1
        assert cfg.gamma == 0.24
        assert cfg.var_floor == 0.01
        assert cfg.var_ceiling == 1.0
        assert cfg.outcome_range == (0.0, 1.0)
        assert validate_config(cfg) is cfg

    def test_alpha_zero_rejected(self):
        """Test that alpha=0 raises OutOfRange naming alpha"""
        with pytest.raises(OutOfRange) as exc:
            TestConfig(alpha=0.0)
        assert exc.value.field == "alpha"

    def test_all_violations_reported(self):
        """Test that every bad field is listed"""
        with pytest.raises(OutOfRange) as exc:
            TestConfig(alpha=1.5, rho=-1.0, t0=0)
        assert set(exc.value.fields) == {"alpha", "rho", "t0"}

    def test_ceiling_must_exceed_floor(self):
        with pytest.raises(OutOfRange) as exc:
            TestConfig(var_floor=0.5, var_ceiling=0.5)
        assert exc.value.fields == ["var_ceiling"]

    def test_seed_range(self):
        with pytest.raises(OutOfRange):
            TestConfig(seed=-1)
        assert TestConfig(seed=2 ** 64 - 1).seed == 2 ** 64 - 1

    def test_large_gamma_accepted_with_warning(self, caplog):
        """Test that gamma outside [0, 0.25) is allowed but logged"""
        cfg = TestConfig(gamma=0.5)
        with caplog.at_level(logging.WARNING):
            validate_config(cfg)
        assert any("not guaranteed" in r.message for r in caplog.records)
        assert cfg.gamma >= GAMMA_GUARANTEE_LIMIT

    def test_validate_rechecks_unvalidated_instances(self):
        cfg = TestConfig.model_construct(**{**dict(TestConfig()), "alpha": 0.0})
        with pytest.raises(OutOfRange):
            validate_config(cfg)

    def test_config_is_frozen(self):
        cfg = TestConfig()
        with pytest.raises(ValidationError):
            cfg.alpha = 0.2

    def test_default_burn_in(self):
        assert default_burn_in(10) == 250
        assert default_burn_in(1) == 25


class TestRegressorConfig:
    def test_bad_hyperparameters_use_dotted_names(self):
        with pytest.raises(OutOfRange) as exc:
            RegressorConfig(knn_k=0, ridge_lr=0.0)
        assert exc.value.fields == ["knn.k", "ridge.lr"]

    def test_unknown_kind_is_a_validation_error(self):
        with pytest.raises(ValidationError):
            RegressorConfig(kind="forest")

    def test_kind_from_string(self):
        assert RegressorConfig(kind="mlp").kind == RegressorKind.MLP


class TestNullSpec:
    """Test suite for null function evaluation"""

    def test_constant(self):
        spec = NullSpec.constant(0.5)
        assert eval_null(spec, np.zeros(3)) == 0.5
        assert eval_null(NullSpec.constant(0.0), np.ones(10)) == 0.0

    def test_tabulated_bound_violation(self):
        """Test that a tabulated value above B raises BoundViolated"""
        spec = NullSpec.tabulated([[0.0], [1.0]], [0.7, 0.1], bound=0.4)
        with pytest.raises(BoundViolated):
            eval_null(spec, np.array([0.1]))
        assert eval_null(spec, np.array([0.9])) == pytest.approx(0.1)

    def test_tabulated_uses_nearest_point(self):
        spec = NullSpec.tabulated([[0.0, 0.0], [1.0, 1.0]], [0.2, 0.8], bound=1.0)
        assert eval_null(spec, np.array([0.2, 0.1])) == 0.2
        assert eval_null(spec, np.array([0.6, 0.9])) == 0.8

    def test_dimension_mismatch(self):
        spec = NullSpec.from_callable(lambda x: float(x[0]), bound=1.0, dimension=2)
        with pytest.raises(DimensionMismatch):
            eval_null(spec, np.zeros(3))

    def test_constant_needs_finite_value(self):
        with pytest.raises(InvalidInput):
            NullSpec.constant(float("nan"))


class TestObservations:
    def test_cmf_coerces_arrays(self):
        obs = ObservationCmf(x=np.array([0.1, 0.2]), y=0.3)
        assert obs.x == (0.1, 0.2)
        assert obs.dimension == 2
        assert obs.kind == StreamKind.CMF
        np.testing.assert_array_equal(obs.features(), [0.1, 0.2])

    def test_non_finite_context_rejected(self):
        with pytest.raises(InvalidInput):
            ObservationCmf(x=(0.1, float("inf")), y=0.3)

    def test_cate_propensity_range(self):
        with pytest.raises(InvalidInput):
            ObservationCate(x=(0.1,), a=1, y=1.0, pi1=1.2)
        with pytest.raises(InvalidInput):
            ObservationCate(x=(0.1,), a=1, y=1.0, pi1=0.0)

    def test_cate_treatment_is_binary(self):
        with pytest.raises(InvalidInput):
            ObservationCate(x=(0.1,), a=2, y=1.0, pi1=0.5)

    def test_cate_propensities(self):
        obs = ObservationCate(x=(0.1,), a=0, y=1.0, pi1=0.0923)
        assert obs.propensity(1) == 0.0923
        assert obs.propensity(0) == pytest.approx(0.9077)


class TestConfigLoader:
    """Test suite for flat JSON config files"""

    def test_load_and_build(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"alpha": 0.05, "t0": 100, "regressor": "ridge", "ridge.lr": 0.05}))
        cfg = build_test_config(load_config_file(path))
        assert cfg.alpha == 0.05
        assert cfg.t0 == 100
        assert cfg.tau_regressor.kind == RegressorKind.RIDGE
        assert cfg.tau_regressor.ridge_lr == 0.05

    def test_roles_fall_back_to_regressor(self):
        cfg = build_test_config({"regressor": "ridge", "variance_regressor": "knn"})
        assert cfg.tau_regressor.kind == RegressorKind.RIDGE
        assert cfg.variance_regressor.kind == RegressorKind.KNN
        assert cfg.outcome_regressor.kind == RegressorKind.RIDGE

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"alpha": 0.05, "learning_rate": 1}))
        with pytest.raises(ConfigError) as exc:
            load_config_file(path)
        assert exc.value.details["unknown"] == ["learning_rate"]

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text("{alpha: 0.1")
        with pytest.raises(ConfigError):
            load_config_file(path)

    def test_overrides_win_and_none_is_ignored(self):
        merged = merge_overrides({"alpha": 0.05, "rho": 0.1}, {"alpha": 0.01, "rho": None})
        assert merged == {"alpha": 0.01, "rho": 0.1}

    def test_mlp_hidden_list(self):
        cfg = build_test_config({"mlp.hidden": [8, 4]})
        assert cfg.tau_regressor.mlp_hidden == (8, 4)

    def test_out_of_range_value(self):
        with pytest.raises(OutOfRange):
            build_test_config({"alpha": 2.0})


class TestSettings:
    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("GAAVI_DEFAULT_ALPHA", "0.05")
        monkeypatch.setenv("GAAVI_MAX_WORKERS", "3")
        fresh = Settings()
        assert fresh.default_alpha == 0.05
        assert fresh.max_workers == 3
