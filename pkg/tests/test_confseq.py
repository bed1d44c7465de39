"""
Unit Tests for Grid Confidence Sequences
"""

import logging

import numpy as np
import pytest

from src.models.null_spec import NullSpec
from src.models.observation import ObservationCate, ObservationCmf, StreamKind
from src.services.inference.confseq import GridCs, build_grid
from src.services.inference.engine import SequentialTest, run_to_horizon
from src.services.inference.nuisance import NuisanceSet
from src.services.regression.oracle import OracleRegressor
from src.services.regression.variance import ClippedVarianceRegressor
from src.services.simulation.dgp import Shape, dgp1_stream, dgp1_truth, shape_spec
from src.utils.errors import InvalidInput, StreamKindMismatch
from src.utils.seeding import data_rng
from tests.conftest import SpyRegressor, knn_config, oracle_config


def fixed_nuisances(tau: float, v: float) -> NuisanceSet:
    return NuisanceSet(
        StreamKind.CMF,
        OracleRegressor(lambda x: tau, 0.0, 1.0),
        ClippedVarianceRegressor(OracleRegressor(lambda x: v), 0.01, 1.0),
    )


class TestBuildGrid:
    def test_evenly_spaced(self):
        np.testing.assert_allclose(build_grid(0.4, 0.6, 11), np.arange(40, 61, 2) / 100)

    def test_single_point(self):
        np.testing.assert_array_equal(build_grid(0.5, 0.5, 1), [0.5])

    @pytest.mark.parametrize("lo, hi, points", [(0.6, 0.4, 5), (0.0, 1.0, 0)])
    def test_invalid(self, lo, hi, points):
        with pytest.raises(InvalidInput):
            build_grid(lo, hi, points)


class TestGridCs:
    """Test suite for grid inversion of the test"""

    def test_single_candidate_matches_engine(self):
        """Test that a one-point grid reproduces the engine's state for that constant"""
        spec = shape_spec(Shape.STEP, delta=0.1, dimension=2)
        observations = [obs for obs, _ in zip(dgp1_stream(spec, data_rng(21)), range(400))]
        cfg = knn_config(seed=5, t0=50)

        cs = GridCs.create([0.5], cfg, StreamKind.CMF, 2, dgp1_truth(spec))
        test = SequentialTest.create(cfg, NullSpec.constant(0.5), StreamKind.CMF, 2, dgp1_truth(spec))
        for obs in observations:
            cs.cs_step(obs)
            record = test.step(obs)
            assert cs.lower_bounds[0] == pytest.approx(record.lower_bound, rel=1e-12, abs=1e-15)

        assert cs.candidate_state(0) == test.state

    def test_equal_candidates_have_equal_states(self):
        spec = shape_spec(Shape.SINE, dimension=2)
        cs = GridCs.create([0.5, 0.5], knn_config(seed=1, t0=20), StreamKind.CMF, 2)
        for obs, _ in zip(dgp1_stream(spec, data_rng(2)), range(200)):
            cs.cs_step(obs)
        assert cs.candidate_state(0) == cs.candidate_state(1)

    def test_unsorted_grid_rejected(self, default_config):
        with pytest.raises(InvalidInput):
            GridCs([0.6, 0.4], fixed_nuisances(0.5, 0.1), default_config)

    def test_empty_grid_rejected(self, default_config):
        with pytest.raises(InvalidInput):
            GridCs([], fixed_nuisances(0.5, 0.1), default_config)

    def test_stream_kind_checked(self, default_config):
        cs = GridCs([0.5], fixed_nuisances(0.5, 0.1), default_config)
        with pytest.raises(StreamKindMismatch):
            cs.cs_step(ObservationCate(x=(0.1,), a=0, y=0.0, pi1=0.5))

    def test_shares_one_prediction_read(self, call_log):
        """Test that each observation triggers one read per regressor for the whole grid"""
        nuisances = NuisanceSet(
            StreamKind.CMF,
            SpyRegressor("tau", call_log),
            ClippedVarianceRegressor(SpyRegressor("v", call_log), 0.01, 1.0),
        )
        cs = GridCs(build_grid(0.0, 1.0, 21), nuisances, oracle_config())
        for _ in range(3):
            cs.cs_step(ObservationCmf(x=(0.5,), y=0.4))
        for t in range(3):
            assert call_log[4 * t: 4 * t + 4] == [
                ("predict", "tau", t),
                ("predict", "v", t),
                ("update", "tau", t),
                ("update", "v", t),
            ]


class TestSurvivors:
    def _cs(self, default_config):
        return GridCs(build_grid(0.40, 0.60, 5), fixed_nuisances(0.5, 0.1), default_config)

    def test_nothing_rejected(self, default_config):
        mask, hull = self._cs(default_config).cs_survivors()
        assert mask.all()
        assert hull == (0.40, 0.60)

    def test_non_contiguous_survivors(self, default_config):
        """Test that the mask keeps gaps while the hull spans them"""
        cs = self._cs(default_config)
        cs.rejected_at[:] = [3, -1, 4, -1, 5]
        mask, hull = cs.cs_survivors()
        assert mask.tolist() == [False, True, False, True, False]
        assert hull == pytest.approx((0.45, 0.55))

    def test_all_rejected(self, default_config):
        cs = self._cs(default_config)
        cs.rejected_at[:] = 7
        mask, hull = cs.cs_survivors()
        assert not mask.any()
        assert hull is None
        assert cs.candidate_state(2).rejected_at == 7

    def test_empty_set_warned_once(self, caplog):
        """Test that y=1 with tau_hat=1 rejects every candidate below 1 and warns once"""
        cs = GridCs([0.0, 0.1], fixed_nuisances(1.0, 0.01), oracle_config(t0=2))
        with caplog.at_level(logging.WARNING):
            for _ in range(10):
                cs.cs_step(ObservationCmf(x=(0.5,), y=1.0))
        assert cs.rejected_at.tolist() == [2, 2]
        warnings = [r for r in caplog.records if "confidence set is empty" in r.message]
        assert len(warnings) == 1

    def test_survivor_sets_are_nested(self):
        """Test that each survivor set sits inside the previous one, so the hull only shrinks"""
        spec = shape_spec(Shape.STEP, delta=0.2, conc=50.0, dimension=2)
        cs = GridCs.create(build_grid(0.3, 0.8, 26), knn_config(seed=5, t0=20), StreamKind.CMF, 2)
        prev_mask, prev_hull = cs.cs_survivors()
        for obs, _ in zip(dgp1_stream(spec, data_rng(5)), range(1500)):
            cs.cs_step(obs)
            mask, hull = cs.cs_survivors()
            assert not np.any(mask & ~prev_mask)
            if hull is not None:
                assert prev_hull[0] <= hull[0] and hull[1] <= prev_hull[1]
            else:
                assert not mask.any()
            prev_mask, prev_hull = mask, hull
            if hull is None:
                break
        assert not prev_mask.all()

    def test_truth_survives_under_oracle(self):
        """Test that the true constant stays in the set while distant candidates drop out"""
        spec = shape_spec(Shape.NULL, dimension=2)
        cs = GridCs.create(build_grid(0.3, 0.7, 5), oracle_config(seed=0, t0=20, alpha=0.01), StreamKind.CMF, 2, dgp1_truth(spec))
        for obs, _ in zip(dgp1_stream(spec, data_rng(3)), range(3000)):
            cs.cs_step(obs)
        mask, hull = cs.cs_survivors()
        assert mask[2]
        assert not mask[0] and not mask[4]
        assert hull == pytest.approx((0.5, 0.5))


class TestEngineAgreement:
    def test_rejection_times_match_engine_per_candidate(self):
        spec = shape_spec(Shape.STEP, delta=0.2, conc=50.0, dimension=2)
        observations = [obs for obs, _ in zip(dgp1_stream(spec, data_rng(9)), range(1500))]
        grid = [0.45, 0.5, 0.55]
        cfg = oracle_config(seed=2, t0=20)
        cs = GridCs.create(grid, cfg, StreamKind.CMF, 2, dgp1_truth(spec))
        for obs in observations:
            cs.cs_step(obs)
        for i, c in enumerate(grid):
            test = SequentialTest.create(cfg, NullSpec.constant(c), StreamKind.CMF, 2, dgp1_truth(spec))
            _, n_f = run_to_horizon(test, observations, len(observations), record_stride=None)
            assert cs.candidate_state(i).rejected_at == n_f
