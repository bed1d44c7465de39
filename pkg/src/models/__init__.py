"""
Domain Models
Observations, null specifications, configuration and step records
"""

from src.models.observation import Observation, ObservationCate, ObservationCmf, StreamKind
from src.models.null_spec import NullKind, NullSpec, eval_null
from src.models.test_config import (
    RegressorConfig,
    RegressorKind,
    TestConfig,
    default_burn_in,
    validate_config,
)
from src.models.records import Continue, Decision, Rejected, StepRecord

__all__ = [
    "Observation",
    "ObservationCate",
    "ObservationCmf",
    "StreamKind",
    "NullKind",
    "NullSpec",
    "eval_null",
    "RegressorConfig",
    "RegressorKind",
    "TestConfig",
    "default_burn_in",
    "validate_config",
    "Continue",
    "Decision",
    "Rejected",
    "StepRecord",
]
