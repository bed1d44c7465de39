"""
Config File Loader
Flat JSON test configuration files merged with command-line overrides
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from src.models.test_config import RegressorConfig, TestConfig
from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)

SCALAR_KEYS = ("alpha", "rho", "t0", "eps_scale", "gamma", "var_floor", "var_ceiling", "seed")
ROLE_KEYS = ("regressor", "variance_regressor", "outcome_regressor")

# dotted file key -> RegressorConfig field, shared by every regressor role
HYPERPARAM_KEYS = {
    "knn.k": "knn_k",
    "ridge.lr": "ridge_lr",
    "ridge.l2": "ridge_l2",
    "mlp.hidden": "mlp_hidden",
    "mlp.adam_lr": "mlp_adam_lr",
}

FILE_KEYS = frozenset(SCALAR_KEYS + ROLE_KEYS + tuple(HYPERPARAM_KEYS))


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read a flat JSON object of configuration keys

    Raises:
        ConfigError: unreadable file, invalid JSON, a non-object document or
                     unknown keys
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e.strerror}", {"path": str(path)})
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON in {path}: {e.msg} (line {e.lineno})", {"path": str(path)})
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object", {"path": str(path)})
    unknown = sorted(set(data) - FILE_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}", {"unknown": unknown})
    logger.debug(f"Loaded {len(data)} config keys from {path}")
    return data


def merge_overrides(file_values: Mapping[str, Any], overrides: Mapping[str, Any]) -> Dict[str, Any]:
    """Overrides win; None means 'not given'"""
    merged = dict(file_values)
    merged.update({key: value for key, value in overrides.items() if value is not None})
    return merged


def build_test_config(values: Mapping[str, Any]) -> TestConfig:
    """
    TestConfig from flat keys.

    `variance_regressor` and `outcome_regressor` fall back to `regressor`
    when unset; hyperparameter keys apply to every role.
    """
    unknown = sorted(set(values) - FILE_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}", {"unknown": unknown})

    hyper = {field: values[key] for key, field in HYPERPARAM_KEYS.items() if key in values}
    if "mlp_hidden" in hyper:
        if not isinstance(hyper["mlp_hidden"], (list, tuple)):
            raise ConfigError("mlp.hidden must be a list of layer widths", {"mlp.hidden": hyper["mlp_hidden"]})
        hyper["mlp_hidden"] = tuple(hyper["mlp_hidden"])

    def role(kind: Optional[str]) -> RegressorConfig:
        return RegressorConfig(**hyper) if kind is None else RegressorConfig(kind=kind, **hyper)

    tau_kind = values.get("regressor")
    scalars = {key: values[key] for key in SCALAR_KEYS if key in values}
    fields: Dict[str, Any] = {}
    fields.update(scalars)
    fields.update(
        tau_regressor=role(tau_kind),
        variance_regressor=role(values.get("variance_regressor", tau_kind)),
        outcome_regressor=role(values.get("outcome_regressor", tau_kind)),
    )
    return TestConfig(**fields)
