"""
Observation Models
One stream element for conditional-mean (CMF) and treatment-effect (CATE) streams
"""

import math
from enum import Enum
from typing import ClassVar, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from src.utils.errors import InvalidInput


class StreamKind(str, Enum):
    """Which pseudo-outcome construction a stream needs"""
    CMF = "cmf"
    CATE = "cate"


def _check_finite_vector(x: Tuple[float, ...]) -> Tuple[float, ...]:
    if len(x) < 1:
        raise InvalidInput("context vector must have dimension >= 1")
    if not all(math.isfinite(v) for v in x):
        raise InvalidInput("context vector must be finite componentwise", {"x": list(x)})
    return x


def _check_finite(value: float, name: str) -> float:
    if not math.isfinite(value):
        raise InvalidInput(f"{name} must be finite", {name: value})
    return value


class ObservationCmf(BaseModel):
    """Context and outcome: O_i = (X_i, Y_i)"""

    model_config = ConfigDict(frozen=True)
    kind: ClassVar[StreamKind] = StreamKind.CMF

    x: Tuple[float, ...]
    y: float

    @field_validator("x", mode="before")
    @classmethod
    def _coerce_x(cls, value):
        if isinstance(value, np.ndarray):
            return tuple(value.astype(float).tolist())
        return value

    @field_validator("x")
    @classmethod
    def _finite_x(cls, value):
        return _check_finite_vector(value)

    @field_validator("y")
    @classmethod
    def _finite_y(cls, value):
        return _check_finite(value, "y")

    @property
    def dimension(self) -> int:
        return len(self.x)

    def features(self) -> np.ndarray:
        return np.asarray(self.x, dtype=float)


class ObservationCate(BaseModel):
    """
    Context, binary treatment, outcome and the known propensity P(A=1 | X=x).

    The propensity travels with each observation, so both constant and
    context-dependent known policies are representable.
    """

    model_config = ConfigDict(frozen=True)
    kind: ClassVar[StreamKind] = StreamKind.CATE

    x: Tuple[float, ...]
    a: int
    y: float
    pi1: float

    @field_validator("x", mode="before")
    @classmethod
    def _coerce_x(cls, value):
        if isinstance(value, np.ndarray):
            return tuple(value.astype(float).tolist())
        return value

    @field_validator("x")
    @classmethod
    def _finite_x(cls, value):
        return _check_finite_vector(value)

    @field_validator("a")
    @classmethod
    def _binary_a(cls, value):
        if value not in (0, 1):
            raise InvalidInput("treatment indicator must be 0 or 1", {"a": value})
        return value

    @field_validator("y")
    @classmethod
    def _finite_y(cls, value):
        return _check_finite(value, "y")

    @field_validator("pi1")
    @classmethod
    def _open_unit_pi1(cls, value):
        _check_finite(value, "pi1")
        if not 0.0 < value < 1.0:
            raise InvalidInput("pi1 must lie strictly inside (0, 1)", {"pi1": value})
        return value

    @property
    def dimension(self) -> int:
        return len(self.x)

    @property
    def pi0(self) -> float:
        return 1.0 - self.pi1

    def propensity(self, arm: int) -> float:
        """pi(x, arm)"""
        return self.pi1 if arm == 1 else self.pi0

    def features(self) -> np.ndarray:
        return np.asarray(self.x, dtype=float)


Observation = Union[ObservationCmf, ObservationCate]
