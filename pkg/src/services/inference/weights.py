"""
Predictable Weights
Ratio weight, magnitude thresholding and the epsilon schedule
"""

from typing import Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.utils.errors import InvalidInput

ArrayLike = Union[float, np.ndarray]


class EpsilonSchedule(BaseModel):
    """eps_t = c0 * t^(-gamma)"""

    model_config = ConfigDict(frozen=True)

    c0: float = Field(gt=0)
    gamma: float = Field(ge=0)


def epsilon_at(sched: EpsilonSchedule, t: int) -> float:
    """Weight floor at arrival index t (t >= 1)"""
    if t < 1:
        raise InvalidInput("t must be >= 1", {"t": t})
    return sched.c0 * float(t) ** (-sched.gamma)


def raw_weight(tau_hat_x: ArrayLike, f_x: ArrayLike, v_hat_x: ArrayLike) -> ArrayLike:
    """(tau_hat(x) - f(x)) / v_hat(x)"""
    if np.any(np.asarray(v_hat_x) <= 0):
        raise InvalidInput("variance prediction must be positive", {"v_hat_x": np.asarray(v_hat_x).tolist()})
    return (tau_hat_x - f_x) / v_hat_x


def threshold_weight(w_tilde: ArrayLike, eps: float) -> ArrayLike:
    """
    sgn(w) * max(eps, |w|) with sgn(0) := +1, so |result| >= eps always
    """
    sign = np.where(np.asarray(w_tilde) < 0, -1.0, 1.0)
    result = sign * np.maximum(eps, np.abs(w_tilde))
    return result.item() if np.ndim(result) == 0 else result
