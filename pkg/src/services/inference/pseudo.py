"""
Pseudo-Outcomes
Conditionally unbiased per-observation statistics for tau(x)
"""

import math

from src.models.observation import Observation, ObservationCate, ObservationCmf
from src.utils.errors import InvalidInput, StreamKindMismatch


def phi_cmf(obs: ObservationCmf) -> float:
    """The outcome itself"""
    return obs.y


def phi_cate(obs: ObservationCate, g1: float, g0: float) -> float:
    """
    Augmented inverse-propensity contrast

        [g1 + 1[a=1](y - g1)/pi(x,1)] - [g0 + 1[a=0](y - g0)/pi(x,0)]

    Args:
        obs: CATE observation carrying its propensity
        g1: Prediction of E[Y | X=x, A=1] made before seeing obs
        g0: Prediction of E[Y | X=x, A=0] made before seeing obs
    """
    if not 0.0 < obs.pi1 < 1.0:
        raise InvalidInput("pi1 must lie strictly inside (0, 1)", {"pi1": obs.pi1})
    if not (math.isfinite(g1) and math.isfinite(g0)):
        raise InvalidInput("outcome predictions must be finite", {"g1": g1, "g0": g0})

    treated = g1 + (obs.y - g1) / obs.pi1 if obs.a == 1 else g1
    control = g0 + (obs.y - g0) / (1.0 - obs.pi1) if obs.a == 0 else g0
    return treated - control


def pseudo_outcome(obs: Observation, g1: float = 0.0, g0: float = 0.0) -> float:
    """Dispatch on stream kind"""
    if isinstance(obs, ObservationCmf):
        return phi_cmf(obs)
    if isinstance(obs, ObservationCate):
        return phi_cate(obs, g1, g0)
    raise StreamKindMismatch(f"unsupported observation type {type(obs).__name__}")
