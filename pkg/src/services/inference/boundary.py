"""
Gaussian-Mixture Boundary
Time-uniform half-width for the running weighted mean, and rho tuning
"""

import math
from typing import Union

import numpy as np

from src.utils.errors import InvalidInput

ArrayLike = Union[float, np.ndarray]


def _as_output(value: np.ndarray) -> ArrayLike:
    return value.item() if np.ndim(value) == 0 else value


def _check_params(alpha: float, rho: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise InvalidInput("alpha must lie in (0, 1)", {"alpha": alpha})
    if not (rho > 0 and math.isfinite(rho)):
        raise InvalidInput("rho must be positive", {"rho": rho})


def mixture_half_width(t: ArrayLike, vhat: ArrayLike, alpha: float, rho: float) -> ArrayLike:
    """
    Half-width l_{t,alpha,rho}(vhat) of the one-sided mixture boundary

        sqrt( 2 (t vhat rho^2 + 1) / (t^2 rho^2) * log(1 + sqrt(t vhat rho^2 + 1) / (2 alpha)) )

    Accepts scalars or arrays (broadcast elementwise).

    Args:
        t: Number of observations, >= 1
        vhat: Variance estimate, >= 0 (0 gives the finite x=0 limit)
        alpha: Error tolerance in (0, 1)
        rho: Tightening parameter > 0

    Raises:
        InvalidInput: t < 1, vhat < 0 or non-finite, or invalid alpha/rho
    """
    _check_params(alpha, rho)
    t_arr = np.asarray(t, dtype=float)
    v_arr = np.asarray(vhat, dtype=float)
    if np.any(t_arr < 1) or not np.all(np.isfinite(t_arr)):
        raise InvalidInput("t must be >= 1", {"t": np.asarray(t).tolist()})
    if np.any(v_arr < 0) or not np.all(np.isfinite(v_arr)):
        raise InvalidInput("vhat must be finite and >= 0", {"vhat": np.asarray(vhat).tolist()})

    rho_sq = rho * rho
    s = t_arr * v_arr * rho_sq + 1.0
    log_term = np.log1p(np.sqrt(s) / (2.0 * alpha))
    width = np.sqrt(2.0 * s * log_term) / (t_arr * rho)
    return _as_output(width)


def lower_bound(psi_bar: ArrayLike, t: ArrayLike, vhat: ArrayLike, alpha: float, rho: float) -> ArrayLike:
    """L_t = psi_bar - l_{t,alpha,rho}(vhat); always strictly below psi_bar"""
    width = mixture_half_width(t, vhat, alpha, rho)
    return _as_output(np.asarray(psi_bar, dtype=float) - width)


def rho_for_target_time(t_star: float, alpha: float) -> float:
    """
    rho that approximately makes the one-sided boundary tightest at t_star

        rho = sqrt( (-2 log(2 alpha) + log(-2 log(2 alpha) + 1)) / t_star )

    Note: rho=0.06 at alpha=0.1 corresponds to t_star ~ 1294 under this
    formula, not the 750 sometimes quoted alongside it.

    Raises:
        InvalidInput: alpha outside (0, 0.5) or t_star < 1
    """
    if not 0.0 < alpha < 0.5:
        raise InvalidInput("alpha must lie in (0, 0.5) for rho tuning", {"alpha": alpha})
    if not t_star >= 1:
        raise InvalidInput("t_star must be >= 1", {"t_star": t_star})
    a = -2.0 * math.log(2.0 * alpha)
    return math.sqrt((a + math.log(a + 1.0)) / t_star)
