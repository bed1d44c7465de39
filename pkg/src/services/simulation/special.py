"""
Special Functions and Samplers
Standard normal CDF and Beta variates for the synthetic generators
"""

from typing import Union

import numpy as np
from scipy.special import ndtr

from src.utils.errors import InvalidInput

ArrayLike = Union[float, np.ndarray]

# Keeps Beta draws strictly inside (0, 1) when a gamma variate underflows
_UNIT_MARGIN = np.finfo(float).tiny


def std_normal_cdf(z: ArrayLike) -> ArrayLike:
    """Phi(z); elementwise for arrays"""
    arr = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidInput("std_normal_cdf needs finite input")
    out = ndtr(arr)
    return float(out) if out.ndim == 0 else out


def sample_beta(a: ArrayLike, b: ArrayLike, rng: np.random.Generator) -> ArrayLike:
    """
    Beta(a, b) as G_a / (G_a + G_b) with independent Gamma(a), Gamma(b) draws.

    Array shapes broadcast; one draw per element.
    """
    a_arr = np.asarray(a, dtype=float)
    b_arr = np.asarray(b, dtype=float)
    if np.any(a_arr <= 0) or np.any(b_arr <= 0):
        raise InvalidInput("Beta shape parameters must be positive")
    ga = rng.standard_gamma(a_arr)
    gb = rng.standard_gamma(b_arr)
    total = ga + gb
    # both gammas can underflow for tiny shapes; fall back to the mean
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(total > 0, ga / np.where(total > 0, total, 1.0), a_arr / (a_arr + b_arr))
    ratio = np.clip(ratio, _UNIT_MARGIN, 1.0 - np.finfo(float).epsneg)
    return float(ratio) if np.ndim(ratio) == 0 else ratio
