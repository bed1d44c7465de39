"""
Synthetic Data Generators
Single-index Beta outcome streams (null, step, bump, sine) and binary-treatment
streams with a known propensity
"""

import math
from enum import Enum
from typing import Callable, Iterator, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.observation import ObservationCate, ObservationCmf
from src.services.regression.factory import GroundTruth
from src.services.simulation.special import sample_beta, std_normal_cdf
from src.utils.errors import DimensionMismatch, InvalidInput, OutOfRange


DEFAULT_DIMENSION = 10


class Shape(str, Enum):
    NULL = "null"
    STEP = "step"
    BUMP = "bump"
    SINE = "sine"


# (delta, concentration) used when a run does not override them
PRESETS = {
    Shape.NULL: (0.0, 5.0),
    Shape.STEP: (0.02, 50.0),
    Shape.BUMP: (0.15, 5.0),
    Shape.SINE: (0.15, 5.0),
}

BUMP_WINDOW = (0.4, 0.6)


class ShapeSpec(BaseModel):
    """
    Conditional mean m(zeta) of a Beta outcome, zeta = latent(x).

    Every shape deviates from 0.5 by at most delta, so m stays inside (0, 1)
    exactly when delta < 0.5.
    """

    model_config = ConfigDict(frozen=True)

    shape: Shape
    delta: float = Field(default=0.0, ge=0)
    conc: float = Field(default=5.0, gt=0, description="Beta concentration c")
    dimension: int = Field(default=DEFAULT_DIMENSION, ge=1)

    @model_validator(mode="after")
    def _mean_inside_unit(self):
        if self.shape != Shape.NULL and not self.delta < 0.5:
            raise OutOfRange(["delta"], f"delta={self.delta} pushes m(zeta) outside (0, 1)")
        return self


def shape_spec(
    shape: Shape,
    delta: Optional[float] = None,
    conc: Optional[float] = None,
    dimension: int = DEFAULT_DIMENSION,
) -> ShapeSpec:
    """ShapeSpec with the preset delta and concentration filling unset values"""
    shape = Shape(shape)
    preset_delta, preset_conc = PRESETS[shape]
    return ShapeSpec(
        shape=shape,
        delta=preset_delta if delta is None else delta,
        conc=preset_conc if conc is None else conc,
        dimension=dimension,
    )


def latent(x: np.ndarray, dimension: Optional[int] = None) -> float:
    """
    zeta = Phi(2/sqrt(d) * sum_j (x_j - 0.5)).

    With Unif[0,1] components the index has variance d/12 * 4/d = 1/3 for
    every d.
    """
    x = np.asarray(x, dtype=float).ravel()
    if dimension is not None and x.size != dimension:
        raise DimensionMismatch(dimension, x.size)
    if x.size == 0:
        raise DimensionMismatch(dimension or 1, 0)
    index = 2.0 / math.sqrt(x.size) * float(np.sum(x - 0.5))
    return std_normal_cdf(index)


def mean_shape(spec: ShapeSpec, zeta: float) -> float:
    if spec.shape == Shape.NULL:
        return 0.5
    if spec.shape == Shape.STEP:
        return 0.5 + spec.delta * (1.0 if zeta >= 0.5 else 0.0)
    if spec.shape == Shape.BUMP:
        lo, hi = BUMP_WINDOW
        return 0.5 + spec.delta * (1.0 if lo <= zeta <= hi else 0.0)
    return 0.5 + spec.delta * math.sin(4.0 * math.pi * zeta)


def sample_dgp1(spec: ShapeSpec, rng: np.random.Generator) -> ObservationCmf:
    """x ~ Unif[0,1]^d, y ~ Beta(c m, c (1 - m)) with m = m(latent(x))"""
    x = rng.random(spec.dimension)
    m = mean_shape(spec, latent(x))
    y = sample_beta(spec.conc * m, spec.conc * (1.0 - m), rng)
    return ObservationCmf(x=x, y=y)


def dgp1_stream(spec: ShapeSpec, rng: np.random.Generator) -> Iterator[ObservationCmf]:
    """Unbounded stream; callers cut it at their horizon"""
    while True:
        yield sample_dgp1(spec, rng)


def dgp1_truth(spec: ShapeSpec) -> GroundTruth:
    """True conditional mean and variance, for oracle regressors"""

    def mean(x: np.ndarray) -> float:
        return mean_shape(spec, latent(x))

    def variance(x: np.ndarray) -> float:
        m = mean(x)
        return m * (1.0 - m) / (spec.conc + 1.0)

    return GroundTruth(tau=mean, variance=variance)


class Dgp2Spec(BaseModel):
    """
    Binary treatment, Bernoulli outcome: A ~ Bernoulli(pi1(x)),
    Y ~ Bernoulli(mu0(x) + A tau(x)).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mu0: Callable[[np.ndarray], float]
    tau: Callable[[np.ndarray], float]
    pi1: Callable[[np.ndarray], float]
    dimension: int = Field(default=DEFAULT_DIMENSION, ge=1)

    def mu(self, x: np.ndarray, arm: int) -> float:
        return self.mu0(x) + (self.tau(x) if arm == 1 else 0.0)


def sample_dgp2(spec: Dgp2Spec, rng: np.random.Generator) -> ObservationCate:
    x = rng.random(spec.dimension)
    pi1 = float(spec.pi1(x))
    a = int(rng.random() < pi1)
    mu = spec.mu(x, a)
    if not 0.0 <= mu <= 1.0:
        raise InvalidInput("outcome mean mu0 + a * tau must lie in [0, 1]", {"mu": mu, "a": a})
    y = float(rng.random() < mu)
    return ObservationCate(x=x, a=a, y=y, pi1=pi1)


def dgp2_stream(spec: Dgp2Spec, rng: np.random.Generator) -> Iterator[ObservationCate]:
    while True:
        yield sample_dgp2(spec, rng)


def dgp2_truth(spec: Dgp2Spec) -> GroundTruth:
    """
    True effect, arm means and the variance of the doubly robust
    pseudo-outcome when the arm means are known.
    """

    def mu1(x: np.ndarray) -> float:
        return spec.mu(x, 1)

    def variance(x: np.ndarray) -> float:
        p1 = spec.pi1(x)
        m1, m0 = spec.mu(x, 1), spec.mu(x, 0)
        return m1 * (1.0 - m1) / p1 + m0 * (1.0 - m0) / (1.0 - p1)

    return GroundTruth(tau=spec.tau, variance=variance, mu1=mu1, mu0=spec.mu0)


def cate_preset(delta: float, pi1: float = 0.5, dimension: int = DEFAULT_DIMENSION) -> Dgp2Spec:
    """mu0 = 0.5, tau(x) = delta * sin(4 pi latent(x)), constant propensity"""
    if not abs(delta) < 0.5:
        raise OutOfRange(["delta"], f"|delta|={abs(delta)} must be below 0.5")
    if not 0.0 < pi1 < 1.0:
        raise OutOfRange(["pi1"], "pi1 must lie strictly inside (0, 1)")

    def tau(x: np.ndarray) -> float:
        return delta * math.sin(4.0 * math.pi * latent(x))

    return Dgp2Spec(
        mu0=lambda x: 0.5,
        tau=tau,
        pi1=lambda x: pi1,
        dimension=dimension,
    )
