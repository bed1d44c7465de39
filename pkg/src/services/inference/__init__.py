"""
Inference Services
Boundary, pseudo-outcomes, weights, the sequential test and confidence sequences
"""

from src.services.inference.boundary import lower_bound, mixture_half_width, rho_for_target_time
from src.services.inference.confseq import GridCs, build_grid
from src.services.inference.engine import SequentialTest, TestState, decision, run_to_horizon
from src.services.inference.nuisance import NuisancePrediction, NuisanceSet
from src.services.inference.pseudo import phi_cate, phi_cmf, pseudo_outcome
from src.services.inference.weights import EpsilonSchedule, epsilon_at, raw_weight, threshold_weight

__all__ = [
    "lower_bound",
    "mixture_half_width",
    "rho_for_target_time",
    "GridCs",
    "build_grid",
    "SequentialTest",
    "TestState",
    "decision",
    "run_to_horizon",
    "NuisancePrediction",
    "NuisanceSet",
    "phi_cate",
    "phi_cmf",
    "pseudo_outcome",
    "EpsilonSchedule",
    "epsilon_at",
    "raw_weight",
    "threshold_weight",
]
