"""
Simulation Services
Synthetic streams with known nuisance functions
"""

from src.services.simulation.dgp import (
    PRESETS,
    Dgp2Spec,
    Shape,
    ShapeSpec,
    cate_preset,
    dgp1_stream,
    dgp1_truth,
    dgp2_stream,
    dgp2_truth,
    latent,
    mean_shape,
    sample_dgp1,
    sample_dgp2,
    shape_spec,
)
from src.services.simulation.special import sample_beta, std_normal_cdf

__all__ = [
    "PRESETS",
    "Dgp2Spec",
    "Shape",
    "ShapeSpec",
    "cate_preset",
    "dgp1_stream",
    "dgp1_truth",
    "dgp2_stream",
    "dgp2_truth",
    "latent",
    "mean_shape",
    "sample_dgp1",
    "sample_dgp2",
    "shape_spec",
    "sample_beta",
    "std_normal_cdf",
]
