"""
Application Settings and Configuration
Loads from environment variables with sensible defaults
"""

from typing import List, Optional
from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field


class Settings(BaseSettings):
    """Process-level settings loaded from environment variables (prefix GAAVI_)"""

    model_config = SettingsConfigDict(
        env_prefix="GAAVI_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # ========================================================================
    # Logging
    # ========================================================================
    log_level: str = Field(default="INFO", description="Log level")
    log_dir: Optional[str] = Field(default=None, description="Directory for rotating log files (unset = console only)")

    # ========================================================================
    # Execution
    # ========================================================================
    max_workers: int = Field(default=1, ge=1, description="Worker processes for Monte Carlo replicates")
    output_dir: str = Field(default="out", description="Default output directory")

    # ========================================================================
    # Reporting
    # ========================================================================
    grid_stride: int = Field(default=50, ge=1, description="Spacing of the rejection-time CDF grid")
    checkpoint_stride: int = Field(default=1, ge=1, description="Spacing of emitted step records")
    csv_float_format: str = Field(default=".15g", description="Float format for CSV output (>= 12 significant digits)")

    # ========================================================================
    # Procedure Defaults
    # ========================================================================
    default_alpha: float = Field(default=0.1, description="Error tolerance")
    default_rho: float = Field(default=0.06, description="Mixture boundary tightening parameter")
    default_t0: int = Field(default=250, description="Burn-in time")
    default_eps_scale: float = Field(default=0.1, description="Weight floor scale c0")
    default_gamma: float = Field(default=0.24, description="Weight floor decay rate")
    default_var_floor: float = Field(default=0.01, description="Variance floor l")
    default_var_ceiling: float = Field(default=1.0, description="Variance ceiling v_max")

    # ========================================================================
    # Regressor Defaults
    # ========================================================================
    default_regressor: str = Field(default="knn", description="Default regressor kind")
    default_knn_k: int = Field(default=50, description="Neighbours for k-NN")
    default_ridge_lr: float = Field(default=0.01, description="SGD step for ridge")
    default_ridge_l2: float = Field(default=1e-6, description="L2 penalty for ridge")
    default_mlp_hidden: List[int] = Field(default=[64, 64, 64], description="Hidden layer widths")
    default_mlp_adam_lr: float = Field(default=1e-3, description="Adam step for the network")

    # ========================================================================
    # Baseline
    # ========================================================================
    binned_warmup: int = Field(default=200, description="Contexts used to freeze bin edges (capped at t0)")
    default_bins: int = Field(default=8, description="Number of bins")


# Global settings instance
settings = Settings()
