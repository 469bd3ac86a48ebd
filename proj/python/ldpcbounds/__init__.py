"""Converse bounds on achievable rates and parity-check density of binary
linear block codes over memoryless binary-input output-symmetric channels.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ldpcbounds._core import (
    BoundResult,
    Channel,
    CheckProfile,
    DegreeDistribution,
    DensityConstants,
    Diagnostics,
    LevelOptimum,
    QuantizationScheme,
    binary_entropy,
    bin_probabilities,
    capacity_limit_ebno_db,
    check_regular_profile,
    density_lower_bound,
    entropy_lower_bound,
    optimize_levels_density,
    optimize_levels_rate,
    parity_check_density,
    rate_upper_bound,
    sweep_density,
    sweep_thresholds,
    threshold_ebno_db,
)

__all__ = [
    "BoundResult",
    "Channel",
    "CheckProfile",
    "DegreeDistribution",
    "DensityConstants",
    "Diagnostics",
    "LevelOptimum",
    "QuantizationScheme",
    "binary_entropy",
    "bin_probabilities",
    "capacity_limit_ebno_db",
    "check_regular_profile",
    "density_lower_bound",
    "entropy_lower_bound",
    "optimize_levels_density",
    "optimize_levels_rate",
    "parity_check_density",
    "rate_upper_bound",
    "sweep_density",
    "sweep_thresholds",
    "threshold_ebno_db",
]

__version__ = "0.1.0"
