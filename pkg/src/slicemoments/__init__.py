"""Quantile-sliced robust moment systems (MAD and MedAD moments)."""

__version__ = "0.1.0"

from .comparators import classical_moments, sample_l_moments
from .distributions import DistributionSpec, RngStream, make_distribution, sample
from .errors import InvalidParameterError, MomentsUndefinedError, SolverError
from .experiments import (
    CauchyEstimate,
    SimulationConfig,
    estimate_cauchy,
    run_mc_study,
    sampling_distribution_study,
)
from .mad import (
    MomentSet,
    mad_asymptotic_variance,
    population_mad_moments,
    sample_mad_moments,
    sample_median,
    slice_partition,
)
from .medad import (
    folded_cdf,
    population_medad_moments,
    sample_medad_moments,
    slice_median_solve,
)
from .robustness import (
    breakdown_point,
    contamination_sweep,
    median_influence,
    sensitivity_curve,
)

__all__ = [
    "CauchyEstimate",
    "DistributionSpec",
    "InvalidParameterError",
    "MomentSet",
    "MomentsUndefinedError",
    "RngStream",
    "SimulationConfig",
    "SolverError",
    "breakdown_point",
    "classical_moments",
    "contamination_sweep",
    "estimate_cauchy",
    "folded_cdf",
    "mad_asymptotic_variance",
    "make_distribution",
    "median_influence",
    "population_mad_moments",
    "population_medad_moments",
    "run_mc_study",
    "sample",
    "sample_l_moments",
    "sample_mad_moments",
    "sample_medad_moments",
    "sample_median",
    "sampling_distribution_study",
    "sensitivity_curve",
    "slice_median_solve",
    "slice_partition",
]
