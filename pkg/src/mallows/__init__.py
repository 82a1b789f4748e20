"""Classic and normalized Mallows models over rankings.

Exact closed-form statistics, dispersion normalization and its large-m
asymptotics, reproducible sampling, profile-level aggregates, brute-force
reference computations, a config-driven experiment runner, and ranking-file
ingestion.
"""

__version__ = "0.1.0"

from .analytic import (
    MallowsParams,
    expected_swap_distance,
    expected_swap_distance_geometric,
    expected_top_choice_position,
    mallows_pmf,
    normalization_constant,
    normalized_expected_position,
    normalized_first_beats_last,
    normalized_swap_distance,
    normalized_top_choice_prob,
    pairwise_beat_prob,
    top_choice_position_pmf,
)
from .core import (
    Profile,
    Ranking,
    identity_ranking,
    kendall_tau,
    random_restriction,
    restrict_profile,
)
from .normalize import (
    ConvergenceError,
    NormPhiSpec,
    dilog,
    limit_first_beats_last,
    limit_normalized_position,
    norm_phi_from_phi,
    norm_phi_from_rate,
    phi_from_norm_phi,
    rate_from_norm_phi,
    rate_kernel,
)
from .rng import SplitMix64
from .sampler import (
    DispersionSpec,
    InsertionTables,
    SamplerConfig,
    rim_sample,
    sample_pmf_check,
    sample_profile,
)
from .stats import (
    GroupStatistics,
    WinnerReport,
    borda,
    condorcet,
    emd_1d,
    frequency_matrix,
    group_statistics,
    pairwise_wins,
    plurality,
    positionwise_distance_from_identity,
    winner_report,
)

__all__ = [
    "__version__",
    "MallowsParams",
    "expected_swap_distance",
    "expected_swap_distance_geometric",
    "expected_top_choice_position",
    "mallows_pmf",
    "normalization_constant",
    "normalized_expected_position",
    "normalized_first_beats_last",
    "normalized_swap_distance",
    "normalized_top_choice_prob",
    "pairwise_beat_prob",
    "top_choice_position_pmf",
    "Profile",
    "Ranking",
    "identity_ranking",
    "kendall_tau",
    "random_restriction",
    "restrict_profile",
    "ConvergenceError",
    "NormPhiSpec",
    "dilog",
    "limit_first_beats_last",
    "limit_normalized_position",
    "norm_phi_from_phi",
    "norm_phi_from_rate",
    "phi_from_norm_phi",
    "rate_from_norm_phi",
    "rate_kernel",
    "SplitMix64",
    "DispersionSpec",
    "InsertionTables",
    "SamplerConfig",
    "rim_sample",
    "sample_pmf_check",
    "sample_profile",
    "GroupStatistics",
    "WinnerReport",
    "borda",
    "condorcet",
    "emd_1d",
    "frequency_matrix",
    "group_statistics",
    "pairwise_wins",
    "plurality",
    "positionwise_distance_from_identity",
    "winner_report",
]
