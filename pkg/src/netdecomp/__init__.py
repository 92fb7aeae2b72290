"""Interference-minimizing clustering of base stations and users.

Dot-product hierarchical clustering, matching- and stable-matching-based
assignment, a spectral baseline, and an exact brute-force oracle for tiny
instances.
"""
from .assign import (assign_bs_best, assign_users_best, dph_matching_best, match_clusters, prune_bs,
                     similarity_clustering)
from .baseline import SpectralConfig, spectral_clustering
from .dph import MergeState, dot_matrix, dph_clustering, dph_clustering_naive
from .metric import (STRICT, SWITCH_OFF, Cluster, InterferenceReport, InvalidPartition, Partition,
                     capacity_usage, cut_weight, interference, intra_weight)
from .oracle import exact_minimum, monotonicity_probe
from .scenario import Scenario, build_weight_matrix, generate_scenario, path_loss_weight
from .stable import build_preferences, epsilon_bound_check, stable_clustering, verify_stable

__all__ = [
    "Scenario", "generate_scenario", "build_weight_matrix", "path_loss_weight",
    "STRICT", "SWITCH_OFF", "Cluster", "Partition", "InvalidPartition", "InterferenceReport",
    "interference", "intra_weight", "cut_weight", "capacity_usage",
    "MergeState", "dot_matrix", "dph_clustering", "dph_clustering_naive",
    "assign_users_best", "assign_bs_best", "match_clusters", "similarity_clustering",
    "dph_matching_best", "prune_bs",
    "build_preferences", "stable_clustering", "verify_stable", "epsilon_bound_check",
    "SpectralConfig", "spectral_clustering",
    "exact_minimum", "monotonicity_probe",
]

__version__ = "0.1.0"
