"""
Spectral baseline
=================

Normalized spectral clustering of the joint BS/user graph with k-means on the
row-normalized embedding. Clusters that end up without a BS get the best
movable one; what remains is scored with BS-only clusters switched off.
"""
from netdecomp import SpectralConfig, build_weight_matrix, generate_scenario, interference, spectral_clustering
from netdecomp.metric import SWITCH_OFF

w = build_weight_matrix(generate_scenario(50, 100, seed=1))
for M in (5, 10, 15):
    p = spectral_clustering(w, SpectralConfig(M, kmeans_restarts=10, seed=1))
    bs_only = sum(1 for c in p.clusters if not c.users)
    print(f"M={M:2d}: objective {interference(w, p, SWITCH_OFF).total:.4f},",
          f"{bs_only} BS-only clusters, {len(p.info['repaired'])} repairs")
