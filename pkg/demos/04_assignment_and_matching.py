"""
From one-sided clusters to full partitions
==========================================

Similarity clustering groups BSs and sends each user to its strongest BS
group. DPH+matching groups users, gives each user cluster a distinct BS via
maximum-cardinality/maximum-weight matching, and places the remaining BSs
greedily. Pruning then switches off BSs that only add interference.
"""
from netdecomp import (dph_matching_best, generate_scenario, build_weight_matrix, interference,
                       match_clusters, prune_bs, similarity_clustering)
from netdecomp.assign import cluster_users
from netdecomp.metric import SWITCH_OFF

w = build_weight_matrix(generate_scenario(100, 50, seed=8))

for M in (10, 30):
    p = similarity_clustering(w, M)
    print(f"similarity M={M}: {len(p.clusters)} clusters kept, {p.info['discarded']} discarded,",
          f"objective {interference(w, p).total:.4f}")

groups, _ = cluster_users(w, 10)
m = match_clusters(w, groups)
print("\nmatched (cluster, BS) pairs:", m.pairs[:5], "...", "unmatched clusters:", m.unmatched)

p = dph_matching_best(w, 10)
before = interference(w, p).total
q = prune_bs(w, p)
after = interference(w, q, SWITCH_OFF).total
print(f"DPH+matching: {before:.4f}; after pruning {len(q.info['pruned'])} BSs: {after:.4f}")
