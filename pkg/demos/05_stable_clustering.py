"""
Stable clustering
=================

BSs propose to user clusters in order of the weight they send there. A
cluster keeps a BS while the weight leaving its BSs (usage) stays below the
weight reaching its users (capacity) without its least preferred member.
The result has no blocking pair, and every cluster's term obeys a bound set
by how much of its BSs' signal lands inside.
"""
from netdecomp import (build_preferences, build_weight_matrix, epsilon_bound_check, generate_scenario,
                       interference, stable_clustering, verify_stable)
from netdecomp.stable import bound_report_csv

w = build_weight_matrix(generate_scenario(50, 100, seed=4))
p = stable_clustering(w, 6)
print("proposals", p.info["proposals"], "rejections", p.info["rejections"],
      "(at most b*M =", 50 * 6, ")")
print("objective", interference(w, p).total)

prefs = build_preferences(w, [list(c.users) for c in p.clusters])
rep = verify_stable(w, p, prefs, exempt=p.info["fallback_bs"])
print("blocking pairs:", rep.blocking_pairs, "saturation ok:", rep.saturation_ok)

print("\nper-cluster bound check:")
print(bound_report_csv(epsilon_bound_check(w, p, prefs)))

# the floor variant only lets a BS propose where it sends at least half its best
pf = stable_clustering(w, 6, floor=True)
print("floor variant objective", interference(w, pf).total)
