"""
Exact minima on tiny instances
==============================

Every partition into exactly M blocks is enumerated as a restricted growth
string and scored in vectorized chunks. Useful as ground truth for the
heuristics; refused above 12 vertices.
"""
import numpy as np

from netdecomp import dph_matching_best, exact_minimum, interference, monotonicity_probe, similarity_clustering
from netdecomp.metric import SWITCH_OFF
from netdecomp.oracle import restricted_growth_strings

print("partitions of 5 vertices into 2 blocks:", len(list(restricted_growth_strings(5, 2))))

w = np.array([[4.0, 0.0], [2.0, 2.0], [0.0, 4.0]])
value, p = exact_minimum(w, 2)
print("optimum", value, "reached by", p.clusters, "rgs", p.info["rgs"])
print("minima for M = 1..3:", monotonicity_probe(w, 3))

rng = np.random.default_rng(0)
w = rng.random((4, 5))
for M in (2, 3):
    best, _ = exact_minimum(w, M)
    mat = interference(w, dph_matching_best(w, M)).total
    print(f"M={M}: oracle {best:.4f} matching {mat:.4f}")

    # similarity may drop user-less BS groups and switch their BSs off; the
    # fair reference is then the switch_off optimum with the off pool as one block
    p = similarity_clustering(w, M)
    sim = interference(w, p).total
    if p.switched_off:
        ref, _ = exact_minimum(w, len(p.clusters) + 1, SWITCH_OFF)
        print(f"      similarity kept {len(p.clusters)} clusters, switched off {p.switched_off}:",
              f"{sim:.4f} vs switch_off optimum {ref:.4f}")
    else:
        print(f"      similarity {sim:.4f}")
