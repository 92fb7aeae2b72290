"""
The interference objective
==========================

For every cluster, cut weight (BS-user edges with one end inside) divided by
intra weight, summed over clusters. Two conventions decide what a cluster
without users means.
"""
import numpy as np

from netdecomp import STRICT, SWITCH_OFF, Cluster, Partition, capacity_usage, interference

# three BSs, two users
w = np.array([[4.0, 0.0],
              [2.0, 2.0],
              [0.0, 4.0]])

p = Partition([Cluster([0, 1], [0]), Cluster([2], [1])], n_bs=3, n_users=2)
rep = interference(w, p)
print("terms", rep.terms, "total", rep.total)          # 1/3 + 1/2

one = Partition([Cluster([0, 1, 2], [0, 1])], 3, 2)
print("single cluster:", interference(w, one).total)  # nothing crosses

# a BS-only cluster: rejected under strict, silenced under switch_off
q = Partition([Cluster([0], [0, 1]), Cluster([1, 2], [])], 3, 2)
print("switch_off:", interference(w, q, SWITCH_OFF).total)
try:
    interference(w, q, STRICT)
except ValueError as exc:
    print("strict:", exc)

# capacity (weight into the users) + usage (weight out of the BSs)
# counts every intra edge twice and every cut edge once
for (cap, use), c in zip(capacity_usage(w, p), p.clusters):
    print(c, "capacity", cap, "usage", use)

print("\nas CSV:\n" + p.to_csv())
