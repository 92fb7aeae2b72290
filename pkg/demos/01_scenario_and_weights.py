"""
Scenarios and path-loss weights
===============================

A scenario drops BSs and users uniformly on a square. The weight between a
BS and a user decays as distance**-alpha, floored at dist_min and cut to zero
beyond dist_max.
"""
import numpy as np

from netdecomp import build_weight_matrix, generate_scenario, path_loss_weight
from netdecomp.scenario import Scenario

s = generate_scenario(5, 8, side_length=1000.0, seed=3)
print("BS positions:\n", s.bs_positions.round(1))

w = build_weight_matrix(s)
print("\nweight matrix shape", w.shape, "nonzero entries", np.count_nonzero(w))
print("largest weight", w.max(), "at", np.unravel_index(w.argmax(), w.shape))

# the same number from the scalar helper
i, j = np.unravel_index(w.argmax(), w.shape)
print("scalar helper agrees:", path_loss_weight(s.bs_positions[i], s.user_positions[j]) == w[i, j])

# scenarios serialize to a plain text record and back
text = s.to_text()
print("\n" + "\n".join(text.splitlines()[:9]) + "\n...")
again = Scenario.from_text(text)
print("round trip exact:", np.array_equal(build_weight_matrix(again), w))
