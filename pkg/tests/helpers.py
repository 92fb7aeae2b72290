"""Independent brute-force references used across the test-suite."""
import math


def brute_force_matching(gain):
    """Max cardinality, then max weight, over all injective partial maps cluster -> BS with gain > 0."""
    M, b = gain.shape
    best = (0, 0.0)

    def rec(k, used, card, weight):
        nonlocal best
        if k == M:
            if (card, weight) > best:
                best = (card, weight)
            return
        rec(k + 1, used, card, weight)
        for i in range(b):
            if i not in used and gain[k, i] > 0:
                rec(k + 1, used | {i}, card + 1, weight + gain[k, i])

    rec(0, frozenset(), 0, 0.0)
    return best


def objective_from_scratch(w, bs_lab, user_lab):
    """Sum of cut/intra over clusters by a double loop over every BS-user pair; strict convention."""
    b, u = len(bs_lab), len(user_lab)
    labels = set(bs_lab) | set(user_lab)
    total = 0.0
    for k in sorted(labels):
        inside = cut = 0.0
        for i in range(b):
            for j in range(u):
                a, c = bs_lab[i] == k, user_lab[j] == k
                if a and c:
                    inside += w[i][j]
                elif a or c:
                    cut += w[i][j]
        if not any(l == k for l in user_lab) or not any(l == k for l in bs_lab):
            return math.inf
        total += math.inf if inside == 0 else cut / inside
    return total


def stirling2(n, k):
    s = [[0] * (k + 1) for _ in range(n + 1)]
    s[0][0] = 1
    for i in range(1, n + 1):
        for j in range(1, k + 1):
            s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1]
    return s[n][k]


def oracle_floor(w, p):
    """Exact minimum for the block structure ``p`` actually has.

    A partition with switched-off BSs is a switch_off-convention partition
    whose extra block is the off pool; otherwise it is a strict partition
    with ``len(p.clusters)`` blocks. Returns ``(floor, convention)``.
    """
    from netdecomp.metric import STRICT, SWITCH_OFF
    from netdecomp.oracle import exact_minimum

    if p.switched_off:
        return exact_minimum(w, len(p.clusters) + 1, SWITCH_OFF)[0], SWITCH_OFF
    return exact_minimum(w, len(p.clusters), STRICT)[0], STRICT
