"""Capacity-constrained stable assignment of BSs to user clusters.

Each BS ranks user clusters by the weight it sends into them. Each cluster
ranks BSs by the (negated) ratio of a BS's total weight to the part that lands
in the cluster, so a BS that spends most of its signal on the cluster is
preferred. A cluster's capacity is the weight arriving at its users; its usage
is the weight leaving its BSs. BSs propose Gale-Shapley style and clusters
eject their least preferred member while they stay saturated without it.
"""
from __future__ import annotations

import csv
import heapq
import io
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .assign import cluster_users
from .metric import Cluster, Partition, cut_weight, intra_weight


@dataclass
class PreferenceTable:
    pref_bs: np.ndarray       # (b, M): weight BS i sends into cluster k
    pref_cluster: np.ndarray  # (M, b): -row_sum[i] / pref_bs[i, k], -inf when pref_bs is 0
    capacity: np.ndarray      # (M,)
    row_sums: np.ndarray      # (b,)


def build_preferences(w: np.ndarray, user_clusters) -> PreferenceTable:
    b, u = w.shape
    pref_bs = np.zeros((b, len(user_clusters)))
    for k, g in enumerate(user_clusters):
        pref_bs[:, k] = w[:, list(g)].sum(axis=1)
    row_sums = w.sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        pref_cluster = np.where(pref_bs > 0, -row_sums[:, None] / np.where(pref_bs > 0, pref_bs, 1.0), -np.inf).T
    col = w.sum(axis=0)
    capacity = np.array([col[list(g)].sum() for g in user_clusters])
    return PreferenceTable(pref_bs, pref_cluster, capacity, row_sums)


def _least_preferred(prefs: PreferenceTable, k: int, members) -> int:
    # lowest preference, ties -> highest BS id
    return min(members, key=lambda i: (prefs.pref_cluster[k, i], -i))


@dataclass
class StableRun:
    bs_labels: np.ndarray
    proposals: int
    rejections: int
    fallback: list[int] = field(default_factory=list)


def stable_assign(w: np.ndarray, user_clusters, prefs: PreferenceTable | None = None,
                  floor: bool = False, observer=None) -> StableRun:
    """Run the proposal/ejection loop for fixed user clusters.

    BSs propose in ascending id; ejected BSs queue up again at the back. A BS
    rejected by every cluster it may propose to (with ``floor``, clusters it
    values below half of its best) joins its favourite cluster once the loop
    is over and is never ejected.

    ``observer(k, usage, capacity)``, if given, is called after every
    proposal has been fully processed (arrays are live; copy to keep them).
    """
    if prefs is None:
        prefs = build_preferences(w, user_clusters)
    b = w.shape[0]
    M = len(user_clusters)
    pb, pc, cap, rows = prefs.pref_bs, prefs.pref_cluster, prefs.capacity, prefs.row_sums
    # proposal order per BS: descending preference, ties -> lowest cluster index
    order = np.argsort(-pb, axis=1, kind="stable")
    if floor:
        allowed = pb >= 0.5 * pb.max(axis=1, keepdims=True)
    else:
        allowed = np.ones_like(pb, dtype=bool)
    next_choice = np.zeros(b, dtype=int)
    members: list[list] = [[] for _ in range(M)]  # min-heaps of (pref_cluster, -id)
    usage = np.zeros(M)
    labels = np.full(b, -1, dtype=int)
    queue = deque(range(b))
    fallback = []
    proposals = rejections = 0
    while queue:
        i = queue.popleft()
        k = None
        while next_choice[i] < M:
            cand = int(order[i, next_choice[i]])
            next_choice[i] += 1
            if allowed[i, cand]:
                k = cand
                break
        if k is None:
            fallback.append(i)
            continue
        proposals += 1
        heapq.heappush(members[k], (pc[k, i], -i))
        labels[i] = k
        usage[k] += rows[i]
        while members[k]:
            weakest = -members[k][0][1]
            if usage[k] - rows[weakest] < cap[k]:
                break
            heapq.heappop(members[k])
            usage[k] -= rows[weakest]
            labels[weakest] = -1
            rejections += 1
            queue.append(weakest)
        if observer is not None:
            observer(k, usage, cap)
    for i in fallback:
        labels[i] = int(order[i, 0])
    return StableRun(labels, proposals, rejections, fallback)


def stable_clustering(w: np.ndarray, n_clusters: int, floor: bool = False) -> Partition:
    """DPH-cluster the users, then attach BSs by capacity-constrained stable matching.

    Users with no weight at all are kept out of the merging and put in cluster 0.
    """
    b, u = w.shape
    if not 1 <= n_clusters <= u:
        raise ValueError(f"need 1 <= M <= {u}, got {n_clusters}")
    user_clusters, dead = cluster_users(w, n_clusters)
    run = stable_assign(w, user_clusters, floor=floor)
    clusters = [Cluster(np.flatnonzero(run.bs_labels == k).tolist(), g) for k, g in enumerate(user_clusters)]
    info = {
        "requested": n_clusters,
        "discarded": 0,
        "proposals": run.proposals,
        "rejections": run.rejections,
        "fallback_bs": run.fallback,
        "zero_weight_users": dead,
        "degenerate": not np.any(w > 0),
    }
    return Partition(clusters, b, u, info=info)


@dataclass
class StabilityReport:
    saturation_ok: bool
    unsaturated_clusters: list[int]
    blocking_pairs: list[tuple[int, int, int, int]]  # (bs, k, rival, m)

    @property
    def stable(self) -> bool:
        return self.saturation_ok and not self.blocking_pairs


def verify_stable(w: np.ndarray, p: Partition, prefs: PreferenceTable, exempt=()) -> StabilityReport:
    """Check the saturation condition and list every blocking pair.

    Saturation: after dropping its least preferred BS a cluster's usage falls
    below its capacity. BSs in ``exempt`` (those placed by the fallback after
    the proposal loop, see ``info["fallback_bs"]``) are never the dropped
    one. Blocking pair ``(bs, k, rival, m)``: ``bs`` in
    cluster ``k`` strictly prefers cluster ``m``, and ``m`` strictly prefers
    ``bs`` to its member ``rival``.
    """
    pb, pc, cap, rows = prefs.pref_bs, prefs.pref_cluster, prefs.capacity, prefs.row_sums
    exempt = set(exempt)
    bad = []
    for k, c in enumerate(p.clusters):
        candidates = [i for i in c.bs if i not in exempt]
        if not candidates:
            continue
        usage = rows[list(c.bs)].sum()
        weakest = _least_preferred(prefs, k, candidates)
        if not usage - rows[weakest] < cap[k]:
            bad.append(k)
    blocking = []
    for k, ck in enumerate(p.clusters):
        for i in ck.bs:
            for m, cm in enumerate(p.clusters):
                if m == k or not pb[i, m] > pb[i, k]:
                    continue
                for rival in cm.bs:
                    if pc[m, i] > pc[m, rival]:
                        blocking.append((i, k, rival, m))
    return StabilityReport(not bad, bad, blocking)


@dataclass
class BoundRow:
    cluster: int
    usage: float
    capacity: float
    epsilon: float
    leak_ratio: float  # largest row_sum / in-cluster weight over the cluster's BSs
    term: float
    bound: float
    ok: bool
    skipped: bool = False


def epsilon_bound_check(w: np.ndarray, p: Partition, prefs: PreferenceTable, rel_tol: float = 1e-9) -> list[BoundRow]:
    """Per cluster, check ``cut/intra <= (2 + eps) * leak_ratio - 2``.

    ``eps = max(0, capacity/usage - 1)`` and ``leak_ratio`` is minus the cluster's
    lowest preference over its BSs. Clusters with zero usage or zero intra
    weight are reported as skipped.
    """
    out = []
    for k, c in enumerate(p.clusters):
        usage = float(prefs.row_sums[list(c.bs)].sum())
        capacity = float(prefs.capacity[k])
        w_in = intra_weight(w, c.bs, c.users)
        if usage <= 0 or w_in <= 0:
            out.append(BoundRow(k, usage, capacity, math.nan, math.nan, math.inf, math.nan, True, True))
            continue
        eps = max(0.0, capacity / usage - 1.0)
        leak = -float(min(prefs.pref_cluster[k, i] for i in c.bs))
        term = cut_weight(w, c.bs, c.users) / w_in
        bound = (2.0 + eps) * leak - 2.0
        ok = term <= bound + rel_tol * max(abs(bound), (2.0 + eps) * leak)
        out.append(BoundRow(k, usage, capacity, eps, leak, term, bound, ok))
    return out


def bound_report_csv(rows: list[BoundRow]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["cluster", "usage", "capacity", "epsilon", "c_k", "term", "bound"])
    for r in rows:
        out.writerow([r.cluster, repr(r.usage), repr(r.capacity), repr(r.epsilon), repr(r.leak_ratio), repr(r.term), repr(r.bound)])
    return buf.getvalue()
