"""Turning a one-sided clustering into a full partition."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .dph import dph_clustering
from .metric import Cluster, Partition


@dataclass
class ClusterMatching:
    pairs: list[tuple[int, int]]
    weights: list[float]
    unmatched: list[int] = field(default_factory=list)


def _membership(groups, n):
    """Indicator matrix (n, len(groups))."""
    ind = np.zeros((n, len(groups)))
    for k, g in enumerate(groups):
        ind[list(g), k] = 1.0
    return ind


def _argmax_lowest(scores: np.ndarray) -> np.ndarray:
    # np.argmax keeps the first (lowest index) maximum
    return np.argmax(scores, axis=1)


def assign_users_best(w: np.ndarray, bs_clusters, n_clusters: int | None = None) -> Partition:
    """Send each user to the BS cluster with the largest total weight towards it.

    BS clusters that end up without users are dropped and their BSs switched
    off. Users whose weight to every cluster is zero go to cluster 0 and are
    listed in ``info["zero_weight_users"]``.
    """
    b, u = w.shape
    scores = w.T @ _membership(bs_clusters, b)
    user_lab = _argmax_lowest(scores)
    zero = np.flatnonzero(scores.max(axis=1) <= 0).tolist()
    kept = [k for k in range(len(bs_clusters)) if np.any(user_lab == k)]
    clusters = [Cluster(bs_clusters[k], np.flatnonzero(user_lab == k).tolist()) for k in kept]
    off = [i for k in range(len(bs_clusters)) if k not in kept for i in bs_clusters[k]]
    info = {
        "requested": n_clusters if n_clusters is not None else len(bs_clusters),
        "discarded": len(bs_clusters) - len(kept),
        "zero_weight_users": zero,
    }
    return Partition(clusters, b, u, switched_off=tuple(off), info=info)


def assign_bs_best(w: np.ndarray, user_clusters) -> tuple[np.ndarray, list[int]]:
    """Best user cluster index for every BS, plus the BSs with no weight to any cluster."""
    b, u = w.shape
    scores = w @ _membership(user_clusters, u)
    return _argmax_lowest(scores), np.flatnonzero(scores.max(axis=1) <= 0).tolist()


def match_clusters(w: np.ndarray, user_clusters) -> ClusterMatching:
    """Maximum-cardinality, then maximum-weight, matching of user clusters to BSs.

    Only pairs with positive total weight are allowed. Solved exactly as a
    rectangular assignment problem where forbidden pairs cost more than any
    achievable weight total.
    """
    b, u = w.shape
    gain = (w @ _membership(user_clusters, u)).T  # (M, b)
    allowed = gain > 0
    M = len(user_clusters)
    if not allowed.any():
        return ClusterMatching([], [], list(range(M)))
    scale = gain.max()
    cost = np.where(allowed, -gain / scale, M + 1.0)
    rows, cols = linear_sum_assignment(cost)
    pairs, weights = [], []
    for k, i in zip(rows.tolist(), cols.tolist()):
        if allowed[k, i]:
            pairs.append((k, i))
            weights.append(float(gain[k, i]))
    matched = {k for k, _ in pairs}
    return ClusterMatching(pairs, weights, [k for k in range(M) if k not in matched])


def cluster_users(w: np.ndarray, n_clusters: int) -> tuple[list[list[int]], list[int]]:
    """DPH clusters of the users that receive any weight; weightless users join cluster 0.

    A user with an all-zero column makes any cluster it sits in alone score
    ``inf``, so it is left out of the similarity merging. Returns the clusters
    and the list of weightless users.
    """
    live = np.flatnonzero(w.sum(axis=0) > 0)
    dead = np.flatnonzero(w.sum(axis=0) <= 0).tolist()
    if len(live) < n_clusters:
        clusters = dph_clustering(w.T, n_clusters).clusters
        return clusters, dead
    clusters = [live[c].tolist() for c in dph_clustering(w[:, live].T, n_clusters).clusters]
    clusters[0] = sorted(clusters[0] + dead)
    return clusters, dead


def similarity_clustering(w: np.ndarray, n_clusters: int, size_cap: int | None = None) -> Partition:
    """DPH-cluster the BSs, then attach every user to its best BS cluster."""
    res = dph_clustering(w, n_clusters, size_cap)
    p = assign_users_best(w, res.clusters, n_clusters)
    p.info["dph_complete"] = res.complete
    return p


def dph_matching_best(w: np.ndarray, n_clusters: int) -> Partition:
    """DPH-cluster the users, give each cluster one matched BS, place the rest greedily."""
    b, u = w.shape
    user_clusters, dead = cluster_users(w, n_clusters)
    matching = match_clusters(w, user_clusters)
    bs_lab, zero_bs = assign_bs_best(w, user_clusters)
    for k, i in matching.pairs:
        bs_lab[i] = k
    clusters = [Cluster(np.flatnonzero(bs_lab == k).tolist(), g) for k, g in enumerate(user_clusters)]
    matched_bs = {i for _, i in matching.pairs}
    info = {
        "requested": n_clusters,
        "discarded": 0,
        "unmatched_clusters": matching.unmatched,
        "zero_weight_bs": [i for i in zero_bs if i not in matched_bs],
        "zero_weight_users": dead,
    }
    return Partition(clusters, b, u, info=info)


def _cluster_term(w_in, w_cut):
    return math.inf if w_in <= 0 else w_cut / w_in


def prune_bs(w: np.ndarray, p: Partition) -> Partition:
    """Switch off BSs whose removal strictly lowers their own cluster's term.

    BSs are scanned in ascending id until no removal helps. Switched-off BSs
    lose all their edges, so other clusters' cuts can only shrink.
    """
    bs_lab, user_lab = p.labels()
    off = set(p.switched_off)
    alive = np.ones(w.shape[0], dtype=bool)
    alive[list(off)] = False
    user_in = [user_lab == k for k in range(len(p.clusters))]
    alive_col = w[alive].sum(axis=0)
    changed = True
    while changed:
        changed = False
        for i in range(w.shape[0]):
            k = bs_lab[i]
            if not alive[i] or k < 0:
                continue
            bs_in = (bs_lab == k) & alive
            inside = user_in[k]
            w_in = w[np.ix_(bs_in, inside)].sum()
            w_cut = w[np.ix_(bs_in, ~inside)].sum() + alive_col[inside].sum() - w_in
            own_in = w[i, inside].sum()
            own_out = w[i, ~inside].sum()
            before = _cluster_term(w_in, w_cut)
            after = _cluster_term(w_in - own_in, w_cut - own_out)
            # relative margin keeps rounding noise from counting as an improvement
            if after < before * (1.0 - 1e-12):
                alive[i] = False
                alive_col -= w[i]
                bs_lab[i] = -1
                off.add(i)
                changed = True
    clusters = [Cluster(np.flatnonzero(bs_lab == k).tolist(), c.users) for k, c in enumerate(p.clusters)]
    info = dict(p.info)
    info["pruned"] = sorted(off - set(p.switched_off))
    return Partition(clusters, p.n_bs, p.n_users, switched_off=tuple(sorted(off)), partial=p.partial, info=info)
