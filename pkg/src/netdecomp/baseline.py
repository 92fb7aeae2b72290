"""Normalized spectral clustering of the joint BS/user graph, used as a comparison baseline."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.cluster import KMeans

from .metric import Partition


class DegenerateInput(ValueError):
    pass


@dataclass
class SpectralConfig:
    num_clusters: int
    kmeans_restarts: int = 10
    kmeans_max_iters: int = 300
    seed: int = 0

    def __post_init__(self):
        if self.num_clusters < 1:
            raise ValueError("num_clusters must be >= 1")
        if self.kmeans_restarts < 1:
            raise ValueError("kmeans_restarts must be >= 1")


def spectral_embedding(w: np.ndarray, k: int) -> np.ndarray:
    """Row-normalized eigenvectors of the k smallest eigenvalues of I - D^-1/2 A D^-1/2."""
    b, u = w.shape
    # weights span ~10 orders of magnitude; rescaling leaves the normalized Laplacian unchanged
    a = np.zeros((b + u, b + u))
    a[:b, b:] = w / w.max()
    a[b:, :b] = a[:b, b:].T
    deg = a.sum(axis=1)
    deg[deg == 0] = 1.0
    inv_sqrt = 1.0 / np.sqrt(deg)
    lap = np.eye(b + u) - inv_sqrt[:, None] * a * inv_sqrt[None, :]
    _, vecs = np.linalg.eigh(lap)
    emb = vecs[:, :k]
    norms = np.linalg.norm(emb, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return emb / norms


def spectral_clustering(w: np.ndarray, cfg: SpectralConfig) -> Partition:
    """Cluster BSs and users jointly, then give every BS-less user cluster a BS.

    The repair moves, into each user-only cluster, the BS with the largest
    weight towards that cluster's users, taken from a cluster that keeps at
    least one BS (or has no users). The result may contain BS-only clusters
    and is meant to be scored with the ``switch_off`` convention.
    """
    w = np.asarray(w, dtype=float)
    if not np.any(w > 0):
        raise DegenerateInput("weight matrix has no positive entry")
    b, u = w.shape
    M = cfg.num_clusters
    if M > b + u:
        raise ValueError("more clusters than vertices")
    if M == 1:
        labels = np.zeros(b + u, dtype=int)
    else:
        emb = spectral_embedding(w, M)
        km = KMeans(n_clusters=M, n_init=cfg.kmeans_restarts, max_iter=cfg.kmeans_max_iters,
                    random_state=cfg.seed % (2**32))
        labels = km.fit_predict(emb)
    bs_lab, user_lab = labels[:b].copy(), labels[b:].copy()
    repaired = []
    for k in np.unique(user_lab).tolist():
        if np.any(bs_lab == k):
            continue
        users = user_lab == k
        gain = w[:, users].sum(axis=1)
        counts = np.bincount(bs_lab, minlength=labels.max() + 1)
        has_users = np.bincount(user_lab, minlength=labels.max() + 1) > 0
        movable = (counts[bs_lab] > 1) | ~has_users[bs_lab]
        cand = np.flatnonzero(movable & (gain > 0))
        if len(cand) == 0:
            continue
        i = int(cand[np.argmax(gain[cand])])
        bs_lab[i] = k
        repaired.append((k, i))
    p = Partition.from_labels(bs_lab, user_lab)
    p.info.update(requested=M, discarded=0, repaired=repaired)
    return p
