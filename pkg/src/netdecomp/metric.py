"""Partitions of the bipartite BS/user graph and the normalized-cut interference objective."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

STRICT = "strict"
SWITCH_OFF = "switch_off"
CONVENTIONS = (STRICT, SWITCH_OFF)


class InvalidPartition(ValueError):
    pass


def _int_list(labels) -> list[int]:
    if isinstance(labels, np.ndarray):
        return labels.astype(int).tolist()
    return [int(k) for k in labels]


@dataclass(frozen=True)
class Cluster:
    bs: tuple[int, ...] = ()
    users: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bs", tuple(sorted(map(int, self.bs))))
        object.__setattr__(self, "users", tuple(sorted(map(int, self.users))))

    @classmethod
    def _presorted(cls, bs: tuple, users: tuple) -> "Cluster":
        # skips normalization; callers pass ascending tuples of ints
        c = object.__new__(cls)
        object.__setattr__(c, "bs", bs)
        object.__setattr__(c, "users", users)
        return c


@dataclass
class Partition:
    """Clusters over ``n_bs`` BSs and ``n_users`` users.

    BSs in ``switched_off`` belong to no cluster; their weight rows are ignored
    when the partition is evaluated. ``info`` carries algorithm diagnostics
    (discarded clusters, flagged vertices, proposal counts, ...).
    """

    clusters: list[Cluster]
    n_bs: int
    n_users: int
    switched_off: tuple[int, ...] = ()
    partial: bool = False
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        self.clusters = [c if isinstance(c, Cluster) else Cluster(*c) for c in self.clusters]
        self.switched_off = tuple(sorted(self.switched_off))

    def __len__(self):
        return len(self.clusters)

    def validate(self):
        bs = list(self.switched_off)
        users = []
        for c in self.clusters:
            if not c.bs and not c.users:
                raise InvalidPartition("empty cluster")
            bs.extend(c.bs)
            users.extend(c.users)
        for name, items, n in (("BS", bs, self.n_bs), ("user", users, self.n_users)):
            if len(set(items)) != len(items):
                raise InvalidPartition(f"{name} listed twice")
            if items and not (0 <= min(items) and max(items) < n):
                raise InvalidPartition(f"{name} index out of range")
            if not self.partial and len(items) != n:
                raise InvalidPartition("partition does not cover every vertex")

    def labels(self) -> tuple[np.ndarray, np.ndarray]:
        """Cluster index of every BS and user; -1 for switched-off or unassigned."""
        bs_lab = [-1] * self.n_bs
        user_lab = [-1] * self.n_users
        for k, c in enumerate(self.clusters):
            for i in c.bs:
                bs_lab[i] = k
            for j in c.users:
                user_lab[j] = k
        bs_lab, user_lab = np.array(bs_lab, dtype=int), np.array(user_lab, dtype=int)
        return bs_lab, user_lab

    @classmethod
    def from_labels(cls, bs_labels, user_labels, **kwargs) -> "Partition":
        """Build from per-vertex cluster labels; label -1 on a BS switches it off."""
        bs_labels = _int_list(bs_labels)
        user_labels = _int_list(user_labels)
        groups: dict[int, tuple[list, list]] = {}
        for i, k in enumerate(bs_labels):
            if k >= 0:
                groups.setdefault(k, ([], []))[0].append(i)
        for j, k in enumerate(user_labels):
            groups.setdefault(k, ([], []))[1].append(j)
        clusters = [Cluster._presorted(tuple(groups[k][0]), tuple(groups[k][1])) for k in sorted(groups)]
        off = tuple(i for i, k in enumerate(bs_labels) if k < 0)
        return cls(clusters, len(bs_labels), len(user_labels), switched_off=off, **kwargs)

    def to_csv(self) -> str:
        """Rows ``kind,id,cluster_id``; switched-off BSs get cluster -1."""
        bs_lab, user_lab = self.labels()
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["kind", "id", "cluster_id"])
        out.writerows(("bs", i, int(k)) for i, k in enumerate(bs_lab))
        out.writerows(("user", j, int(k)) for j, k in enumerate(user_lab))
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "Partition":
        rows = list(csv.DictReader(io.StringIO(text)))
        bs = {int(r["id"]): int(r["cluster_id"]) for r in rows if r["kind"] == "bs"}
        users = {int(r["id"]): int(r["cluster_id"]) for r in rows if r["kind"] == "user"}
        return cls.from_labels([bs[i] for i in range(len(bs))], [users[j] for j in range(len(users))])


@dataclass
class InterferenceReport:
    terms: list[float]
    total: float
    convention: str

    @property
    def infinite_terms(self) -> int:
        return sum(math.isinf(t) for t in self.terms)

    def to_csv_row(self) -> str:
        return ",".join([self.convention, *(repr(t) for t in self.terms), repr(self.total)])


def intra_weight(w: np.ndarray, bs: Iterable[int], users: Iterable[int]) -> float:
    """Total weight of BS-user edges inside the cluster."""
    bs, users = sorted(bs), sorted(users)
    if not bs or not users:
        return 0.0
    return float(w[np.ix_(bs, users)].sum())


def cut_weight(w: np.ndarray, bs: Iterable[int], users: Iterable[int]) -> float:
    """Total weight of BS-user edges with exactly one endpoint inside the cluster."""
    bs_in = np.zeros(w.shape[0], dtype=bool)
    users_in = np.zeros(w.shape[1], dtype=bool)
    bs_in[list(bs)] = True
    users_in[list(users)] = True
    return float(w[np.ix_(bs_in, ~users_in)].sum() + w[np.ix_(~bs_in, users_in)].sum())


def effective_weights(w: np.ndarray, p: Partition, convention: str) -> np.ndarray:
    """Weights with switched-off BS rows zeroed (plus BS-only clusters under switch_off)."""
    off = list(p.switched_off)
    if convention == SWITCH_OFF:
        off += [i for c in p.clusters if not c.users for i in c.bs]
    if not off:
        return w
    w = w.copy()
    w[off, :] = 0.0
    return w


def _term(w_in: float, w_cut: float) -> float:
    return math.inf if w_in == 0 else w_cut / w_in


_SMALL = 64  # below this many entries plain loops beat numpy call overhead


def _cluster_sums(w, bs_lab, user_lab, K, silent):
    """Intra and cut weight per cluster; label ``K`` marks vertices outside every cluster."""
    if silent:
        w = w.copy()
        w[list(silent)] = 0.0
    # block[k, m]: weight from the BSs of cluster k to the users of cluster m
    pair = np.add.outer(np.multiply(bs_lab, K + 1), user_lab).ravel()
    block = np.bincount(pair, weights=w.ravel(), minlength=(K + 1) ** 2).reshape(K + 1, K + 1)
    inside = block.diagonal()[:K].tolist()
    block.flat[:: K + 2] = 0.0
    return inside, (block[:K].sum(axis=1) + block[:, :K].sum(axis=0)).tolist()


def _cluster_sums_loop(w, bs_lab, user_lab, K, silent):
    inside = [0.0] * (K + 1)
    cut = [0.0] * (K + 1)
    for i, row in enumerate(w.tolist()):
        if i in silent:
            continue
        k = bs_lab[i]
        for m, x in zip(user_lab, row):
            if k == m:
                inside[k] += x
            else:
                cut[k] += x
                cut[m] += x
    return inside, cut


def interference(w: np.ndarray, p: Partition, convention: str = STRICT) -> InterferenceReport:
    """Sum over clusters of cut weight divided by intra-cluster weight.

    A cluster holding users but no intra weight (in particular a cluster with
    no BS) contributes ``inf``. BS-only clusters are an error under ``strict``;
    under ``switch_off`` they contribute 0 and their BSs are silenced for every
    other cluster.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if convention == STRICT and any(not c.users for c in p.clusters):
        raise InvalidPartition("BS-only cluster under strict convention")
    p.validate()
    K = len(p.clusters)
    bs_lab = [K] * p.n_bs
    user_lab = [K] * p.n_users
    silent = set(p.switched_off)
    for k, c in enumerate(p.clusters):
        if c.users or convention == STRICT:
            for i in c.bs:
                bs_lab[i] = k
        else:
            silent.update(c.bs)
        for j in c.users:
            user_lab[j] = k
    w = np.asarray(w, dtype=float)
    sums = _cluster_sums_loop if w.size <= _SMALL else _cluster_sums
    inside, cut = sums(w, bs_lab, user_lab, K, silent)
    terms = [_term(inside[k], cut[k]) if c.users else 0.0 for k, c in enumerate(p.clusters)]
    total = math.inf if any(math.isinf(t) for t in terms) else math.fsum(terms)
    return InterferenceReport(terms, total, convention)


def capacity_usage(w: np.ndarray, p: Partition) -> list[tuple[float, float]]:
    """Per cluster: (weight arriving at its users from all BSs, weight leaving its BSs to all users)."""
    col = w.sum(axis=0)
    row = w.sum(axis=1)
    return [(float(col[list(c.users)].sum()), float(row[list(c.bs)].sum())) for c in p.clusters]

