"""Dot-product hierarchical clustering of the rows of a weight matrix.

Clusters are merged greedily by the cosine similarity of their summed weight
rows. The Gram matrix ``w @ w.T`` is computed once; afterwards a merge only
adds two rows/columns of it, and candidate pairs live in a max-heap with lazy
deletion.

An active cluster is identified by the smallest original row id it contains.
Ties in similarity go to the lexicographically smallest pair of such ids.
"""
from __future__ import annotations

import csv
import heapq
import io
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class MergeStep:
    round: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    rho: float


@dataclass
class DPHResult:
    clusters: list[list[int]]
    trace: list[MergeStep]
    complete: bool = True

    @property
    def pairs(self) -> list[tuple[int, int]]:
        """Merged pairs as (min id of a, min id of b)."""
        return [(s.a[0], s.b[0]) for s in self.trace]

    def trace_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["round", "cluster_a_members", "cluster_b_members", "rho"])
        for s in self.trace:
            out.writerow([s.round, " ".join(map(str, s.a)), " ".join(map(str, s.b)), repr(s.rho)])
        return buf.getvalue()


def dot_matrix(w: np.ndarray) -> np.ndarray:
    """Gram matrix of the rows of ``w``."""
    w = np.asarray(w, dtype=float)
    g = w @ w.T
    # BLAS may round the two triangles differently
    return np.triu(g) + np.triu(g, 1).T


def _rho(dkm, dkk, dmm):
    # works elementwise on arrays and on scalars with identical rounding
    den = np.sqrt(dkk * dmm)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(den > 0, dkm / np.where(den > 0, den, 1.0), 0.0)
    return np.minimum(r, 1.0)


@dataclass
class MergeState:
    dot: np.ndarray
    members: dict[int, list[int]]
    size_cap: int | None = None
    versions: np.ndarray = None
    heap: list = field(default_factory=list)

    @classmethod
    def from_weights(cls, w: np.ndarray, size_cap: int | None = None) -> "MergeState":
        dot = dot_matrix(w)
        n = len(dot)
        state = cls(dot, {i: [i] for i in range(n)}, size_cap, np.zeros(n, dtype=np.int64))
        if n > 1 and (size_cap is None or size_cap >= 2):
            diag = np.diag(dot)
            r = _rho(dot, diag[:, None], diag[None, :])
            ii, jj = np.nonzero(np.triu(r > 0, 1))
            vals = (-r[ii, jj]).tolist()
            zeros = [0] * len(vals)
            state.heap = list(zip(vals, ii.tolist(), jj.tolist(), zeros, zeros))
            heapq.heapify(state.heap)
        return state

    @property
    def active(self) -> list[int]:
        return sorted(self.members)

    def rho(self, k: int, m: int) -> float:
        d = self.dot
        return float(_rho(d[k, m], d[k, k], d[m, m]))

    def _admissible(self, k, m):
        return self.size_cap is None or len(self.members[k]) + len(self.members[m]) <= self.size_cap

    def merge(self, k: int, m: int) -> int:
        """Merge clusters ``k`` and ``m``; returns the id of the merged cluster."""
        if k == m or k not in self.members or m not in self.members:
            raise ValueError("can only merge two distinct active clusters")
        k, m = min(k, m), max(k, m)
        d = self.dot
        d[k, :] += d[m, :]
        d[:, k] += d[:, m]
        d[m, :] = 0.0
        d[:, m] = 0.0
        self.members[k] = sorted(self.members[k] + self.members.pop(m))
        self.versions[k] += 1
        self.versions[m] += 1
        others = np.array([j for j in self.members if j != k], dtype=int)
        if len(others):
            r = _rho(d[k, others], d[k, k], d[others, others])
            for j, rj in zip(others.tolist(), r.tolist()):
                if rj > 0 and self._admissible(k, j):
                    a, b = (k, j) if k < j else (j, k)
                    heapq.heappush(self.heap, (-rj, a, b, int(self.versions[a]), int(self.versions[b])))
        return k

    def pop_best(self) -> tuple[int, int, float] | None:
        """Best admissible pair ``(a, b, rho)`` or None if no pair can merge."""
        heap, ver = self.heap, self.versions
        while heap:
            negr, a, b, va, vb = heap[0]
            if ver[a] == va and ver[b] == vb and a in self.members and b in self.members:
                return a, b, -negr
            heapq.heappop(heap)
        # only zero-similarity pairs remain
        act = self.active
        for x, a in enumerate(act):
            for b in act[x + 1:]:
                if self._admissible(a, b):
                    return a, b, 0.0
        return None


def _check_args(n, n_clusters, size_cap):
    if not 1 <= n_clusters <= n:
        raise ValueError(f"need 1 <= M <= {n}, got {n_clusters}")
    if size_cap is not None and size_cap * n_clusters < n:
        raise ValueError(f"size cap {size_cap} cannot fit {n} rows into {n_clusters} clusters")


def dph_clustering(w: np.ndarray, n_clusters: int, size_cap: int | None = None) -> DPHResult:
    """Agglomerate the rows of ``w`` into ``n_clusters`` clusters.

    With ``size_cap`` only pairs whose union has at most that many rows may
    merge; if no such pair remains early, the result has ``complete=False``.
    """
    w = np.asarray(w, dtype=float)
    n = w.shape[0]
    _check_args(n, n_clusters, size_cap)
    state = MergeState.from_weights(w, size_cap)
    trace = []
    complete = True
    for r in range(n - n_clusters):
        best = state.pop_best()
        if best is None:
            complete = False
            break
        a, b, rho = best
        trace.append(MergeStep(r, tuple(state.members[a]), tuple(state.members[b]), rho))
        state.merge(a, b)
    return DPHResult([state.members[k] for k in state.active], trace, complete)


def dph_clustering_naive(w: np.ndarray, n_clusters: int, size_cap: int | None = None) -> DPHResult:
    """Reference implementation: rescan every active pair each round, no heap.

    The Gram matrix is updated with the same row/column sums as ``MergeState``
    so both versions see bit-identical similarities.
    """
    w = np.asarray(w, dtype=float)
    n = w.shape[0]
    _check_args(n, n_clusters, size_cap)
    dot = dot_matrix(w)
    clusters = [[i] for i in range(n)]
    ids = list(range(n))  # row of dot holding each cluster; always its smallest member
    trace = []
    complete = True
    for r in range(n - n_clusters):
        sub = dot[np.ix_(ids, ids)]
        diag = np.diag(sub)
        rho_all = _rho(sub, diag[:, None], diag[None, :])
        sizes = np.array([len(c) for c in clusters])
        ok = np.triu(np.ones_like(rho_all, dtype=bool), 1)
        if size_cap is not None:
            ok &= sizes[:, None] + sizes[None, :] <= size_cap
        if not ok.any():
            complete = False
            break
        masked = np.where(ok, rho_all, -1.0)
        # argmax returns the first maximum in row-major order: the lexicographic tie-break
        x, y = np.unravel_index(int(np.argmax(masked)), masked.shape)
        rho, x, y = float(masked[x, y]), int(x), int(y)
        trace.append(MergeStep(r, tuple(clusters[x]), tuple(clusters[y]), rho))
        k, m = ids[x], ids[y]
        dot[k, :] += dot[m, :]
        dot[:, k] += dot[:, m]
        dot[m, :] = 0.0
        dot[:, m] = 0.0
        clusters[x] = sorted(clusters[x] + clusters[y])
        del clusters[y], ids[y]
    return DPHResult(clusters, trace, complete)
