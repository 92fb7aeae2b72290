"""Exact minimum of the interference objective by enumerating set partitions.

Vertices are ordered BSs first, then users. Partitions into exactly M blocks
are enumerated as restricted growth strings (RGS) in lexicographic order.
"""
from __future__ import annotations

import math
from typing import Iterator

import numpy as np

from .metric import STRICT, SWITCH_OFF, Partition

MAX_VERTICES = 12
_CHUNK = 20000


class InstanceTooLarge(ValueError):
    pass


def restricted_growth_strings(n: int, m: int, reverse: bool = False) -> Iterator[tuple[int, ...]]:
    """All RGS of length ``n`` with exactly ``m`` distinct values.

    Lexicographic order, or its exact reverse with ``reverse=True``.
    """
    if not 1 <= m <= n:
        return
    s = [0] * n

    def rec(pos, used):
        if n - pos < m - used:
            return
        if pos == n:
            yield tuple(s)
            return
        digits = range(min(used + 1, m))
        for d in (reversed(digits) if reverse else digits):
            s[pos] = d
            yield from rec(pos + 1, max(used, d + 1))

    yield from rec(1, 1)


def _objective_batch(w: np.ndarray, labels: np.ndarray, m: int, convention: str) -> np.ndarray:
    """Objective for each row of ``labels`` (P, b+u); inf when infeasible."""
    b, u = w.shape
    bl, ul = labels[:, :b], labels[:, b:]
    onehot_b = (bl[:, :, None] == np.arange(m)).astype(float)  # (P, b, m)
    onehot_u = (ul[:, :, None] == np.arange(m)).astype(float)  # (P, u, m)
    has_bs = onehot_b.sum(axis=1) > 0
    has_user = onehot_u.sum(axis=1) > 0
    if convention == STRICT:
        alive = np.ones((len(labels), b))
    else:
        # BSs of user-less clusters are silenced
        alive = np.take_along_axis(has_user, bl, axis=1).astype(float)
    weff_b = onehot_b * alive[:, :, None]
    w_in = np.einsum("pim,ij,pjm->pm", weff_b, w, onehot_u)
    # cut summed directly over crossing edges, so no cancellation against w_in
    outside_b = alive[:, :, None] - weff_b
    cut = (np.einsum("pim,ij,pjm->pm", weff_b, w, 1.0 - onehot_u)
           + np.einsum("pim,ij,pjm->pm", outside_b, w, onehot_u))
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(w_in > 0, cut / np.where(w_in > 0, w_in, 1.0), np.inf)
    terms = np.where(has_user, terms, 0.0)
    total = terms.sum(axis=1)
    if convention == STRICT:
        total[~np.all(has_bs & has_user, axis=1)] = np.inf
    return total


def exact_minimum(w: np.ndarray, n_clusters: int, convention: str = STRICT,
                  reverse: bool = False) -> tuple[float, Partition | None]:
    """Minimum objective over partitions into exactly ``n_clusters`` clusters.

    Under ``strict`` a partition with a BS-only or user-only cluster is
    infeasible. Returns ``(inf, None)`` when nothing is feasible. Among ties
    the lexicographically smallest RGS wins (also with ``reverse=True``, which
    only changes the enumeration order).
    """
    if convention not in (STRICT, SWITCH_OFF):
        raise ValueError(f"unknown convention {convention!r}")
    w = np.asarray(w, dtype=float)
    b, u = w.shape
    n = b + u
    if n > MAX_VERTICES:
        raise InstanceTooLarge(f"{n} vertices exceeds the enumeration guard of {MAX_VERTICES}")
    if not 1 <= n_clusters <= n:
        raise ValueError(f"need 1 <= M <= {n}")
    best_val, best_rgs = math.inf, None
    gen = restricted_growth_strings(n, n_clusters, reverse=reverse)
    while True:
        chunk = [s for _, s in zip(range(_CHUNK), gen)]
        if not chunk:
            break
        labels = np.array(chunk, dtype=np.int64)
        vals = _objective_batch(w, labels, n_clusters, convention)
        v = vals.min()
        if v == math.inf:
            continue
        for idx in np.flatnonzero(vals == v).tolist():
            cand = chunk[idx]
            if v < best_val or (v == best_val and cand < best_rgs):
                best_val, best_rgs = float(v), cand
    if best_rgs is None:
        return math.inf, None
    lab = np.array(best_rgs)
    p = Partition.from_labels(lab[:b], lab[b:])
    p.info["rgs"] = best_rgs
    return best_val, p


def monotonicity_probe(w: np.ndarray, max_clusters: int, convention: str = STRICT) -> list[float]:
    """Exact minima for M = 1..max_clusters."""
    return [exact_minimum(w, m, convention)[0] for m in range(1, max_clusters + 1)]
