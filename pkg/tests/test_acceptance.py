"""Acceptance criteria, one test each, at the stated tolerances and time limits.

Run ``pytest tests/test_acceptance.py -v`` for a PASS/FAIL line per criterion
in the terminal summary; each test also prints the measured figures (``-s``).
"""
import math
import operator
import time

import numpy as np

from helpers import brute_force_matching, oracle_floor
from netdecomp.assign import dph_matching_best, match_clusters, prune_bs, similarity_clustering
from netdecomp.dph import dot_matrix, dph_clustering, dph_clustering_naive
from netdecomp.metric import (STRICT, SWITCH_OFF, InvalidPartition, Partition, capacity_usage, cut_weight,
                              interference, intra_weight)
from netdecomp.oracle import exact_minimum, restricted_growth_strings
from netdecomp.scenario import build_weight_matrix, generate_scenario
from netdecomp.stable import build_preferences, epsilon_bound_check, stable_clustering, verify_stable

PROTOCOL_SEEDS = range(1, 10)


def _reference_objective(w, bs_lab, user_lab, convention):
    """One pass over every BS-user pair; no shared code with the library."""
    b, u = len(bs_lab), len(user_lab)
    labels = sorted(set(bs_lab) | set(user_lab))
    with_users = set(user_lab)
    if convention == STRICT and any(k not in with_users for k in labels):
        return None  # BS-only cluster: not a strict partition
    silent = [convention == SWITCH_OFF and bs_lab[i] not in with_users for i in range(b)]
    inside = dict.fromkeys(labels, 0.0)
    cut = dict.fromkeys(labels, 0.0)
    for i in range(b):
        if silent[i]:
            continue
        for j in range(u):
            x = w[i][j]
            if bs_lab[i] == user_lab[j]:
                inside[bs_lab[i]] += x
            else:
                cut[bs_lab[i]] += x
                cut[user_lab[j]] += x
    total = 0.0
    for k in labels:
        if k not in with_users:
            continue
        if inside[k] == 0:
            return math.inf
        total += cut[k] / inside[k]
    return total


def _close(a, b, rel):
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= rel * abs(b)


def test_c01_objective_matches_independent_summation():
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    checked = 0
    for _ in range(50):
        w = rng.random((4, 4))
        wl = w.tolist()
        for m in range(1, 9):
            for rgs in restricted_growth_strings(8, m):
                bs_lab, user_lab = rgs[:4], rgs[4:]
                p = Partition.from_labels(bs_lab, user_lab)
                # strict where defined; partitions with a BS-only cluster must be
                # rejected there and are scored under switch_off instead
                conv = STRICT
                ref = _reference_objective(wl, bs_lab, user_lab, STRICT)
                if ref is None:
                    try:
                        interference(w, p, STRICT)
                        raise AssertionError(f"strict accepted BS-only cluster in {rgs}")
                    except InvalidPartition:
                        conv = SWITCH_OFF
                    ref = _reference_objective(wl, bs_lab, user_lab, SWITCH_OFF)
                got = interference(w, p, conv).total
                assert _close(got, ref, 1e-12), (rgs, conv, got, ref)
                checked += 1
    elapsed = time.perf_counter() - t0
    print(f"\n  {checked} evaluations in {elapsed:.2f} s")
    assert elapsed < 10.0


def test_c02_exact_minima_non_decreasing_in_cluster_count():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2)
    for _ in range(20):
        w = rng.random((3, 4))
        minima = [exact_minimum(w, m, STRICT)[0] for m in (1, 2, 3)]
        assert minima[0] <= minima[1] <= minima[2], minima
    elapsed = time.perf_counter() - t0
    print(f"\n  20 instances in {elapsed:.2f} s")
    assert elapsed < 30.0


def _random_matrix(rng, k):
    b, u = int(rng.integers(2, 201)), int(rng.integers(1, 101))
    if k == 0:
        b, u = 200, 100
    kind = k % 3
    if kind == 0:  # small integers produce many exact ties
        return rng.integers(0, 3, (b, u)).astype(float)
    if kind == 1:
        return rng.random((b, u)) * (rng.random((b, u)) < 0.2)
    s = generate_scenario(b, u, seed=int(rng.integers(1 << 30)), dist_max=300.0)
    return build_weight_matrix(s)


def test_c03_heap_trace_equals_naive_trace():
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    for k in range(30):
        w = _random_matrix(rng, k)
        cap = None if k % 2 else max(2, w.shape[0] // 5)
        fast = dph_clustering(w, 1 if cap is None else math.ceil(w.shape[0] / cap), cap)
        slow = dph_clustering_naive(w, 1 if cap is None else math.ceil(w.shape[0] / cap), cap)
        assert fast.pairs == slow.pairs, k
        assert fast.clusters == slow.clusters
    elapsed = time.perf_counter() - t0
    print(f"\n  30 matrices in {elapsed:.2f} s")
    assert elapsed < 60.0


def test_c04_dot_matrix_matches_triple_loop():
    rng = np.random.default_rng(4)
    for _ in range(2):
        w = rng.random((300, 200))
        rows = w.tolist()
        got = dot_matrix(w)
        worst = 0.0
        for i in range(300):
            ri = rows[i]
            for k in range(300):
                ref = math.fsum(map(operator.mul, ri, rows[k]))
                worst = max(worst, abs(got[i, k] - ref) / ref)
        print(f"\n  worst relative error {worst:.2e}")
        assert worst <= 1e-9


def test_c05_capacity_usage_identities():
    rng = np.random.default_rng(5)
    for _ in range(100):
        b, u = int(rng.integers(1, 30)), int(rng.integers(1, 30))
        w = rng.random((b, u)) * (rng.random((b, u)) < 0.6)
        m = int(rng.integers(1, max(b, u) + 1))
        p = Partition.from_labels(rng.integers(0, m, b), rng.integers(0, m, u))
        total = w.sum()
        cu = capacity_usage(w, p)
        for (cap, use), c in zip(cu, p.clusters):
            lhs = cap + use
            rhs = 2 * intra_weight(w, c.bs, c.users) + cut_weight(w, c.bs, c.users)
            assert abs(lhs - rhs) <= 1e-9 * max(abs(rhs), 1e-300)
        for s in (sum(c for c, _ in cu), sum(x for _, x in cu)):
            assert abs(s - total) <= 1e-9 * total


def test_c06_stable_clustering_contract():
    rng = np.random.default_rng(6)
    worst_ratio = 0.0
    for _ in range(50):
        b, u, m = int(rng.integers(20, 101)), int(rng.integers(20, 101)), int(rng.integers(2, 16))
        w = build_weight_matrix(generate_scenario(b, u, seed=int(rng.integers(1 << 30))))
        p = stable_clustering(w, m)
        assert p.info["proposals"] <= b * m
        worst_ratio = max(worst_ratio, p.info["proposals"] / (b * m))
        bs_lab, _ = p.labels()
        assert np.all(bs_lab >= 0)
        prefs = build_preferences(w, [list(c.users) for c in p.clusters])
        rep = verify_stable(w, p, prefs, exempt=p.info["fallback_bs"])
        assert rep.blocking_pairs == []
        for row in epsilon_bound_check(w, p, prefs):
            if row.usage > 0:
                assert not row.skipped and row.ok, row
    print(f"\n  max proposals / (b M) = {worst_ratio:.3f}")


def test_c07_matching_equals_exhaustive_optimum():
    rng = np.random.default_rng(7)
    for _ in range(200):
        b, u = int(rng.integers(1, 8)), int(rng.integers(1, 10))
        m = int(rng.integers(1, min(5, u) + 1))
        w = rng.random((b, u)) * (rng.random((b, u)) < 0.35)
        groups = [g.tolist() for g in np.array_split(rng.permutation(u), m)]
        got = match_clusters(w, groups)
        gain = np.array([[w[i, g].sum() for i in range(b)] for g in groups])
        card, weight = brute_force_matching(gain)
        assert len(got.pairs) == card
        assert math.isclose(sum(got.weights), weight, rel_tol=1e-12, abs_tol=1e-300)


def test_c08_heuristics_never_beat_oracle_and_prune_never_hurts():
    rng = np.random.default_rng(8)
    compared = 0
    for _ in range(25):
        b, u = int(rng.integers(2, 6)), int(rng.integers(2, 6))
        w = rng.random((b, u)) * (rng.random((b, u)) < 0.7)
        for m in range(1, min(b, u) + 1):
            for p in (similarity_clustering(w, m), dph_matching_best(w, m), stable_clustering(w, m)):
                floor, conv = oracle_floor(w, p)
                total = interference(w, p, conv).total
                if not math.isinf(floor):
                    assert total >= floor * (1 - 1e-12)
                    compared += 1
                if not p.switched_off and len(p.clusters) == m:
                    best = exact_minimum(w, m, STRICT)[0]
                    if not math.isinf(best):
                        assert total >= best * (1 - 1e-12)
                q = prune_bs(w, p)
                assert interference(w, q, SWITCH_OFF if q.switched_off else conv).total <= total
    print(f"\n  {compared} heuristic outputs compared")


def _mean(vals):
    return math.inf if any(math.isinf(v) for v in vals) else math.fsum(vals) / len(vals)


def test_c09a_stable_beats_similarity_on_user_rich_networks():
    wins = []
    for m in range(2, 18):
        stable, sim = [], []
        for seed in PROTOCOL_SEEDS:
            w = build_weight_matrix(generate_scenario(50, 100, seed=seed))
            stable.append(interference(w, stable_clustering(w, m)).total)
            sim.append(interference(w, similarity_clustering(w, m)).total)
        wins.append(_mean(stable) <= _mean(sim))
        print(f"\n  M={m:2d} stable {_mean(stable):9.4f} similarity {_mean(sim):9.4f}", end="")
    print(f"\n  stable <= similarity for {sum(wins)} of 16 values of M")
    assert sum(wins) >= 12


def test_c09b_similarity_coverage_collapses_on_bs_rich_networks():
    for m in range(27, 41):
        weak = 0
        for seed in PROTOCOL_SEEDS:
            w = build_weight_matrix(generate_scenario(100, 50, seed=seed))
            p = similarity_clustering(w, m)
            intra = [intra_weight(w, c.bs, c.users) for c in p.clusters]
            if p.info["discarded"] >= 1 or min(intra) <= 1e-6 * max(intra):
                weak += 1
        print(f"\n  M={m}: {weak} of 9 seeds with discarded or near-empty clusters", end="")
        assert weak >= 1
    print()


def test_c10_large_pipeline_under_five_seconds():
    t0 = time.perf_counter()
    w = build_weight_matrix(generate_scenario(1000, 1000, seed=1))
    p = similarity_clustering(w, 20)
    elapsed = time.perf_counter() - t0
    assert len(p.clusters) >= 1
    print(f"\n  b = u = 1000, M = 20: {elapsed:.2f} s")
    assert elapsed < 5.0
