"""Seeded benchmark harness: scenarios x algorithms x cluster counts -> CSV rows."""
from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import scenario as sc
from .assign import dph_matching_best, prune_bs, similarity_clustering
from .baseline import SpectralConfig, spectral_clustering
from .metric import CONVENTIONS, STRICT, SWITCH_OFF, interference
from .oracle import MAX_VERTICES, exact_minimum
from .stable import stable_clustering

ALGORITHMS = ("similarity", "matching", "stable", "spectral", "oracle")
SWEEP_DEFAULT_M = "2..40"

RESULT_COLUMNS = ["seed", "algorithm", "M_requested", "M_effective", "convention",
                  "interference_total", "infinite_terms_count", "runtime_ms"]
SWEEP_COLUMNS = ["algorithm", "M", "mean", "min", "max", "n_seeds", "infinite_count"]
SCATTER_COLUMNS = ["algorithm", "kind", "id", "x", "y", "cluster_id"]


class ConfigError(ValueError):
    pass


def _int_list(text: str) -> list[int]:
    """Parse ``"1..9"``, ``"1,4,7"`` or a mix like ``"1..3,8"``; empty means no values."""
    out = []
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off", ""):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


@dataclass
class ExperimentConfig:
    b: int = 50
    u: int = 100
    side_length: float = sc.DEFAULT_SIDE_LENGTH
    alpha: float = sc.DEFAULT_ALPHA
    dist_min: float = sc.DEFAULT_DIST_MIN
    dist_max: float = sc.DEFAULT_DIST_MAX
    seeds: list[int] = field(default_factory=lambda: list(range(1, 10)))
    M: list[int] = field(default_factory=lambda: [10])
    algorithms: list[str] = field(default_factory=lambda: ["similarity", "stable", "spectral"])
    convention: str = STRICT
    size_cap: int | None = None
    floor: bool = False
    prune: bool = False
    kmeans_restarts: int = 10
    output_path: str | None = None
    jobs: int = 1

    _PARSERS = {
        "b": int, "u": int, "side_length": float, "alpha": float, "dist_min": float, "dist_max": float,
        "seeds": _int_list, "M": _int_list, "M_range": _int_list,
        "algorithms": lambda t: [a.strip() for a in t.split(",") if a.strip()],
        "convention": str.strip, "size_cap": lambda t: int(t) if t.strip() not in ("", "none") else None,
        "floor": _bool, "prune": _bool, "kmeans_restarts": int,
        "output_path": lambda t: t.strip() or None, "jobs": int,
    }

    def set(self, key: str, value: str):
        key = key.strip()
        if key not in self._PARSERS:
            raise ConfigError(f"unknown config key {key!r}")
        try:
            parsed = self._PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {value!r}") from exc
        setattr(self, "M" if key == "M_range" else key, parsed)

    @classmethod
    def parse(cls, text: str, overrides=(), defaults=()) -> "ExperimentConfig":
        """Flat ``key = value`` lines; ``#`` starts a comment.

        ``defaults`` are applied first, then the text, then ``overrides``.
        """
        cfg = cls()
        lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
        for item in list(defaults) + [ln for ln in lines if ln.strip()] + list(overrides):
            if "=" not in item:
                raise ConfigError(f"expected key = value, got {item.strip()!r}")
            key, value = item.split("=", 1)
            cfg.set(key, value)
        cfg.validate()
        return cfg

    def validate(self):
        if self.b < 1 or self.u < 1:
            raise ConfigError("b and u must be >= 1")
        if self.convention not in CONVENTIONS:
            raise ConfigError(f"convention must be one of {CONVENTIONS}")
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad:
            raise ConfigError(f"unknown algorithm(s): {', '.join(bad)}")
        for alg in self.algorithms:
            limit = {"similarity": self.b, "matching": self.u, "stable": self.u}.get(alg, self.b + self.u)
            for m in self.M:
                if not 1 <= m <= limit:
                    raise ConfigError(f"M={m} outside [1, {limit}] for {alg}")
        if "oracle" in self.algorithms and self.b + self.u > MAX_VERTICES:
            raise ConfigError(f"oracle needs b + u <= {MAX_VERTICES}")
        if self.size_cap is not None and "similarity" in self.algorithms:
            for m in self.M:
                if self.size_cap * m < self.b:
                    raise ConfigError(f"size_cap={self.size_cap} infeasible for M={m}")

    def scenario(self, seed: int) -> sc.Scenario:
        return sc.generate_scenario(self.b, self.u, self.side_length, seed, self.alpha, self.dist_min, self.dist_max)


def run_algorithm(cfg: ExperimentConfig, alg: str, w: np.ndarray, m: int, seed: int):
    """Returns ``(partition or None, objective, convention used, infinite terms, M_effective)``."""
    convention = cfg.convention
    if alg == "oracle":
        value, p = exact_minimum(w, m, convention)
        return p, value, convention, int(math.isinf(value)), m if p is not None else 0
    if alg == "similarity":
        p = similarity_clustering(w, m, cfg.size_cap)
    elif alg == "matching":
        p = dph_matching_best(w, m)
    elif alg == "stable":
        p = stable_clustering(w, m, floor=cfg.floor)
    elif alg == "spectral":
        p = spectral_clustering(w, SpectralConfig(m, cfg.kmeans_restarts, seed=seed))
        # spectral output may hold BS-only clusters, which only switch_off can score
        convention = SWITCH_OFF
    else:
        raise ConfigError(f"unknown algorithm {alg!r}")
    if cfg.prune:
        p = prune_bs(w, p)
    rep = interference(w, p, convention)
    return p, rep.total, convention, rep.infinite_terms, len(p.clusters)


def _run_cell(args):
    cfg, seed, alg, m = args
    w = sc.build_weight_matrix(cfg.scenario(seed))
    t0 = time.perf_counter()
    _, total, conv, n_inf, m_eff = run_algorithm(cfg, alg, w, m, seed)
    ms = (time.perf_counter() - t0) * 1000.0
    return {"seed": seed, "algorithm": alg, "M_requested": m, "M_effective": m_eff, "convention": conv,
            "interference_total": total, "infinite_terms_count": n_inf, "runtime_ms": ms}


def _mean(values):
    return math.inf if any(math.isinf(v) for v in values) else math.fsum(values) / len(values)


def run_experiment(cfg: ExperimentConfig) -> list[dict]:
    """One row per (seed, algorithm, M) cell, then one ``seed="mean"`` row per (algorithm, M)."""
    cells = [(cfg, seed, alg, m) for m in cfg.M for alg in cfg.algorithms for seed in cfg.seeds]
    if cfg.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            rows = list(pool.map(_run_cell, cells))
    else:
        rows = [_run_cell(c) for c in cells]
    means = []
    if cfg.seeds:
        for m in cfg.M:
            for alg in cfg.algorithms:
                group = [r for r in rows if r["algorithm"] == alg and r["M_requested"] == m]
                means.append({
                    "seed": "mean", "algorithm": alg, "M_requested": m,
                    "M_effective": _mean([r["M_effective"] for r in group]),
                    "convention": group[0]["convention"],
                    "interference_total": _mean([r["interference_total"] for r in group]),
                    "infinite_terms_count": sum(r["infinite_terms_count"] for r in group),
                    "runtime_ms": _mean([r["runtime_ms"] for r in group]),
                })
    return rows + means


def sweep_M(cfg: ExperimentConfig) -> list[dict]:
    """Mean/min/max objective over seeds for every (algorithm, M)."""
    rows = [r for r in run_experiment(cfg) if r["seed"] != "mean"]
    out = []
    if not cfg.seeds:
        return out
    for alg in cfg.algorithms:
        for m in cfg.M:
            vals = [r["interference_total"] for r in rows if r["algorithm"] == alg and r["M_requested"] == m]
            out.append({"algorithm": alg, "M": m, "mean": _mean(vals), "min": min(vals), "max": max(vals),
                        "n_seeds": len(vals), "infinite_count": sum(math.isinf(v) for v in vals)})
    return out


def scatter(cfg: ExperimentConfig) -> list[dict]:
    """Positions and cluster ids of every vertex, per algorithm, for the first seed and M."""
    if not cfg.seeds:
        return []
    seed, m = cfg.seeds[0], cfg.M[0]
    s = cfg.scenario(seed)
    w = sc.build_weight_matrix(s)
    out = []
    for alg in cfg.algorithms:
        p = run_algorithm(cfg, alg, w, m, seed)[0]
        if p is None:
            continue
        bs_lab, user_lab = p.labels()
        for kind, pts, lab in (("bs", s.bs_positions, bs_lab), ("user", s.user_positions, user_lab)):
            for i, ((x, y), k) in enumerate(zip(pts.tolist(), lab.tolist())):
                out.append({"algorithm": alg, "kind": kind, "id": i, "x": x, "y": y, "cluster_id": k})
    return out


def _fmt(v):
    return repr(v) if isinstance(v, float) else str(v)


def to_csv(rows: list[dict], columns: list[str], header_comment: str | None = None,
           drop: tuple[str, ...] = ()) -> str:
    cols = [c for c in columns if c not in drop]
    buf = io.StringIO()
    if header_comment:
        buf.write(f"# {header_comment}\n")
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(cols)
    for r in rows:
        out.writerow([_fmt(r[c]) for c in cols])
    return buf.getvalue()

