"""Random base-station/user placements and the path-loss weight matrix."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_SIDE_LENGTH = 1000.0
DEFAULT_ALPHA = 4.0
DEFAULT_DIST_MIN = 1.0
DEFAULT_DIST_MAX = 200.0


@dataclass(frozen=True)
class Scenario:
    """BS and user positions (meters) plus the path-loss parameters."""

    bs_positions: np.ndarray
    user_positions: np.ndarray
    side_length: float = DEFAULT_SIDE_LENGTH
    alpha: float = DEFAULT_ALPHA
    dist_min: float = DEFAULT_DIST_MIN
    dist_max: float = DEFAULT_DIST_MAX
    seed: int | None = None

    def __post_init__(self):
        _check_params(self.side_length, self.alpha, self.dist_min, self.dist_max)
        for pts in (self.bs_positions, self.user_positions):
            if pts.ndim != 2 or pts.shape[1] != 2:
                raise ValueError("positions must have shape (n, 2)")
            if np.any(pts < 0) or np.any(pts > self.side_length):
                raise ValueError("positions must lie in [0, side_length]^2")

    @property
    def n_bs(self) -> int:
        return len(self.bs_positions)

    @property
    def n_users(self) -> int:
        return len(self.user_positions)

    def to_text(self) -> str:
        """Flat text record: parameter header lines, then one ``kind,x,y`` line per point."""
        lines = [
            f"# side_length={self.side_length!r}",
            f"# alpha={self.alpha!r}",
            f"# dist_min={self.dist_min!r}",
            f"# dist_max={self.dist_max!r}",
        ]
        if self.seed is not None:
            lines.append(f"# seed={self.seed}")
        lines += [f"bs,{x!r},{y!r}" for x, y in self.bs_positions.tolist()]
        lines += [f"user,{x!r},{y!r}" for x, y in self.user_positions.tolist()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Scenario":
        params: dict = {}
        bs, users = [], []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                params[key.strip()] = value.strip()
                continue
            kind, x, y = line.split(",")
            (bs if kind == "bs" else users).append((float(x), float(y)))
        kwargs = {k: float(params[k]) for k in ("side_length", "alpha", "dist_min", "dist_max") if k in params}
        if "seed" in params:
            kwargs["seed"] = int(params["seed"])
        return cls(np.array(bs, dtype=float).reshape(-1, 2), np.array(users, dtype=float).reshape(-1, 2), **kwargs)


def _check_params(side_length, alpha, dist_min, dist_max):
    if not side_length > 0:
        raise ValueError("side_length must be positive")
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if not 0 < dist_min < dist_max:
        raise ValueError("need 0 < dist_min < dist_max")


def generate_scenario(b: int, u: int, side_length: float = DEFAULT_SIDE_LENGTH, seed: int = 0,
                      alpha: float = DEFAULT_ALPHA, dist_min: float = DEFAULT_DIST_MIN,
                      dist_max: float = DEFAULT_DIST_MAX) -> Scenario:
    """Place ``b`` BSs and ``u`` users uniformly at random on the square.

    Uses numpy's PCG64 seeded with ``seed``. All BS ``(x, y)`` pairs are drawn
    first, then all user pairs, so a given seed always yields the same points.
    """
    if b < 1 or u < 1:
        raise ValueError("need at least one BS and one user")
    _check_params(side_length, alpha, dist_min, dist_max)
    rng = np.random.Generator(np.random.PCG64(seed))
    bs = rng.uniform(0.0, side_length, size=(b, 2))
    users = rng.uniform(0.0, side_length, size=(u, 2))
    return Scenario(bs, users, float(side_length), float(alpha), float(dist_min), float(dist_max), seed)


def path_loss_weight(p, q, alpha: float = DEFAULT_ALPHA, dist_min: float = DEFAULT_DIST_MIN,
                     dist_max: float = DEFAULT_DIST_MAX) -> float:
    dist = float(np.hypot(p[0] - q[0], p[1] - q[1]))
    if dist > dist_max:
        return 0.0
    return max(dist, dist_min) ** -alpha


def build_weight_matrix(s: Scenario) -> np.ndarray:
    """b x u matrix of path-loss weights between every BS and user."""
    diff = s.bs_positions[:, None, :] - s.user_positions[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    w = np.maximum(dist, s.dist_min) ** -s.alpha
    w[dist > s.dist_max] = 0.0
    return w
