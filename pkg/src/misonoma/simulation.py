"""Monte Carlo link simulation: channel generation and trial loops.

Randomness comes from numpy's PCG64 generator; trial t of a run seeded
with s uses default_rng(s + t), so trials are independent, reproducible,
and order-insensitive.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields

import numpy as np

from .scheduler import (
    SchedulerOutput,
    SUSConfig,
    User,
    UserPool,
    baseline_sus_zf,
    schedule,
)


@dataclass
class SimConfig:
    """Scenario description for the scheduling experiments.

    k_users is split evenly into strong (variance sigma_h1_sq) and weak
    (variance sigma_h2_sq) sets; pt_db is the total transmit power in dB.
    """

    nt: int = 2
    k_users: int = 40
    pt_db: float = 10.0
    gamma: float = 1.0
    sigma_h1_sq: float = 1.0
    sigma_h2_sq: float = 0.01
    awgn_var: float = 1.0
    trials: int = 200
    seed: int = 12345
    delta: float = 0.3
    baseline_power_mode: str = "equal_split"

    def __post_init__(self):
        if self.k_users < 2 or self.k_users % 2 != 0:
            raise ValueError("k_users must be even and at least 2")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if min(self.sigma_h1_sq, self.sigma_h2_sq, self.awgn_var) <= 0:
            raise ValueError("variances must be positive")
        if self.nt < 1:
            raise ValueError("nt must be at least 1")
        if self.baseline_power_mode != "equal_split":
            raise ValueError("only equal_split baseline power is supported")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")

    @property
    def p_total(self) -> float:
        return 10.0 ** (self.pt_db / 10.0)

    @classmethod
    def from_file(cls, path: str, **overrides) -> "SimConfig":
        """Flat key-value JSON mirroring the field names; overrides win."""
        with open(path) as fh:
            data = json.load(fh)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)


@dataclass
class TrialRecord:
    """Per-trial sum rates (bits/s/Hz).

    Baseline group rates are the per-interval sums halved: the conventional
    scheme serves each group in its own interval, so the halves are the
    per-group throughput shares and add up to baseline_sum_rate.
    """

    trial_id: int
    noma_sum_rate: float
    noma_strong_rate: float
    noma_weak_rate: float
    baseline_sum_rate: float
    baseline_strong_rate: float
    baseline_weak_rate: float

    def __post_init__(self):
        vals = [
            self.noma_sum_rate,
            self.noma_strong_rate,
            self.noma_weak_rate,
            self.baseline_sum_rate,
            self.baseline_strong_rate,
            self.baseline_weak_rate,
        ]
        if not all(math.isfinite(v) and v >= 0 for v in vals):
            raise ValueError("rates must be finite and nonnegative")


def generate_channels(cfg: SimConfig, rng: np.random.Generator) -> UserPool:
    """i.i.d. complex Gaussian channels: two real normals per entry, each
    with variance sigma_h^2/2.  Strong users get ids 0..K/2-1, weak users
    K/2..K-1."""
    half = cfg.k_users // 2

    def draw(var: float, start: int) -> list[User]:
        scale = math.sqrt(var / 2.0)
        re = rng.normal(0.0, scale, size=(half, cfg.nt))
        im = rng.normal(0.0, scale, size=(half, cfg.nt))
        return [User(start + i, re[i] + 1j * im[i], cfg.awgn_var) for i in range(half)]

    strong = draw(cfg.sigma_h1_sq, 0)
    weak = draw(cfg.sigma_h2_sq, half)
    return UserPool(strong=strong, weak=weak)


def run_trial(
    cfg: SimConfig, trial_id: int, gamma: float | None = None
) -> tuple[TrialRecord, SchedulerOutput, UserPool]:
    """One channel realization: NOMA schedule plus the ZF baseline."""
    rng = np.random.default_rng(cfg.seed + trial_id)
    pool = generate_channels(cfg, rng)
    sus = SUSConfig(target_count=cfg.nt, delta=cfg.delta)
    out = schedule(pool, cfg.nt, cfg.p_total, cfg.gamma if gamma is None else gamma, sus)
    strong_rate = sum(r1 for r1, _ in out.realized_rates)
    weak_rate = sum(r2 for _, r2 in out.realized_rates)
    s_strong, s_weak, combined = baseline_sus_zf(pool, cfg.nt, cfg.p_total, sus)
    rec = TrialRecord(
        trial_id=trial_id,
        noma_sum_rate=strong_rate + weak_rate,
        noma_strong_rate=strong_rate,
        noma_weak_rate=weak_rate,
        baseline_sum_rate=combined,
        baseline_strong_rate=0.5 * s_strong,
        baseline_weak_rate=0.5 * s_weak,
    )
    return rec, out, pool


def run_monte_carlo(
    cfg: SimConfig, keep_outputs: bool = False
) -> tuple[list[TrialRecord], dict[str, float], list[tuple[SchedulerOutput, UserPool]]]:
    """All trials of a scenario plus the aggregate means."""
    records: list[TrialRecord] = []
    outputs: list[tuple[SchedulerOutput, UserPool]] = []
    for t in range(cfg.trials):
        rec, out, pool = run_trial(cfg, t)
        records.append(rec)
        if keep_outputs:
            outputs.append((out, pool))
    means = aggregate_means(records)
    return records, means, outputs


def aggregate_means(records: list[TrialRecord]) -> dict[str, float]:
    keys = (
        "noma_sum_rate",
        "noma_strong_rate",
        "noma_weak_rate",
        "baseline_sum_rate",
        "baseline_strong_rate",
        "baseline_weak_rate",
    )
    n = len(records)
    return {k: sum(getattr(r, k) for r in records) / n for k in keys}
