#!/usr/bin/env python3
"""Scheduled sum rate versus pool size, NOMA against the two-interval ZF
baseline, at desk scale (trials and K are far below survey scale; raise
--trials/--k via the CLI for full-scale runs since each trial is cheap).

Writes results/sum_rate_vs_users_nt<nt>.csv with mean rates per K.
"""

import pathlib

from misonoma.simulation import SimConfig, aggregate_means, run_trial

OUT = pathlib.Path(__file__).resolve().parent.parent / "results"

TRIALS = 200
K_GRID = (20, 40, 80)
GAMMA = {2: 2.0, 4: 1.5}


def fmt(x: float) -> str:
    return format(x, ".12e")


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    for nt in (2, 4):
        path = OUT / f"sum_rate_vs_users_nt{nt}.csv"
        with open(path, "w", newline="") as fh:
            fh.write(
                "k_users,noma_sum_rate,noma_strong_rate,noma_weak_rate,"
                "baseline_sum_rate,baseline_strong_rate,baseline_weak_rate\n"
            )
            for k in K_GRID:
                cfg = SimConfig(
                    nt=nt, k_users=k, pt_db=10.0, gamma=GAMMA[nt],
                    trials=TRIALS, seed=1000 + k,
                )
                means = aggregate_means(
                    [run_trial(cfg, t)[0] for t in range(cfg.trials)]
                )
                fh.write(
                    ",".join(
                        [str(k)]
                        + [
                            fmt(means[key])
                            for key in (
                                "noma_sum_rate",
                                "noma_strong_rate",
                                "noma_weak_rate",
                                "baseline_sum_rate",
                                "baseline_strong_rate",
                                "baseline_weak_rate",
                            )
                        ]
                    )
                    + "\n"
                )
        print(f"wrote {path}")
