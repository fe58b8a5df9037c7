#!/usr/bin/env python3
"""Two-user rate-region boundary: fixed unit powers versus power allocation.

Writes results/rate_region.csv with columns R1, R2_fixed, R2_power for the
reference setting lambda1=20, lambda2=3, theta=0.5, P=2.
"""

import pathlib
import sys

from misonoma.cli import main

OUT = pathlib.Path(__file__).resolve().parent.parent / "results"

if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    sys.exit(
        main(
            [
                "pareto-boundary",
                "--lambda1", "20", "--lambda2", "3",
                "--theta", "0.5", "--p-cluster", "2",
                "--points", "101",
                "--out", str(OUT / "rate_region.csv"),
            ]
        )
    )
