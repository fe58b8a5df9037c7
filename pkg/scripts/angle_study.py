#!/usr/bin/env python3
"""Weak-user SINR versus channel angle for three asymmetry levels.

lambda1=10 fixed, lambda2 in {10, 1, 0.1}, Gamma=2, P=10.  Each setting
produces results/angle_sweep_lam2_<value>.csv with the optimal power
allocation next to the simple minimum-power rule.
"""

import pathlib
import sys

from misonoma.cli import main

OUT = pathlib.Path(__file__).resolve().parent.parent / "results"

if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    rc = 0
    for lam2 in ("10", "1", "0.1"):
        rc |= main(
            [
                "angle-sweep",
                "--lambda1", "10", "--lambda2", lam2,
                "--gamma", "2", "--p-cluster", "10",
                "--points", "401",
                "--out", str(OUT / f"angle_sweep_lam2_{lam2}.csv"),
            ]
        )
    sys.exit(rc)
