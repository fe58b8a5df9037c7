#!/usr/bin/env python3
"""Group-rate balance versus the strong-user target level Gamma.

Larger Gamma shifts rate from the weak group to the strong group; the ZF
baseline columns are Gamma-independent references.  Writes
results/rate_balance_vs_target.csv.
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
                "gamma-sweep",
                "--nt", "4", "--k", "200", "--pt-db", "20",
                "--trials", "50", "--seed", "2024",
                "--gamma-min", "0.5", "--gamma-max", "8",
                "--gamma-points", "8",
                "--out", str(OUT / "rate_balance_vs_target.csv"),
            ]
        )
    )
