"""Command-line harness emitting CSV data for the standard experiments.

Subcommands: pareto-boundary, angle-sweep, gamma-sweep, schedule-sim,
oracle-check.  All floats are printed with 13 significant digits and LF
line endings, so outputs are byte-identical across runs for a fixed
configuration and seed.  Exit codes: 0 success, 2 invalid arguments,
3 infeasible configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .angle_analysis import gamma2_simple_power
from .oracle import brute_force_max, sample_instance
from .simulation import SimConfig, run_monte_carlo, run_trial
from .two_user_core import (
    InfeasibleTargetError,
    channel_from_quality,
    derive_params,
    fixed_power_design,
    optimize_p1,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".12e")
    return str(x)


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _sim_config(args) -> SimConfig:
    overrides = dict(
        nt=args.nt,
        k_users=args.k,
        pt_db=args.pt_db,
        gamma=args.gamma,
        trials=args.trials,
        seed=args.seed,
        delta=args.delta,
    )
    if args.config:
        return SimConfig.from_file(args.config, **overrides)
    defaults = SimConfig()
    merged = {
        k: (v if v is not None else getattr(defaults, k)) for k, v in overrides.items()
    }
    return SimConfig(**merged)


def cmd_pareto_boundary(args) -> int:
    """Rate-region boundary: fixed unit powers versus power allocation.

    Shares one target grid over [0, P]; the fixed-power column is nan where
    the target exceeds what unit user-1 power can reach (Gamma > 1).
    """
    ch = channel_from_quality(args.lambda1, args.lambda2, args.theta, args.p_cluster)
    lam1 = ch.lambda1
    rows = []
    for G in np.linspace(0.0, ch.P, args.points):
        params = derive_params(ch, float(G) * lam1)
        r1 = math.log2(1.0 + params.gamma1_star)
        sol_pow = optimize_p1(ch, params)
        r2_pow = math.log2(1.0 + sol_pow.gamma2_star)
        if params.Gamma <= 1.0:
            sol_fix = fixed_power_design(ch, params)
            r2_fix = math.log2(1.0 + sol_fix.gamma2_star)
        else:
            r2_fix = math.nan
        rows.append([r1, r2_fix, r2_pow])
    _write_csv(args.out, ["R1", "R2_fixed", "R2_power"], rows)
    return EXIT_OK


def cmd_angle_sweep(args) -> int:
    """Weak-user SINR versus channel angle: optimal versus simple power."""
    rows = []
    for th in np.linspace(0.0, 1.0, args.points):
        ch = channel_from_quality(args.lambda1, args.lambda2, float(th), args.p_cluster)
        params = derive_params(ch, args.gamma * ch.lambda1)
        sol = optimize_p1(ch, params)
        simple = gamma2_simple_power(
            ch.theta, params.lambda1, params.lambda2, params.Gamma, ch.P
        )
        rows.append([float(th), sol.gamma2_star, simple.gamma2])
    _write_csv(args.out, ["theta", "gamma2_optimal", "gamma2_simple"], rows)
    return EXIT_OK


def cmd_gamma_sweep(args) -> int:
    """Mean group rates versus the strong-user target level Gamma.

    The same channel realizations (same per-trial seeds) are reused for
    every Gamma, so the sweep isolates the effect of the target.
    """
    cfg = _sim_config(args)
    gammas = np.linspace(args.gamma_min, args.gamma_max, args.gamma_points)
    if args.gamma_max > cfg.p_total / cfg.nt * (1.0 + 1e-12):
        raise InfeasibleTargetError(
            f"gamma-max {args.gamma_max:.6g} can exceed the per-cluster power "
            f"P_T/Nt = {cfg.p_total / cfg.nt:.6g}"
        )
    n = len(gammas)
    noma_s = [0.0] * n
    noma_w = [0.0] * n
    base_s = base_w = 0.0
    for t in range(cfg.trials):
        for i, g in enumerate(gammas):
            rec, _, _ = run_trial(cfg, t, gamma=float(g))
            noma_s[i] += rec.noma_strong_rate
            noma_w[i] += rec.noma_weak_rate
            if i == 0:
                base_s += rec.baseline_strong_rate
                base_w += rec.baseline_weak_rate
    rows = [
        [
            float(g),
            noma_s[i] / cfg.trials,
            noma_w[i] / cfg.trials,
            base_s / cfg.trials,
            base_w / cfg.trials,
        ]
        for i, g in enumerate(gammas)
    ]
    _write_csv(
        args.out,
        [
            "Gamma",
            "strong_rate_noma",
            "weak_rate_noma",
            "strong_rate_baseline",
            "weak_rate_baseline",
        ],
        rows,
    )
    return EXIT_OK


def cmd_schedule_sim(args) -> int:
    """Monte Carlo scheduling run: per-trial records plus a mean summary."""
    cfg = _sim_config(args)
    records, means, outputs = run_monte_carlo(cfg, keep_outputs=args.dump_beams)
    header = [
        "trial_id",
        "noma_sum_rate",
        "noma_strong_rate",
        "noma_weak_rate",
        "baseline_sum_rate",
        "baseline_strong_rate",
        "baseline_weak_rate",
    ]
    rows = [
        [
            r.trial_id,
            r.noma_sum_rate,
            r.noma_strong_rate,
            r.noma_weak_rate,
            r.baseline_sum_rate,
            r.baseline_strong_rate,
            r.baseline_weak_rate,
        ]
        for r in records
    ]
    rows.append(["mean"] + [means[k] for k in header[1:]])
    _write_csv(args.out, header, rows)
    if args.dump_beams:
        _dump_beams(args.out + ".beams.jsonl", outputs)
    return EXIT_OK


def _dump_beams(path: str, outputs) -> None:
    """Beam log from which the realized rates can be recomputed."""

    def vec(v: np.ndarray) -> list[list[float]]:
        return [[float(z.real), float(z.imag)] for z in v]

    with open(path, "w", newline="") as fh:
        for t, (out, pool) in enumerate(outputs):
            clusters = []
            for plan in out.clusters:
                strong = pool.by_id(plan.strong_id)
                entry = {
                    "strong_id": plan.strong_id,
                    "weak_id": plan.weak_id,
                    "strong_h": vec(strong.h),
                    "strong_eps_sq": strong.eps_sq,
                    "w1": vec(plan.w1_tilde),
                    "w2": vec(plan.w2_tilde),
                }
                if plan.weak_id is not None:
                    weak = pool.by_id(plan.weak_id)
                    entry["weak_h"] = vec(weak.h)
                    entry["weak_eps_sq"] = weak.eps_sq
                clusters.append(entry)
            fh.write(json.dumps({"trial_id": t, "clusters": clusters}) + "\n")


def cmd_oracle_check(args) -> int:
    """Random-instance comparison of the design against the grid oracle."""
    rng = np.random.default_rng(args.seed if args.seed is not None else 2024)
    rows = []
    worst = 0.0
    for i in range(args.instances):
        ch, params = sample_instance(rng)
        sol = optimize_p1(ch, params)
        res = brute_force_max(ch, params, args.n_p1, args.n_alpha2)
        denom = max(res.gamma2, sol.gamma2_star, 1e-30)
        rel = abs(res.gamma2 - sol.gamma2_star) / denom
        worst = max(worst, rel)
        rows.append(
            [
                i,
                params.lambda1,
                params.lambda2,
                params.theta,
                ch.P,
                params.Gamma,
                sol.gamma2_star,
                res.gamma2,
                rel,
            ]
        )
    if args.out:
        _write_csv(
            args.out,
            [
                "instance",
                "lambda1",
                "lambda2",
                "theta",
                "P",
                "Gamma",
                "gamma2_design",
                "gamma2_oracle",
                "rel_err",
            ],
            rows,
        )
    print(f"checked {args.instances} instances, worst relative error {worst:.3e}")
    return EXIT_OK


def _add_sim_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat JSON config file (flags override it)")
    p.add_argument("--nt", type=int, default=None, help="transmit antennas")
    p.add_argument("--k", type=int, default=None, help="total user count (even)")
    p.add_argument("--pt-db", type=float, default=None, help="total power in dB")
    p.add_argument("--gamma", type=float, default=None, help="normalized strong-user target")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--delta", type=float, default=None, help="semi-orthogonality parameter")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="misonoma",
        description="Two-user NOMA beam design and MU-MISO scheduling experiments",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pareto-boundary", help="rate-region boundary sweep")
    p.add_argument("--lambda1", type=float, default=20.0)
    p.add_argument("--lambda2", type=float, default=3.0)
    p.add_argument("--theta", type=float, default=0.5)
    p.add_argument("--p-cluster", type=float, default=2.0, help="cluster power P (linear)")
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_pareto_boundary)

    p = sub.add_parser("angle-sweep", help="SINR versus channel angle")
    p.add_argument("--lambda1", type=float, default=10.0)
    p.add_argument("--lambda2", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=2.0)
    p.add_argument("--p-cluster", type=float, default=10.0)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_angle_sweep)

    p = sub.add_parser("gamma-sweep", help="group rates versus the target level")
    _add_sim_flags(p)
    p.add_argument("--gamma-min", type=float, default=0.25)
    p.add_argument("--gamma-max", type=float, default=2.0)
    p.add_argument("--gamma-points", type=int, default=8)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gamma_sweep)

    p = sub.add_parser("schedule-sim", help="Monte Carlo scheduling run")
    _add_sim_flags(p)
    p.add_argument("--dump-beams", action="store_true", help="write a beam log next to the CSV")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_schedule_sim)

    p = sub.add_parser("oracle-check", help="compare the design with the grid oracle")
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n-p1", type=int, default=512)
    p.add_argument("--n-alpha2", type=int, default=512)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_oracle_check)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleTargetError as exc:
        print(f"error: infeasible configuration: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
