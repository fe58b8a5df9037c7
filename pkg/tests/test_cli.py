import csv
import json
import math

import numpy as np
import pytest

from misonoma.cli import main


def _read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    header = rows[0]
    return header, rows[1:]


def test_pareto_boundary_csv(tmp_path):
    out = tmp_path / "pb.csv"
    rc = main(
        [
            "pareto-boundary",
            "--lambda1", "20", "--lambda2", "3", "--theta", "0.5",
            "--p-cluster", "2", "--points", "21", "--out", str(out),
        ]
    )
    assert rc == 0
    header, rows = _read_csv(str(out))
    assert header == ["R1", "R2_fixed", "R2_power"]
    assert len(rows) == 21
    r2p = [float(r[2]) for r in rows]
    assert all(b <= a + 1e-9 for a, b in zip(r2p, r2p[1:]))
    fixed = [(float(r[0]), float(r[1]), float(r[2])) for r in rows]
    finite = [(f, p) for _, f, p in fixed if not math.isnan(f)]
    assert finite and all(p >= f - 1e-9 for f, p in finite)


def test_angle_sweep_csv(tmp_path):
    out = tmp_path / "as.csv"
    rc = main(
        [
            "angle-sweep",
            "--lambda1", "10", "--lambda2", "1", "--gamma", "2",
            "--p-cluster", "10", "--points", "11", "--out", str(out),
        ]
    )
    assert rc == 0
    header, rows = _read_csv(str(out))
    assert header == ["theta", "gamma2_optimal", "gamma2_simple"]
    for r in rows:
        assert float(r[1]) >= float(r[2]) - 1e-9  # simple never beats optimal


def test_gamma_sweep_csv(tmp_path):
    out = tmp_path / "gs.csv"
    rc = main(
        [
            "gamma-sweep",
            "--k", "8", "--trials", "2", "--seed", "5",
            "--gamma-min", "0.5", "--gamma-max", "2",
            "--gamma-points", "4", "--out", str(out),
        ]
    )
    assert rc == 0
    header, rows = _read_csv(str(out))
    assert header == [
        "Gamma",
        "strong_rate_noma",
        "weak_rate_noma",
        "strong_rate_baseline",
        "weak_rate_baseline",
    ]
    assert len(rows) == 4
    base = [float(r[3]) for r in rows]
    assert max(base) - min(base) < 1e-15  # baseline independent of the target


def test_schedule_sim_deterministic_bytes(tmp_path):
    args = [
        "schedule-sim",
        "--k", "8", "--trials", "3", "--seed", "5", "--gamma", "1.0",
    ]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert b"\r" not in out1.read_bytes()


def test_schedule_sim_summary_row(tmp_path):
    out = tmp_path / "ss.csv"
    assert (
        main(
            [
                "schedule-sim",
                "--k", "8", "--trials", "3", "--seed", "5",
                "--gamma", "1.0", "--out", str(out),
            ]
        )
        == 0
    )
    header, rows = _read_csv(str(out))
    assert rows[-1][0] == "mean"
    means = np.mean([[float(v) for v in r[1:]] for r in rows[:-1]], axis=0)
    np.testing.assert_allclose([float(v) for v in rows[-1][1:]], means, rtol=1e-9)


def test_dump_beams_rates_recomputable(tmp_path):
    out = tmp_path / "ss.csv"
    assert (
        main(
            [
                "schedule-sim",
                "--k", "8", "--trials", "2", "--seed", "5",
                "--gamma", "1.0", "--dump-beams", "--out", str(out),
            ]
        )
        == 0
    )
    header, rows = _read_csv(str(out))
    beams_path = str(out) + ".beams.jsonl"
    with open(beams_path) as fh:
        logs = [json.loads(line) for line in fh]
    assert len(logs) == 2

    def vec(entry):
        return np.array([re + 1j * im for re, im in entry])

    for t, log in enumerate(logs):
        clusters = log["clusters"]
        strong_rate = 0.0
        weak_rate = 0.0
        for k, cl in enumerate(clusters):
            others = [
                vec(c[w])
                for kk, c in enumerate(clusters)
                if kk != k
                for w in ("w1", "w2")
            ]
            hs = vec(cl["strong_h"])
            w1 = vec(cl["w1"])
            w2 = vec(cl["w2"])
            ici1 = sum(abs(np.vdot(hs, w)) ** 2 for w in others)
            s1 = abs(np.vdot(hs, w1)) ** 2
            sig1 = ici1 + cl["strong_eps_sq"]
            strong_rate += math.log2(1.0 + s1 / sig1)
            if cl["weak_id"] is None:
                continue
            g = vec(cl["weak_h"])
            ici2 = sum(abs(np.vdot(g, w)) ** 2 for w in others)
            r1 = abs(np.vdot(hs, w2)) ** 2
            s2 = abs(np.vdot(g, w2)) ** 2
            r2 = abs(np.vdot(g, w1)) ** 2
            sinr2 = min(r1 / (s1 + sig1), s2 / (r2 + ici2 + cl["weak_eps_sq"]))
            weak_rate += math.log2(1.0 + sinr2)
        assert strong_rate == pytest.approx(float(rows[t][2]), rel=1e-9)
        assert weak_rate == pytest.approx(float(rows[t][3]), rel=1e-9)


def test_config_file_and_flag_override(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(
        json.dumps({"k_users": 8, "trials": 2, "seed": 5, "gamma": 1.0})
    )
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert (
        main(["schedule-sim", "--config", str(cfg_path), "--out", str(out1)]) == 0
    )
    assert (
        main(
            [
                "schedule-sim", "--config", str(cfg_path),
                "--seed", "6", "--out", str(out2),
            ]
        )
        == 0
    )
    assert out1.read_bytes() != out2.read_bytes()  # flag overrode the file seed


def test_unknown_config_key_rejected(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"bogus": 1}))
    rc = main(["schedule-sim", "--config", str(cfg_path), "--out", "/dev/null"])
    assert rc == 2


def test_infeasible_gamma_exit_code(tmp_path):
    rc = main(
        [
            "schedule-sim",
            "--k", "8", "--trials", "1", "--gamma", "99",
            "--out", str(tmp_path / "x.csv"),
        ]
    )
    assert rc == 3


def test_bad_flag_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["schedule-sim", "--nope", "1"])
    assert exc.value.code == 2


def test_oracle_check_runs(tmp_path, capsys):
    out = tmp_path / "oc.csv"
    rc = main(
        [
            "oracle-check", "--instances", "3", "--seed", "1",
            "--n-p1", "128", "--n-alpha2", "128", "--out", str(out),
        ]
    )
    assert rc == 0
    assert "worst relative error" in capsys.readouterr().out
    header, rows = _read_csv(str(out))
    assert len(rows) == 3
    assert all(float(r[-1]) < 1e-3 for r in rows)


def test_floats_carry_full_precision(tmp_path):
    out = tmp_path / "pb.csv"
    main(
        [
            "pareto-boundary",
            "--lambda1", "20", "--lambda2", "3", "--theta", "0.5",
            "--p-cluster", "2", "--points", "5", "--out", str(out),
        ]
    )
    _, rows = _read_csv(str(out))
    for row in rows:
        for cell in row:
            if not math.isnan(float(cell)):
                mantissa = cell.split("e")[0]
                assert len(mantissa.replace("-", "").replace(".", "")) >= 12
