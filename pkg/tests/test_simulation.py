import numpy as np
import pytest

from misonoma.simulation import (
    SimConfig,
    aggregate_means,
    generate_channels,
    run_monte_carlo,
    run_trial,
)


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(k_users=5)
    with pytest.raises(ValueError):
        SimConfig(trials=0)
    with pytest.raises(ValueError):
        SimConfig(sigma_h2_sq=0.0)
    with pytest.raises(ValueError):
        SimConfig(baseline_power_mode="waterfilling")


def test_p_total_db_conversion():
    assert SimConfig(pt_db=10.0).p_total == pytest.approx(10.0)
    assert SimConfig(pt_db=20.0).p_total == pytest.approx(100.0)
    assert SimConfig(pt_db=0.0).p_total == pytest.approx(1.0)


def test_generate_channels_deterministic():
    cfg = SimConfig(k_users=8, trials=1, seed=7)
    a = generate_channels(cfg, np.random.default_rng(123))
    b = generate_channels(cfg, np.random.default_rng(123))
    for ua, ub in zip(a.strong + a.weak, b.strong + b.weak):
        assert ua.uid == ub.uid
        np.testing.assert_array_equal(ua.h, ub.h)


def test_generate_channels_ids_and_sizes():
    cfg = SimConfig(k_users=10, nt=3)
    pool = generate_channels(cfg, np.random.default_rng(0))
    assert [u.uid for u in pool.strong] == [0, 1, 2, 3, 4]
    assert [u.uid for u in pool.weak] == [5, 6, 7, 8, 9]
    assert all(u.h.size == 3 for u in pool.strong + pool.weak)


def test_channel_power_scaling():
    # E||h||^2 = nt * sigma_h^2 within 5% over many draws; the strong/weak
    # variance ratio carries over to the average quality ratio
    cfg = SimConfig(k_users=2000, nt=2, sigma_h1_sq=1.0, sigma_h2_sq=0.01)
    pool = generate_channels(cfg, np.random.default_rng(5))
    es = np.mean([float(np.vdot(u.h, u.h).real) for u in pool.strong])
    ew = np.mean([float(np.vdot(u.h, u.h).real) for u in pool.weak])
    assert es == pytest.approx(2.0, rel=0.05)
    assert ew == pytest.approx(0.02, rel=0.05)
    assert es / ew == pytest.approx(100.0, rel=0.1)


def test_run_trial_reproducible():
    cfg = SimConfig(k_users=8, trials=1, seed=99, gamma=0.5)
    r1, _, _ = run_trial(cfg, 0)
    r2, _, _ = run_trial(cfg, 0)
    assert r1 == r2


def test_run_monte_carlo_records_and_means():
    cfg = SimConfig(k_users=8, trials=4, seed=11, gamma=0.5)
    records, means, outputs = run_monte_carlo(cfg)
    assert len(records) == 4
    assert outputs == []
    assert [r.trial_id for r in records] == [0, 1, 2, 3]
    assert means["noma_sum_rate"] == pytest.approx(
        np.mean([r.noma_sum_rate for r in records])
    )
    for r in records:
        assert r.noma_sum_rate == pytest.approx(
            r.noma_strong_rate + r.noma_weak_rate
        )
        assert r.baseline_sum_rate == pytest.approx(
            r.baseline_strong_rate + r.baseline_weak_rate
        )


def test_more_users_do_not_hurt_sum_rate():
    # multi-user diversity: mean sum rate grows with the pool size
    means = []
    for k in (20, 40):
        cfg = SimConfig(nt=2, k_users=k, pt_db=10.0, gamma=1.0, trials=40, seed=2)
        recs = [run_trial(cfg, t)[0] for t in range(cfg.trials)]
        means.append(aggregate_means(recs)["noma_sum_rate"])
    assert means[1] >= means[0] - 1e-9
