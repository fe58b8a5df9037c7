import math

import numpy as np
import pytest

from misonoma.angle_analysis import (
    PowerBranch,
    ThetaBand,
    ThetaRegion,
    classify_theta_region,
    gamma2_fixed_vs_theta,
    gamma2_simple_power,
    optimal_theta_region,
    matched_filter_limit_check,
)
from misonoma.two_user_core import (
    channel_from_quality,
    derive_params,
    gamma2_of_p1,
    optimize_p1,
)


class TestGamma2FixedVsTheta:
    def test_equal_quality_aligned(self):
        assert gamma2_fixed_vs_theta(1.0, 10.0, 10.0, 0.2) == pytest.approx(
            10.0 / 3.0, rel=1e-12
        )

    def test_plateau_constant_in_strong_branch_region(self):
        region = optimal_theta_region(10.0, 10.0, 0.2)
        vals = [
            gamma2_fixed_vs_theta(th, 10.0, 10.0, 0.2)
            for th in np.linspace(region.theta_opt_low + 1e-6, 1.0, 50)
        ]
        assert max(vals) - min(vals) <= 1e-12 * max(vals)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            gamma2_fixed_vs_theta(1.2, 10.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            gamma2_fixed_vs_theta(0.5, 10.0, 1.0, 1.5)


class TestClassifyThetaRegion:
    def test_aligned_is_weakest_region(self):
        assert classify_theta_region(1.0, 10.0, 3.0, 0.2) is ThetaRegion.N3

    def test_near_orthogonal_is_crossing_region(self):
        assert classify_theta_region(1e-9, 10.0, 3.0, 0.2) is ThetaRegion.N2

    def test_boundaries_match_sign_changes(self):
        lam1, lam2, G = 10.0, 3.0, 0.2
        grid = np.linspace(1e-6, 1.0, 10001)
        regions = [classify_theta_region(float(t), lam1, lam2, G) for t in grid]
        # region index can only change where a coefficient comparison flips
        changes = sum(1 for a, b in zip(regions, regions[1:]) if a is not b)
        assert changes <= 3


class TestOptimalThetaRegion:
    def test_equal_quality_band_covers_all_targets(self):
        res = optimal_theta_region(10.0, 10.0, 0.2)
        assert res.branch is ThetaBand.IN_BAND
        assert res.gamma_bounds[0] == pytest.approx(0.0, abs=1e-12)
        assert res.gamma_bounds[1] == pytest.approx(1.0, rel=1e-12)
        # 1/(1+Gamma*lam1) = 1/3 <= 1-Gamma so theta0 = 1/3
        assert res.theta0 == pytest.approx(1.0 / 3.0, rel=1e-12)
        assert res.theta_opt_high == pytest.approx(1.0, rel=1e-12)

    def test_low_out_of_band_plateau(self):
        res = optimal_theta_region(10.0, 0.5, 0.3)
        assert res.branch is ThetaBand.LOW_OUT_OF_BAND
        assert res.theta_opt_low == pytest.approx(0.05 * (1.0 + 3.0), rel=1e-12)
        assert res.theta_opt_high == pytest.approx(0.7, rel=1e-12)

    def test_grid_argmax_inside_region(self):
        rng = np.random.default_rng(9)
        grid = np.linspace(0.0, 1.0, 2001)
        step = float(grid[1] - grid[0])
        for _ in range(100):
            lam1 = float(rng.uniform(1.0, 50.0))
            lam2 = lam1 * float(rng.uniform(0.05, 1.0))
            G = float(rng.uniform(0.0, 1.0))
            res = optimal_theta_region(lam1, lam2, G)
            vals = [gamma2_fixed_vs_theta(float(t), lam1, lam2, G) for t in grid]
            th_best = float(grid[int(np.argmax(vals))])
            assert res.theta_opt_low - step <= th_best <= res.theta_opt_high + step

    def test_region_attains_grid_max_in_band(self):
        lam1, lam2, G = 12.0, 8.0, 0.3
        res = optimal_theta_region(lam1, lam2, G)
        assert res.branch is ThetaBand.IN_BAND
        grid = np.linspace(0.0, 1.0, 10001)
        vals = np.array([gamma2_fixed_vs_theta(float(t), lam1, lam2, G) for t in grid])
        vmax = float(vals.max())
        inside = (grid >= res.theta_opt_low + 1e-4) & (grid <= res.theta_opt_high - 1e-4)
        assert np.all(vals[inside] >= vmax * (1.0 - 1e-12))


class TestSimplePower:
    def test_mid_asymmetry_point(self):
        res = gamma2_simple_power(0.9, 10.0, 1.0, 2.0, 10.0)
        assert res.theta1 == pytest.approx(0.8047511554864493, rel=1e-12)
        assert res.branch is PowerBranch.ABOVE_THETA1
        assert res.gamma2 == pytest.approx(4.0 / 1.4, rel=1e-12)

    def test_aligned_always_above_branch(self):
        for lam2 in (0.1, 1.0, 9.9):
            res = gamma2_simple_power(1.0, 10.0, lam2, 2.0, 10.0)
            assert res.branch is PowerBranch.ABOVE_THETA1
            expect = (10.0 - 2.0) / 2.0 / (1.0 + 1.0 / (lam2 * 2.0))
            assert res.gamma2 == pytest.approx(expect, rel=1e-12)

    def test_zero_gamma_rejected(self):
        with pytest.raises(ValueError):
            gamma2_simple_power(0.5, 10.0, 1.0, 0.0, 10.0)

    @pytest.mark.parametrize("lam2", [10.0, 1.0, 0.1])
    def test_matches_minimum_power_evaluation(self, lam2):
        for th in np.linspace(0.0, 1.0, 101):
            ch = channel_from_quality(10.0, lam2, float(th), 10.0)
            params = derive_params(ch, 2.0 * ch.lambda1)
            val, _ = gamma2_of_p1(params.Gamma, ch, params)
            res = gamma2_simple_power(
                ch.theta, params.lambda1, params.lambda2, params.Gamma, ch.P
            )
            assert res.gamma2 == pytest.approx(val, rel=1e-9)

    def test_never_beats_full_optimization(self):
        for th in np.linspace(0.0, 1.0, 41):
            ch = channel_from_quality(10.0, 1.0, float(th), 10.0)
            params = derive_params(ch, 2.0 * ch.lambda1)
            res = gamma2_simple_power(
                ch.theta, params.lambda1, params.lambda2, params.Gamma, ch.P
            )
            assert res.gamma2 <= optimize_p1(ch, params).gamma2_star + 1e-9

    def test_symmetric_qualities_close_at_aligned_angle(self):
        ch = channel_from_quality(10.0, 10.0, 1.0, 10.0)
        params = derive_params(ch, 2.0 * ch.lambda1)
        opt = optimize_p1(ch, params).gamma2_star
        simple = gamma2_simple_power(
            ch.theta, params.lambda1, params.lambda2, params.Gamma, ch.P
        ).gamma2
        assert abs(opt - simple) / opt <= 0.05


class TestMatchedFilterLimit:
    def test_monotone_convergence(self):
        rows = matched_filter_limit_check(10.0, 2.0, 10.0, 0.5, [1e-2, 1e-3, 1e-4])
        gaps = [abs(p1 - 2.0) for _, p1, _, _ in rows]
        assert gaps[0] > gaps[1] > gaps[2]
        ang1 = [a for _, _, a, _ in rows]
        assert ang1[0] > ang1[1] > ang1[2]
        ang2 = [a for _, _, _, a in rows]
        assert max(ang2) <= 1e-9

    def test_limit_value(self):
        rows = matched_filter_limit_check(10.0, 2.0, 10.0, 0.5, [1e-4])
        lam2, p1, _, _ = rows[0]
        ch = channel_from_quality(10.0, lam2, 0.5, 10.0)
        params = derive_params(ch, 2.0 * ch.lambda1)
        sol = optimize_p1(ch, params)
        expect = (10.0 - 2.0) / 2.0 / (0.5 + 1.0 / (lam2 * 2.0))
        assert sol.gamma2_star == pytest.approx(expect, rel=1e-2)

    def test_zero_theta_rejected(self):
        with pytest.raises(ValueError):
            matched_filter_limit_check(10.0, 2.0, 10.0, 0.0, [1e-2, 1e-3])

    def test_non_decreasing_sequence_rejected(self):
        with pytest.raises(ValueError):
            matched_filter_limit_check(10.0, 2.0, 10.0, 0.5, [1e-3, 1e-2])
