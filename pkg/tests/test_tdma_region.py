import math

import pytest

from gmacwt.channel_model import ChannelConfig
from gmacwt.errors import DimensionMismatchError, DomainError, UnsupportedSizeError
from gmacwt.region_core import build_gaussian_region, contains, sum_capacity
from gmacwt.tdma_region import (
    TimeShare,
    tdma_boundary_frame,
    tdma_boundary_sample,
    tdma_coverage,
    tdma_rate_bounds,
    tdma_sum_optimize,
)


class TestTimeShare:
    def test_must_sum_to_one(self):
        with pytest.raises(DomainError):
            TimeShare((0.5, 0.4))

    def test_entries_in_unit_interval(self):
        with pytest.raises(DomainError):
            TimeShare((1.5, -0.5))


class TestRateBounds:
    def test_even_split_at_full_secrecy(self, sigma2_2):
        r1, r2 = tdma_rate_bounds(sigma2_2, 1.0, (0.5, 0.5)).rates
        assert r1 == pytest.approx(0.25 * math.log2(21.0) - 0.25 * math.log2(23.0 / 3.0), abs=1e-12)
        assert r2 == pytest.approx(0.25 * math.log2(11.0) - 0.25 * math.log2(13.0 / 3.0), abs=1e-12)
        assert (r1, r2) == pytest.approx((0.3634, 0.3360), abs=1e-3)

    def test_single_user_gets_all_time(self, sigma2_2):
        r1, r2 = tdma_rate_bounds(sigma2_2, 1.0, (1.0, 0.0)).rates
        assert r1 == pytest.approx(0.5 * math.log2(11.0) - 0.5 * math.log2(13.0 / 3.0), abs=1e-12)
        assert r1 == pytest.approx(0.671977, abs=1e-6)
        assert r2 == 0.0

    def test_continuous_as_share_vanishes(self, sigma2_2):
        r1, r2 = tdma_rate_bounds(sigma2_2, 1.0, (1.0 - 1e-12, 1e-12)).rates
        # 1e-12 * 1/2 log2(3) once P/alpha swamps both noise levels
        assert 0.0 < r2 < 1e-11
        assert r2 == pytest.approx(0.5e-12 * math.log2(3.0), rel=1e-3)
        assert r1 == pytest.approx(tdma_rate_bounds(sigma2_2, 1.0, (1.0, 0.0)).rates[0], abs=1e-9)

    def test_no_secrecy_is_plain_time_sharing(self, sigma2_2):
        r1, _ = tdma_rate_bounds(sigma2_2, 0.0, (1.0, 0.0)).rates
        assert r1 == pytest.approx(1.729716, abs=1e-6)

    def test_wrong_length(self, sigma2_2):
        with pytest.raises(DimensionMismatchError):
            tdma_rate_bounds(sigma2_2, 1.0, (0.2, 0.3, 0.5))


class TestSumOptimum:
    @pytest.mark.parametrize("name", ["sigma2_2", "sigma2_7", "sigma2_20"])
    def test_reaches_sum_capacity_at_full_secrecy(self, name, request):
        cfg = request.getfixturevalue(name)
        share, value = tdma_sum_optimize(cfg, 1.0)
        assert value == pytest.approx(sum_capacity(cfg, 1.0), abs=1e-4)
        assert math.fsum(share.alpha) == pytest.approx(1.0, abs=1e-12)

    def test_power_proportional_shares_are_optimal(self, sigma2_2):
        share, _ = tdma_sum_optimize(sigma2_2, 1.0)
        assert share.alpha == pytest.approx((2.0 / 3.0, 1.0 / 3.0), abs=1e-6)

    def test_three_users(self, random_configs):
        for cfg in random_configs(5, num_users=3):
            for delta in (0.0, 1.0):
                _, value = tdma_sum_optimize(cfg, delta, grid_resolution=30)
                assert value <= sum_capacity(cfg, delta) + 1e-9
                assert value == pytest.approx(sum_capacity(cfg, delta), abs=1e-6)

    @pytest.mark.parametrize("delta", [0.25, 1.0])
    def test_single_user_takes_all_time(self, delta):
        cfg = ChannelConfig(num_users=1, p_max=(10.0,), sigma1_sq=1.0, sigma2_sq=2.0)
        share, value = tdma_sum_optimize(cfg, delta)
        assert share.alpha == (1.0,)
        c_main, c_wiretap = 0.5 * math.log2(11.0), 0.5 * math.log2(13.0 / 3.0)
        assert value == pytest.approx(min(c_main, (c_main - c_wiretap) / delta), abs=1e-12)
        assert value == pytest.approx(sum_capacity(cfg, delta), abs=1e-12)

    def test_grid_resolution_floor(self, sigma2_2):
        with pytest.raises(DomainError):
            tdma_sum_optimize(sigma2_2, 1.0, grid_resolution=1)


class TestBoundary:
    @pytest.mark.parametrize("name", ["sigma2_2", "sigma2_7", "sigma2_20"])
    @pytest.mark.parametrize("delta", [0.0, 0.5, 1.0])
    def test_samples_inside_secret_region(self, name, delta, request):
        cfg = request.getfixturevalue(name)
        region = build_gaussian_region(cfg, delta)
        for point in tdma_boundary_sample(cfg, delta, 1000):
            assert contains(region, point).slack >= -1e-9

    def test_random_configs_inside_secret_region(self, random_configs):
        for cfg in random_configs(20, num_users=2):
            for delta in (0.25, 0.5, 1.0):
                region = build_gaussian_region(cfg, delta)
                for point in tdma_boundary_sample(cfg, delta, 200):
                    assert contains(region, point).slack >= -1e-9

    def test_frame_layout(self, sigma2_2):
        frame = tdma_boundary_frame(sigma2_2, 1.0, 11)
        assert list(frame.columns) == ["alpha1", "R1", "R2"]
        assert len(frame) == 11
        assert frame["R1"].iloc[0] == 0.0 and frame["R2"].iloc[-1] == 0.0

    def test_two_users_only(self, random_configs):
        cfg = random_configs(1, num_users=3)[0]
        with pytest.raises(UnsupportedSizeError):
            tdma_boundary_sample(cfg, 1.0, 10)

    def test_coverage_fraction(self, sigma2_2):
        report = tdma_coverage(sigma2_2, 1.0, 200)
        assert report["region_area"] == pytest.approx(0.5 * 0.707519**2, abs=1e-5)
        assert 0.0 < report["coverage"] <= 1.0 + 1e-9
        assert report["sum_capacity"] == pytest.approx(0.707519, abs=1e-6)
