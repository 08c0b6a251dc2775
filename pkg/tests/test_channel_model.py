import json
import math

import numpy as np
import pytest
from pydantic import ValidationError

from gmacwt.channel_model import (
    TWO_PI_E,
    ChannelConfig,
    cap_main,
    cap_wiretap,
    cap_wiretap_star,
    epi_phi,
    indicator,
    load_channel_config,
    members,
    nonempty_subsets,
    receiver_entropy_gap_bound,
    save_channel_config,
    shannon_c,
    subset_label,
    validate_delta,
)
from gmacwt.errors import DomainError


class TestShannonC:
    @pytest.mark.parametrize("xi, expected", [(0.0, 0.0), (3.0, 1.0), (15.0, 2.0)])
    def test_values(self, xi, expected):
        assert shannon_c(xi) == pytest.approx(expected, abs=1e-15)

    def test_negative_is_rejected(self):
        with pytest.raises(DomainError):
            shannon_c(-0.1)

    def test_increasing_and_concave(self):
        grid = np.linspace(0.0, 50.0, 501)
        values = np.array([shannon_c(x) for x in grid])
        assert np.all(np.diff(values) > 0)
        assert np.all(np.diff(values, 2) <= 1e-15)


class TestCapacities:
    def test_main(self, sigma2_2):
        assert cap_main(sigma2_2, 0b01) == pytest.approx(1.729716, abs=1e-6)
        assert cap_main(sigma2_2, 0b10) == pytest.approx(1.292481, abs=1e-6)
        assert cap_main(sigma2_2, 0b11) == pytest.approx(2.0, abs=1e-15)

    def test_wiretap(self, sigma2_2):
        assert cap_wiretap(sigma2_2, 0b11) == pytest.approx(1.292481, abs=1e-6)
        assert cap_wiretap(sigma2_2, 0b01) == pytest.approx(0.5 * math.log2(13.0 / 3.0), abs=1e-12)
        assert cap_wiretap(sigma2_2, 0b01) == pytest.approx(1.057739, abs=1e-6)

    def test_wiretap_vanishes_with_huge_extra_noise(self, sigma2_2):
        cfg = sigma2_2.model_copy(update={"sigma2_sq": 1e15})
        assert cap_wiretap(cfg, 0b11) < 1e-13

    def test_wiretap_star(self, sigma2_2):
        assert cap_wiretap_star(sigma2_2, 0b01) == pytest.approx(0.584963, abs=1e-6)
        assert cap_wiretap_star(sigma2_2, 0b10) == pytest.approx(0.5 * math.log2(18.0 / 13.0), abs=1e-12)
        assert cap_wiretap_star(sigma2_2, 0b10) == pytest.approx(0.234743, abs=1e-6)
        assert cap_wiretap_star(sigma2_2, 0b11) == cap_wiretap(sigma2_2, 0b11)

    @pytest.mark.parametrize("mask", [0, 4])
    def test_invalid_subsets(self, sigma2_2, mask):
        with pytest.raises(DomainError):
            cap_main(sigma2_2, mask)

    def test_ordering_on_random_configs(self, random_configs):
        for cfg in random_configs(50):
            for s in nonempty_subsets(cfg.num_users):
                assert cap_main(cfg, s) >= cap_wiretap(cfg, s) >= cap_wiretap_star(cfg, s)

    def test_main_monotone_under_inclusion(self, random_configs):
        for cfg in random_configs(20):
            for s in nonempty_subsets(cfg.num_users):
                for t in nonempty_subsets(cfg.num_users):
                    if s & t == s:
                        assert cap_main(cfg, s) <= cap_main(cfg, t)

    def test_full_set_star_equals_wiretap(self, random_configs):
        for cfg in random_configs(20):
            assert cap_wiretap_star(cfg, cfg.full_mask) == cap_wiretap(cfg, cfg.full_mask)


class TestEntropyGap:
    def test_phi_vanishes_without_extra_noise(self):
        assert epi_phi(3.7, 0.0) == 0.0

    def test_phi_reference_value(self):
        assert epi_phi(0.5 * math.log2(TWO_PI_E), 2.0) == pytest.approx(0.792481, abs=1e-6)

    def test_phi_non_increasing_and_nonnegative(self, rng):
        for _ in range(1000):
            xi1, xi2 = np.sort(rng.uniform(-20.0, 40.0, 2))
            sigma2_sq = rng.uniform(0.0, 50.0)
            assert epi_phi(xi1, sigma2_sq) >= epi_phi(xi2, sigma2_sq)
            assert epi_phi(xi2, sigma2_sq) >= 0.0

    def test_phi_extreme_arguments_stay_finite(self):
        assert epi_phi(1e4, 2.0) == pytest.approx(0.0, abs=1e-12)
        assert math.isfinite(epi_phi(-1e4, 2.0))

    def test_gap_bound(self, sigma2_2):
        assert receiver_entropy_gap_bound(sigma2_2) == pytest.approx(0.084963, abs=1e-6)
        assert receiver_entropy_gap_bound(sigma2_2.model_copy(update={"sigma2_sq": 0.0})) == 0.0

    def test_gap_bound_matches_phi(self, sigma2_2):
        xi = 0.5 * math.log2(TWO_PI_E * 16.0)
        assert receiver_entropy_gap_bound(sigma2_2) == pytest.approx(epi_phi(xi, 2.0), abs=1e-12)


class TestSubsets:
    def test_ascending_masks(self):
        assert list(nonempty_subsets(2)) == [1, 2, 3]

    def test_members_and_label(self):
        assert members(0b101) == (0, 2)
        assert subset_label(0b11) == "{1,2}"

    def test_indicator(self):
        assert indicator(0b10, 3).tolist() == [0.0, 1.0, 0.0]


class TestChannelConfig:
    def test_rejects_wrong_power_count(self):
        with pytest.raises(ValidationError):
            ChannelConfig(num_users=2, p_max=(10.0,), sigma1_sq=1.0, sigma2_sq=2.0)

    def test_rejects_nonpositive_noise(self):
        with pytest.raises(ValidationError):
            ChannelConfig(num_users=1, p_max=(1.0,), sigma1_sq=0.0, sigma2_sq=2.0)

    def test_rejects_unknown_keys(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"num_users": 1, "p_max": [1.0], "sigma1_sq": 1.0, "sigma2_sq": 1.0, "delta": 1}))
        with pytest.raises(ValidationError):
            load_channel_config(path)

    def test_save_and_load(self, sigma2_2, tmp_path):
        path = tmp_path / "sigma2_2.json"
        save_channel_config(sigma2_2, path)
        assert load_channel_config(path) == sigma2_2

    @pytest.mark.parametrize("delta", [-0.01, 1.01])
    def test_delta_range(self, delta):
        with pytest.raises(DomainError):
            validate_delta(delta)
