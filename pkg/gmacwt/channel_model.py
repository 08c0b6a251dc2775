# Copyright 2025 The gmac-wiretap-regions Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Channel parameters and scalar capacity formulas for the Gaussian
multiple-access wire-tap channel.

All rates are in bits per channel use (log base 2). Subsets of users are
integer bit masks: bit k-1 set means user k belongs to the subset, and
iteration over subsets is always in ascending mask order.
"""

import json
import math
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from gmacwt.errors import DomainError

TWO_PI_E = 2.0 * math.pi * math.e


class ChannelConfig(BaseModel):
    """Received power caps and the two noise variances of the cascade Z = Y + N2"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    num_users: int = Field(ge=1)
    p_max: tuple[float, ...]
    sigma1_sq: float = Field(gt=0)
    sigma2_sq: float = Field(ge=0)

    @model_validator(mode="after")
    def _check_powers(self):
        if len(self.p_max) != self.num_users:
            raise ValueError(f"p_max has {len(self.p_max)} entries, expected {self.num_users}")
        if any(not math.isfinite(p) or p <= 0 for p in self.p_max):
            raise ValueError("all received powers must be positive and finite")
        if not math.isfinite(self.sigma1_sq) or not math.isfinite(self.sigma2_sq):
            raise ValueError("noise variances must be finite")
        return self

    @property
    def full_mask(self):
        return (1 << self.num_users) - 1

    @property
    def total_power(self):
        return float(sum(self.p_max))


def load_channel_config(path):
    """Parse a ChannelConfig JSON document (unknown keys rejected)"""
    with open(path, "r") as f:
        return ChannelConfig.model_validate(json.load(f))


def save_channel_config(cfg, path):
    Path(path).write_text(cfg.model_dump_json(indent=2) + "\n")


def validate_delta(delta):
    """Check a secrecy level and return it as a float"""
    delta = float(delta)
    if not 0.0 <= delta <= 1.0:
        raise DomainError(f"secrecy level must lie in [0, 1], got {delta}")
    return delta


def nonempty_subsets(num_users):
    """Nonempty subset masks in ascending order"""
    return range(1, 1 << num_users)


def members(mask):
    """Zero-based user indices of a subset mask"""
    return tuple(k for k in range(mask.bit_length()) if mask >> k & 1)


def subset_label(mask):
    """Human-readable one-based label, e.g. {1,2}"""
    return "{" + ",".join(str(k + 1) for k in members(mask)) + "}"


def indicator(mask, num_users):
    """0/1 row vector of a subset"""
    return np.array([(mask >> k) & 1 for k in range(num_users)], dtype=float)


def _check_subset(cfg, mask):
    if mask <= 0 or mask > cfg.full_mask:
        raise DomainError(f"subset mask {mask} is not a nonempty subset of {cfg.num_users} users")


def subset_power(cfg, mask):
    """P_S, the total received power of the users in mask (0 for the empty set)"""
    return float(sum(cfg.p_max[k] for k in members(mask)))


def shannon_c(xi):
    """C(xi) = 1/2 log2(1 + xi)"""
    if xi < 0:
        raise DomainError(f"C(xi) needs xi >= 0, got {xi}")
    return 0.5 * math.log2(1.0 + xi)


def cap_main(cfg, s):
    """C^M_S, the receiver's sum capacity for subset s"""
    _check_subset(cfg, s)
    return shannon_c(subset_power(cfg, s) / cfg.sigma1_sq)


def cap_wiretap(cfg, s):
    """C^MW_S, the wire-tapper's sum capacity for subset s"""
    _check_subset(cfg, s)
    return shannon_c(subset_power(cfg, s) / (cfg.sigma1_sq + cfg.sigma2_sq))


def cap_wiretap_star(cfg, s):
    """C^MW*_S, the wire-tapper's capacity for s with the other users treated as noise"""
    _check_subset(cfg, s)
    other = subset_power(cfg, cfg.full_mask & ~s)
    return shannon_c(subset_power(cfg, s) / (other + cfg.sigma1_sq + cfg.sigma2_sq))


def epi_phi(xi, sigma2_sq):
    """
    phi(xi) = 1/2 log2[2 pi e (sigma2^2 + 2^(2 xi) / (2 pi e))] - xi

    Evaluated as 1/2 log2(1 + 2 pi e sigma2^2 2^(-2 xi)) so that large |xi|
    neither overflows nor cancels.
    """
    if sigma2_sq < 0:
        raise DomainError(f"sigma2_sq must be nonnegative, got {sigma2_sq}")
    if sigma2_sq == 0:
        return 0.0
    exponent = math.log2(TWO_PI_E * sigma2_sq) - 2.0 * xi
    return float(0.5 * np.logaddexp2(0.0, exponent))


def receiver_entropy_gap_bound(cfg):
    """Per-symbol lower bound on H(Z) - H(Y): 1/2 log2(1 + sigma2^2 / (P_K + sigma1^2))"""
    return 0.5 * math.log2(1.0 + cfg.sigma2_sq / (cfg.total_power + cfg.sigma1_sq))
