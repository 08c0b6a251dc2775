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
TDMA achievable region: user k transmits alpha_k of the time at power
P_k / alpha_k with a single-user wire-tap code.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd
from shapely.geometry import MultiPoint, box
from shapely.ops import unary_union

from gmacwt.channel_model import shannon_c, validate_delta
from gmacwt.config import TDMA_CONFIG, TOLERANCES
from gmacwt.errors import DimensionMismatchError, DomainError, UnsupportedSizeError
from gmacwt.region_core import RatePoint, build_gaussian_region, enumerate_vertices, sum_capacity

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TimeShare:
    alpha: tuple[float, ...]

    def __post_init__(self):
        alpha = tuple(float(a) for a in self.alpha)
        if any(not 0.0 <= a <= 1.0 for a in alpha):
            raise DomainError(f"time shares must lie in [0, 1], got {alpha}")
        if abs(math.fsum(alpha) - 1.0) > TOLERANCES["time_share_sum"]:
            raise DomainError(f"time shares must sum to 1, got {math.fsum(alpha)}")
        object.__setattr__(self, "alpha", alpha)


def _user_bounds(cfg, delta, k, a):
    if a <= 0.0:
        # alpha C(P / alpha) -> 0 as alpha -> 0
        return 0.0
    p = cfg.p_max[k] / a
    main = a * shannon_c(p / cfg.sigma1_sq)
    if delta == 0:
        return main
    wiretap = a * shannon_c(p / (cfg.sigma1_sq + cfg.sigma2_sq))
    return min(main, (main - wiretap) / delta)


def tdma_rate_bounds(cfg, delta, alpha):
    """Per-user rate maxima for one time-share vector"""
    delta = validate_delta(delta)
    alpha = alpha if isinstance(alpha, TimeShare) else TimeShare(tuple(alpha))
    if len(alpha.alpha) != cfg.num_users:
        raise DimensionMismatchError(f"time share has {len(alpha.alpha)} entries for {cfg.num_users} users")
    return RatePoint(tuple(_user_bounds(cfg, delta, k, a) for k, a in enumerate(alpha.alpha)))


def _sum_rate(cfg, delta, alpha):
    return math.fsum(_user_bounds(cfg, delta, k, a) for k, a in enumerate(alpha))


def _simplex_grid(num_users, resolution):
    """Integer compositions of resolution into num_users parts, lexicographic"""
    if num_users == 1:
        yield (resolution,)
        return
    for first in range(resolution + 1):
        for rest in _simplex_grid(num_users - 1, resolution - first):
            yield (first,) + rest


def tdma_sum_optimize(cfg, delta, grid_resolution=TDMA_CONFIG["grid_resolution"]):
    """
    Maximize the TDMA sum rate over the time-share simplex.

    A lexicographic grid search (first maximum wins) is followed by pairwise
    coordinate moves on the simplex with step halving down to 1e-9.
    """
    delta = validate_delta(delta)
    if grid_resolution < 2:
        raise DomainError("grid_resolution must be at least 2")
    k = cfg.num_users
    best_alpha, best = None, -math.inf
    for counts in _simplex_grid(k, grid_resolution):
        alpha = [c / grid_resolution for c in counts]
        value = _sum_rate(cfg, delta, alpha)
        if value > best:
            best_alpha, best = alpha, value

    step = 1.0 / grid_resolution
    while step >= TDMA_CONFIG["min_step"]:
        improved = False
        for i in range(k):
            for j in range(k):
                if i == j or best_alpha[i] <= 0.0:
                    continue
                moved = min(step, best_alpha[i])
                candidate = list(best_alpha)
                candidate[i] -= moved
                candidate[j] += moved
                value = _sum_rate(cfg, delta, candidate)
                if value > best:
                    best_alpha, best, improved = candidate, value, True
        if not improved:
            step /= 2.0

    total = math.fsum(best_alpha)
    share = TimeShare(tuple(a / total for a in best_alpha))
    value = _sum_rate(cfg, delta, share.alpha)
    logger.debug("TDMA optimum alpha=%s sum=%.9g", share.alpha, value)
    return share, value


def _require_two_users(cfg):
    if cfg.num_users != 2:
        raise UnsupportedSizeError(f"TDMA boundary is parameterized for 2 users, got {cfg.num_users}")


def tdma_boundary_sample(cfg, delta, num_samples=TDMA_CONFIG["num_samples"]):
    """Corner points of the TDMA union for alpha_1 evenly spaced in [0, 1]"""
    _require_two_users(cfg)
    if num_samples < 2:
        raise DomainError("num_samples must be at least 2")
    points = []
    for a1 in np.linspace(0.0, 1.0, num_samples):
        a1 = float(a1)
        points.append(tdma_rate_bounds(cfg, delta, (a1, 1.0 - a1)))
    return points


def tdma_boundary_frame(cfg, delta, num_samples=TDMA_CONFIG["num_samples"]):
    """(alpha1, R1, R2) rows for plotting"""
    points = tdma_boundary_sample(cfg, delta, num_samples)
    return pd.DataFrame(
        {
            "alpha1": np.linspace(0.0, 1.0, num_samples),
            "R1": [p.rates[0] for p in points],
            "R2": [p.rates[1] for p in points],
        }
    )


def tdma_coverage(cfg, delta, num_samples=TDMA_CONFIG["num_samples"]):
    """
    Area of the TDMA union over the area of G^(delta), two users only.

    The union of the per-alpha rate boxes is formed exactly from the
    sampled corners; the delta-secret region is the hull of its vertices.
    """
    points = tdma_boundary_sample(cfg, delta, num_samples)
    tdma = unary_union([box(0.0, 0.0, p.rates[0], p.rates[1]) for p in points])
    region = MultiPoint([p.rates for p in enumerate_vertices(build_gaussian_region(cfg, delta))]).convex_hull
    return {
        "tdma_area": tdma.area,
        "region_area": region.area,
        "coverage": tdma.area / region.area if region.area > 0 else math.nan,
        "sum_capacity": sum_capacity(cfg, delta),
    }
