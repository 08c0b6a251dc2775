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
Delta-secret rate regions as halfspace systems.

A region holds one MAC halfspace R_S <= C^M_S and one SECRECY halfspace
R_S <= (C^M_S - C^MW*_S) / delta for every nonempty subset S. At delta = 0
the SECRECY bounds are +inf and every routine here treats them as absent.
"""

import enum
import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from gmacwt.channel_model import (
    TWO_PI_E,
    cap_main,
    cap_wiretap,
    cap_wiretap_star,
    indicator,
    members,
    nonempty_subsets,
    shannon_c,
    subset_label,
    subset_power,
    validate_delta,
)
from gmacwt.config import SUM_SWEEP_CONFIG, TOLERANCES, VERTEX_MAX_USERS
from gmacwt.errors import DimensionMismatchError, DomainError, UnsupportedSizeError

logger = logging.getLogger(__name__)


class Family(enum.Enum):
    MAC = "MAC"
    SECRECY = "SECRECY"


@dataclass(frozen=True)
class RatePoint:
    """Nonnegative per-user rates in bits per channel use"""

    rates: tuple[float, ...]

    def __post_init__(self):
        rates = tuple(float(r) for r in self.rates)
        if not rates:
            raise DomainError("a rate point needs at least one user")
        if any(not math.isfinite(r) or r < 0 for r in rates):
            raise DomainError(f"rates must be finite and nonnegative, got {rates}")
        object.__setattr__(self, "rates", rates)

    @classmethod
    def of(cls, point):
        return point if isinstance(point, RatePoint) else cls(tuple(point))

    def __len__(self):
        return len(self.rates)

    def __iter__(self):
        return iter(self.rates)

    def as_array(self):
        return np.asarray(self.rates, dtype=float)


@dataclass(frozen=True)
class Halfspace:
    """sum_{k in subset} R_k <= bound"""

    subset: int
    bound: float
    family: Family

    @property
    def is_finite(self):
        return math.isfinite(self.bound)

    def label(self):
        return f"{self.family.value} {subset_label(self.subset)}"

    def to_record(self):
        return {
            "subset_mask": self.subset,
            "family": self.family.value,
            "bound": self.bound if self.is_finite else None,
        }


@dataclass(frozen=True)
class RateRegion:
    cfg: object
    delta: float
    halfspaces: tuple[Halfspace, ...]

    @property
    def num_users(self):
        return self.cfg.num_users

    def bounds(self, family):
        """Subset mask -> bound for one constraint family"""
        return {h.subset: h.bound for h in self.halfspaces if h.family is family}

    def effective_bounds(self):
        """Subset mask -> tighter of the two family bounds"""
        mac = self.bounds(Family.MAC)
        secrecy = self.bounds(Family.SECRECY)
        return {s: min(mac[s], secrecy.get(s, math.inf)) for s in mac}

    def to_records(self):
        return [h.to_record() for h in self.halfspaces]


@dataclass(frozen=True)
class EntropyProfile:
    """Per-user codebook entropy rates h_j = (1/n) H(X_j^n), in bits per symbol"""

    h_rates: tuple[float, ...]


@dataclass(frozen=True)
class MembershipReport:
    inside: bool
    tightest: Halfspace | None
    slack: float

    def __bool__(self):
        return self.inside


def _assemble(cfg, delta, secrecy_bound):
    halfspaces = []
    for s in nonempty_subsets(cfg.num_users):
        halfspaces.append(Halfspace(s, cap_main(cfg, s), Family.MAC))
    for s in nonempty_subsets(cfg.num_users):
        halfspaces.append(Halfspace(s, secrecy_bound(s), Family.SECRECY))
    return RateRegion(cfg, delta, tuple(halfspaces))


def build_gaussian_region(cfg, delta):
    """G^(delta): the MAC bounds plus (C^M_S - C^MW*_S) / delta for every S"""
    delta = validate_delta(delta)

    def secrecy_bound(s):
        if delta == 0:
            return math.inf
        return (cap_main(cfg, s) - cap_wiretap_star(cfg, s)) / delta

    return _assemble(cfg, delta, secrecy_bound)


def build_gmac_region(cfg):
    """The standard Gaussian MAC capacity region (no secrecy requirement)"""
    return build_gaussian_region(cfg, 0.0)


def gaussian_entropy_profile(cfg):
    """h_j = 1/2 log2(2 pi e P_j), the largest entropy rate at power P_j"""
    return EntropyProfile(tuple(0.5 * math.log2(TWO_PI_E * p) for p in cfg.p_max))


def build_generic_outer(cfg, delta, profile):
    """
    Outer bound for arbitrary codebooks with entropy rates h_j:

        R_S <= (1/delta) [C^M_S - C(sum_{j in S} 2^(2 h_j) / (2 pi e (P_{S^c} + sigma1^2 + sigma2^2)))]
    """
    delta = validate_delta(delta)
    h = np.asarray(profile.h_rates, dtype=float)
    if h.shape != (cfg.num_users,):
        raise DimensionMismatchError(f"profile has {h.size} entries for {cfg.num_users} users")
    h_max = np.asarray(gaussian_entropy_profile(cfg).h_rates)
    if np.any(h > h_max + 1e-12):
        raise DomainError("entropy rate exceeds the Gaussian maximum 1/2 log2(2 pi e P_j)")
    entropy_powers = np.exp2(2.0 * h)

    def secrecy_bound(s):
        if delta == 0:
            return math.inf
        noise = subset_power(cfg, cfg.full_mask & ~s) + cfg.sigma1_sq + cfg.sigma2_sq
        inner = sum(entropy_powers[k] for k in members(s)) / (TWO_PI_E * noise)
        return (cap_main(cfg, s) - shannon_c(inner)) / delta

    return _assemble(cfg, delta, secrecy_bound)


def sum_capacity(cfg, delta):
    """C_sum^(delta) = min{C^M, (C^M - C^MW) / delta}"""
    delta = validate_delta(delta)
    c_main = cap_main(cfg, cfg.full_mask)
    if delta == 0:
        return c_main
    return min(c_main, (c_main - cap_wiretap(cfg, cfg.full_mask)) / delta)


def contains(region, point, tol=TOLERANCES["membership"]):
    """Membership test; the report carries the tightest finite constraint and its slack"""
    point = RatePoint.of(point)
    if len(point) != region.num_users:
        raise DimensionMismatchError(f"point has {len(point)} rates for {region.num_users} users")
    r = point.as_array()
    tightest, slack = None, math.inf
    for h in region.halfspaces:
        if not h.is_finite:
            continue
        s = h.bound - float(sum(r[k] for k in members(h.subset)))
        if s < slack:
            tightest, slack = h, s
    return MembershipReport(slack >= -tol, tightest, slack)


def _constraint_system(region):
    """Rows A, b of the polytope {R >= 0} with the finite effective bounds"""
    k = region.num_users
    rows, rhs = [], []
    for s, bound in region.effective_bounds().items():
        if math.isfinite(bound):
            rows.append(indicator(s, k))
            rhs.append(bound)
    for j in range(k):
        row = np.zeros(k)
        row[j] = -1.0
        rows.append(row)
        rhs.append(0.0)
    return np.array(rows), np.array(rhs)


def enumerate_vertices(region, tol=TOLERANCES["vertex_dedup"]):
    """
    Extreme points of {R >= 0} intersected with the region's halfspaces.

    Every K-subset of constraints is solved as an equality system and kept
    when feasible; duplicates within tol are merged and the result is
    sorted lexicographically.
    """
    k = region.num_users
    if k > VERTEX_MAX_USERS:
        raise UnsupportedSizeError(f"vertex enumeration supports at most {VERTEX_MAX_USERS} users, got {k}")
    a, b = _constraint_system(region)
    vertices = []
    for active in itertools.combinations(range(len(b)), k):
        a_sub = a[list(active)]
        # Rows are 0/+-1 vectors, so a nonsingular system has |det| >= 1
        if abs(np.linalg.det(a_sub)) < 0.5:
            continue
        x = np.linalg.solve(a_sub, b[list(active)])
        if np.any(a @ x > b + tol):
            continue
        x = np.where(x < 0, 0.0, x)
        if any(np.max(np.abs(x - v)) <= tol for v in vertices):
            continue
        vertices.append(x)
    logger.debug("enumerated %d vertices for delta=%g", len(vertices), region.delta)
    return [RatePoint(tuple(v)) for v in sorted(tuple(v) for v in vertices)]


def region_subset(inner, outer, tol=TOLERANCES["containment"]):
    """True iff every vertex of inner (a region or a list of points) lies in outer"""
    points = enumerate_vertices(inner) if isinstance(inner, RateRegion) else [RatePoint.of(p) for p in inner]
    for p in points:
        if len(p) != outer.num_users:
            raise DimensionMismatchError(f"point has {len(p)} rates for {outer.num_users} users")
    return all(contains(outer, p, tol=tol).inside for p in points)


def region_equal(a, b, tol=TOLERANCES["containment"]):
    return region_subset(a, b, tol) and region_subset(b, a, tol)


def max_secrecy_at_gmac_sum_capacity(cfg):
    """Largest delta whose secret sum capacity still equals the GMAC sum capacity"""
    c_main = cap_main(cfg, cfg.full_mask)
    return (c_main - cap_wiretap(cfg, cfg.full_mask)) / c_main


def max_secrecy_preserving_gmac_region(cfg):
    """Largest delta with G^(delta) equal to the GMAC region"""
    return min(
        (cap_main(cfg, s) - cap_wiretap_star(cfg, s)) / cap_main(cfg, s)
        for s in nonempty_subsets(cfg.num_users)
    )


def perfect_secrecy_sum_limit(cfg):
    """C(sigma2^2 / sigma1^2): perfect-secrecy sum capacity as the powers grow without bound"""
    return shannon_c(cfg.sigma2_sq / cfg.sigma1_sq)


def sum_capacity_sweep(cfg, delta, ratios, total_powers=None):
    """
    C_sum^(delta) against sigma2^2 / sigma1^2.

    Only the total power matters for the sum capacity, so each entry of
    total_powers (default: the configuration's own P_K) gets one column.
    """
    delta = validate_delta(delta)
    total_powers = [cfg.total_power] if total_powers is None else list(total_powers)
    table = {"ratio": [float(r) for r in ratios]}
    for p_total in total_powers:
        column = []
        for ratio in ratios:
            point_cfg = cfg.model_copy(
                update={"num_users": 1, "p_max": (float(p_total),), "sigma2_sq": float(ratio) * cfg.sigma1_sq}
            )
            column.append(sum_capacity(point_cfg, delta))
        table[f"csum_p{p_total:g}"] = column
    table["asymptote"] = [shannon_c(float(r)) for r in ratios]
    return pd.DataFrame(table)


def default_sweep_ratios():
    """Log-spaced sigma2^2 / sigma1^2 grid of SUM_SWEEP_CONFIG"""
    low, high = SUM_SWEEP_CONFIG["ratio_min_exponent"], SUM_SWEEP_CONFIG["ratio_max_exponent"]
    return np.logspace(low, high, (high - low) * SUM_SWEEP_CONFIG["points_per_decade"] + 1).tolist()
