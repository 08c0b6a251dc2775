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
Rate splitting for the superposition scheme.

Each user k splits its rate R_k into a secret part mu_k R_k and an open part
(1 - mu_k) R_k, and adds a randomization codeword of rate R_kx. A split is
valid when, for every nonempty subset S,

    secret:   sum_S mu_k R_k            <= C^M_S - C^MW*_S
    receiver: sum_S (R_k + R_kx)        <= C^M_S
and
    wiretap:  sum_K ((1 - mu_k) R_k + R_kx) = C^MW - margin

with delta <= mu_k <= 1 and R_kx >= 0. The wiretap saturation keeps the
eavesdropper able to strip the open and randomization codewords once it
knows the secret indices; margin > 0 only serves finite-length simulation.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from scipy.optimize import linprog

from gmacwt.channel_model import (
    cap_main,
    cap_wiretap,
    cap_wiretap_star,
    indicator,
    nonempty_subsets,
    subset_label,
    validate_delta,
)
from gmacwt.config import SIM_CONFIG, TOLERANCES
from gmacwt.errors import DimensionMismatchError, DomainError, InfeasibleSplitError
from gmacwt.region_core import RatePoint, build_gaussian_region, contains

logger = logging.getLogger(__name__)

_LP_OPTIONS = {
    "primal_feasibility_tolerance": TOLERANCES["lp_feasibility"],
    "dual_feasibility_tolerance": TOLERANCES["lp_feasibility"],
}
_PHASE_TOL = 1e-9


class SplitPlan(BaseModel):
    """Per-user secret/open/randomization rates; n is set once integerized"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    delta: float
    mu: tuple[float, ...]
    r_s: tuple[float, ...]
    r_0: tuple[float, ...]
    r_x: tuple[float, ...]
    eps_prime: float = 0.0
    n: int | None = None
    wiretap_margin: float = 0.0

    @model_validator(mode="after")
    def _check(self):
        k = len(self.mu)
        if not (len(self.r_s) == len(self.r_0) == len(self.r_x) == k) or k == 0:
            raise ValueError("mu, r_s, r_0 and r_x must have one entry per user")
        validate_delta(self.delta)
        for m in self.mu:
            if not self.delta - 1e-12 <= m <= 1.0 + 1e-12:
                raise ValueError(f"mu entries must lie in [delta, 1], got {self.mu}")
        for r in self.r_s + self.r_0 + self.r_x:
            if not math.isfinite(r) or r < 0:
                raise ValueError("rates must be finite and nonnegative")
        for m, s, o in zip(self.mu, self.r_s, self.r_0):
            total = s + o
            if total > 0 and abs(s - m * total) > TOLERANCES["split_verify"] * max(1.0, total):
                raise ValueError("r_s must equal mu * (r_s + r_0)")
        if self.eps_prime < 0:
            raise ValueError("eps_prime must be nonnegative")
        if self.n is not None and self.n < 1:
            raise ValueError("block length must be positive")
        return self

    @property
    def num_users(self):
        return len(self.mu)

    @property
    def rates(self):
        """Message rates R_k = r_s + r_0"""
        return tuple(s + o for s, o in zip(self.r_s, self.r_0))

    def message_bits(self):
        """log2 of (M_ks, M_k0, M_kx) per user; integerized plans only"""
        if self.n is None:
            raise DomainError("plan is not integerized; call integerize(plan, n) first")
        to_bits = lambda r: int(round(r * self.n))
        return [(to_bits(s), to_bits(o), to_bits(x)) for s, o, x in zip(self.r_s, self.r_0, self.r_x)]


@dataclass(frozen=True)
class PowerSplit:
    """Per-user power fractions of the three codebooks"""

    lambda_s: tuple[float, ...]
    lambda_0: tuple[float, ...]
    lambda_x: tuple[float, ...]
    eps_var_fraction: float = SIM_CONFIG["eps_var_fraction"]

    def __post_init__(self):
        for parts in zip(self.lambda_s, self.lambda_0, self.lambda_x):
            if any(p < 0 for p in parts):
                raise DomainError("power fractions must be nonnegative")
            total = sum(parts)
            if total != 0 and abs(total - 1.0) > 1e-12:
                raise DomainError(f"power fractions must sum to 1 per user, got {total}")

    def variances(self, k, p_max):
        """Component variances (lambda - eps) P_k of user k's three codebooks"""
        return tuple(
            max(lam - self.eps_var_fraction, 0.0) * p_max if lam > 0 else 0.0
            for lam in (self.lambda_s[k], self.lambda_0[k], self.lambda_x[k])
        )


def _subset_rows(cfg):
    return [(s, indicator(s, cfg.num_users)) for s in nonempty_subsets(cfg.num_users)]


def verify_split(cfg, plan, tol=TOLERANCES["split_verify"]):
    """Labels of the split constraints the plan violates by more than tol"""
    if plan.num_users != cfg.num_users:
        raise DimensionMismatchError(f"plan has {plan.num_users} users, channel has {cfg.num_users}")
    rates = np.asarray(plan.rates)
    r_s, r_0, r_x = (np.asarray(v) for v in (plan.r_s, plan.r_0, plan.r_x))
    violations = []
    if any(m < plan.delta - tol for m in plan.mu):
        violations.append("mu >= delta")
    for s, row in _subset_rows(cfg):
        if row @ r_s > cap_main(cfg, s) - cap_wiretap_star(cfg, s) + tol:
            violations.append(f"secret {subset_label(s)}")
        if row @ (rates + r_x) > cap_main(cfg, s) + tol:
            violations.append(f"receiver {subset_label(s)}")
    wiretap = float(np.sum(r_0 + r_x))
    if abs(wiretap - (cap_wiretap(cfg, cfg.full_mask) - plan.wiretap_margin)) > tol:
        violations.append("wiretap saturation")
    return violations


def _solve(c, a_ub, b_ub, a_eq, b_eq, bounds):
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq, bounds=bounds, method="highs", options=_LP_OPTIONS)
    return res if res.status == 0 else None


def solve_split(cfg, delta, point, margin=0.0):
    """
    Find mu in [delta, 1]^K and R_x >= 0 realizing point with delta-secrecy.

    The selection is deterministic: maximize the common slack of the secret
    and receiver families, take the lexicographically smallest mu at that
    slack, then with mu fixed maximize the receiver slack and take the
    lexicographically smallest R_x.
    """
    delta = validate_delta(delta)
    point = RatePoint.of(point)
    k = cfg.num_users
    if len(point) != k:
        raise DimensionMismatchError(f"point has {len(point)} rates for {k} users")
    if margin < 0:
        raise DomainError("wiretap margin must be nonnegative")

    report = contains(build_gaussian_region(cfg, delta), point)
    if report.slack <= TOLERANCES["membership"]:
        raise InfeasibleSplitError(
            f"point {point.rates} is not strictly inside G^({delta:g}); "
            f"{report.tightest.label()} has slack {report.slack:.3g}",
            violated=report.tightest.label(),
        )

    r = point.as_array()
    rows = _subset_rows(cfg)
    secret_rhs = np.array([cap_main(cfg, s) - cap_wiretap_star(cfg, s) for s, _ in rows])
    receiver_rhs = np.array([cap_main(cfg, s) for s, _ in rows]) - np.array([row @ r for _, row in rows])
    wiretap_rhs = cap_wiretap(cfg, cfg.full_mask) - margin - float(np.sum(r))

    # Variables: mu (k), x (k), t
    zeros = np.zeros(k)
    a_secret = np.array([np.concatenate([row * r, zeros, [1.0]]) for _, row in rows])
    a_receiver = np.array([np.concatenate([zeros, row, [1.0]]) for _, row in rows])
    a_ub = np.vstack([a_secret, a_receiver])
    b_ub = np.concatenate([secret_rhs, receiver_rhs])
    a_eq = np.concatenate([-r, np.ones(k), [0.0]])[None, :]
    b_eq = np.array([wiretap_rhs])
    mu_bounds = [(delta, 1.0)] * k
    x_bounds = [(0.0, None)] * k

    objective = np.zeros(2 * k + 1)
    objective[-1] = -1.0
    res = _solve(objective, a_ub, b_ub, a_eq, b_eq, mu_bounds + x_bounds + [(None, None)])
    if res is None or -res.fun <= TOLERANCES["membership"]:
        raise InfeasibleSplitError(
            f"no split of {point.rates} saturates the wire-tapper at C^MW - {margin:g}",
            violated="wiretap saturation",
        )
    slack = -res.fun - _PHASE_TOL

    mu = list(res.x[:k])
    for j in range(k):
        objective = np.zeros(2 * k + 1)
        objective[j] = 1.0
        fixed = [(mu[i], mu[i] + 1e-12) if i < j else (delta, 1.0) for i in range(k)]
        step = _solve(objective, a_ub, b_ub, a_eq, b_eq, fixed + x_bounds + [(slack, slack)])
        if step is not None:
            mu = list(step.x[:k])
    mu = np.clip(np.array(mu), delta, 1.0)

    # With mu fixed only the receiver family and the wiretap equality involve x
    x_rhs = wiretap_rhs + float(mu @ r)
    a_x = np.array([np.concatenate([row, [1.0]]) for _, row in rows])
    a_x_eq = np.concatenate([np.ones(k), [0.0]])[None, :]
    objective = np.zeros(k + 1)
    objective[-1] = -1.0
    res = _solve(objective, a_x, receiver_rhs, a_x_eq, [x_rhs], x_bounds + [(None, None)])
    if res is None:
        raise InfeasibleSplitError("randomization rates cannot satisfy the receiver constraints", violated="receiver")
    x_slack = -res.fun - _PHASE_TOL
    x = list(res.x[:k])
    for j in range(k):
        objective = np.zeros(k + 1)
        objective[j] = 1.0
        fixed = [(x[i], x[i] + 1e-12) if i < j else (0.0, None) for i in range(k)]
        step = _solve(objective, a_x, receiver_rhs, a_x_eq, [x_rhs], fixed + [(x_slack, x_slack)])
        if step is not None:
            x = list(step.x[:k])
    x = np.maximum(np.array(x), 0.0)

    # Restore the wiretap equality exactly on the user with the most receiver room
    residual = x_rhs - float(np.sum(x))
    room = [receiver_rhs[(1 << j) - 1] - x[j] for j in range(k)]
    x[int(np.argmax(room))] += residual
    x = np.maximum(x, 0.0)

    plan = SplitPlan(
        delta=delta,
        mu=tuple(float(m) for m in mu),
        r_s=tuple(float(m * rk) for m, rk in zip(mu, r)),
        r_0=tuple(float((1.0 - m) * rk) for m, rk in zip(mu, r)),
        r_x=tuple(float(v) for v in x),
        wiretap_margin=margin,
    )
    violations = verify_split(cfg, plan)
    if violations:
        raise InfeasibleSplitError(f"split failed verification: {', '.join(violations)}", violated=violations[0])
    ratios = subset_secrecy_ratios(plan)
    if any(v < delta - TOLERANCES["split_verify"] for v in ratios.values()):
        raise InfeasibleSplitError("secret fraction below delta for some subset", violated="secret fraction")
    logger.debug("split for %s: mu=%s r_x=%s", point.rates, plan.mu, plan.r_x)
    return plan


def subset_secrecy_ratios(plan):
    """sum_S mu_k R_k / sum_S R_k for every subset carrying a positive rate"""
    rates = np.asarray(plan.rates)
    r_s = np.asarray(plan.r_s)
    ratios = {}
    for s in nonempty_subsets(plan.num_users):
        row = indicator(s, plan.num_users)
        total = row @ rates
        if total > 0:
            ratios[s] = float(row @ r_s / total)
    return ratios


def secrecy_lower_bound(cfg, plan, eta_prime=0.0):
    """
    Equivocation bound of the superposition scheme,

        1 - (C^MW - sum_K [(1 - mu_k) R_k + R_kx] + eta') / (C^M - C^MW),

    which collapses to 1 - eta' / (C^M - C^MW) under wiretap saturation.
    """
    c_main = cap_main(cfg, cfg.full_mask)
    c_wiretap = cap_wiretap(cfg, cfg.full_mask)
    if c_main - c_wiretap <= 0:
        raise DomainError("the wire-tapper is not degraded (C^M - C^MW = 0)")
    unprotected = math.fsum(plan.r_0) + math.fsum(plan.r_x)
    return 1.0 - (c_wiretap - unprotected + eta_prime) / (c_main - c_wiretap)


def integerize(plan, n):
    """
    Round every rate down to a multiple of 1/n so message counts 2^(n r) are integral.

    Open-message bits are capped so mu stays >= delta; each user's open-rate
    rounding loss moves into its randomization rate before that is rounded,
    which re-solves the wiretap sum and only loosens the receiver bounds.
    Whatever the flooring still removes from sum_K (r_0 + r_x) is added to
    the plan's wiretap margin, so the rounded plan states C^MW - sum exactly.
    """
    if n < 1:
        raise DomainError("block length must be positive")
    floor_bits = lambda r: int(math.floor(r * n + 1e-9))
    mu, r_s, r_0, r_x, losses = [], [], [], [], []
    for k in range(plan.num_users):
        bits_s = floor_bits(plan.r_s[k])
        bits_0 = floor_bits(plan.r_0[k])
        if plan.delta > 0:
            bits_0 = min(bits_0, int(math.floor(bits_s * (1.0 - plan.delta) / plan.delta + 1e-9)))
        x_target = plan.r_x[k] + plan.r_0[k] - bits_0 / n
        bits_x = floor_bits(x_target)
        for requested, bits in ((plan.r_s[k], bits_s), (plan.r_0[k], bits_0), (x_target, bits_x)):
            if requested > 1e-6 and bits == 0:
                logger.warning("rate %.3g of user %d rounds to zero at n=%d (single-codeword codebook)", requested, k + 1, n)
        total_bits = bits_s + bits_0
        mu.append(bits_s / total_bits if total_bits else 1.0)
        r_s.append(bits_s / n)
        r_0.append(bits_0 / n)
        r_x.append(bits_x / n)
        losses.append(plan.r_s[k] + plan.r_0[k] - total_bits / n)
    wiretap_loss = math.fsum(plan.r_0) + math.fsum(plan.r_x) - math.fsum(r_0) - math.fsum(r_x)
    return SplitPlan(
        delta=plan.delta,
        mu=tuple(max(m, plan.delta) for m in mu),
        r_s=tuple(r_s),
        r_0=tuple(r_0),
        r_x=tuple(r_x),
        eps_prime=max(0.0, max(losses)),
        n=n,
        wiretap_margin=plan.wiretap_margin + wiretap_loss,
    )


def default_power_split(plan):
    """Power fractions proportional to each user's (r_s : r_0 : r_x)"""
    lambdas = ([], [], [])
    for parts in zip(plan.r_s, plan.r_0, plan.r_x):
        total = sum(parts)
        for target, part in zip(lambdas, parts):
            target.append(part / total if total > 0 else 0.0)
    return PowerSplit(*(tuple(v) for v in lambdas))
