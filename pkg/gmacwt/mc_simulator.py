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
Monte Carlo simulation of the superposition scheme over the AWGN cascade.

Every user owns three Gaussian codebooks (secret, open, randomization) and
sends the sum of one codeword from each. The receiver decodes all indices
jointly by exhaustive nearest-neighbor search; the wire-tapper, handed the
secret indices, decodes the open and randomization indices the same way.
Candidate tables are enumerated in lexicographic index order with user 1
most significant, so ties resolve to the smallest index tuple.
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from gmacwt.code_construction import default_power_split
from gmacwt.config import SIM_CONFIG
from gmacwt.errors import DimensionMismatchError, DomainError, SizeCapError

logger = logging.getLogger(__name__)

_CLASSES = ("secret", "open", "random")
_TRIAL_STREAM = 1 << 16
_DISTANCE_CHUNK = 1 << 16


@dataclass(frozen=True)
class Codebook:
    """Per-user (secret, open, random) codeword arrays of shape (M, n)"""

    n: int
    books: tuple[tuple[np.ndarray, np.ndarray, np.ndarray], ...]
    p_max: tuple[float, ...]
    sigma1_sq: float
    sigma2_sq: float

    @property
    def num_users(self):
        return len(self.books)

    @property
    def sizes(self):
        """(M_s, M_0, M_x) per user"""
        return tuple(tuple(len(c) for c in user) for user in self.books)

    def user_table(self, k):
        """All secret+open+random sums of user k, rows in (s, 0, x) lexicographic order"""
        s, o, x = self.books[k]
        return (s[:, None, None, :] + o[None, :, None, :] + x[None, None, :, :]).reshape(-1, self.n)

    def _open_random_table(self, k):
        _, o, x = self.books[k]
        return (o[:, None, :] + x[None, :, :]).reshape(-1, self.n)

    @property
    def receiver_candidates(self):
        return math.prod(math.prod(m) for m in self.sizes)

    @property
    def eve_candidates(self):
        return math.prod(m0 * mx for _, m0, mx in self.sizes)

    @cached_property
    def receiver_table(self):
        return _joint(self.user_table(k) for k in range(self.num_users))

    @cached_property
    def eve_table(self):
        return _joint(self._open_random_table(k) for k in range(self.num_users))


@dataclass(frozen=True)
class Transmission:
    messages: tuple[tuple[int, int], ...]
    dither: tuple[int, ...]
    inputs: tuple[np.ndarray, ...]
    y: np.ndarray
    z: np.ndarray


class SimReport(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    trials: int
    receiver_block_errors: int
    eve_aggregate_errors: int
    seed: int
    n: int
    parameters: dict[str, Any]

    @model_validator(mode="after")
    def _check_counts(self):
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")
        for count in (self.receiver_block_errors, self.eve_aggregate_errors):
            if not 0 <= count <= self.trials:
                raise ValueError("error counts must lie in [0, trials]")
        return self

    @property
    def receiver_error_rate(self):
        return self.receiver_block_errors / self.trials if self.trials else 0.0

    @property
    def eve_success_rate(self):
        return 1.0 - self.eve_aggregate_errors / self.trials if self.trials else 1.0


def _joint(tables):
    joint = None
    for table in tables:
        joint = table if joint is None else (joint[:, None, :] + table[None, :, :]).reshape(-1, table.shape[1])
    return joint


def _nearest(table, target):
    """Index of the row closest to target; first row wins ties"""
    best_index, best = 0, math.inf
    for start in range(0, len(table), _DISTANCE_CHUNK):
        distances = np.sum((table[start : start + _DISTANCE_CHUNK] - target) ** 2, axis=1)
        i = int(np.argmin(distances))
        if distances[i] < best:
            best_index, best = start + i, float(distances[i])
    return best_index


def _check_cap(count, cap, what, bits_per_symbol=None):
    if count <= cap:
        return
    advice = None
    if bits_per_symbol:
        fit = int(math.floor(math.log2(cap) / bits_per_symbol))
        advice = f"largest block length within the cap is n={fit}" if fit >= 1 else "reduce the rates"
    raise SizeCapError(f"{what} needs {count} candidates, above the cap of {cap}", advice=advice)


def _draw_class(rng, count, n, variance, budget, max_redraws):
    """Gaussian codewords, redrawing those whose empirical power exceeds budget"""
    if variance <= 0.0:
        return np.zeros((count, n))
    scale = math.sqrt(variance)
    words = rng.standard_normal((count, n)) * scale
    for _ in range(max_redraws):
        bad = np.mean(words**2, axis=1) > budget
        if not bad.any():
            break
        words[bad] = rng.standard_normal((int(bad.sum()), n)) * scale
    return words


def generate_codebooks(cfg, plan, power_split=None, n=None, seed=SIM_CONFIG["seed"], cap=SIM_CONFIG["candidate_cap"]):
    """
    Draw the three codebooks of every user for an integerized plan.

    Codewords of each class are redrawn while their empirical power exceeds
    lambda P_k; a user's classes are then scaled by one common factor <= 1
    so that every secret+open+random combination satisfies (1/n) sum x^2 <= P_k.
    """
    n = plan.n if n is None else n
    if plan.n is None or plan.n != n:
        raise DomainError(f"plan must be integerized at n={n} (got n={plan.n})")
    if plan.num_users != cfg.num_users:
        raise DimensionMismatchError(f"plan has {plan.num_users} users, channel has {cfg.num_users}")
    power_split = default_power_split(plan) if power_split is None else power_split

    bits = plan.message_bits()
    total_bits = sum(sum(b) for b in bits)
    _check_cap(2**total_bits, cap, "receiver decoding", total_bits / n)

    user_seqs = np.random.SeedSequence(seed).spawn(cfg.num_users)
    books = []
    for k, (user_bits, user_seq) in enumerate(zip(bits, user_seqs)):
        variances = power_split.variances(k, cfg.p_max[k])
        lambdas = (power_split.lambda_s[k], power_split.lambda_0[k], power_split.lambda_x[k])
        classes = []
        for b, variance, lam, class_seq in zip(user_bits, variances, lambdas, user_seq.spawn(3)):
            rng = np.random.default_rng(class_seq)
            classes.append(_draw_class(rng, 2**b, n, variance, lam * cfg.p_max[k], SIM_CONFIG["max_redraws"]))
        s, o, x = classes
        worst = float(np.max(np.mean((s[:, None, None, :] + o[None, :, None, :] + x[None, None, :, :]) ** 2, axis=-1)))
        if worst > cfg.p_max[k]:
            factor = math.sqrt(cfg.p_max[k] / worst) * (1.0 - 1e-12)
            logger.warning("user %d codebooks scaled by %.4f to meet P=%g", k + 1, factor, cfg.p_max[k])
            classes = [c * factor for c in classes]
        books.append(tuple(classes))

    codebooks = Codebook(n, tuple(books), tuple(cfg.p_max), cfg.sigma1_sq, cfg.sigma2_sq)
    logger.debug("codebook sizes %s at n=%d", codebooks.sizes, n)
    return codebooks


def transmit(codebooks, messages, dither_choices=None, seed=None):
    """
    Send (secret, open) message pairs plus randomization indices through
    Y = sum X_k + N1 and Z = Y + N2. Missing randomization indices are drawn
    uniformly; seed may be an int, a SeedSequence or a Generator.
    """
    rng = np.random.default_rng(seed)
    if len(messages) != codebooks.num_users:
        raise DimensionMismatchError(f"{len(messages)} message pairs for {codebooks.num_users} users")
    if dither_choices is None:
        dither_choices = [int(rng.integers(m_x)) for _, _, m_x in codebooks.sizes]
    elif len(dither_choices) != codebooks.num_users:
        raise DimensionMismatchError(f"{len(dither_choices)} randomization indices for {codebooks.num_users} users")

    inputs = []
    for k, ((w_s, w_0), w_x) in enumerate(zip(messages, dither_choices)):
        s, o, x = codebooks.books[k]
        for name, index, book in zip(_CLASSES, (w_s, w_0, w_x), (s, o, x)):
            if not 0 <= index < len(book):
                raise DomainError(f"{name} index {index} out of range for user {k + 1} (M={len(book)})")
        inputs.append(s[w_s] + o[w_0] + x[w_x])

    y = np.sum(inputs, axis=0) + rng.normal(0.0, math.sqrt(codebooks.sigma1_sq), codebooks.n)
    z = y + rng.normal(0.0, math.sqrt(codebooks.sigma2_sq), codebooks.n)
    return Transmission(
        messages=tuple((int(a), int(b)) for a, b in messages),
        dither=tuple(int(d) for d in dither_choices),
        inputs=tuple(inputs),
        y=y,
        z=z,
    )


def decode_receiver(codebooks, y, cap=SIM_CONFIG["candidate_cap"]):
    """Jointly decoded (w_s, w_0, w_x) per user"""
    _check_cap(codebooks.receiver_candidates, cap, "receiver decoding")
    index = _nearest(codebooks.receiver_table, np.asarray(y))
    flat = np.unravel_index(index, [m for sizes in codebooks.sizes for m in sizes])
    return tuple(tuple(int(v) for v in flat[3 * k : 3 * k + 3]) for k in range(codebooks.num_users))


def eve_decode_aggregate(codebooks, z, secret_indices, cap=SIM_CONFIG["candidate_cap"]):
    """(w_0, w_x) per user decoded from z once the secret codewords are removed"""
    _check_cap(codebooks.eve_candidates, cap, "wire-tapper decoding")
    if len(secret_indices) != codebooks.num_users:
        raise DimensionMismatchError(f"{len(secret_indices)} secret indices for {codebooks.num_users} users")
    residual = np.array(z, dtype=float)
    for k, w_s in enumerate(secret_indices):
        residual = residual - codebooks.books[k][0][w_s]
    index = _nearest(codebooks.eve_table, residual)
    flat = np.unravel_index(index, [m for _, m0, mx in codebooks.sizes for m in (m0, mx)])
    return tuple((int(flat[2 * k]), int(flat[2 * k + 1])) for k in range(codebooks.num_users))


def _parameters(cfg, plan, codebooks):
    return {
        "delta": plan.delta,
        "mu": list(plan.mu),
        "r_s": list(plan.r_s),
        "r_0": list(plan.r_0),
        "r_x": list(plan.r_x),
        "eps_prime": plan.eps_prime,
        "wiretap_margin": plan.wiretap_margin,
        "p_max": list(cfg.p_max),
        "sigma1_sq": cfg.sigma1_sq,
        "sigma2_sq": cfg.sigma2_sq,
        "receiver_candidates": codebooks.receiver_candidates,
        "eve_candidates": codebooks.eve_candidates,
    }


def run_trials(
    cfg,
    plan,
    n,
    trials=SIM_CONFIG["trials"],
    seed=SIM_CONFIG["seed"],
    power_split=None,
    cap=SIM_CONFIG["candidate_cap"],
):
    """
    Fresh uniform messages and fresh noise per trial over one codebook draw.

    Trial t uses its own stream (seed, t), so the counts do not depend on the
    order in which trials run.
    """
    if trials < 0:
        raise DomainError("trials must be nonnegative")
    codebooks = generate_codebooks(cfg, plan, power_split, n, seed, cap)
    receiver_errors = eve_errors = 0
    for t in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(_TRIAL_STREAM, t)))
        messages = [(int(rng.integers(m_s)), int(rng.integers(m_0))) for m_s, m_0, _ in codebooks.sizes]
        sent = transmit(codebooks, messages, seed=rng)

        decoded = decode_receiver(codebooks, sent.y, cap)
        if any(d[:2] != m for d, m in zip(decoded, sent.messages)):
            receiver_errors += 1

        secrets = [m[0] for m in sent.messages]
        truth = tuple((m[1], d) for m, d in zip(sent.messages, sent.dither))
        if eve_decode_aggregate(codebooks, sent.z, secrets, cap) != truth:
            eve_errors += 1

    report = SimReport(
        trials=trials,
        receiver_block_errors=receiver_errors,
        eve_aggregate_errors=eve_errors,
        seed=seed,
        n=n,
        parameters=_parameters(cfg, plan, codebooks),
    )
    logger.info(
        "%d trials at n=%d: receiver errors %d, wire-tapper misses %d", trials, n, receiver_errors, eve_errors
    )
    return report
