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
Exact equivocation on small finite-alphabet wire-tap instances.

Each user maps a uniform message and uniform local randomness to a length-n
symbol string. The main channel acts per symbol on the joint input (user 1
most significant), and the wire-tapper sees the main output through a
second channel, so degradedness holds by construction. All states are
enumerated in lexicographic order and entropies are in bits.
"""

import functools
import itertools
import json
import logging
import math
from importlib import resources

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.special import entr

from gmacwt.channel_model import nonempty_subsets, members, subset_label, validate_delta
from gmacwt.config import ORACLE_CONFIG, TOLERANCES
from gmacwt.errors import OracleConsistencyError, SizeCapError

logger = logging.getLogger(__name__)

_LN2 = math.log(2.0)


def _check_stochastic(matrix, rows, what):
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != rows or m.shape[1] < 1:
        raise ValueError(f"{what} must have {rows} rows, got shape {m.shape}")
    if np.any(m < 0) or np.any(np.abs(m.sum(axis=1) - 1.0) > TOLERANCES["probability_sum"]):
        raise ValueError(f"rows of {what} must be probability vectors")


class DiscreteWiretapSpec(BaseModel):
    """encoders[k][w][u] is user k's length-n codeword for message w and randomness u"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str
    num_users: int = Field(ge=1)
    message_counts: tuple[int, ...]
    randomness_counts: tuple[int, ...]
    input_alphabet_sizes: tuple[int, ...]
    block_length: int = Field(ge=1)
    encoders: tuple[tuple[tuple[tuple[int, ...], ...], ...], ...]
    main_channel: tuple[tuple[float, ...], ...]
    wiretap_channel: tuple[tuple[float, ...], ...]

    @model_validator(mode="after")
    def _check(self):
        k = self.num_users
        for field in ("message_counts", "randomness_counts", "input_alphabet_sizes", "encoders"):
            if len(getattr(self, field)) != k:
                raise ValueError(f"{field} needs one entry per user")
        if any(c < 1 for c in self.message_counts + self.randomness_counts + self.input_alphabet_sizes):
            raise ValueError("counts and alphabet sizes must be positive")
        for user, table in enumerate(self.encoders):
            if len(table) != self.message_counts[user]:
                raise ValueError(f"user {user + 1} encoder needs {self.message_counts[user]} message rows")
            for row in table:
                if len(row) != self.randomness_counts[user]:
                    raise ValueError(f"user {user + 1} encoder needs {self.randomness_counts[user]} randomness entries")
                for word in row:
                    if len(word) != self.block_length:
                        raise ValueError(f"codewords must have length {self.block_length}")
                    if any(not 0 <= x < self.input_alphabet_sizes[user] for x in word):
                        raise ValueError(f"user {user + 1} symbol outside its alphabet")
        _check_stochastic(self.main_channel, math.prod(self.input_alphabet_sizes), "main_channel")
        _check_stochastic(self.wiretap_channel, len(self.main_channel[0]), "wiretap_channel")
        return self

    @property
    def output_alphabet_size(self):
        return len(self.wiretap_channel[0])

    @property
    def state_count(self):
        return math.prod(self.message_counts) * self.output_alphabet_size**self.block_length


class SubsetEquivocation(BaseModel):
    model_config = ConfigDict(frozen=True)

    mask: int
    label: str
    h_messages: float
    h_conditional: float
    equivocation: float
    discrepancy: float


class EquivocationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    spec_name: str
    subsets: list[SubsetEquivocation]
    min_equivocation: float
    delta: float | None = None
    achieves_delta: bool | None = None

    def equivocation(self, mask):
        return next(s.equivocation for s in self.subsets if s.mask == mask)

    @property
    def max_discrepancy(self):
        return max(s.discrepancy for s in self.subsets)


def load_spec(path):
    with open(path, "r") as f:
        return DiscreteWiretapSpec.model_validate(json.load(f))


def bundled_specs():
    """The toy corpus shipped in gmacwt/specs, keyed by spec name"""
    specs = {}
    for entry in sorted(resources.files("gmacwt").joinpath("specs").iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            spec = DiscreteWiretapSpec.model_validate(json.loads(entry.read_text()))
            specs[spec.name] = spec
    return specs


def compose_wiretap(spec, channel):
    """Degrade the wire-tapper further: Z' is Z passed through channel"""
    wiretap = np.asarray(spec.wiretap_channel) @ np.asarray(channel, dtype=float)
    return DiscreteWiretapSpec.model_validate(
        spec.model_dump() | {"name": f"{spec.name}+degraded", "wiretap_channel": wiretap.tolist()}
    )


def _joint_input(spec, symbols):
    index = 0
    for size, x in zip(spec.input_alphabet_sizes, symbols):
        index = index * size + x
    return index


def joint_distribution(spec):
    """
    P(w_1, ..., w_K, z^n) as an array of shape (M_1, ..., M_K, |Z|^n).

    Messages and local randomness are uniform; z^n is indexed
    lexicographically with the first symbol most significant.
    """
    cap = ORACLE_CONFIG["state_cap"]
    if spec.state_count > cap:
        raise SizeCapError(f"spec {spec.name!r} has {spec.state_count} states, above the cap of {cap}")
    per_symbol = np.asarray(spec.main_channel) @ np.asarray(spec.wiretap_channel)
    weight = 1.0 / (math.prod(spec.message_counts) * math.prod(spec.randomness_counts))

    joint = np.zeros(tuple(spec.message_counts) + (spec.output_alphabet_size**spec.block_length,))
    for w in itertools.product(*(range(m) for m in spec.message_counts)):
        row = np.zeros(joint.shape[-1])
        for u in itertools.product(*(range(c) for c in spec.randomness_counts)):
            words = [spec.encoders[k][w[k]][u[k]] for k in range(spec.num_users)]
            inputs = [_joint_input(spec, symbols) for symbols in zip(*words)]
            row += functools.reduce(np.kron, (per_symbol[x] for x in inputs))
        joint[w] = row * weight
    return joint


def _entropy(p):
    return float(np.sum(entr(p)) / _LN2)


def _subset_equivocation(joint, mask, num_users):
    others = tuple(k for k in range(num_users) if k not in members(mask))
    p = joint.sum(axis=others).reshape(-1, joint.shape[-1]) if others else joint.reshape(-1, joint.shape[-1])
    p_w = p.sum(axis=1)
    p_z = p.sum(axis=0)
    h_w = _entropy(p_w)

    # H(W_S | Z) = H(W_S, Z) - H(Z)
    h_cond = _entropy(p) - _entropy(p_z)
    # I(W_S; Z) summed directly
    nz = p > 0
    ratio = p[nz] / np.outer(p_w, p_z)[nz]
    info = float(np.sum(p[nz] * np.log2(ratio)))

    if h_w <= 0.0:
        logger.warning("H(W_S) = 0 for subset %s; equivocation taken as 1", subset_label(mask))
        return SubsetEquivocation(
            mask=mask, label=subset_label(mask), h_messages=0.0, h_conditional=0.0, equivocation=1.0, discrepancy=0.0
        )
    by_entropy = h_cond / h_w
    by_information = 1.0 - info / h_w
    discrepancy = abs(by_entropy - by_information)
    if discrepancy > ORACLE_CONFIG["path_failure"]:
        raise OracleConsistencyError(
            f"equivocation of {subset_label(mask)} differs between paths: {by_entropy!r} vs {by_information!r}"
        )
    return SubsetEquivocation(
        mask=mask,
        label=subset_label(mask),
        h_messages=h_w,
        h_conditional=max(h_cond, 0.0),
        equivocation=min(max(by_entropy, 0.0), 1.0),
        discrepancy=discrepancy,
    )


def exact_equivocation(spec, delta=None):
    """Delta_S = H(W_S|Z) / H(W_S) for every nonempty subset S, by two computation paths"""
    joint = joint_distribution(spec)
    subsets = [_subset_equivocation(joint, s, spec.num_users) for s in nonempty_subsets(spec.num_users)]
    lowest = min(s.equivocation for s in subsets)
    achieves = None
    if delta is not None:
        delta = validate_delta(delta)
        achieves = lowest >= delta - TOLERANCES["membership"]
    logger.debug("spec %s: min equivocation %.12g", spec.name, lowest)
    return EquivocationReport(
        spec_name=spec.name, subsets=subsets, min_equivocation=lowest, delta=delta, achieves_delta=achieves
    )


def check_delta_achievability(spec, delta):
    """True iff Delta_S >= delta - 1e-12 for every nonempty S; accepts a spec or a report"""
    delta = validate_delta(delta)
    report = spec if isinstance(spec, EquivocationReport) else exact_equivocation(spec)
    return report.min_equivocation >= delta - TOLERANCES["membership"]
