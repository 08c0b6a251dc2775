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

"""Shared fixtures: reference parameter sets and random channel factories"""

import numpy as np
import pytest

from gmacwt.channel_model import ChannelConfig
from gmacwt.config import FIGURE_CONFIGS


@pytest.fixture
def sigma2_2():
    return ChannelConfig.model_validate(FIGURE_CONFIGS["sigma2_2"])


@pytest.fixture
def sigma2_7():
    return ChannelConfig.model_validate(FIGURE_CONFIGS["sigma2_7"])


@pytest.fixture
def sigma2_20():
    return ChannelConfig.model_validate(FIGURE_CONFIGS["sigma2_20"])


@pytest.fixture
def rng():
    return np.random.default_rng(20070624)


def random_config(rng, num_users=None):
    """K in {2, 3}, P ~ U(1, 20), sigma1^2 ~ U(0.5, 2), sigma2^2 ~ U(0.1, 10)"""
    k = int(rng.integers(2, 4)) if num_users is None else num_users
    return ChannelConfig(
        num_users=k,
        p_max=tuple(float(p) for p in rng.uniform(1.0, 20.0, k)),
        sigma1_sq=float(rng.uniform(0.5, 2.0)),
        sigma2_sq=float(rng.uniform(0.1, 10.0)),
    )


@pytest.fixture
def random_configs(rng):
    def factory(count, num_users=None):
        return [random_config(rng, num_users) for _ in range(count)]

    return factory
