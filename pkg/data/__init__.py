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

"""Figure data generation for the reference parameter sets"""

from data import generate_regions
from data import generate_tdma
from data import generate_sum_sweep
from data import generate_all

__all__ = [
    "generate_regions",
    "generate_tdma",
    "generate_sum_sweep",
    "generate_all",
]
