#!/usr/bin/env python3
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
Generate the perfect-secrecy sum capacity against sigma2^2/sigma1^2.
Output: figures/sum_sweep_d1.csv

Rates are 1/2 log2(1 + x). Plots of this curve that label the
saturation levels with log2(1 + P) match after doubling every column.
"""

from pathlib import Path

from gmacwt.channel_model import ChannelConfig
from gmacwt.config import FIGURE_CONFIGS, SUM_SWEEP_CONFIG
from gmacwt.io_utils import write_csv
from gmacwt.region_core import default_sweep_ratios, sum_capacity_sweep


def generate_sum_sweep(delta=1.0):
    cfg = ChannelConfig.model_validate(FIGURE_CONFIGS["sigma2_2"])
    return sum_capacity_sweep(cfg, delta, default_sweep_ratios(), SUM_SWEEP_CONFIG["total_powers"])


def main(out_root="figures"):
    print("Generating sum-capacity sweep...")
    frame = generate_sum_sweep()
    path = write_csv(frame, Path(out_root) / "sum_sweep_d1.csv")
    print(f"✓ Generated {len(frame)} ratios for total powers {SUM_SWEEP_CONFIG['total_powers']}")
    print(f"✓ Saved to {path}")

    print("\nSummary (largest ratio):")
    last = frame.iloc[-1]
    for column in frame.columns[1:-1]:
        print(f"  {column}: {last[column]:.6f}")


if __name__ == "__main__":
    main()
