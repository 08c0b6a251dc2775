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
Generate the delta-secret regions of the three reference parameter sets.
Output: figures/<fig>/region_d<delta>.json and vertices_d<delta>.csv
"""

from pathlib import Path

from gmacwt.channel_model import load_channel_config
from gmacwt.config import FIGURE_DELTAS
from gmacwt.io_utils import write_region
from gmacwt.region_core import build_gaussian_region, max_secrecy_at_gmac_sum_capacity, max_secrecy_preserving_gmac_region

CONFIG_DIR = Path(__file__).parent / "configs"


def generate_regions(config_path, out_dir, deltas=FIGURE_DELTAS):
    """Write one region/vertex file pair per delta"""
    cfg = load_channel_config(config_path)
    written = []
    for delta in deltas:
        written.extend(write_region(build_gaussian_region(cfg, delta), out_dir))
    return cfg, written


def main(out_root="figures"):
    print("Generating delta-secret regions...")
    for config_path in sorted(CONFIG_DIR.glob("sigma2_*.json")):
        name = config_path.stem
        cfg, written = generate_regions(config_path, Path(out_root) / name)
        print(f"✓ {name}: {len(written)} files in {Path(out_root) / name}")
        print(f"    largest delta keeping the GMAC sum capacity: {max_secrecy_at_gmac_sum_capacity(cfg):.6f}")
        print(f"    largest delta keeping the GMAC region:       {max_secrecy_preserving_gmac_region(cfg):.6f}")


if __name__ == "__main__":
    main()
