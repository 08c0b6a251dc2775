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
Generate all figure data
Runs all figure generators in order
"""
import os
import sys
from pathlib import Path

from data import generate_regions, generate_sum_sweep, generate_tdma


def main():
    """Run all figure generators in sequence"""
    print("=" * 50)
    print("GMAC Wire-Tap Regions - Figure Data Generation")
    print("=" * 50)
    print()

    # Change to data directory so figures/ is created there
    data_dir = Path(__file__).parent
    original_dir = os.getcwd()
    os.chdir(data_dir)
    print(f"Working directory: {data_dir}")
    print()

    generators = [
        ("delta-secret regions", generate_regions.main),
        ("TDMA boundaries", generate_tdma.main),
        ("sum-capacity sweep", generate_sum_sweep.main),
    ]

    try:
        for i, (name, func) in enumerate(generators, 1):
            print(f"Step {i}/{len(generators)}: Generating {name}...")
            try:
                func()
                print()
            except Exception as e:
                print(f"Error generating {name}: {e}", file=sys.stderr)
                sys.exit(1)
    finally:
        os.chdir(original_dir)

    print("=" * 50)
    print("Figure Data Generation Complete!")
    print("=" * 50)
    print()
    print("Generated files in data/figures/:")
    for csv_file in sorted((data_dir / "figures").rglob("*.csv")):
        size_kb = csv_file.stat().st_size / 1024
        print(f"  {csv_file.relative_to(data_dir / 'figures')} ({size_kb:.1f} KB)")

    print()
    print("Next steps:")
    print("  Plot a region with gnuplot:")
    print("    plot 'data/figures/sigma2_2/vertices_d1.csv' every ::1 using 1:2 with linespoints")


if __name__ == "__main__":
    main()
