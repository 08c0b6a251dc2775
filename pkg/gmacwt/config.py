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
Configuration for the GMAC wire-tap toolkit
Numerical tolerances, simulator defaults and the reference parameter sets
"""

import os

from dotenv import load_dotenv

# Environment first (.env is picked up when present), defaults second
load_dotenv()

# Numerical tolerances (all quantities are O(10) bits)
TOLERANCES = {
    "membership": 1e-12,
    "vertex_dedup": 1e-9,
    "containment": 1e-9,
    "time_share_sum": 1e-12,
    "split_verify": 1e-9,
    "probability_sum": 1e-12,
    "lp_feasibility": 1e-10,
}

# Monte Carlo simulator defaults
SIM_CONFIG = {
    "block_length": int(os.getenv("GMACWT_BLOCK_LENGTH", "10")),
    "trials": int(os.getenv("GMACWT_TRIALS", "200")),
    "seed": int(os.getenv("GMACWT_SEED", "20070624")),
    "wiretap_margin": float(os.getenv("GMACWT_WIRETAP_MARGIN", "0.15")),
    "candidate_cap": int(os.getenv("GMACWT_CANDIDATE_CAP", str(2**20))),
    "eps_var_fraction": 1e-6,
    "max_redraws": 1000,
}

# TDMA optimizer and boundary sampling
TDMA_CONFIG = {
    "grid_resolution": 60,
    "num_samples": 1000,
    "min_step": 1e-9,
}

# Vertex enumeration is combinatorial in the number of users
VERTEX_MAX_USERS = 4

# Exact equivocation oracle
ORACLE_CONFIG = {
    "state_cap": int(os.getenv("GMACWT_ORACLE_STATE_CAP", "10000000")),
    "path_agreement": 1e-12,
    "path_failure": 1e-9,
}

# Output files
OUTPUT_CONFIG = {
    "float_format": "%.9g",
    "out_dir": os.getenv("GMACWT_OUT_DIR", "out"),
}

# Reference two-user parameter sets (P1=10, P2=5, sigma1^2=1)
FIGURE_CONFIGS = {
    "sigma2_2": {"num_users": 2, "p_max": [10.0, 5.0], "sigma1_sq": 1.0, "sigma2_sq": 2.0},
    "sigma2_7": {"num_users": 2, "p_max": [10.0, 5.0], "sigma1_sq": 1.0, "sigma2_sq": 7.0},
    "sigma2_20": {"num_users": 2, "p_max": [10.0, 5.0], "sigma1_sq": 1.0, "sigma2_sq": 20.0},
}

FIGURE_DELTAS = [0.0, 0.5, 1.0]

# Perfect-secrecy sum capacity against sigma2^2/sigma1^2
SUM_SWEEP_CONFIG = {
    "total_powers": [15.0, 50.0, 1000.0],
    "ratio_min_exponent": -2,
    "ratio_max_exponent": 4,
    "points_per_decade": 10,
}
