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

"""CSV and JSON writers shared by the CLI and the figure-data generators"""

import json
import math
from pathlib import Path

import pandas as pd
from pydantic import BaseModel

from gmacwt.config import OUTPUT_CONFIG
from gmacwt.region_core import enumerate_vertices


def _finite_or_none(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _finite_or_none(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite_or_none(v) for v in value]
    return value


def write_csv(frame, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=OUTPUT_CONFIG["float_format"])
    return path


def write_json(payload, path):
    """Write a dict or pydantic model; non-finite floats become null"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="python")
    path.write_text(json.dumps(_finite_or_none(payload), indent=2, allow_nan=False) + "\n")
    return path


def vertex_frame(vertices, num_users):
    """Vertices as rows with columns R1..RK"""
    return pd.DataFrame([p.rates for p in vertices], columns=[f"R{k + 1}" for k in range(num_users)])


def region_document(region):
    return {
        "num_users": region.num_users,
        "delta": region.delta,
        "config": region.cfg.model_dump(mode="python"),
        "halfspaces": region.to_records(),
    }


def write_region(region, out_dir, with_vertices=True):
    """region_d<delta>.json and, for small K, vertices_d<delta>.csv"""
    out_dir = Path(out_dir)
    written = [write_json(region_document(region), out_dir / f"region_d{region.delta:g}.json")]
    if with_vertices:
        frame = vertex_frame(enumerate_vertices(region), region.num_users)
        written.append(write_csv(frame, out_dir / f"vertices_d{region.delta:g}.csv"))
    return written
