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
gmacwt command line

Subcommands: region, sum-sweep, tdma, split, simulate, oracle, replay.
Exit codes: 0 success, 1 usage/config error, 2 infeasible split,
3 size cap or unsupported size.
"""

import argparse
import logging
import sys
import zlib
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict

from gmacwt import __version__
from gmacwt.channel_model import ChannelConfig, load_channel_config
from gmacwt.code_construction import integerize, secrecy_lower_bound, solve_split, subset_secrecy_ratios
from gmacwt.config import FIGURE_CONFIGS, OUTPUT_CONFIG, SIM_CONFIG, TDMA_CONFIG, VERTEX_MAX_USERS
from gmacwt.discrete_oracle import bundled_specs, exact_equivocation, load_spec
from gmacwt.errors import GmacwtError, InfeasibleSplitError, SizeCapError, UnsupportedSizeError
from gmacwt.io_utils import write_csv, write_json, write_region
from gmacwt.mc_simulator import run_trials
from gmacwt.region_core import build_gaussian_region, default_sweep_ratios, sum_capacity, sum_capacity_sweep
from gmacwt.tdma_region import tdma_boundary_frame, tdma_coverage, tdma_sum_optimize

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_SIZE_CAP = 3


class RunManifest(BaseModel):
    """Everything needed to re-run a command; see replay_argv"""

    model_config = ConfigDict(extra="forbid")

    command: str
    config_path: str
    arguments: dict[str, Any]
    outputs: list[str]
    seed: int
    derived_seed: int | None = None
    version: str
    timestamp: str


# Subcommands that draw random numbers from derive_seed(seed, command)
_SEEDED_COMMANDS = {"simulate"}
_NOT_RECORDED = {"handler", "command", "config", "out", "seed", "verbose"}


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _float_list(text):
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one number")
    return values


def derive_seed(seed, command):
    """Per-subcommand seed derived from the global --seed"""
    sequence = np.random.SeedSequence([seed, zlib.crc32(command.encode())])
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


def _load_config(args):
    if args.config is None:
        return ChannelConfig.model_validate(FIGURE_CONFIGS["sigma2_2"]), "builtin:sigma2_2"
    return load_channel_config(args.config), str(args.config)


def _report(paths):
    for path in paths:
        print(f"✓ Saved to {path}")


def cmd_region(args, cfg):
    outputs = []
    too_large = cfg.num_users > VERTEX_MAX_USERS
    for delta in args.delta:
        region = build_gaussian_region(cfg, delta)
        outputs.extend(write_region(region, args.out, with_vertices=not too_large))
    _report(outputs)
    if too_large:
        error = UnsupportedSizeError(
            f"vertex enumeration supports at most {VERTEX_MAX_USERS} users; halfspaces were written"
        )
        error.outputs = outputs
        raise error
    return outputs


def cmd_sum_sweep(args, cfg):
    ratios = args.sigma2_grid or default_sweep_ratios()
    total_powers = args.total_powers or [cfg.total_power]
    outputs = []
    for delta in args.delta:
        frame = sum_capacity_sweep(cfg, delta, ratios, total_powers)
        outputs.append(write_csv(frame, Path(args.out) / f"sum_sweep_d{delta:g}.csv"))
    _report(outputs)
    return outputs


def cmd_tdma(args, cfg):
    outputs = []
    for delta in args.delta:
        share, value = tdma_sum_optimize(cfg, delta, args.resolution)
        capacity = sum_capacity(cfg, delta)
        optimum = {
            "delta": delta,
            "alpha": list(share.alpha),
            "tdma_sum_rate": value,
            "sum_capacity": capacity,
            "gap": capacity - value,
        }
        if cfg.num_users == 2:
            outputs.append(
                write_csv(tdma_boundary_frame(cfg, delta, args.samples), Path(args.out) / f"tdma_boundary_d{delta:g}.csv")
            )
            optimum["coverage"] = tdma_coverage(cfg, delta, args.samples)
        outputs.append(write_json(optimum, Path(args.out) / f"tdma_optimum_d{delta:g}.json"))
        print(f"  delta={delta:g}: TDMA sum {value:.6f} vs sum capacity {capacity:.6f}")
    _report(outputs)
    return outputs


def _split_document(cfg, plan):
    return {
        "plan": plan.model_dump(mode="python"),
        "subset_secrecy_ratios": {str(mask): ratio for mask, ratio in subset_secrecy_ratios(plan).items()},
        "secrecy_lower_bound": secrecy_lower_bound(cfg, plan) if cfg.sigma2_sq > 0 else None,
    }


def cmd_split(args, cfg):
    if len(args.point) != cfg.num_users:
        raise GmacwtError(f"--point needs {cfg.num_users} rates")
    plan = solve_split(cfg, args.delta, args.point, margin=args.margin)
    document = {"solved": _split_document(cfg, plan)}
    if args.n is not None:
        document["integerized"] = _split_document(cfg, integerize(plan, args.n))
    outputs = [write_json(document, Path(args.out) / "split.json")]
    print(f"  mu={tuple(round(m, 6) for m in plan.mu)} r_x={tuple(round(x, 6) for x in plan.r_x)}")
    _report(outputs)
    return outputs


def cmd_simulate(args, cfg):
    if len(args.point) != cfg.num_users:
        raise GmacwtError(f"--point needs {cfg.num_users} rates")
    plan = integerize(solve_split(cfg, args.delta, args.point, margin=args.margin), args.n)
    seed = derive_seed(args.seed, "simulate")
    report = run_trials(cfg, plan, args.n, args.trials, seed, cap=args.cap)
    outputs = [write_json(report, Path(args.out) / "sim_report.json")]
    print(
        f"  receiver block errors {report.receiver_block_errors}/{report.trials}, "
        f"wire-tapper aggregate misses {report.eve_aggregate_errors}/{report.trials}"
    )
    _report(outputs)
    return outputs


def cmd_oracle(args, cfg=None):
    corpus = bundled_specs()
    spec = corpus[args.spec] if args.spec in corpus else load_spec(args.spec)
    report = exact_equivocation(spec, args.delta)
    outputs = [write_json(report, Path(args.out) / f"oracle_{spec.name}.json")]
    for entry in report.subsets:
        print(f"  Delta_{entry.label} = {entry.equivocation:.9g}")
    _report(outputs)
    return outputs


def build_parser():
    parser = _Parser(prog="gmacwt", description="Secrecy rate regions of the Gaussian MAC wire-tap channel")
    parser.add_argument("--config", type=Path, default=None, help="channel configuration JSON (default: sigma2_2 set)")
    parser.add_argument("--out", type=Path, default=Path(OUTPUT_CONFIG["out_dir"]), help="output directory")
    parser.add_argument("--seed", type=int, default=SIM_CONFIG["seed"], help="global seed")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    region = sub.add_parser("region", help="halfspaces and vertices of G^(delta)")
    region.add_argument("--delta", type=_float_list, default=[0.0, 0.5, 1.0])
    region.set_defaults(handler=cmd_region)

    sweep = sub.add_parser("sum-sweep", help="sum capacity against sigma2^2/sigma1^2")
    sweep.add_argument("--delta", type=_float_list, default=[1.0])
    sweep.add_argument("--sigma2-grid", type=_float_list, default=None)
    sweep.add_argument("--total-powers", type=_float_list, default=None)
    sweep.set_defaults(handler=cmd_sum_sweep)

    tdma = sub.add_parser("tdma", help="TDMA boundary and sum-rate optimum")
    tdma.add_argument("--delta", type=_float_list, default=[0.0, 0.5, 1.0])
    tdma.add_argument("--samples", type=int, default=TDMA_CONFIG["num_samples"])
    tdma.add_argument("--resolution", type=int, default=TDMA_CONFIG["grid_resolution"])
    tdma.set_defaults(handler=cmd_tdma)

    split = sub.add_parser("split", help="secret/open/randomization rate split for a point")
    split.add_argument("--delta", type=float, required=True)
    split.add_argument("--point", type=_float_list, required=True)
    split.add_argument("--margin", type=float, default=0.0)
    split.add_argument("--n", type=int, default=None, help="also integerize at this block length")
    split.set_defaults(handler=cmd_split)

    simulate = sub.add_parser("simulate", help="Monte Carlo decoding trials")
    simulate.add_argument("--delta", type=float, default=1.0)
    simulate.add_argument("--point", type=_float_list, required=True)
    simulate.add_argument("--margin", type=float, default=SIM_CONFIG["wiretap_margin"])
    simulate.add_argument("--n", type=int, default=SIM_CONFIG["block_length"])
    simulate.add_argument("--trials", type=int, default=SIM_CONFIG["trials"])
    simulate.add_argument("--cap", type=int, default=SIM_CONFIG["candidate_cap"])
    simulate.set_defaults(handler=cmd_simulate)

    oracle = sub.add_parser("oracle", help="exact equivocation of a discrete spec")
    oracle.add_argument("--spec", required=True, help="bundled spec name or path to a spec JSON")
    oracle.add_argument("--delta", type=float, default=None)
    oracle.set_defaults(handler=cmd_oracle)

    replay = sub.add_parser("replay", help="re-run the command recorded in a manifest into --out")
    replay.add_argument("manifest", type=Path)
    return parser


def _recorded_arguments(args):
    """Subcommand options after defaults were applied"""
    return {name: value for name, value in vars(args).items() if name not in _NOT_RECORDED}


def replay_argv(manifest, out_dir):
    """argv that repeats a manifest's run, writing into out_dir"""
    argv = ["--out", str(out_dir), "--seed", str(manifest.seed)]
    if manifest.config_path and not manifest.config_path.startswith("builtin:"):
        argv += ["--config", manifest.config_path]
    argv.append(manifest.command)
    for name, value in manifest.arguments.items():
        if value is None:
            continue
        if isinstance(value, list):
            value = ",".join(repr(float(v)) for v in value)
        argv.append(f"--{name.replace('_', '-')}={value}")
    return argv


def _write_manifest(args, config_path, outputs):
    manifest = RunManifest(
        command=args.command,
        config_path=config_path,
        arguments=_recorded_arguments(args),
        outputs=[str(p) for p in outputs],
        seed=args.seed,
        derived_seed=derive_seed(args.seed, args.command) if args.command in _SEEDED_COMMANDS else None,
        version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
    )
    path = write_json(manifest, Path(args.out) / f"manifest_{args.command.replace('-', '_')}.json")
    logger.debug("manifest for %s lists %d outputs", args.command, len(outputs))
    return path


def main(argv=None):
    args = build_parser().parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    if args.command == "replay":
        try:
            manifest = RunManifest.model_validate_json(args.manifest.read_text())
        except (ValueError, OSError) as e:
            print(f"Error: {e}", file=sys.stderr)
            return EXIT_USAGE
        logger.info("replaying %s from %s", manifest.command, args.manifest)
        return main(replay_argv(manifest, args.out))

    try:
        if args.command == "oracle":
            config_path = ""
            cfg = None
        else:
            cfg, config_path = _load_config(args)
        outputs = args.handler(args, cfg)
        _write_manifest(args, config_path, outputs)
        return EXIT_OK
    except InfeasibleSplitError as e:
        print(f"Infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (SizeCapError, UnsupportedSizeError) as e:
        if getattr(e, "outputs", None):
            _write_manifest(args, config_path, e.outputs)
        print(f"Size limit: {e}", file=sys.stderr)
        return EXIT_SIZE_CAP
    except (GmacwtError, ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
