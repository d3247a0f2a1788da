#!/usr/bin/env python3
"""
╔══════════════════════════════════════════════════════════╗
║                                                          ║
║                        R O T D I F F                     ║
║                                                          ║
║     Exact Birkhoff sums of step functions over           ║
║     irrational rotations, and the checks around them     ║
║                                                          ║
╚══════════════════════════════════════════════════════════╝

Usage:
    python rotdiff.py alpha --golden -N 10
    python rotdiff.py alpha --ead A=5,d=2,seed=1 -N 10
    python rotdiff.py experiment --config config.yaml --out runs/golden
    python rotdiff.py verify --config config.yaml --workers 4
    python rotdiff.py report runs/golden --xlsx

Exit codes: 0 ok, 1 hard-check failure, 2 usage, 3 precision/horizon, 4 internal error.
"""

import argparse
import copy
import os
import sys

import yaml

# Make the flat top-level packages importable from anywhere
BASE_DIR = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, BASE_DIR)

from executor import CommandExecutor
from utils.errors import RotdiffError, UsageError
from utils.event_bus import event_bus
from utils.logger import setup_logger


# ─── Banner ──────────────────────────────────────────

BANNER = """
\033[36m  rotdiff\033[0m \033[90m· Birkhoff sums over irrational rotations\033[0m
"""

DEFAULT_CONFIG = {
    "alpha": {"kind": "periodic", "preperiod": [], "period": [1]},
    "psi": {"kind": "psi_star"},
    "plan": {"kind": "r_sequence", "N": 5, "J": 5, "deltas": None},
    "experiment": {
        "horizon": None,
        "max_exact": 2_000_000,
        "parseval_K": 2000,
        "write_laws": True,
        "record_limit": 0,
        "write_sums": True,
        "fourier_K": 8,
    },
    "verify": {},
    "precision": {"bits": 128, "max_bits": 2048},
    "output": {"dir": "runs/default"},
    "logging": {"level": "INFO", "log_file": None},
}


def deep_merge(base, override):
    """Copy of `base` with `override` merged in, dicts recursively."""
    out = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = deep_merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def load_config(path=None):
    """Built-in defaults, then ROTDIFF_OUT_DIR, then the YAML file at `path`.

    An empty or non-mapping file is a usage error; alpha specs in a file
    replace the default alpha whole rather than merging into it.
    """
    config = copy.deepcopy(DEFAULT_CONFIG)
    if os.environ.get("ROTDIFF_OUT_DIR"):
        config["output"]["dir"] = os.environ["ROTDIFF_OUT_DIR"]
    if path is None:
        return config
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise UsageError(f"cannot read config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise UsageError(f"config {path} is not valid YAML: {e}") from e
    if not data:
        raise UsageError(f"config {path} is empty")
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must be a mapping")
    unknown = set(data) - set(DEFAULT_CONFIG)
    if unknown:
        raise UsageError(f"unknown config sections: {sorted(unknown)}")
    alpha = data.pop("alpha", None)
    config = deep_merge(config, data)
    if alpha is not None:
        config["alpha"] = alpha
    return config


# ─── Flag parsing ────────────────────────────────────

def parse_ead(text):
    """'A=5,d=2,seed=1' → {"kind": "ead", "A": 5, "d": 2, "seed": 1}"""
    spec = {"kind": "ead"}
    for part in filter(None, (p.strip() for p in text.split(","))):
        key, sep, value = part.partition("=")
        if not sep or key not in ("A", "d", "seed"):
            raise UsageError(f"bad --ead item {part!r}; expected A=..,d=..,seed=..")
        try:
            spec[key] = int(value)
        except ValueError as e:
            raise UsageError(f"--ead {key} must be an integer, got {value!r}") from e
    if "A" not in spec:
        raise UsageError("--ead needs A=<int>")
    return spec


def parse_int_list(text, flag):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}") from e


def alpha_from_flags(args):
    """The alpha spec named on the command line, or None."""
    if args.golden:
        return {"kind": "golden"}
    if args.ead:
        return parse_ead(args.ead)
    if args.explicit:
        return {"kind": "explicit", "quotients": parse_int_list(args.explicit, "--explicit")}
    if args.periodic:
        pre, _, per = args.periodic.rpartition(";")
        return {"kind": "periodic", "preperiod": parse_int_list(pre, "--periodic"),
                "period": parse_int_list(per, "--periodic")}
    return None


def apply_flags(config, args):
    """CLI flags override the config file."""
    config = copy.deepcopy(config)
    alpha = alpha_from_flags(args)
    if alpha is not None:
        config["alpha"] = alpha
    if args.seed is not None:
        if config["alpha"].get("kind") != "ead":
            raise UsageError("--seed only applies to a random alpha (kind: ead)")
        config["alpha"]["seed"] = args.seed
    if args.horizon is not None:
        if args.horizon < 1:
            raise UsageError(f"--horizon must be >= 1, got {args.horizon}")
        config["experiment"]["horizon"] = args.horizon
    if args.out:
        config["output"]["dir"] = args.out
    if config["alpha"].get("kind") == "ead" and config["alpha"].get("seed") is None:
        raise UsageError("random alpha needs a recorded seed (config alpha.seed or --seed)")
    return config


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML config file (see config.example.yaml)")
    common.add_argument("--out", help="output directory")
    common.add_argument("--seed", type=int, help="seed of a random alpha")
    common.add_argument("--horizon", type=int, help="iterate horizon of the shadow rational")
    common.add_argument("--quiet", action="store_true", help="no banner")
    which = common.add_mutually_exclusive_group()
    which.add_argument("--golden", action="store_true", help="alpha = (sqrt 5 - 1)/2")
    which.add_argument("--ead", metavar="A=..,d=..,seed=..", help="random alpha from E(A,d)")
    which.add_argument("--explicit", metavar="a1,a2,..", help="explicit partial quotients")
    which.add_argument("--periodic", metavar="pre;period", help="e.g. '1,2;3' or ';2'")

    parser = argparse.ArgumentParser(
        prog="rotdiff", description="Exact Birkhoff sums over irrational rotations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alpha", parents=[common], help="convergent table of alpha")
    p.add_argument("-N", type=int, default=10, help="last convergent index")

    sub.add_parser("experiment", parents=[common], help="stage laws, sigma_n, KS")

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--workers", type=int, default=1, help="parallel check jobs")

    p = sub.add_parser("report", parents=[common], help="summarize a run directory")
    p.add_argument("run_dir", nargs="?", help="run directory (default: output.dir)")
    p.add_argument("--xlsx", action="store_true", help="also write report.xlsx")
    return parser


def command_options(args):
    if args.command == "alpha":
        if args.N < 0:
            raise UsageError(f"-N must be >= 0, got {args.N}")
        return {"N": args.N}
    if args.command == "verify":
        return {"workers": max(1, args.workers)}
    if args.command == "report":
        return {"run_dir": args.run_dir, "xlsx": args.xlsx}
    return {}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage already; keep its code
        return e.code if isinstance(e.code, int) else 2

    try:
        config = apply_flags(load_config(args.config), args)
        options = command_options(args)
    except RotdiffError as e:
        print(f"  ❌ {e}", file=sys.stderr)
        return e.exit_code

    if not args.quiet:
        print(BANNER)
    logger = setup_logger(config, BASE_DIR)
    result = CommandExecutor(config, logger).execute(args.command, **options)

    stream = sys.stdout if result.get("success") else sys.stderr
    if result.get("content"):
        print(result["content"], file=stream)
    stats = event_bus.get_stats()
    if args.command == "verify" and not args.quiet:
        print(f"\n  hard checks: {stats['hard_passed']} passed, {stats['hard_failed']} failed"
              f" · trend checks: {stats['trend_passed']} passed, {stats['trend_failed']} failed")
    return result["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
