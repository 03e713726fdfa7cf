"""Command-line entry point: ``qfisher <campaign> [options]``.

Campaigns: table2, table3, bounds-curve, sweep-p, analyze, phase-sim,
bound-entangled-scan. A JSON config file can mirror any flag; explicit
flags win. Exit codes: 0 success, 2 invalid input, 3 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .campaigns import CAMPAIGNS, CampaignConfig, run_campaign
from .core import InvariantError

FULL_SCALE_SAMPLES = 1_000_000
DEFAULT_SAMPLES = 10_000  # quick profile; pass --full or --samples for more


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfisher",
        description="Fisher-information entanglement criteria: campaigns, sweeps, reports.",
    )
    parser.add_argument("campaign", choices=CAMPAIGNS)
    parser.add_argument("--n", type=int, default=None, help="qubit count (bounds-curve)")
    parser.add_argument("--k", type=int, default=None, help="producibility class filter")
    parser.add_argument("--samples", type=int, default=None, help="Monte-Carlo sample count")
    parser.add_argument("--full", action="store_true", help=f"use {FULL_SCALE_SAMPLES} samples")
    parser.add_argument("--seed", type=int, default=None, help="campaign seed (default 0)")
    parser.add_argument("--workers", type=int, default=None, help="parallel workers (default 1)")
    parser.add_argument("--mode", default=None, help="campaign mode flag")
    parser.add_argument("--state", default=None, help="state spec, e.g. ghz:4 or file.json")
    parser.add_argument("--m", type=int, default=None, help="shots per estimate (phase-sim)")
    parser.add_argument("--trials", type=int, default=None, help="estimates (phase-sim)")
    parser.add_argument("--theta", type=float, default=None, help="true phase (phase-sim)")
    parser.add_argument("--out", default=None, help="output path (.csv or .json)")
    parser.add_argument("--config", default=None, help="JSON file mirroring the flags")
    return parser


def _merge_config(args: argparse.Namespace) -> CampaignConfig:
    file_values: dict = {}
    if args.config:
        with open(args.config) as fh:
            file_values = json.load(fh)
        if not isinstance(file_values, dict):
            raise ValueError("config file must hold a JSON object of flag values")

    def pick(flag: str, default):
        cli_value = getattr(args, flag)
        if cli_value is not None:
            return cli_value
        if flag in file_values and file_values[flag] is not None:
            return file_values[flag]
        return default

    samples = pick("samples", None)
    if samples is None:
        samples = FULL_SCALE_SAMPLES if args.full or file_values.get("full") else DEFAULT_SAMPLES
    return CampaignConfig(
        campaign=args.campaign,
        samples=int(samples),
        seed=int(pick("seed", 0)),
        workers=int(pick("workers", 1)),
        out=pick("out", None),
        n=pick("n", None),
        k=pick("k", None),
        state=pick("state", None),
        mode=pick("mode", None),
        m=int(pick("m", 1000)),
        trials=int(pick("trials", 200)),
        theta=pick("theta", None),
    )


def _emit(config: CampaignConfig, csv_text: str, payload) -> None:
    if config.out is None:
        if config.campaign in ("analyze", "phase-sim") and payload is not None:
            print(json.dumps(payload, indent=2))
        else:
            sys.stdout.write(csv_text)
        return
    if config.out.endswith(".json"):
        with open(config.out, "w") as fh:
            json.dump(payload, fh, indent=2)
    else:
        with open(config.out, "w") as fh:
            fh.write(csv_text)
    if config.campaign == "phase-sim" and payload is not None and not config.out.endswith(".json"):
        # estimates go to the CSV; the summary is still reported on stdout
        print(json.dumps(payload, indent=2))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _merge_config(args)
        csv_text, payload = run_campaign(config)
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(config, csv_text, payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
