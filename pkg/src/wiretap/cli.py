"""Command-line interface: solve single instances, run experiments, check oracles."""

import argparse
import json
import sys

from .baselines import random_search_oracle
from .errors import InvalidConfigError, InvalidMatrixError, WiretapError
from .experiment import (
    LN2,
    ExperimentConfig,
    emit_results,
    render_csv,
    render_json,
    run_experiment,
)
from .model import complex_to_pairs, load_channel
from .solver import AlternatingSettings, solve


def _write_text(text, out):
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _unit_scale(units):
    return 1.0 if units == "nats" else 1.0 / LN2


def _cmd_solve(args):
    ch = load_channel(args.channel)
    settings = AlternatingSettings(rng_seed=args.seed, n_starts=args.starts)
    report = solve(ch, settings)
    scale = _unit_scale(args.units)
    doc = report.to_dict()
    doc["secrecy_rate"] = scale * doc["secrecy_rate"]
    doc["alternation_trace"] = [scale * v for v in doc["alternation_trace"]]
    doc["units"] = args.units
    _write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_experiment(args):
    with open(args.config, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if args.paper_scale:
        doc["realizations"] = 500
    if args.seed is not None:
        doc["master_seed"] = args.seed
    if args.units is not None:
        doc["rate_units"] = args.units
    config = ExperimentConfig.from_dict(doc)
    result = run_experiment(config)
    if args.out == "-":
        text = render_csv(result) if args.format == "csv" else render_json(result)
        sys.stdout.write(text)
    else:
        emit_results(result, format=args.format, path=args.out)
    return 0


def _cmd_oracle(args):
    ch = load_channel(args.channel)
    rate, p = random_search_oracle(ch, args.samples, args.seed)
    scale = _unit_scale(args.units)
    doc = {
        "rate": scale * max(0.0, rate),
        "units": args.units,
        "samples": args.samples,
        "seed": args.seed,
        "p": complex_to_pairs(p.p) if p is not None else None,
    }
    _write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wiretap",
        description="Secrecy-rate maximizing precoding for MIMO Gaussian wiretap channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="optimize the covariance for one channel JSON file")
    ps.add_argument("channel", help="channel JSON file")
    ps.add_argument("--seed", type=int, default=0, help="initialization seed")
    ps.add_argument("--starts", type=int, default=3, help="number of random restarts")
    ps.add_argument("--units", choices=("nats", "bits"), default="nats")
    ps.add_argument("--out", default="-", help="output path, '-' for stdout")
    ps.set_defaults(func=_cmd_solve)

    pe = sub.add_parser("experiment", help="run a config-driven Monte Carlo sweep")
    pe.add_argument("config", help="experiment config JSON file")
    pe.add_argument("--format", choices=("csv", "json"), default="csv")
    pe.add_argument("--out", default="-", help="output path, '-' for stdout")
    pe.add_argument("--seed", type=int, default=None, help="override the master seed")
    pe.add_argument("--units", choices=("nats", "bits"), default=None)
    pe.add_argument(
        "--paper-scale",
        action="store_true",
        help="run 500 realizations per SNR point instead of the configured count",
    )
    pe.set_defaults(func=_cmd_experiment)

    po = sub.add_parser("oracle", help="random-search lower bound for one channel file")
    po.add_argument("channel", help="channel JSON file")
    po.add_argument("--samples", type=int, default=100000)
    po.add_argument("--seed", type=int, default=0)
    po.add_argument("--units", choices=("nats", "bits"), default="nats")
    po.add_argument("--out", default="-", help="output path, '-' for stdout")
    po.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidConfigError, InvalidMatrixError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (WiretapError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
