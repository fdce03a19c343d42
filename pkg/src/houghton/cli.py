"""Command line entry point: ``houghton <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .harness import (ALL_CHECKS, REGION_CHECKS, ConfigError, ExperimentConfig, checks_csv,
                      parse_chi, run, stability_sweep, sweep_csv, write_report)
from .io import save

SUBCOMMANDS = {
    "build": ("region",),
    "links": ("region", "flag", "descending_links", "ascending_links"),
    "blankets": ("region", "blanket_convexity", "blanket_intersections", "germ"),
    "cover": ("region", "cover"),
    "nerve": ("region", "nerve", "witness", "strong_nerve"),
    "verify-all": ALL_CHECKS,
    "fixtures": ("fixtures",),
    "sweep": REGION_CHECKS,
}


def _window(text):
    parts = [int(a) for a in str(text).split(",") if a]
    return parts[0] if len(parts) == 1 else tuple(parts)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of settings; flags override it")
    common.add_argument("--n", type=int)
    common.add_argument("--chi", help="character coefficients a1,...,an")
    common.add_argument("--f-bound", type=int, dest="f_bound")
    common.add_argument("--window", type=_window, help="W, or W1,...,Wn per ray")
    common.add_argument("--window-mode", choices=("codomain", "support"), dest="window_mode")
    common.add_argument("--seeds", help="file with one canonical encoding per line")
    common.add_argument("--checks", help="comma-separated subset of checks")
    common.add_argument("--out", help="write the JSON report here (default: stdout)")
    common.add_argument("--csv", help="also write a CSV table here")
    common.add_argument("--export", help="build/cover: complex file; nerve: nerve file")
    common.add_argument("--jobs", type=int)
    common.add_argument("--name")
    common.add_argument("--max-vertices", type=int, dest="max_vertices")
    common.add_argument("--allow-large", action="store_true", default=None, dest="allow_large",
                        help="permit n >= 4")
    common.add_argument("--timings", action="store_true", default=None,
                        help="include wall times (reports stop being byte-reproducible)")
    common.add_argument("-v", "--verbose", action="store_true")
    parser = argparse.ArgumentParser(prog="houghton",
                                     description="Finite checks on the Houghton cube complexes.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "sweep":
            p.add_argument("--windows", default="2,3",
                           help="increasing window sizes, e.g. 2,3 (use ; between per-ray tuples)")
    return parser


def config_from_args(args) -> ExperimentConfig:
    data = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        data = {k.replace("-", "_"): v for k, v in data.items()}
        for k in ("out", "csv", "export", "windows"):
            data.pop(k, None)
        if isinstance(data.get("chi"), str):
            data["chi"] = parse_chi(data["chi"])
        if isinstance(data.get("seeds"), str):
            data["seeds"] = _read_seeds(data["seeds"])
        if isinstance(data.get("checks"), str):
            data["checks"] = [c for c in data["checks"].split(",") if c]
    for key in ("n", "f_bound", "window", "window_mode", "jobs", "name", "max_vertices",
                "allow_large", "timings"):
        val = getattr(args, key)
        if val is not None:
            data[key] = val
    if args.chi is not None:
        data["chi"] = parse_chi(args.chi)
    if args.seeds is not None:
        data["seeds"] = _read_seeds(args.seeds)
    if args.checks is not None:
        data["checks"] = [c for c in args.checks.split(",") if c]
    data.setdefault("checks", SUBCOMMANDS[args.command])
    data.setdefault("name", args.command)
    try:
        cfg = ExperimentConfig.from_dict(data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    if cfg.chi is None and args.command not in ("fixtures", "build", "links", "blankets"):
        cfg.chi = tuple([-1] + [0] * (cfg.n - 1))
    if cfg.chi is None and args.command == "links":
        cfg.checks = tuple(c for c in cfg.checks if c != "ascending_links")
    return cfg.validate()


def _read_seeds(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return [line.strip() for line in fh if line.strip() and not line.startswith("#")]
    except OSError as exc:
        raise ConfigError(f"cannot read seeds file: {exc}") from None


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _glue_values(argv):
    """Let ``--chi -1,0`` through: argparse would read ``-1,0`` as an option."""
    out, it = [], iter(argv)
    for a in it:
        if a in ("--chi", "--window", "--windows"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_values(sys.argv[1:] if argv is None else list(argv)))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        if args.command == "sweep":
            windows = [_window(w) for w in args.windows.split(";" if ";" in args.windows else ",")]
            result = stability_sweep(cfg, windows)
            _emit(json.dumps(result, indent=2, sort_keys=True) + "\n", args.out)
            if args.csv:
                _emit(sweep_csv(result), args.csv)
            return 0 if result["passed"] else 1
        report = run(cfg)
    except ConfigError as exc:
        print(f"houghton: configuration error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        write_report(report, args.out)
    else:
        sys.stdout.write(report.to_json())
    if args.csv:
        _emit(checks_csv(report), args.csv)
    if args.export and report.context is not None:
        ctx = report.context
        save(args.export, ctx.nerve if args.command == "nerve" else ctx.region)
    for c in report.checks:
        print(f"{c['name']:>22}: {c['status']}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
