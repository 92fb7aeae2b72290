"""Command-line entry point: ``netdecomp {generate,run,sweep,scatter,oracle}``.

Exit codes: 0 success, 2 usage/config error, 3 runtime or degenerate-input error.
"""
from __future__ import annotations

import argparse
import datetime
import sys

from . import experiment as ex
from . import scenario as sc
from .baseline import DegenerateInput
from .oracle import InstanceTooLarge, exact_minimum

EXIT_USAGE = 2
EXIT_RUNTIME = 3


def _load_config(args, defaults=()) -> ex.ExperimentConfig:
    text = ""
    if args.config:
        with open(args.config) as fh:
            text = fh.read()
    return ex.ExperimentConfig.parse(text, args.set or [], defaults)


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _stamp(args) -> str | None:
    if args.no_timestamp:
        return None
    return "generated " + datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


def cmd_generate(args) -> int:
    s = sc.generate_scenario(args.b, args.u, args.side_length, args.seed, args.alpha, args.dist_min, args.dist_max)
    _emit(s.to_text(), args.output)
    return 0


def cmd_run(args) -> int:
    cfg = _load_config(args)
    rows = ex.run_experiment(cfg)
    drop = ("runtime_ms",) if args.no_timing else ()
    _emit(ex.to_csv(rows, ex.RESULT_COLUMNS, _stamp(args), drop), args.output or cfg.output_path)
    return 0


def cmd_sweep(args) -> int:
    cfg = _load_config(args, [f"M_range = {ex.SWEEP_DEFAULT_M}"])
    _emit(ex.to_csv(ex.sweep_M(cfg), ex.SWEEP_COLUMNS, _stamp(args)), args.output or cfg.output_path)
    return 0


def cmd_scatter(args) -> int:
    cfg = _load_config(args)
    _emit(ex.to_csv(ex.scatter(cfg), ex.SCATTER_COLUMNS, _stamp(args)), args.output or cfg.output_path)
    return 0


def cmd_oracle(args) -> int:
    cfg = _load_config(args)
    rows = []
    for seed in cfg.seeds:
        w = sc.build_weight_matrix(cfg.scenario(seed))
        for m in cfg.M:
            value, p = exact_minimum(w, m, cfg.convention)
            rgs = " ".join(map(str, p.info["rgs"])) if p is not None else ""
            rows.append({"seed": seed, "M": m, "convention": cfg.convention, "minimum": value, "rgs": rgs})
    _emit(ex.to_csv(rows, ["seed", "M", "convention", "minimum", "rgs"], _stamp(args)),
          args.output or cfg.output_path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netdecomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a random scenario as a text record")
    gen.add_argument("--b", type=int, required=True)
    gen.add_argument("--u", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--side-length", type=float, default=sc.DEFAULT_SIDE_LENGTH)
    gen.add_argument("--alpha", type=float, default=sc.DEFAULT_ALPHA)
    gen.add_argument("--dist-min", type=float, default=sc.DEFAULT_DIST_MIN)
    gen.add_argument("--dist-max", type=float, default=sc.DEFAULT_DIST_MAX)
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_generate)

    for name, func, help_ in (("run", cmd_run, "per-seed results plus means"),
                              ("sweep", cmd_sweep, "mean/min/max objective per algorithm and M"),
                              ("scatter", cmd_scatter, "vertex positions with cluster ids"),
                              ("oracle", cmd_oracle, "exact minima on tiny instances")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("-c", "--config", help="flat key = value config file")
        p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a config key")
        p.add_argument("-o", "--output")
        p.add_argument("--no-timestamp", action="store_true", help="omit the '# generated' header line")
        if name == "run":
            p.add_argument("--no-timing", action="store_true", help="omit the runtime_ms column")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ex.ConfigError, InstanceTooLarge, OSError) as exc:
        print(f"netdecomp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateInput, ValueError, ArithmeticError) as exc:
        print(f"netdecomp: runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
