"""Command-line entry point: ``mpath run | render | metrics``."""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from pathlib import Path

from mpath.harness.config import ConfigError, load_config
from mpath.harness.experiments import PRESETS, preset
from mpath.harness.metrics import flash_locking_index, pattern_similarity, weight_drift
from mpath.harness.render import render_raster
from mpath.harness.runner import run_experiment
from mpath.harness.trace import export_csv, export_tau, export_weights, read_csv, sidecar

OUTPUT_DIR_ENV = "MPATH_OUTPUT_DIR"

log = logging.getLogger("mpath")


def _load(spec: str):
    if spec in PRESETS and not Path(spec).exists():
        return preset(spec)
    return load_config(spec)


def cmd_run(args) -> int:
    cfg = _load(args.config)
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    outdir = Path(args.output or os.environ.get(OUTPUT_DIR_ENV, "out"))
    outdir.mkdir(parents=True, exist_ok=True)
    log.info("running %s (seed %d, %d steps)", cfg.name, cfg.seed, cfg.duration)
    trace = run_experiment(cfg)

    trace_path = outdir / cfg.output.trace
    export_csv(trace, trace_path)
    export_weights(trace, sidecar(trace_path, "weights"))
    export_tau(trace, sidecar(trace_path, "tau"))
    for r in cfg.output.renders:
        img = outdir / f"{cfg.name}_layer{r.layer}_{r.start}-{r.stop}.png"
        render_raster(trace, r.layer, (r.start, r.stop), img, scale=cfg.output.pixel_scale)
    print(trace_path)
    return 0


def cmd_render(args) -> int:
    trace = read_csv(args.csv, weights=False)
    start = args.start if args.start is not None else 0
    stop = args.stop if args.stop is not None else trace.steps
    render_raster(trace, args.layer, (start, stop), args.output, scale=args.scale)
    return 0


def cmd_metrics(args) -> int:
    trace = read_csv(args.csv, weights=args.kind == "drift")
    steps = trace.steps
    window = tuple(args.window) if args.window else (0, steps)
    if args.kind == "flash-lock":
        value = flash_locking_index(trace, args.layer, window, args.flash_interval)
    elif args.kind == "similarity":
        if not args.window_b:
            raise ValueError("similarity needs --window-b")
        value = pattern_similarity(trace, args.layer, window, tuple(args.window_b), args.period)
    else:
        a, b = args.steps
        value = weight_drift(trace.snapshots, a, b, args.layer or None)
    print(json.dumps({"kind": args.kind, "value": value}))
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mpath", description=__doc__)
    p.add_argument("--seed", type=int, help="override the config seed")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate a config file or preset (fig1, fig2, fig3)")
    run.add_argument("config")
    run.add_argument("-o", "--output", help=f"output directory (default ${OUTPUT_DIR_ENV} or ./out)")
    run.set_defaults(func=cmd_run)

    ren = sub.add_parser("render", help="raster image of one layer from a trace CSV")
    ren.add_argument("csv")
    ren.add_argument("--layer", type=int, required=True)
    ren.add_argument("--from", dest="start", type=int)
    ren.add_argument("--to", dest="stop", type=int)
    ren.add_argument("--scale", type=int, default=4)
    ren.add_argument("-o", "--output", required=True)
    ren.set_defaults(func=cmd_render)

    met = sub.add_parser("metrics", help="summary metric of a trace CSV")
    met.add_argument("csv")
    met.add_argument("--kind", choices=["flash-lock", "similarity", "drift"], required=True)
    met.add_argument("--layer", type=int, default=0)
    met.add_argument("--window", type=int, nargs=2, metavar=("FROM", "TO"))
    met.add_argument("--window-b", type=int, nargs=2, metavar=("FROM", "TO"))
    met.add_argument("--flash-interval", type=int, default=10)
    met.add_argument("--period", type=int, default=4)
    met.add_argument("--steps", type=int, nargs=2, metavar=("A", "B"), default=(1, 1000))
    met.set_defaults(func=cmd_metrics)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"mpath: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, IndexError) as exc:
        print(f"mpath: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
