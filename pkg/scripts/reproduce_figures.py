"""Run the three reference experiments and write traces plus raster images.

    python scripts/reproduce_figures.py [--seed 0] [--out out/figures]
"""

import argparse
from pathlib import Path

from mpath.harness import cli

parser = argparse.ArgumentParser()
parser.add_argument("--seed", type=int, default=0)
parser.add_argument("--out", default="out/figures")
args = parser.parse_args()

for name in ("fig1", "fig2", "fig3"):
    out = Path(args.out) / name
    cli.main(["--seed", str(args.seed), "run", name, "-o", str(out)])
    print(f"{name}: {sorted(p.name for p in out.glob('*.png'))}")
